//! Doubly cyclic convolutional codes over GF(q) with n = q - 1.
//!
//! With `f = prod_{i=0}^{n-k-1} (x - alpha^i)` in `A = GF(q)[x]/(x^n - 1)` and
//! `sigma(x) = alpha^k x`, row `l` of `G_j` is the coefficient vector of
//! `sigma^j(x^l f)`. Stacking `G_l, ..., G_0` gives the Reed-Solomon code
//! `B_l` with generator polynomial `prod_{i=0}^{n-(l+1)k-1} (x - alpha^i)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{sigma_apply, AlgebraError, Matrix, Poly, RingElement, RowSolver};
use crate::convcode::{ConvEncoder, ConvError, WindowContext};
use crate::gf::{prime_power, Elem, FieldError, FieldSpec, FieldTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DccError {
    #[error("parameters out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("word has length {found}, expected {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("invalid code record: {0}")]
    BadRecord(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Conv(#[from] ConvError),
}

/// The block code `B_l = im G_{l,0}` with `G_{l,0} = (G_l; G_{l-1}; ...; G_0)`.
#[derive(Debug, Clone)]
pub struct StackedCode {
    field: Arc<FieldTable>,
    level: usize,
    generator: Matrix,
    gen_poly: Poly,
    distance: usize,
    solver: RowSolver,
}

impl StackedCode {
    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `G_{l,0}`; coordinate block `i` of a message multiplies `G_{l-i}`.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn gen_poly(&self) -> &Poly {
        &self.gen_poly
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    /// Minimum distance `d_l = n - (l+1)k + 1`.
    pub fn distance(&self) -> usize {
        self.distance
    }

    /// Number of check symbols, the count of consecutive roots `alpha^0, alpha^1, ...`.
    pub fn parity_len(&self) -> usize {
        self.distance - 1
    }

    /// Error-correcting radius `t_l = floor((d_l - 1) / 2)`.
    pub fn radius(&self) -> usize {
        (self.distance - 1) / 2
    }

    pub(crate) fn solver(&self) -> &RowSolver {
        &self.solver
    }

    pub fn encode(&self, coords: &[Elem]) -> Vec<Elem> {
        self.generator.vec_mul(&self.field, coords)
    }

    /// Membership by divisibility of the word polynomial by the generator polynomial.
    pub fn contains(&self, word: &[Elem]) -> Result<bool, DccError> {
        if word.len() != self.n() {
            return Err(DccError::WidthMismatch { expected: self.n(), found: word.len() });
        }
        Ok(Poly::new(word.to_vec()).rem(&self.field, &self.gen_poly).is_zero())
    }
}

/// True iff `word` lies in `B_l`.
pub fn stack_membership(word: &[Elem], code: &StackedCode) -> Result<bool, DccError> {
    code.contains(word)
}

/// A doubly cyclic convolutional code together with its stacked block codes.
#[derive(Debug, Clone)]
pub struct DoublyCyclicCode {
    field: Arc<FieldTable>,
    n: usize,
    k: usize,
    m: usize,
    f: RingElement,
    encoder: ConvEncoder,
    stacks: Vec<StackedCode>,
    d_formula: usize,
    dfree: usize,
}

/// Builds the code for dimension `k` and memory `m`; requires
/// `1 <= k <= n/2` and `m <= n/k - 1`.
pub fn dcc_build(field: Arc<FieldTable>, k: usize, m: usize) -> Result<DoublyCyclicCode, DccError> {
    let n = field.order();
    if k == 0 || k > n / 2 {
        return Err(DccError::ParameterOutOfRange(format!("k = {k} must satisfy 1 <= k <= {}", n / 2)));
    }
    if m + 1 > n / k {
        return Err(DccError::ParameterOutOfRange(format!("m = {m} must satisfy m <= {}", n / k - 1)));
    }
    let roots = |count: usize| (0..count).map(|i| field.alpha_pow(i as i64)).collect::<Vec<_>>();
    let f_poly = Poly::from_roots(&field, &roots(n - k));
    let f = RingElement::from_poly(&field, &f_poly, n);

    let coeffs = (0..=m)
        .map(|j| {
            let rows = (0..k)
                .map(|l| {
                    // deg(x^l f) <= n - 1, so the shift needs no reduction
                    let mut shifted = vec![0; n];
                    shifted[l..].copy_from_slice(&f.coeffs()[..n - l]);
                    sigma_apply(&field, &RingElement::new(shifted), k, j).into_coeffs()
                })
                .collect();
            Matrix::from_rows(rows)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let encoder = ConvEncoder::new(field.clone(), coeffs)?;

    let stacks = (0..=m)
        .map(|level| {
            let parts: Vec<&Matrix> = (0..=level).rev().map(|j| &encoder.coefficients()[j]).collect();
            let generator = Matrix::vstack(&parts)?;
            let solver = RowSolver::new(&field, &generator)?;
            let distance = n - (level + 1) * k + 1;
            Ok(StackedCode {
                field: field.clone(),
                level,
                gen_poly: Poly::from_roots(&field, &roots(distance - 1)),
                generator,
                distance,
                solver,
            })
        })
        .collect::<Result<Vec<_>, DccError>>()?;

    let d_formula = stacks.iter().map(StackedCode::distance).sum::<usize>() - 1;
    let dfree = (m + 1) * (n - k + 1);
    Ok(DoublyCyclicCode { field, n, k, m, f, encoder, stacks, d_formula, dfree })
}

impl DoublyCyclicCode {
    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The generating element `f` of `A`.
    pub fn f(&self) -> &RingElement {
        &self.f
    }

    pub fn encoder(&self) -> &ConvEncoder {
        &self.encoder
    }

    pub fn stacks(&self) -> &[StackedCode] {
        &self.stacks
    }

    pub fn stack(&self, level: usize) -> &StackedCode {
        &self.stacks[level]
    }

    /// Stacked-code distances `d_0, ..., d_m`.
    pub fn stack_distances(&self) -> Vec<usize> {
        self.stacks.iter().map(StackedCode::distance).collect()
    }

    /// `d = d_0 + ... + d_m - 1`.
    pub fn d_formula(&self) -> usize {
        self.d_formula
    }

    /// `d^(l) = d_0 + ... + d_l - 1`.
    pub fn partial_d(&self, level: usize) -> usize {
        self.stacks[..=level].iter().map(StackedCode::distance).sum::<usize>() - 1
    }

    /// Free distance `(m+1)(n-k+1)`.
    pub fn dfree(&self) -> usize {
        self.dfree
    }

    /// Depth `m + 1`, step 1, weight parameter `d` (the closed form unless overridden).
    pub fn window_context(&self, d: Option<usize>) -> WindowContext {
        WindowContext::new(&self.encoder, self.m + 1, 1, d.unwrap_or(self.d_formula)).expect("valid window")
    }

    pub fn params(&self) -> CodeParams {
        let spec = self.field.spec();
        CodeParams {
            q: self.field.q(),
            p: spec.p,
            e: spec.e,
            modulus: spec.modulus,
            alpha: spec.alpha,
            k: self.k,
            m: self.m,
        }
    }
}

/// Text record describing a code, enough to rebuild it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub q: u32,
    pub p: u32,
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub alpha: Elem,
    pub k: usize,
    pub m: usize,
}

impl CodeParams {
    /// Fills in the field description from `q`, an optional modulus and an
    /// optional primitive element (smallest generator by default).
    pub fn resolve(q: u32, modulus: Option<Vec<u32>>, alpha: Option<Elem>, k: usize, m: usize) -> Result<Self, DccError> {
        let (p, e) = prime_power(q as u64).ok_or(FieldError::NotPrimePower(q as u64))?;
        let field = FieldTable::build(p, e, modulus.as_deref(), alpha)?;
        let spec = field.spec();
        Ok(CodeParams { q, p, e, modulus: spec.modulus, alpha: spec.alpha, k, m })
    }

    pub fn field(&self) -> Result<FieldTable, DccError> {
        if (self.p as u64).checked_pow(self.e) != Some(self.q as u64) {
            return Err(DccError::BadRecord(format!("q = {} is not {}^{}", self.q, self.p, self.e)));
        }
        Ok(FieldTable::from_spec(&FieldSpec {
            p: self.p,
            e: self.e,
            modulus: self.modulus.clone(),
            alpha: self.alpha,
        })?)
    }

    pub fn build(&self) -> Result<DoublyCyclicCode, DccError> {
        dcc_build(Arc::new(self.field()?), self.k, self.m)
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("plain record serializes")
    }

    pub fn from_text(text: &str) -> Result<Self, DccError> {
        toml::from_str(text).map_err(|e| DccError::BadRecord(e.message().to_string()))
    }
}
