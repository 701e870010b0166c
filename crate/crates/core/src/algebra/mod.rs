//! Polynomials, the quotient ring `GF(q)[x]/(x^n - 1)` with its scaling
//! automorphism, and dense linear algebra over GF(q).

mod matrix;
mod poly;

use thiserror::Error;

use crate::gf::{Elem, FieldTable};

pub use matrix::{solve_right, Matrix, RowSolver};
pub use poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("target is not in the row space")]
    NoSolution,
}

/// Element of `A = GF(q)[x]/(x^n - 1)`, stored as its coefficient vector
/// `(f_0, ..., f_{n-1})`. The coefficient vector is also its image in GF(q)^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    coeffs: Vec<Elem>,
}

impl RingElement {
    pub fn new(coeffs: Vec<Elem>) -> Self {
        RingElement { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        RingElement { coeffs: vec![0; n] }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 1, 0)
    }

    /// `c * x^(i mod n)`.
    pub fn monomial(n: usize, c: Elem, i: usize) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[i % n] = c;
        RingElement { coeffs }
    }

    /// Reduces a polynomial modulo `x^n - 1`.
    pub fn from_poly(field: &FieldTable, p: &Poly, n: usize) -> Self {
        let mut coeffs = vec![0; n];
        for (i, &c) in p.coeffs().iter().enumerate() {
            coeffs[i % n] = field.add(coeffs[i % n], c);
        }
        RingElement { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }
}

fn check_len(a: &RingElement, b: &RingElement) -> Result<(), AlgebraError> {
    if a.len() != b.len() {
        return Err(AlgebraError::LengthMismatch { expected: a.len(), found: b.len() });
    }
    Ok(())
}

pub fn ring_add(field: &FieldTable, a: &RingElement, b: &RingElement) -> Result<RingElement, AlgebraError> {
    check_len(a, b)?;
    Ok(RingElement::new(vec_add(field, &a.coeffs, &b.coeffs)))
}

/// Product reduced modulo `x^n - 1`.
pub fn ring_mul(field: &FieldTable, a: &RingElement, b: &RingElement) -> Result<RingElement, AlgebraError> {
    check_len(a, b)?;
    let n = a.len();
    let mut out = vec![0; n];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            let k = (i + j) % n;
            out[k] = field.add(out[k], field.mul(x, y));
        }
    }
    Ok(RingElement::new(out))
}

/// `sigma^j(g)` where `sigma(x) = alpha^k x`: the coefficient of `x^i` is
/// multiplied by `alpha^(k*i*j)`.
pub fn sigma_apply(field: &FieldTable, g: &RingElement, k: usize, j: usize) -> RingElement {
    let order = field.order() as u64;
    let step = (k as u64 % order) * (j as u64 % order) % order;
    RingElement::new(
        g.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| field.mul(c, field.alpha_pow(((step * i as u64) % order) as i64)))
            .collect(),
    )
}

/// Hamming weight.
pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Hamming distance.
pub fn distance(a: &[Elem], b: &[Elem]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn vec_add(field: &FieldTable, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn vec_sub(field: &FieldTable, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn vec_scale(field: &FieldTable, a: &[Elem], c: Elem) -> Vec<Elem> {
    a.iter().map(|&x| field.mul(x, c)).collect()
}
