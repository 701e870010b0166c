//! Dense univariate polynomials over GF(q), coefficients low-to-high.

use crate::gf::{Elem, FieldTable};

/// Polynomial with trailing zero coefficients stripped; the zero polynomial
/// has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Elem) -> Self {
        Poly::new(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: Elem, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(field: &FieldTable, roots: &[Elem]) -> Self {
        roots.iter().fold(Poly::constant(1), |acc, &r| {
            acc.mul(field, &Poly::new(vec![field.neg(r), 1]))
        })
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, field: &FieldTable, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, field: &FieldTable, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, field: &FieldTable, c: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &FieldTable, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn eval(&self, field: &FieldTable, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// Formal derivative.
    pub fn derivative(&self, field: &FieldTable) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| field.scale_int(c, i as u64))
                .collect(),
        )
    }

    /// Truncation modulo `z^k`.
    pub fn truncate(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(k).copied().collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, field: &FieldTable, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0; rem.len() - dd];
        for deg in (dd..rem.len()).rev() {
            let c = field.mul(rem[deg], lead_inv);
            if c == 0 {
                continue;
            }
            quot[deg - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = deg - dd + i;
                rem[idx] = field.sub(rem[idx], field.mul(c, d));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, field: &FieldTable, divisor: &Poly) -> Poly {
        self.div_rem(field, divisor).1
    }

    pub fn monic(&self, field: &FieldTable) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(field, field.inv(self.lead()).unwrap())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, field: &FieldTable, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }
}
