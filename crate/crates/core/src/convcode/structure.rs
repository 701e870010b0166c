//! Basicness and reducedness of a polynomial encoder.

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{Matrix, Poly};
use crate::gf::FieldTable;

use super::ConvEncoder;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasicReducedReport {
    /// The k x k minors of `G(z)` have a nonzero constant gcd.
    pub basic: bool,
    /// The sum of row degrees equals the maximal minor degree.
    pub reduced: bool,
    pub row_degrees: Vec<usize>,
    /// Row degrees, sorted, when the encoder is reduced.
    pub forney_indices: Option<Vec<usize>>,
    /// Maximal degree of a k x k minor.
    pub degree: usize,
    /// Degree of the monic gcd of the minors examined.
    pub minors_gcd_degree: usize,
}

/// Entry `(r, c)` of `G(z)` as a polynomial in `z`.
fn entry(enc: &ConvEncoder, r: usize, c: usize) -> Poly {
    Poly::new(enc.coefficients().iter().map(|g| g.get(r, c)).collect())
}

/// Fraction-free (Bareiss) determinant over `GF(q)[z]`.
pub(crate) fn poly_det(field: &FieldTable, mut a: Vec<Vec<Poly>>) -> Poly {
    let k = a.len();
    let mut negate = false;
    let mut prev = Poly::constant(1);
    for s in 0..k {
        if a[s][s].is_zero() {
            match (s + 1..k).find(|&i| !a[i][s].is_zero()) {
                Some(i) => {
                    a.swap(s, i);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in s + 1..k {
            for j in s + 1..k {
                let num = a[i][j].mul(field, &a[s][s]).sub(field, &a[i][s].mul(field, &a[s][j]));
                let (quot, rem) = num.div_rem(field, &prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = quot;
            }
        }
        prev = a[s][s].clone();
    }
    let det = a[k - 1][k - 1].clone();
    if negate {
        Poly::zero().sub(field, &det)
    } else {
        det
    }
}

/// Every k x k minor of `G(z)`, by column subset.
pub(crate) fn minors(enc: &ConvEncoder) -> impl Iterator<Item = Poly> + '_ {
    let field = enc.field();
    (0..enc.n()).combinations(enc.k()).map(move |cols| {
        let sub = (0..enc.k())
            .map(|r| cols.iter().map(|&c| entry(enc, r, c)).collect())
            .collect();
        poly_det(field, sub)
    })
}

/// Reducedness is decided by the full rank of the leading row coefficient
/// matrix; the minors are enumerated for basicness (stopping once their gcd
/// is constant) and for the degree when the encoder is not reduced.
pub fn check_basic_reduced(enc: &ConvEncoder) -> BasicReducedReport {
    let field = enc.field();
    let (k, n) = (enc.k(), enc.n());
    let row_degrees: Vec<usize> = (0..k)
        .map(|r| (0..n).filter_map(|c| entry(enc, r, c).degree()).max().unwrap_or(0))
        .collect();

    let mut hr = Matrix::zeros(k, n);
    for (r, &deg) in row_degrees.iter().enumerate() {
        for c in 0..n {
            hr.set(r, c, entry(enc, r, c).coeff(deg));
        }
    }
    let reduced = hr.rank(field) == k;

    let mut gcd = Poly::zero();
    let mut max_degree = 0;
    for det in minors(enc) {
        if let Some(deg) = det.degree() {
            max_degree = max_degree.max(deg);
            gcd = gcd.gcd(field, &det);
        }
        if reduced && gcd.degree() == Some(0) {
            break;
        }
    }
    let degree = if reduced { row_degrees.iter().sum() } else { max_degree };
    let forney_indices = reduced.then(|| row_degrees.iter().copied().sorted().collect());
    BasicReducedReport {
        basic: gcd.degree() == Some(0),
        reduced,
        row_degrees,
        forney_indices,
        degree,
        minors_gcd_degree: gcd.degree().unwrap_or(0),
    }
}
