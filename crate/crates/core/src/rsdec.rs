//! Bounded-distance decoding of the stacked Reed-Solomon codes, message
//! recovery, and an exhaustive nearest-codeword search.
//!
//! The codes have consecutive roots `alpha^0, ..., alpha^{r-1}` (offset
//! zero), so syndromes are `S_i = w(alpha^i)` for `i < r`. The error locator
//! comes from Berlekamp-Massey, its roots from a Chien search over all `n`
//! positions, and the magnitudes from Forney's formula adjusted for offset
//! zero: `e_j = -X_j * Omega(X_j^-1) / Lambda'(X_j^-1)`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{distance, Matrix, Poly};
use crate::dcc::StackedCode;
use crate::enumerate::{for_each_vector, space_size};
use crate::gf::{Elem, FieldTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RsError {
    #[error("word has length {found}, expected {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("word is not a codeword")]
    NotInCode,
    #[error("enumeration of {count} messages exceeds the cap of {cap}")]
    TooLargeToEnumerate { count: u64, cap: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RsStatus {
    Decoded,
    Failure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RsDecodeResult {
    pub status: RsStatus,
    /// Present when decoded.
    pub codeword: Option<Vec<Elem>>,
    /// Number of corrected positions.
    pub error_count: usize,
}

impl RsDecodeResult {
    fn failure() -> Self {
        RsDecodeResult { status: RsStatus::Failure, codeword: None, error_count: 0 }
    }

    pub fn is_decoded(&self) -> bool {
        self.status == RsStatus::Decoded
    }
}

/// `S_i = w(alpha^i)` for `i = 0..count`.
pub fn syndromes(field: &FieldTable, word: &[Elem], count: usize) -> Vec<Elem> {
    let poly = Poly::new(word.to_vec());
    (0..count).map(|i| poly.eval(field, field.alpha_pow(i as i64))).collect()
}

/// Shortest LFSR generating the syndrome sequence; returns the connection
/// polynomial `Lambda(x)` with `Lambda(0) = 1` and its length.
fn berlekamp_massey(field: &FieldTable, synd: &[Elem]) -> (Poly, usize) {
    let mut c = vec![1];
    let mut b = vec![1];
    let mut len = 0;
    let mut shift = 1;
    let mut last = 1;
    for idx in 0..synd.len() {
        let mut delta = synd[idx];
        for i in 1..=len.min(c.len() - 1) {
            delta = field.add(delta, field.mul(c[i], synd[idx - i]));
        }
        if delta == 0 {
            shift += 1;
            continue;
        }
        let coef = field.div(delta, last).expect("nonzero discrepancy");
        let mut next = c.clone();
        if next.len() < b.len() + shift {
            next.resize(b.len() + shift, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            next[i + shift] = field.sub(next[i + shift], field.mul(coef, bi));
        }
        if 2 * len <= idx {
            b = c;
            len = idx + 1 - len;
            last = delta;
            shift = 1;
        } else {
            shift += 1;
        }
        c = next;
    }
    (Poly::new(c), len)
}

/// Corrects up to `t_l` errors in `word` with respect to `B_l`. Returns
/// `Failure` when no codeword lies within `t_l`, except that a word closer
/// to a different codeword may decode to it undetectably.
pub fn rs_bounded_decode(word: &[Elem], code: &StackedCode) -> Result<RsDecodeResult, RsError> {
    let field = code.field();
    let n = code.n();
    if word.len() != n {
        return Err(RsError::WidthMismatch { expected: n, found: word.len() });
    }
    let r = code.parity_len();
    let synd = syndromes(field, word, r);
    if synd.iter().all(|&s| s == 0) {
        return Ok(RsDecodeResult { status: RsStatus::Decoded, codeword: Some(word.to_vec()), error_count: 0 });
    }
    let t = code.radius();
    if t == 0 {
        return Ok(RsDecodeResult::failure());
    }
    let (locator, len) = berlekamp_massey(field, &synd);
    if len > t || locator.degree() != Some(len) {
        return Ok(RsDecodeResult::failure());
    }

    // Chien search: position j is in error iff Lambda(alpha^-j) = 0.
    let positions: Vec<usize> = (0..n).filter(|&j| locator.eval(field, field.alpha_pow(-(j as i64))) == 0).collect();
    if positions.len() != len {
        return Ok(RsDecodeResult::failure());
    }

    let omega = Poly::new(synd).mul(field, &locator).truncate(r);
    let deriv = locator.derivative(field);
    let mut corrected = word.to_vec();
    for &j in &positions {
        let x_inv = field.alpha_pow(-(j as i64));
        let denom = deriv.eval(field, x_inv);
        if denom == 0 {
            return Ok(RsDecodeResult::failure());
        }
        let num = field.mul(field.alpha_pow(j as i64), omega.eval(field, x_inv));
        let magnitude = field.neg(field.div(num, denom).expect("nonzero denominator"));
        if magnitude == 0 {
            return Ok(RsDecodeResult::failure());
        }
        corrected[j] = field.sub(corrected[j], magnitude);
    }
    if syndromes(field, &corrected, r).iter().any(|&s| s != 0) {
        return Ok(RsDecodeResult::failure());
    }
    Ok(RsDecodeResult { status: RsStatus::Decoded, codeword: Some(corrected), error_count: len })
}

/// Coordinates `x = (x_0, ..., x_l)` with `x * G_{l,0} = codeword`.
pub fn recover_message(codeword: &[Elem], code: &StackedCode) -> Result<Vec<Elem>, RsError> {
    if codeword.len() != code.n() {
        return Err(RsError::WidthMismatch { expected: code.n(), found: codeword.len() });
    }
    code.solver().solve(code.field(), codeword).ok_or(RsError::NotInCode)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub codeword: Vec<Elem>,
    pub message: Vec<Elem>,
    pub distance: usize,
}

/// Codewords near a word, sorted by distance and then by message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub candidates: Vec<Candidate>,
}

impl SearchResult {
    pub fn best(&self) -> Option<&Candidate> {
        self.candidates.first()
    }
}

/// Exhaustive search of `im gen` around `word`: every codeword within
/// `radius`, or, when there is none, every codeword at the minimum distance.
/// The sorted list is cut to `max_list` entries.
pub fn nearest_codeword_search(
    field: &FieldTable,
    word: &[Elem],
    gen: &Matrix,
    radius: usize,
    max_list: usize,
    cap: u64,
) -> Result<SearchResult, RsError> {
    if word.len() != gen.cols() {
        return Err(RsError::WidthMismatch { expected: gen.cols(), found: word.len() });
    }
    let count = space_size(field.q(), gen.rows());
    if count > cap {
        return Err(RsError::TooLargeToEnumerate { count, cap });
    }
    let mut within = Vec::new();
    let mut closest: Vec<Candidate> = Vec::new();
    for_each_vector(field.q(), gen.rows(), |x| {
        let codeword = gen.vec_mul(field, x);
        let dist = distance(&codeword, word);
        if dist <= radius {
            within.push(Candidate { codeword, message: x.to_vec(), distance: dist });
        } else if within.is_empty() {
            match closest.first().map(|c| c.distance) {
                Some(best) if dist > best => {}
                Some(best) if dist == best => {
                    if closest.len() < max_list {
                        closest.push(Candidate { codeword, message: x.to_vec(), distance: dist })
                    }
                }
                _ => closest = vec![Candidate { codeword, message: x.to_vec(), distance: dist }],
            }
        }
    });
    let mut candidates = if within.is_empty() { closest } else { within };
    // enumeration order is lexicographic in the message, and the sort is stable
    candidates.sort_by_key(|c| c.distance);
    candidates.truncate(max_list);
    Ok(SearchResult { candidates })
}
