//! Convolutional codes given by coefficient matrices `G_0, ..., G_m`:
//! encoding, window matrices, weight-parameter and distance searches,
//! structural checks, and the generic sliding-window decoder.

mod search;
mod sliding;
mod structure;
mod window;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Matrix};
use crate::gf::{Elem, FieldTable};

pub use search::{distance_checks, weight_param_search, DistanceProfile, DEFAULT_ENUMERATION_CAP};
pub use sliding::{
    sliding_decode, BruteForceDetail, BruteForceWindowDecoder, CycleRecord, DecodeReport, PartialDecoder,
    WindowDecision,
};
pub use structure::{check_basic_reduced, BasicReducedReport};
pub use window::{window_matrices, WindowContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvError {
    #[error("block width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("encoder needs at least one coefficient matrix")]
    NoCoefficients,
    #[error("coefficient G_{index} is {rows}x{cols}, expected {k}x{n}")]
    ShapeMismatch { index: usize, rows: usize, cols: usize, k: usize, n: usize },
    #[error("G_0 does not have full row rank (encoder is not delay-free)")]
    NotDelayFree,
    #[error("symbol {0} is not a field element")]
    SymbolOutOfRange(Elem),
    #[error("invalid window: depth {depth}, step {step}")]
    InvalidWindow { depth: usize, step: usize },
    #[error("enumeration of {count} vectors exceeds the cap of {cap}")]
    TooLargeToEnumerate { count: u64, cap: u64 },
    #[error("free distance bound {dfree_upper} is below d + 1 = {required}")]
    DistanceBound { dfree_upper: usize, required: usize },
    #[error("window decoder failed in cycle {cycle}: {reason}")]
    WindowFailure { cycle: usize, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Finite sequence of equal-width blocks over GF(q), indexed by time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolStream {
    width: usize,
    blocks: Vec<Vec<Elem>>,
}

impl SymbolStream {
    pub fn new(width: usize) -> Self {
        SymbolStream { width, blocks: Vec::new() }
    }

    pub fn zeros(width: usize, len: usize) -> Self {
        SymbolStream { width, blocks: vec![vec![0; width]; len] }
    }

    pub fn from_blocks(width: usize, blocks: Vec<Vec<Elem>>) -> Result<Self, ConvError> {
        if let Some(b) = blocks.iter().find(|b| b.len() != width) {
            return Err(ConvError::WidthMismatch { expected: width, found: b.len() });
        }
        Ok(SymbolStream { width, blocks })
    }

    /// Splits a flat symbol vector into blocks of `width`.
    pub fn from_flat(width: usize, flat: &[Elem]) -> Result<Self, ConvError> {
        if width == 0 || !flat.len().is_multiple_of(width) {
            return Err(ConvError::WidthMismatch { expected: width, found: flat.len() });
        }
        Ok(SymbolStream { width, blocks: flat.chunks(width).map(<[Elem]>::to_vec).collect() })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }

    pub fn block(&self, t: usize) -> &[Elem] {
        &self.blocks[t]
    }

    pub fn push(&mut self, block: Vec<Elem>) -> Result<(), ConvError> {
        if block.len() != self.width {
            return Err(ConvError::WidthMismatch { expected: self.width, found: block.len() });
        }
        self.blocks.push(block);
        Ok(())
    }

    pub fn truncated(&self, len: usize) -> SymbolStream {
        SymbolStream { width: self.width, blocks: self.blocks.iter().take(len).cloned().collect() }
    }

    /// Blocks `start..start+count` concatenated, zero beyond the end.
    pub fn window(&self, start: usize, count: usize) -> Vec<Elem> {
        let mut out = vec![0; count * self.width];
        for (i, t) in (start..start + count).enumerate() {
            if let Some(b) = self.blocks.get(t) {
                out[i * self.width..(i + 1) * self.width].copy_from_slice(b);
            }
        }
        out
    }

    pub fn flat(&self) -> Vec<Elem> {
        self.blocks.concat()
    }

    /// Overall Hamming weight.
    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| crate::algebra::weight(b)).sum()
    }

    /// Overall Hamming distance, the shorter stream padded with zeros.
    pub fn distance(&self, other: &SymbolStream) -> usize {
        let len = self.len().max(other.len());
        crate::algebra::distance(&self.window(0, len), &other.window(0, len))
    }
}

/// Polynomial encoder `G(z) = G_0 + G_1 z + ... + G_m z^m`, each `G_j` k x n.
#[derive(Debug, Clone)]
pub struct ConvEncoder {
    field: Arc<FieldTable>,
    n: usize,
    k: usize,
    coeffs: Vec<Matrix>,
}

impl ConvEncoder {
    pub fn new(field: Arc<FieldTable>, coeffs: Vec<Matrix>) -> Result<Self, ConvError> {
        let first = coeffs.first().ok_or(ConvError::NoCoefficients)?;
        let (k, n) = (first.rows(), first.cols());
        if k == 0 || n == 0 {
            return Err(ConvError::ShapeMismatch { index: 0, rows: k, cols: n, k: k.max(1), n: n.max(1) });
        }
        for (index, g) in coeffs.iter().enumerate() {
            if g.rows() != k || g.cols() != n {
                return Err(ConvError::ShapeMismatch { index, rows: g.rows(), cols: g.cols(), k, n });
            }
            if let Some(bad) = g.row_iter().flatten().find(|&&x| !field.contains(x)) {
                return Err(ConvError::SymbolOutOfRange(*bad));
            }
        }
        if first.rank(&field) != k {
            return Err(ConvError::NotDelayFree);
        }
        Ok(ConvEncoder { field, n, k, coeffs })
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Memory `m`: index of the last coefficient matrix.
    pub fn memory(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// `G_j`, or `None` for `j > m`.
    pub fn coefficient(&self, j: usize) -> Option<&Matrix> {
        self.coeffs.get(j)
    }

    /// Adds `u * G_j` into `acc`.
    pub(crate) fn accumulate(&self, acc: &mut [Elem], u: &[Elem], j: usize) {
        if let Some(g) = self.coeffs.get(j) {
            for (r, &c) in u.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (a, &x) in acc.iter_mut().zip(g.row(r)) {
                    *a = self.field.add(*a, self.field.mul(c, x));
                }
            }
        }
    }

    /// `v_t = sum_i u_{t-i} G_i`; the output has `len(u) + m` blocks so the
    /// encoder ends in the zero state. An empty message encodes to an
    /// empty stream.
    pub fn encode(&self, u: &SymbolStream) -> Result<SymbolStream, ConvError> {
        if u.width() != self.k {
            return Err(ConvError::WidthMismatch { expected: self.k, found: u.width() });
        }
        if u.is_empty() {
            return Ok(SymbolStream::new(self.n));
        }
        let m = self.memory();
        let len = u.len() + m;
        let mut out = Vec::with_capacity(len);
        for t in 0..len {
            let mut v = vec![0; self.n];
            for i in 0..=m.min(t) {
                if let Some(ub) = u.blocks().get(t - i) {
                    self.accumulate(&mut v, ub, i);
                }
            }
            out.push(v);
        }
        Ok(SymbolStream { width: self.n, blocks: out })
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn example_encoder() -> ConvEncoder {
        let f = Arc::new(FieldTable::prime(5).unwrap());
        let g = |r: [u32; 4]| Matrix::from_rows(vec![r.to_vec()]).unwrap();
        ConvEncoder::new(f, vec![g([2, 4, 3, 1]), g([2, 3, 2, 3]), g([2, 1, 3, 4])]).unwrap()
    }

    fn stream(width: usize, blocks: &[&[u32]]) -> SymbolStream {
        SymbolStream::from_blocks(width, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn encode_two_term_message() {
        let enc = example_encoder();
        let v = enc.encode(&stream(1, &[&[1], &[2]])).unwrap();
        assert_eq!(v, stream(4, &[&[2, 4, 3, 1], &[1, 1, 3, 0], &[1, 2, 2, 0], &[4, 2, 1, 3]]));
    }

    #[test]
    fn encode_single_symbol_reads_rows() {
        let enc = example_encoder();
        let v = enc.encode(&stream(1, &[&[1]])).unwrap();
        assert_eq!(v, stream(4, &[&[2, 4, 3, 1], &[2, 3, 2, 3], &[2, 1, 3, 4]]));
    }

    #[test]
    fn encode_zero_and_width_errors() {
        let enc = example_encoder();
        assert_eq!(enc.encode(&SymbolStream::zeros(1, 3)).unwrap().weight(), 0);
        assert_eq!(
            enc.encode(&SymbolStream::zeros(2, 3)),
            Err(ConvError::WidthMismatch { expected: 1, found: 2 })
        );
        assert!(enc.encode(&SymbolStream::new(1)).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_delay_free() {
        let f = Arc::new(FieldTable::prime(2).unwrap());
        let g0 = Matrix::from_rows(vec![vec![0, 0]]).unwrap();
        let g1 = Matrix::from_rows(vec![vec![1, 1]]).unwrap();
        assert_eq!(ConvEncoder::new(f, vec![g0, g1]).unwrap_err(), ConvError::NotDelayFree);
    }

    #[test]
    fn window_pads_with_zeros() {
        let s = stream(2, &[&[1, 2], &[3, 4]]);
        assert_eq!(s.window(1, 3), vec![3, 4, 0, 0, 0, 0]);
        assert_eq!(s.distance(&stream(2, &[&[1, 2]])), 2);
    }
}
