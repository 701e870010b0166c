//! Sliding-window decoding: each cycle removes the contribution of already
//! decoded messages from the next `N` received blocks, decodes the result
//! against the window code, and commits the first `L` blocks.

use std::fmt::Debug;

use serde::Serialize;

use crate::algebra::{distance, vec_sub};
use crate::enumerate::{for_each_vector, space_size};
use crate::gf::Elem;

use super::{ConvEncoder, ConvError, SymbolStream, WindowContext};

/// Output of a window decoder for one cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowDecision<D> {
    /// First `L` message blocks of the chosen window codeword, `L * k` symbols.
    pub messages: Vec<Elem>,
    /// The decoder could not certify the choice (no window codeword within
    /// the correction radius was found by the primary path).
    pub best_effort: bool,
    pub detail: D,
}

/// Decodes a window word against `im Ghat`. If the word is within
/// `floor(d/2)` of the window code, the returned prefix must belong to a
/// codeword within that distance.
pub trait PartialDecoder {
    type Detail: Clone + Debug + Serialize;

    fn decode_window(&self, word: &[Elem]) -> Result<WindowDecision<Self::Detail>, ConvError>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleRecord<D> {
    pub cycle: usize,
    /// Received window `(v~_{jL}, ..., v~_{jL+N-1})`, zero-padded past the end.
    pub received: Vec<Elem>,
    /// Contribution of past decoded messages, `(u^_{jL-m}, ..., u^_{jL-1}) * Gtilde`.
    pub state: Vec<Elem>,
    /// `received - state`, the word handed to the window decoder.
    pub word: Vec<Elem>,
    pub messages: Vec<Elem>,
    pub decoded: Vec<Elem>,
    pub best_effort: bool,
    pub detail: D,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeReport<D> {
    pub decoded: SymbolStream,
    pub messages: SymbolStream,
    pub cycles: Vec<CycleRecord<D>>,
    /// Distance between the decoded codeword and the received word on each
    /// window of `N` blocks starting at `j = 0..len`.
    pub window_distances: Vec<usize>,
    /// Windows whose distance exceeds `floor(d/2)`.
    pub detection_flags: Vec<bool>,
    pub overall_distance: usize,
}

impl<D> DecodeReport<D> {
    pub fn any_detected(&self) -> bool {
        self.detection_flags.iter().any(|&f| f)
    }

    pub fn best_effort_cycles(&self) -> usize {
        self.cycles.iter().filter(|c| c.best_effort).count()
    }

    pub fn flagged_windows(&self) -> Vec<usize> {
        self.detection_flags.iter().enumerate().filter_map(|(j, &f)| f.then_some(j)).collect()
    }
}

/// Runs the sliding-window decoder over a finite received stream. Windows
/// reaching past the last block are padded with zero blocks; the output has
/// as many blocks as the input.
pub fn sliding_decode<P: PartialDecoder>(
    received: &SymbolStream,
    ctx: &WindowContext,
    enc: &ConvEncoder,
    decoder: &P,
) -> Result<DecodeReport<P::Detail>, ConvError> {
    let (n, k, m) = (enc.n(), enc.k(), enc.memory());
    let (depth, step) = (ctx.depth, ctx.step);
    if received.width() != n {
        return Err(ConvError::WidthMismatch { expected: n, found: received.width() });
    }
    let field = enc.field();
    if let Some(&bad) = received.blocks().iter().flatten().find(|&&x| !field.contains(x)) {
        return Err(ConvError::SymbolOutOfRange(bad));
    }
    let total = received.len();
    let mut messages: Vec<Vec<Elem>> = Vec::with_capacity(total + step);
    let mut decoded: Vec<Vec<Elem>> = Vec::with_capacity(total + step);
    let mut cycles = Vec::new();

    let mut cycle = 0;
    while cycle * step < total {
        let start = cycle * step;
        let window = received.window(start, depth);
        let mut past = vec![0; m * k];
        for r in 0..m {
            if let Some(t) = (start + r).checked_sub(m) {
                past[r * k..(r + 1) * k].copy_from_slice(&messages[t]);
            }
        }
        let state = if m == 0 { vec![0; depth * n] } else { ctx.gtilde.vec_mul(field, &past) };
        let word = vec_sub(field, &window, &state);

        let decision = decoder.decode_window(&word).map_err(|e| match e {
            ConvError::WindowFailure { reason, .. } => ConvError::WindowFailure { cycle, reason },
            other => other,
        })?;
        if decision.messages.len() != step * k {
            return Err(ConvError::WidthMismatch { expected: step * k, found: decision.messages.len() });
        }

        let mut committed = Vec::with_capacity(step * n);
        for t in 0..step {
            let mut block = state[t * n..(t + 1) * n].to_vec();
            for i in 0..=t {
                enc.accumulate(&mut block, &decision.messages[i * k..(i + 1) * k], t - i);
            }
            committed.extend_from_slice(&block);
            decoded.push(block);
            messages.push(decision.messages[t * k..(t + 1) * k].to_vec());
        }
        cycles.push(CycleRecord {
            cycle,
            received: window,
            state,
            word,
            messages: decision.messages,
            decoded: committed,
            best_effort: decision.best_effort,
            detail: decision.detail,
        });
        cycle += 1;
    }
    decoded.truncate(total);
    messages.truncate(total);

    let decoded = SymbolStream::from_blocks(n, decoded)?;
    let messages = SymbolStream::from_blocks(k, messages)?;
    let full = enc.encode(&messages)?;
    assert_eq!(full.truncated(total), decoded, "decoded stream must be the encoding of the decoded messages");

    let window_distances: Vec<usize> =
        (0..total).map(|j| distance(&full.window(j, depth), &received.window(j, depth))).collect();
    let detection_flags = window_distances.iter().map(|&w| w > ctx.radius()).collect();
    let overall_distance = full.distance(received);
    Ok(DecodeReport { decoded, messages, cycles, window_distances, detection_flags, overall_distance })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForceDetail {
    /// Distance from the window word to the chosen window codeword.
    pub distance: usize,
}

/// Exact nearest-codeword window decoder for any depth and step, by
/// enumeration of the whole window code. Ties go to the lexicographically
/// smallest message.
#[derive(Debug, Clone)]
pub struct BruteForceWindowDecoder {
    step_symbols: usize,
    radius: usize,
    strict: bool,
    codewords: Vec<(Vec<Elem>, Vec<Elem>)>,
}

impl BruteForceWindowDecoder {
    pub fn new(enc: &ConvEncoder, ctx: &WindowContext, cap: u64, strict: bool) -> Result<Self, ConvError> {
        let field = enc.field();
        let rows = ctx.ghat.rows();
        let count = space_size(field.q(), rows);
        if count > cap {
            return Err(ConvError::TooLargeToEnumerate { count, cap });
        }
        let mut codewords = Vec::with_capacity(count as usize);
        for_each_vector(field.q(), rows, |u| codewords.push((u.to_vec(), ctx.ghat.vec_mul(field, u))));
        Ok(BruteForceWindowDecoder { step_symbols: ctx.step * enc.k(), radius: ctx.radius(), strict, codewords })
    }

    pub fn window_code(&self) -> impl Iterator<Item = (&[Elem], &[Elem])> {
        self.codewords.iter().map(|(u, v)| (u.as_slice(), v.as_slice()))
    }
}

impl PartialDecoder for BruteForceWindowDecoder {
    type Detail = BruteForceDetail;

    fn decode_window(&self, word: &[Elem]) -> Result<WindowDecision<BruteForceDetail>, ConvError> {
        let (msg, dist) = self
            .codewords
            .iter()
            .map(|(u, v)| (u, distance(v, word)))
            .min_by_key(|&(_, d)| d)
            .expect("window code is nonempty");
        let best_effort = dist > self.radius;
        if best_effort && self.strict {
            return Err(ConvError::WindowFailure {
                cycle: 0,
                reason: format!("no window codeword within {} (nearest at {dist})", self.radius),
            });
        }
        Ok(WindowDecision {
            messages: msg[..self.step_symbols].to_vec(),
            best_effort,
            detail: BruteForceDetail { distance: dist },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::example_encoder;
    use super::*;

    fn stream(blocks: &[[u32; 4]]) -> SymbolStream {
        SymbolStream::from_blocks(4, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn brute_force_recovers_example_codeword() {
        let enc = example_encoder();
        let ctx = WindowContext::new(&enc, 3, 1, 8).unwrap();
        let dec = BruteForceWindowDecoder::new(&enc, &ctx, 1 << 20, false).unwrap();
        let rx = stream(&[[4, 0, 3, 1], [1, 1, 3, 0], [3, 2, 1, 0], [3, 2, 1, 3], [0, 1, 0, 0]]);
        let rep = sliding_decode(&rx, &ctx, &enc, &dec).unwrap();
        assert_eq!(rep.decoded, stream(&[[2, 4, 3, 1], [1, 1, 3, 0], [1, 2, 2, 0], [4, 2, 1, 3], [0, 0, 0, 0]]));
        assert_eq!(rep.messages.flat(), vec![1, 2, 0, 0, 0]);
        assert_eq!(rep.overall_distance, 6);
        assert!(!rep.any_detected());
        assert_eq!(rep.cycles[1].state, vec![2, 3, 2, 3, 2, 1, 3, 4, 0, 0, 0, 0]);
    }

    #[test]
    fn step_two_decoding() {
        let enc = example_encoder();
        let d = crate::convcode::weight_param_search(&enc, 3, 2, 1 << 20).unwrap();
        let ctx = WindowContext::new(&enc, 3, 2, d).unwrap();
        let dec = BruteForceWindowDecoder::new(&enc, &ctx, 1 << 20, true).unwrap();
        let u = SymbolStream::from_blocks(1, vec![vec![3], vec![0], vec![4], vec![1], vec![2]]).unwrap();
        let v = enc.encode(&u).unwrap();
        let rep = sliding_decode(&v, &ctx, &enc, &dec).unwrap();
        assert_eq!(rep.decoded, v);
        assert_eq!(rep.messages.truncated(5), u);
        assert_eq!(rep.cycles.len(), 4);
    }

    #[test]
    fn empty_and_zero_streams() {
        let enc = example_encoder();
        let ctx = WindowContext::new(&enc, 3, 1, 8).unwrap();
        let dec = BruteForceWindowDecoder::new(&enc, &ctx, 1 << 20, false).unwrap();
        let rep = sliding_decode(&SymbolStream::new(4), &ctx, &enc, &dec).unwrap();
        assert!(rep.decoded.is_empty() && rep.cycles.is_empty());
        let rep = sliding_decode(&SymbolStream::zeros(4, 6), &ctx, &enc, &dec).unwrap();
        assert_eq!(rep.decoded.weight() + rep.messages.weight(), 0);
        assert!(sliding_decode(&SymbolStream::zeros(3, 2), &ctx, &enc, &dec).is_err());
    }

    #[test]
    fn strict_mode_reports_cycle() {
        let enc = example_encoder();
        let ctx = WindowContext::new(&enc, 3, 1, 8).unwrap();
        let dec = BruteForceWindowDecoder::new(&enc, &ctx, 1 << 20, true).unwrap();
        let noisy = stream(&[[1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1]]);
        assert!(matches!(
            sliding_decode(&noisy, &ctx, &enc, &dec),
            Err(ConvError::WindowFailure { cycle: 0, .. })
        ));
    }
}
