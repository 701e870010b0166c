//! Symbol-error channels.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::weight;
use crate::convcode::SymbolStream;
use crate::gf::{Elem, FieldTable};

use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ErrorKind {
    /// Every symbol is hit independently with probability `rate`.
    Iid { rate: f64 },
    /// At each symbol a burst starts with probability `start_prob`; its length
    /// is uniform in `1..=max_len` symbols.
    Burst { start_prob: f64, max_len: usize },
    /// Like `Iid`, but an error is dropped whenever it would put more than
    /// `cap` errors into some window of `depth` consecutive blocks.
    WindowCapped { cap: usize, depth: usize, rate: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorModel {
    #[serde(flatten)]
    pub kind: ErrorKind,
    pub seed: u64,
}

impl ErrorKind {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let prob_ok = |p: f64| (0.0..=1.0).contains(&p);
        let ok = match *self {
            ErrorKind::Iid { rate } => prob_ok(rate),
            ErrorKind::Burst { start_prob, max_len } => prob_ok(start_prob) && max_len >= 1,
            ErrorKind::WindowCapped { depth, rate, .. } => prob_ok(rate) && depth >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(HarnessError::Parameter(format!("invalid error model {self:?}")))
        }
    }
}

/// Generator used for trial `stream` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn nonzero(field: &FieldTable, rng: &mut impl RngCore) -> Elem {
    rng.random_range(1..field.q())
}

/// Error pattern of the given shape drawn from `rng`.
pub fn error_pattern(
    field: &FieldTable,
    width: usize,
    len: usize,
    kind: &ErrorKind,
    rng: &mut impl RngCore,
) -> SymbolStream {
    let total = width * len;
    let mut flat = vec![0; total];
    if field.q() > 1 {
        match *kind {
            ErrorKind::Iid { rate } => {
                for e in flat.iter_mut() {
                    if rng.random_bool(rate) {
                        *e = nonzero(field, rng);
                    }
                }
            }
            ErrorKind::Burst { start_prob, max_len } => {
                let mut pos = 0;
                while pos < total {
                    if rng.random_bool(start_prob) {
                        let burst = rng.random_range(1..=max_len);
                        for e in flat.iter_mut().skip(pos).take(burst) {
                            *e = nonzero(field, rng);
                        }
                        pos += burst;
                    } else {
                        pos += 1;
                    }
                }
            }
            ErrorKind::WindowCapped { cap, depth, rate } => {
                let mut per_block = vec![0usize; len];
                for (i, slot) in flat.iter_mut().enumerate() {
                    if !rng.random_bool(rate) {
                        continue;
                    }
                    let t = i / width;
                    per_block[t] += 1;
                    let fits = (t.saturating_sub(depth - 1)..=t)
                        .all(|s| per_block[s..(s + depth).min(len)].iter().sum::<usize>() <= cap);
                    if fits {
                        *slot = nonzero(field, rng);
                    } else {
                        per_block[t] -= 1;
                    }
                }
            }
        }
    }
    SymbolStream::from_flat(width, &flat).unwrap_or_else(|_| SymbolStream::new(width))
}

/// Largest number of errors in any window of `depth` consecutive blocks.
pub fn max_window_weight(pattern: &SymbolStream, depth: usize) -> usize {
    let per_block: Vec<usize> = pattern.blocks().iter().map(|b| weight(b)).collect();
    (0..per_block.len()).map(|s| per_block[s..(s + depth).min(per_block.len())].iter().sum()).max().unwrap_or(0)
}

/// Adds an error pattern drawn from `rng`; returns the corrupted stream and
/// the pattern.
pub fn inject_with(
    field: &FieldTable,
    v: &SymbolStream,
    kind: &ErrorKind,
    rng: &mut impl RngCore,
) -> (SymbolStream, SymbolStream) {
    let pattern = error_pattern(field, v.width(), v.len(), kind, rng);
    if let ErrorKind::WindowCapped { cap, depth, .. } = *kind {
        assert!(max_window_weight(&pattern, depth) <= cap, "window cap exceeded");
    }
    let blocks = v
        .blocks()
        .iter()
        .zip(pattern.blocks())
        .map(|(b, e)| b.iter().zip(e).map(|(&x, &y)| field.add(x, y)).collect())
        .collect();
    (SymbolStream::from_blocks(v.width(), blocks).expect("same width"), pattern)
}

/// Deterministic corruption of `v` under `model`.
pub fn inject(field: &FieldTable, v: &SymbolStream, model: &ErrorModel) -> Result<(SymbolStream, SymbolStream), HarnessError> {
    model.kind.validate()?;
    let mut rng = trial_rng(model.seed, 0);
    Ok(inject_with(field, v, &model.kind, &mut rng))
}
