//! Partial block decoder for doubly cyclic codes with depth `m + 1` and
//! step 1.
//!
//! The descent tries levels `l = m, ..., 0`: the block `v~_l` is decoded in
//! the Reed-Solomon code `B_l`, the recovered coordinates `x^_0..x^_l` are
//! re-encoded to a partial window codeword `w^(l)`, and `w^(l)_0` is accepted
//! when `w^(l)` lies within `floor(d^(l)/2)` of `(v~_0, ..., v~_l)`. When no
//! level is accepted the decoder extends the partial codewords block by
//! block with nearest codewords of `im G_0` and keeps the overall closest.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{distance, vec_sub};
use crate::convcode::{ConvError, PartialDecoder, WindowDecision};
use crate::dcc::DoublyCyclicCode;
use crate::enumerate::space_size;
use crate::gf::Elem;
use crate::rsdec::{nearest_codeword_search, recover_message, rs_bounded_decode, RsStatus};

pub const DEFAULT_BRANCH_CAP: usize = 4;
pub const DEFAULT_MAX_LIST: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WindecError {
    #[error("window has length {found}, expected {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("no candidate codewords to choose from")]
    EmptyCandidates,
    #[error("no level passed its threshold")]
    Undecodable,
    #[error("enumeration of {count} vectors exceeds the cap of {cap}")]
    TooLargeToEnumerate { count: u64, cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindecConfig {
    /// Report an error instead of running the fallback.
    pub strict: bool,
    /// Replace the Reed-Solomon step by a list of all codewords of `B_l`
    /// that could still pass the level threshold.
    pub step2_list: bool,
    /// Nearest `im G_0` codewords kept per extended block.
    pub branch_cap: usize,
    /// Bound on list sizes and on the number of partial words being extended.
    pub max_list: usize,
    /// Largest message space searched exhaustively.
    pub enum_cap: u64,
}

impl Default for WindecConfig {
    fn default() -> Self {
        WindecConfig {
            strict: false,
            step2_list: false,
            branch_cap: DEFAULT_BRANCH_CAP,
            max_list: DEFAULT_MAX_LIST,
            enum_cap: crate::convcode::DEFAULT_ENUMERATION_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelUsed {
    Level(usize),
    /// Extension of partial codewords from successful level decodes.
    FallbackA,
    /// Extension from a nearest `im G_0` codeword of the first block.
    FallbackB,
}

/// One Step 2/3 attempt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelRecord {
    pub level: usize,
    pub rs_status: RsStatus,
    pub rs_errors: usize,
    /// `x^_0, ..., x^_l` (empty when decoding failed).
    pub coords: Vec<Elem>,
    /// `w^(l)` (empty when decoding failed).
    pub partial: Vec<Elem>,
    pub distance: Option<usize>,
    /// `floor(d^(l) / 2)`.
    pub threshold: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialDecodeOutcome {
    pub v0_hat: Vec<Elem>,
    pub x0_hat: Vec<Elem>,
    pub level_used: LevelUsed,
    pub trace: Vec<LevelRecord>,
    pub error_detected: bool,
    /// Reed-Solomon decodes performed (at most `m + 1`).
    pub rs_decodes: usize,
    /// Chosen codeword, `w^(l)` for a level return or a full window codeword
    /// for a fallback return.
    pub codeword: Vec<Elem>,
    /// Its coordinates `x^_0, ...`.
    pub coords: Vec<Elem>,
    /// Distance from `codeword` to the matching prefix of the window.
    pub distance: usize,
}

/// `floor(d^(l) / 2)` for each level.
pub fn level_thresholds(code: &DoublyCyclicCode) -> Vec<usize> {
    (0..=code.m()).map(|l| code.partial_d(l) / 2).collect()
}

/// First `coords.len() / k` blocks of `coords * Ghat`.
pub fn partial_encode(code: &DoublyCyclicCode, coords: &[Elem]) -> Vec<Elem> {
    let (n, k) = (code.n(), code.k());
    let blocks = coords.len() / k;
    let enc = code.encoder();
    let mut out = vec![0; blocks * n];
    for j in 0..blocks {
        let block = &mut out[j * n..(j + 1) * n];
        for a in 0..=j {
            if j - a <= code.m() {
                enc.accumulate(block, &coords[a * k..(a + 1) * k], j - a);
            }
        }
    }
    out
}

/// `v~_i - sum_{a<i} x^_a G_{i-a}`: what block `i` of the window must match
/// once the coordinates before it are fixed.
fn residual_target(code: &DoublyCyclicCode, window: &[Elem], coords: &[Elem], i: usize) -> Vec<Elem> {
    let (n, k) = (code.n(), code.k());
    let mut acc = vec![0; n];
    for a in 0..i {
        if i - a <= code.m() {
            code.encoder().accumulate(&mut acc, &coords[a * k..(a + 1) * k], i - a);
        }
    }
    vec_sub(code.field(), &window[i * n..(i + 1) * n], &acc)
}

/// Nearest codewords of `im G_0` to `target`, at most `limit` of them.
fn nearest_in_g0(
    code: &DoublyCyclicCode,
    target: &[Elem],
    limit: usize,
    cap: u64,
) -> Result<Vec<Vec<Elem>>, WindecError> {
    let g0 = code.encoder().coefficient(0).expect("G_0");
    let found = nearest_codeword_search(code.field(), target, g0, 0, limit.max(1), cap).map_err(|e| match e {
        crate::rsdec::RsError::TooLargeToEnumerate { count, cap } => WindecError::TooLargeToEnumerate { count, cap },
        other => unreachable!("{other}"),
    })?;
    Ok(found.candidates.into_iter().map(|c| c.message).collect())
}

/// Extends coordinates `x^_0..x^_l` to a full set `x^_0..x^_m`, choosing each
/// further `x^_i` so that `x^_i G_0` is nearest to the residual target of
/// block `i`. Up to `branch_cap` nearest choices are followed per block and
/// at most `max_list` partial words survive each step. Returns the
/// coordinates of every resulting window codeword.
pub fn extend_partial(
    coords: &[Elem],
    window: &[Elem],
    code: &DoublyCyclicCode,
    config: &WindecConfig,
) -> Result<Vec<Vec<Elem>>, WindecError> {
    let (n, k, m) = (code.n(), code.k(), code.m());
    if window.len() != (m + 1) * n {
        return Err(WindecError::WidthMismatch { expected: (m + 1) * n, found: window.len() });
    }
    let mut frontier = vec![coords.to_vec()];
    for i in coords.len() / k..=m {
        let mut next = Vec::new();
        for partial in &frontier {
            let target = residual_target(code, window, partial, i);
            for y in nearest_in_g0(code, &target, config.branch_cap, config.enum_cap)? {
                let mut ext = partial.clone();
                ext.extend_from_slice(&y);
                next.push(ext);
            }
        }
        if next.len() > config.max_list {
            let blocks = (i + 1) * n;
            next.sort_by_cached_key(|c| (distance(&partial_encode(code, c), &window[..blocks]), c.clone()));
            next.truncate(config.max_list);
        }
        frontier = next;
    }
    Ok(frontier)
}

/// Candidate closest to `window`; ties go to the lexicographically smallest
/// coordinates. Returns `(codeword, coords)`.
pub fn fallback_select(
    candidates: &[Vec<Elem>],
    window: &[Elem],
    code: &DoublyCyclicCode,
) -> Result<(Vec<Elem>, Vec<Elem>), WindecError> {
    candidates
        .iter()
        .map(|c| (partial_encode(code, c), c))
        .min_by(|(wa, ca), (wb, cb)| distance(wa, window).cmp(&distance(wb, window)).then_with(|| ca.cmp(cb)))
        .map(|(w, c)| (w, c.clone()))
        .ok_or(WindecError::EmptyCandidates)
}

/// Coordinate vectors with the number of errors corrected to reach them.
type LevelCandidates = Vec<(Vec<Elem>, usize)>;

/// Step 2 for one level: candidate coordinate vectors with their error
/// counts, and whether a Reed-Solomon decode was spent.
fn level_candidates(
    code: &DoublyCyclicCode,
    window: &[Elem],
    level: usize,
    threshold: usize,
    config: &WindecConfig,
) -> Result<(LevelCandidates, bool), WindecError> {
    let n = code.n();
    let stack = code.stack(level);
    let block = &window[level * n..(level + 1) * n];
    if config.step2_list {
        // a codeword of B_l farther than the threshold from v~_l cannot pass Step 3
        let found = nearest_codeword_search(code.field(), block, stack.generator(), threshold, config.max_list, config.enum_cap)
            .map_err(|e| match e {
                crate::rsdec::RsError::TooLargeToEnumerate { count, cap } => {
                    WindecError::TooLargeToEnumerate { count, cap }
                }
                other => unreachable!("{other}"),
            })?;
        let within = found.candidates.into_iter().filter(|c| c.distance <= threshold);
        return Ok((within.map(|c| (c.message, c.distance)).collect(), false));
    }
    let res = rs_bounded_decode(block, stack).expect("block width");
    let Some(cw) = res.codeword else { return Ok((Vec::new(), true)) };
    let coords = recover_message(&cw, stack).expect("decoded word lies in B_l");
    Ok((vec![(coords, res.error_count)], true))
}

/// Decodes one window `(v~_0, ..., v~_m)` of a doubly cyclic code.
///
/// Whenever the window is within `floor(d/2)` of a window codeword `v`, the
/// returned first block is `v_0`. A fallback return means no such codeword
/// exists and sets `error_detected`; in strict mode it is an error instead.
pub fn partial_block_decode(
    window: &[Elem],
    code: &DoublyCyclicCode,
    config: &WindecConfig,
) -> Result<PartialDecodeOutcome, WindecError> {
    let (n, k, m) = (code.n(), code.k(), code.m());
    if window.len() != (m + 1) * n {
        return Err(WindecError::WidthMismatch { expected: (m + 1) * n, found: window.len() });
    }
    let thresholds = level_thresholds(code);
    let mut trace = Vec::new();
    let mut rs_decodes = 0;
    let mut sources: Vec<Vec<Elem>> = Vec::new();

    for level in (0..=m).rev() {
        let threshold = thresholds[level];
        let (cands, spent) = level_candidates(code, window, level, threshold, config)?;
        rs_decodes += usize::from(spent);
        if cands.is_empty() {
            trace.push(LevelRecord {
                level,
                rs_status: RsStatus::Failure,
                rs_errors: 0,
                coords: Vec::new(),
                partial: Vec::new(),
                distance: None,
                threshold,
                pass: false,
            });
            continue;
        }
        for (coords, rs_errors) in cands {
            let partial = partial_encode(code, &coords);
            let dist = distance(&partial, &window[..(level + 1) * n]);
            let pass = dist <= threshold;
            trace.push(LevelRecord {
                level,
                rs_status: RsStatus::Decoded,
                rs_errors,
                coords: coords.clone(),
                partial: partial.clone(),
                distance: Some(dist),
                threshold,
                pass,
            });
            if pass {
                return Ok(PartialDecodeOutcome {
                    v0_hat: partial[..n].to_vec(),
                    x0_hat: coords[..k].to_vec(),
                    level_used: LevelUsed::Level(level),
                    trace,
                    error_detected: false,
                    rs_decodes,
                    codeword: partial,
                    coords,
                    distance: dist,
                });
            }
            sources.push(coords);
        }
    }

    if config.strict {
        return Err(WindecError::Undecodable);
    }
    let level_used = if sources.is_empty() {
        sources = nearest_in_g0(code, &window[..n], config.branch_cap, config.enum_cap)?;
        LevelUsed::FallbackB
    } else {
        LevelUsed::FallbackA
    };
    let mut pool = Vec::new();
    for src in &sources {
        pool.extend(extend_partial(src, window, code, config)?);
    }
    let (codeword, coords) = fallback_select(&pool, window, code)?;
    Ok(PartialDecodeOutcome {
        v0_hat: codeword[..n].to_vec(),
        x0_hat: coords[..k].to_vec(),
        level_used,
        trace,
        error_detected: true,
        rs_decodes,
        distance: distance(&codeword, window),
        codeword,
        coords,
    })
}

/// Window decoder plugging [`partial_block_decode`] into the sliding decoder.
#[derive(Debug, Clone)]
pub struct WindowBlockDecoder {
    code: Arc<DoublyCyclicCode>,
    config: WindecConfig,
}

impl WindowBlockDecoder {
    /// Fails when a search the configuration may need is too large to
    /// enumerate.
    pub fn new(code: Arc<DoublyCyclicCode>, config: WindecConfig) -> Result<Self, WindecError> {
        let q = code.field().q();
        let mut needed = if config.strict { 0 } else { space_size(q, code.k()) };
        if config.step2_list {
            needed = needed.max(space_size(q, (code.m() + 1) * code.k()));
        }
        if needed > config.enum_cap {
            return Err(WindecError::TooLargeToEnumerate { count: needed, cap: config.enum_cap });
        }
        Ok(WindowBlockDecoder { code, config })
    }

    pub fn code(&self) -> &DoublyCyclicCode {
        &self.code
    }

    pub fn config(&self) -> &WindecConfig {
        &self.config
    }
}

impl PartialDecoder for WindowBlockDecoder {
    type Detail = PartialDecodeOutcome;

    fn decode_window(&self, word: &[Elem]) -> Result<WindowDecision<PartialDecodeOutcome>, ConvError> {
        let outcome = partial_block_decode(word, &self.code, &self.config).map_err(|e| match e {
            WindecError::WidthMismatch { expected, found } => ConvError::WidthMismatch { expected, found },
            other => ConvError::WindowFailure { cycle: 0, reason: other.to_string() },
        })?;
        Ok(WindowDecision { messages: outcome.x0_hat.clone(), best_effort: outcome.error_detected, detail: outcome })
    }
}
