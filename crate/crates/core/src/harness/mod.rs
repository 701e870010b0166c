//! Channel simulation, stream files, the blockwise Reed-Solomon baseline and
//! Monte-Carlo comparison runs.

mod channel;
mod streamfile;

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use channel::{error_pattern, inject, inject_with, max_window_weight, trial_rng, ErrorKind, ErrorModel};
pub use streamfile::{Role, StreamFile};

use crate::convcode::{sliding_decode, ConvError, DecodeReport, SymbolStream};
use crate::dcc::{DccError, DoublyCyclicCode};
use crate::rsdec::{rs_bounded_decode, RsDecodeResult};
use crate::windec::{PartialDecodeOutcome, WindecConfig, WindecError, WindowBlockDecoder};

/// Failures split by who is at fault: malformed data or bad parameters.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("data error: {0}")]
    Data(String),
    #[error("parameter error: {0}")]
    Parameter(String),
}

impl HarnessError {
    /// Process exit status: 3 for data errors, 4 for parameter errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Data(_) => 3,
            HarnessError::Parameter(_) => 4,
        }
    }
}

impl From<DccError> for HarnessError {
    fn from(e: DccError) -> Self {
        match e {
            DccError::WidthMismatch { .. } | DccError::BadRecord(_) => HarnessError::Data(e.to_string()),
            DccError::Conv(c) => c.into(),
            _ => HarnessError::Parameter(e.to_string()),
        }
    }
}

impl From<ConvError> for HarnessError {
    fn from(e: ConvError) -> Self {
        match e {
            ConvError::WidthMismatch { .. } | ConvError::SymbolOutOfRange(_) | ConvError::WindowFailure { .. } => {
                HarnessError::Data(e.to_string())
            }
            _ => HarnessError::Parameter(e.to_string()),
        }
    }
}

impl From<WindecError> for HarnessError {
    fn from(e: WindecError) -> Self {
        match e {
            WindecError::WidthMismatch { .. } => HarnessError::Data(e.to_string()),
            _ => HarnessError::Parameter(e.to_string()),
        }
    }
}

/// Decodes every block independently in `B_0`.
pub fn baseline_blockwise_rs(received: &SymbolStream, code: &DoublyCyclicCode) -> Result<Vec<RsDecodeResult>, HarnessError> {
    if received.width() != code.n() {
        return Err(HarnessError::Data(format!("block width {} but n = {}", received.width(), code.n())));
    }
    Ok(received
        .blocks()
        .iter()
        .map(|b| rs_bounded_decode(b, code.stack(0)).expect("width checked"))
        .collect())
}

/// Sliding-window decode with the level-descent window decoder.
pub fn decode_stream(
    code: &Arc<DoublyCyclicCode>,
    received: &SymbolStream,
    config: &WindecConfig,
) -> Result<DecodeReport<PartialDecodeOutcome>, HarnessError> {
    let decoder = WindowBlockDecoder::new(code.clone(), config.clone())?;
    Ok(sliding_decode(received, &code.window_context(None), code.encoder(), &decoder)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub trials: usize,
    /// Message lengths are uniform in `1..=max_message_len`.
    pub max_message_len: usize,
    pub model: ErrorModel,
    pub windec: WindecConfig,
}

/// Aggregate counts of a simulation run.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SimReport {
    pub trials: usize,
    pub blocks: usize,
    pub sliding_block_errors: usize,
    pub sliding_failed_trials: usize,
    pub baseline_block_errors: usize,
    pub baseline_failed_trials: usize,
    /// Trials in which the decoder flagged some window.
    pub detected_trials: usize,
    /// Trials whose error pattern kept every window within `floor(d/2)`.
    pub window_condition_trials: usize,
    /// Of those, trials the sliding decoder got wrong (must be zero).
    pub guarantee_violations: usize,
    pub sliding_block_error_rate: f64,
    pub baseline_block_error_rate: f64,
}

impl SimReport {
    fn merge(mut self, o: SimReport) -> SimReport {
        self.trials += o.trials;
        self.blocks += o.blocks;
        self.sliding_block_errors += o.sliding_block_errors;
        self.sliding_failed_trials += o.sliding_failed_trials;
        self.baseline_block_errors += o.baseline_block_errors;
        self.baseline_failed_trials += o.baseline_failed_trials;
        self.detected_trials += o.detected_trials;
        self.window_condition_trials += o.window_condition_trials;
        self.guarantee_violations += o.guarantee_violations;
        self
    }
}

/// One trial: random message, encode, corrupt, decode both ways.
pub fn run_trial(code: &Arc<DoublyCyclicCode>, config: &SimConfig, trial: u64) -> Result<SimReport, HarnessError> {
    let field = code.field();
    let mut rng = trial_rng(config.model.seed, trial);
    let len = rng.random_range(1..=config.max_message_len.max(1));
    let symbols: Vec<u32> = (0..len * code.k()).map(|_| rng.random_range(0..field.q())).collect();
    let message = SymbolStream::from_flat(code.k(), &symbols).expect("whole blocks");
    let sent = code.encoder().encode(&message)?;
    let (received, pattern) = inject_with(field, &sent, &config.model.kind, &mut rng);

    let report = decode_stream(code, &received, &config.windec)?;
    let sliding_errors = sent.blocks().iter().zip(report.decoded.blocks()).filter(|(a, b)| a != b).count();
    let baseline = baseline_blockwise_rs(&received, code)?;
    let baseline_errors =
        sent.blocks().iter().zip(&baseline).filter(|(b, r)| r.codeword.as_deref() != Some(b.as_slice())).count();
    let depth = code.m() + 1;
    let within = max_window_weight(&pattern, depth) <= code.d_formula() / 2;
    Ok(SimReport {
        trials: 1,
        blocks: sent.len(),
        sliding_block_errors: sliding_errors,
        sliding_failed_trials: usize::from(sliding_errors > 0),
        baseline_block_errors: baseline_errors,
        baseline_failed_trials: usize::from(baseline_errors > 0),
        detected_trials: usize::from(report.any_detected()),
        window_condition_trials: usize::from(within),
        guarantee_violations: usize::from(within && sliding_errors > 0),
        ..SimReport::default()
    })
}

/// Runs independent trials in parallel; trial `i` draws from stream `i` of
/// the model seed, so results do not depend on scheduling.
pub fn simulate(code: &Arc<DoublyCyclicCode>, config: &SimConfig) -> Result<SimReport, HarnessError> {
    config.model.kind.validate()?;
    WindowBlockDecoder::new(code.clone(), config.windec.clone())?;
    let mut total = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(code, config, t))
        .try_reduce(SimReport::default, |a, b| Ok(a.merge(b)))?;
    if total.blocks > 0 {
        total.sliding_block_error_rate = total.sliding_block_errors as f64 / total.blocks as f64;
        total.baseline_block_error_rate = total.baseline_block_errors as f64 / total.blocks as f64;
    }
    Ok(total)
}
