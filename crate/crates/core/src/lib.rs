//! Doubly cyclic convolutional codes over GF(q) and their iterative
//! sliding-window decoder.
//!
//! The window decoder descends through the stacked Reed-Solomon codes of the
//! construction, so each cycle costs at most `m + 1` bounded-distance
//! Reed-Solomon decodes. Exhaustive oracles for every algebraic step live
//! beside the fast paths.

pub mod algebra;
pub mod convcode;
pub mod dcc;
pub mod enumerate;
pub mod gf;
pub mod harness;
pub mod rsdec;
pub mod windec;

pub use algebra::{AlgebraError, Matrix, Poly, RingElement};
pub use convcode::{
    sliding_decode, ConvEncoder, ConvError, DecodeReport, PartialDecoder, SymbolStream, WindowContext,
};
pub use dcc::{dcc_build, CodeParams, DccError, DoublyCyclicCode, StackedCode};
pub use gf::{Elem, FieldError, FieldTable};
pub use rsdec::{nearest_codeword_search, recover_message, rs_bounded_decode, RsDecodeResult, RsStatus};
pub use windec::{partial_block_decode, LevelUsed, PartialDecodeOutcome, WindecConfig, WindowBlockDecoder};
