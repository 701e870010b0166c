//! Brute-force weight searches over window codes and truncated codewords.

use serde::Serialize;

use crate::algebra::weight;
use crate::enumerate::{for_each_normalized, space_size};

use super::{window_matrices, ConvEncoder, ConvError, SymbolStream};

/// Default bound on the number of enumerated vectors, 2^20.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

fn check_cap(q: u32, len: usize, cap: u64) -> Result<(), ConvError> {
    let count = space_size(q, len);
    if count > cap {
        return Err(ConvError::TooLargeToEnumerate { count, cap });
    }
    Ok(())
}

/// Largest `d` such that every codeword of the depth-`depth` window code of
/// weight at most `d` has its first `step` blocks equal to zero.
///
/// With `G_0` of full row rank, the first `step` blocks vanish exactly when
/// the first `step` message blocks do, so the answer is one less than the
/// minimum weight over messages with a nonzero prefix.
pub fn weight_param_search(enc: &ConvEncoder, depth: usize, step: usize, cap: u64) -> Result<usize, ConvError> {
    if depth == 0 || step == 0 || step > depth {
        return Err(ConvError::InvalidWindow { depth, step });
    }
    let field = enc.field();
    let len = depth * enc.k();
    check_cap(field.q(), len, cap)?;
    let (ghat, _) = window_matrices(enc, depth);
    let mut min = usize::MAX;
    for_each_normalized(field.q(), len, step * enc.k(), |u| {
        min = min.min(weight(&ghat.vec_mul(field, u)));
    });
    Ok(min - 1)
}

/// Result of [`distance_checks`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceProfile {
    /// Minimum overall weight over nonzero messages of degree at most the cap;
    /// an upper bound on the free distance.
    pub dfree_upper: usize,
    /// `column_distances[j]`: minimum weight of the first `j + 1` blocks over
    /// codewords with a nonzero first message block.
    pub column_distances: Vec<usize>,
}

/// Enumerates messages up to degree `deg_cap`. When `d` is given, also
/// checks the free-distance bound `dfree >= d + 1`.
pub fn distance_checks(
    enc: &ConvEncoder,
    deg_cap: usize,
    cap: u64,
    d: Option<usize>,
) -> Result<DistanceProfile, ConvError> {
    let field = enc.field();
    let (q, k) = (field.q(), enc.k());
    check_cap(q, (deg_cap + 1) * k, cap)?;

    let mut column_distances = Vec::with_capacity(deg_cap + 1);
    for j in 0..=deg_cap {
        let (ghat, _) = window_matrices(enc, j + 1);
        let mut min = usize::MAX;
        for_each_normalized(q, (j + 1) * k, k, |u| {
            min = min.min(weight(&ghat.vec_mul(field, u)));
        });
        column_distances.push(min);
    }

    // Shift invariance: only messages with u_0 != 0 need checking.
    let mut dfree_upper = usize::MAX;
    for_each_normalized(q, (deg_cap + 1) * k, k, |u| {
        let msg = SymbolStream::from_flat(k, u).expect("width divides length");
        let v = enc.encode(&msg).expect("message width is k");
        dfree_upper = dfree_upper.min(v.weight());
    });

    if let Some(d) = d {
        if dfree_upper < d + 1 {
            return Err(ConvError::DistanceBound { dfree_upper, required: d + 1 });
        }
    }
    Ok(DistanceProfile { dfree_upper, column_distances })
}
