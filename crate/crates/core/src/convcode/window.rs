use serde::Serialize;

use crate::algebra::Matrix;

use super::{ConvEncoder, ConvError};

/// Window matrices for processing depth `depth`:
///
/// * `ghat` (Nk x Nn): block `(i, j)` is `G_{j-i}`, zero for `j < i` or `j - i > m`.
/// * `gtilde` (mk x Nn): block `(r, c)` is `G_{m-r+c}` for `c <= r`, zero otherwise,
///   so `(u_{t-m}, ..., u_{t-1}) * gtilde` is the contribution of past messages
///   to the window starting at time `t`.
pub fn window_matrices(enc: &ConvEncoder, depth: usize) -> (Matrix, Matrix) {
    let (n, k, m) = (enc.n(), enc.k(), enc.memory());
    let mut ghat = Matrix::zeros(depth * k, depth * n);
    for i in 0..depth {
        for j in i..depth {
            if let Some(g) = enc.coefficient(j - i) {
                ghat.set_block(i * k, j * n, g);
            }
        }
    }
    let mut gtilde = Matrix::zeros(m * k, depth * n);
    for r in 0..m {
        for c in 0..depth.min(r + 1) {
            let g = enc.coefficient(m - r + c).expect("index within memory");
            gtilde.set_block(r * k, c * n, g);
        }
    }
    (ghat, gtilde)
}

/// Decoding window: depth `N`, step `L`, the window matrices, and the
/// weight parameter `d` (the decoder corrects `d / 2` errors per window).
#[derive(Debug, Clone, Serialize)]
pub struct WindowContext {
    pub depth: usize,
    pub step: usize,
    #[serde(skip)]
    pub ghat: Matrix,
    #[serde(skip)]
    pub gtilde: Matrix,
    pub d: usize,
}

impl WindowContext {
    pub fn new(enc: &ConvEncoder, depth: usize, step: usize, d: usize) -> Result<Self, ConvError> {
        if depth == 0 || step == 0 || step > depth {
            return Err(ConvError::InvalidWindow { depth, step });
        }
        let (ghat, gtilde) = window_matrices(enc, depth);
        Ok(WindowContext { depth, step, ghat, gtilde, d })
    }

    /// Error budget per window, `floor(d / 2)`.
    pub fn radius(&self) -> usize {
        self.d / 2
    }

    /// Checks the weight condition for the configured `d` by enumeration.
    pub fn verify_weight_param(&self, enc: &ConvEncoder, cap: u64) -> Result<bool, ConvError> {
        Ok(super::weight_param_search(enc, self.depth, self.step, cap)? >= self.d)
    }
}
