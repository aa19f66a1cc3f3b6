//! Dense-tensor numeric core: tape-based reverse-mode autodiff, linear and
//! residual layers, losses, an adaptive-moment optimizer, and the versioned
//! weight file format.

pub mod adam;
pub mod gradcheck;
pub mod layers;
pub mod tape;
pub mod tensor;
pub mod weights_io;

pub use adam::AdamState;
pub use gradcheck::{all_coords, finite_diff_max_rel_err, FD_STEP};
pub use layers::{LinearLayer, ParamId, ParamSet, ResidualBlock, ResidualStack, LEAKY_SLOPE};
pub use tape::{Gradients, NodeId, Tape};
pub use tensor::Tensor;
pub use weights_io::{load_weights, save_weights, WEIGHTS_SCHEMA};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NnError {
    #[error("shape mismatch in {what}: {left:?} vs {right:?}")]
    ShapeMismatch { what: &'static str, left: Vec<usize>, right: Vec<usize> },
    #[error("scalar node expected")]
    ScalarExpected,
    #[error("slice [{start}, {start}+{len}) out of range for length {have}")]
    SliceOutOfRange { start: usize, len: usize, have: usize },
    #[error("loss is not a scalar node on this tape")]
    DetachedLoss,
    #[error("corrupt weight file: {0}")]
    CorruptFile(String),
    #[error("weight schema version {got}, expected {expected}")]
    VersionMismatch { expected: u32, got: u32 },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
