//! Simplified articulated hand and arm model: 6D rotation parameterization,
//! forward kinematics, linear-blend skinning, and hand-vertex sampling.

pub mod body;
pub mod hand_model;
pub mod rot6d;
pub mod skeleton;
pub mod skinning;

pub use body::{ArmPose, BodyModel, BodySide, BodyState, SHAPE_DIM};
pub use hand_model::{
    mean_hand_pose, sample_hand_vertices, HandModel, HandPose, MarkerSet, Region, Side,
    FINGERS, FINGER_JOINTS, HAND_JOINTS, MARKERS_PER_HAND,
};
pub use rot6d::{matrix_to_rot6d, rot6d_to_matrix, Rot6D};
pub use skeleton::{decode_pose, forward_kinematics, Skeleton};
pub use skinning::{skin, skin_subset, SkinnedHand, VertexWeights};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KinError {
    #[error("degenerate 6D rotation input (zero or parallel columns)")]
    DegenerateRot6D,
    #[error("matrix is not a rotation within tolerance")]
    NotARotation,
    #[error("pose length mismatch: skeleton has {expected} joints, pose has {got}")]
    PoseLengthMismatch { expected: usize, got: usize },
    #[error("skeleton shape invalid (parents must precede children; exactly one root)")]
    SkeletonShape,
    #[error("skinning weights invalid (<=4 influences, nonnegative, sum to 1)")]
    WeightShape,
    #[error("marker set invalid (indices must be distinct and in range)")]
    BadMarkerSet,
    #[error("mesh has {have} vertices, {need} requested")]
    TooFewVertices { have: usize, need: usize },
    #[error("ik target degenerate")]
    IkUnreachable,
    #[error("hand asset error: {0}")]
    Asset(String),
    #[error("hand asset schema version {got}, expected {expected}")]
    AssetVersion { expected: u32, got: u32 },
}
