//! Hand-object interaction pose synthesis from body and object motion.
//!
//! The pipeline takes body and object trajectories without finger articulation
//! and produces hand poses for both hands before, during, and after grasps:
//!
//! * [`geom`] — triangle meshes, rigid transforms, closest-point acceleration
//!   structures, and voxel overlap volumes.
//! * [`kinematics`] — a simplified articulated hand/arm model: 6D rotations,
//!   forward kinematics, linear-blend skinning, marker sampling.
//! * [`sensors`] — the distance-field interaction features fed to the
//!   networks (ambient hemisphere field, surface-marker proximity, future
//!   hand-to-object distance statistics).
//! * [`nn`] — dense-tensor numeric core: tape-based reverse-mode autodiff,
//!   linear/residual layers, losses, Adam.
//! * [`models`] — the three networks (arm denoiser, consistency network,
//!   refinement network) with latent temporal consistency, their training
//!   loops, and two-stage inference.
//! * [`synthdata`] — procedural grasp sequence generation on primitive
//!   objects, perturbation protocols, object-disjoint splits.
//! * [`metrics`] — MPJPE/MPVPE, intersection volume, contact consistency,
//!   contact ratio, a quasi-static stability proxy, contact heatmaps.
//! * [`cli`] — the `grip` batch front end (gen-data / train / infer / eval /
//!   transfer) with reproducible configs and manifests.

pub mod cli;
pub mod geom;
pub mod kinematics;
pub mod metrics;
pub mod models;
pub mod nn;
pub mod rng;
pub mod sensors;
pub mod synthdata;
