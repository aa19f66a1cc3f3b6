//! The interaction features fed to the networks: the ambient hemisphere
//! distance field, surface-marker proximity (initial and recomputed), future
//! hand-to-object distance statistics, and the network input layout.

use crate::geom::{sample_hemisphere, ClosestPointIndex, Point3, RigidTransform};
use crate::kinematics::{BodyState, HandModel, HandPose, KinError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SensorError {
    #[error("attention weight must be positive, got {0}")]
    NonpositiveWeight(f64),
    #[error("empty sequence")]
    EmptySequence,
    #[error("frame {t} out of range for sequence of length {len}")]
    FrameOutOfRange { t: usize, len: usize },
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    DimensionMismatch { what: &'static str, expected: usize, got: usize },
    #[error(transparent)]
    Kin(#[from] KinError),
    #[error(transparent)]
    Geom(#[from] crate::geom::GeomError),
}

/// Distance query target for the ambient sensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryMode {
    /// Closest mesh vertex (the ambient sensor's default).
    Vertex,
    /// Closest surface point (the proximity sensor's distance).
    Surface,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensorConfig {
    /// Hemisphere sample count.
    pub ambient_count: usize,
    /// Attention weight for the ambient sensor.
    pub ambient_w: f64,
    /// Attention weight for the proximity sensor.
    pub proximity_w: f64,
    /// Hemisphere radius in meters.
    pub hemisphere_radius: f64,
    /// Seed of the fixed hemisphere point set (part of the config hash).
    pub hemisphere_seed: u64,
    /// Future window length n for distance statistics.
    pub n_future: usize,
    /// Contact distance in meters.
    pub contact_threshold: f64,
    pub ambient_query_mode: QueryMode,
    /// Raw distances are capped here (meters) before the attention
    /// transform; beyond it the transform is numerically negligible.
    pub distance_clamp: f64,
}

impl Default for SensorConfig {
    fn default() -> SensorConfig {
        SensorConfig {
            ambient_count: 1024,
            ambient_w: 5.0,
            proximity_w: 50.0,
            hemisphere_radius: 0.20,
            hemisphere_seed: 7,
            n_future: 10,
            contact_threshold: 0.005,
            ambient_query_mode: QueryMode::Vertex,
            distance_clamp: 2.0,
        }
    }
}

/// Interaction-aware attention: `I_w(d) = exp(-w d)`. Strictly decreasing
/// in d, exactly 1 at d = 0.
pub fn interaction_attention(d: f64, w: f64) -> Result<f64, SensorError> {
    if !(w > 0.0) {
        return Err(SensorError::NonpositiveWeight(w));
    }
    Ok((-w * d).exp())
}

/// Fixed hemisphere sample points in the hand-local sensor frame: origin at
/// the base middle-finger joint, dome along the palm normal (+y), x toward
/// the fingertips. Point order is the seeded acceptance order and is part of
/// the feature layout.
#[derive(Clone, Debug)]
pub struct HemisphereCache {
    points: Vec<Point3>,
}

impl HemisphereCache {
    pub fn new(cfg: &SensorConfig) -> Result<HemisphereCache, SensorError> {
        let points = sample_hemisphere(cfg.ambient_count, cfg.hemisphere_radius, cfg.hemisphere_seed)?;
        Ok(HemisphereCache { points })
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }
}

/// Hemisphere mount frame for one hand: the wrist world frame translated to
/// the base middle-finger joint.
pub fn ambient_frame(model: &HandModel, wrist_world: &RigidTransform) -> RigidTransform {
    *wrist_world * RigidTransform::from_translation(model.middle_mcp())
}

/// Attention-transformed hemisphere distances for one hand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientFeature {
    pub values: Vec<f64>,
}

pub fn ambient_sensor(
    hand_frame: &RigidTransform,
    object: &ClosestPointIndex,
    cache: &HemisphereCache,
    cfg: &SensorConfig,
) -> Result<AmbientFeature, SensorError> {
    if !(cfg.ambient_w > 0.0) {
        return Err(SensorError::NonpositiveWeight(cfg.ambient_w));
    }
    let values = cache
        .points
        .iter()
        .map(|p| {
            let world = hand_frame.apply(*p);
            let d = match cfg.ambient_query_mode {
                QueryMode::Vertex => object.closest_vertex(world).1,
                QueryMode::Surface => object.closest_surface_point(world).distance,
            };
            (-cfg.ambient_w * d.min(cfg.distance_clamp)).exp()
        })
        .collect();
    Ok(AmbientFeature { values })
}

/// Raw and attention-transformed marker distances for one hand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProximityFeature {
    /// Closest surface distance per marker, meters.
    pub raw: Vec<f64>,
    /// `exp(-proximity_w * raw)` elementwise.
    pub transformed: Vec<f64>,
}

impl ProximityFeature {
    pub fn mean_raw(&self) -> f64 {
        if self.raw.is_empty() {
            return 0.0;
        }
        self.raw.iter().sum::<f64>() / self.raw.len() as f64
    }

    pub fn min_raw(&self) -> f64 {
        self.raw.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

pub fn proximity_sensor(
    marker_positions: &[Point3],
    object: &ClosestPointIndex,
    cfg: &SensorConfig,
) -> Result<ProximityFeature, SensorError> {
    if !(cfg.proximity_w > 0.0) {
        return Err(SensorError::NonpositiveWeight(cfg.proximity_w));
    }
    let raw: Vec<f64> = marker_positions
        .iter()
        .map(|p| object.closest_surface_point(*p).distance.min(cfg.distance_clamp))
        .collect();
    let transformed = raw.iter().map(|d| (-cfg.proximity_w * d).exp()).collect();
    Ok(ProximityFeature { raw, transformed })
}

/// Proximity from a predicted pose: FK + skinning of the marker set at the
/// given wrist, then the standard marker query.
pub fn recompute_proximity(
    model: &HandModel,
    predicted_pose: &HandPose,
    wrist: &RigidTransform,
    object: &ClosestPointIndex,
    cfg: &SensorConfig,
) -> Result<ProximityFeature, SensorError> {
    let markers = model.marker_positions(predicted_pose, wrist)?;
    proximity_sensor(&markers, object, cfg)
}

/// Mean raw surface distance over a marker cloud (the per-frame scalar the
/// future-distance feature is built from).
pub fn mean_marker_distance(markers: &[Point3], object: &ClosestPointIndex) -> f64 {
    if markers.is_empty() {
        return 0.0;
    }
    markers
        .iter()
        .map(|p| object.closest_surface_point(*p).distance)
        .sum::<f64>()
        / markers.len() as f64
}

/// Future distance statistics for one hand: the mean distance and its mean
/// rate of change (m/frame) over frames t..t+n.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FutureDistance {
    pub d_mean: f64,
    pub d_rate: f64,
}

/// Windows past the end of the series clamp to the final frame
/// (repeat-last padding), so every frame has a feature.
pub fn future_distance(series: &[f64], t: usize, n: usize) -> Result<FutureDistance, SensorError> {
    if series.is_empty() {
        return Err(SensorError::EmptySequence);
    }
    if t >= series.len() {
        return Err(SensorError::FrameOutOfRange { t, len: series.len() });
    }
    let at = |k: usize| series[k.min(series.len() - 1)];
    let mut sum = 0.0;
    for k in t..=t + n {
        sum += at(k);
    }
    let d_mean = sum / (n + 1) as f64;
    let d_rate = if n == 0 {
        0.0
    } else {
        let mut acc = 0.0;
        for k in t..t + n {
            acc += at(k + 1) - at(k);
        }
        acc / n as f64
    };
    Ok(FutureDistance { d_mean, d_rate })
}

/// Body pose vector fed to the consistency network: both arms' 6D joint
/// rotations plus the root height. The global root pose is otherwise
/// excluded.
pub fn theta_vector(body: &BodyState) -> Vec<f64> {
    let mut v = Vec::with_capacity(THETA_DIM);
    v.extend_from_slice(&body.left_arm.to_vec());
    v.extend_from_slice(&body.right_arm.to_vec());
    v.push(body.root.translation.y);
    v
}

pub const THETA_DIM: usize = 2 * 12 + 1;

/// Byte-for-byte documented layout of the consistency-network input vector:
/// `[shape | theta_t | theta_t1 | A_t(L,R) | A_t1(L,R) | P_t(L,R) | P_t1(L,R) | d_mean(L,R) | d_rate(L,R)]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CnetInputLayout {
    pub shape_dim: usize,
    pub theta_dim: usize,
    pub ambient_count: usize,
    pub marker_count: usize,
}

impl CnetInputLayout {
    pub fn new(shape_dim: usize, cfg: &SensorConfig, marker_count: usize) -> CnetInputLayout {
        CnetInputLayout {
            shape_dim,
            theta_dim: THETA_DIM,
            ambient_count: cfg.ambient_count,
            marker_count,
        }
    }

    pub fn shape_offset(&self) -> usize {
        0
    }

    pub fn theta_offset(&self, frame: usize) -> usize {
        self.shape_dim + frame * self.theta_dim
    }

    pub fn ambient_offset(&self, frame: usize, hand: usize) -> usize {
        self.shape_dim + 2 * self.theta_dim + (frame * 2 + hand) * self.ambient_count
    }

    pub fn proximity_offset(&self, frame: usize, hand: usize) -> usize {
        self.shape_dim
            + 2 * self.theta_dim
            + 4 * self.ambient_count
            + (frame * 2 + hand) * self.marker_count
    }

    pub fn future_offset(&self) -> usize {
        self.shape_dim + 2 * self.theta_dim + 4 * self.ambient_count + 4 * self.marker_count
    }

    pub fn total(&self) -> usize {
        self.future_offset() + 4
    }
}

/// Everything describing one frame pair's network input.
pub struct CnetInputs<'a> {
    pub shape: &'a [f64],
    pub theta_t: &'a [f64],
    pub theta_t1: &'a [f64],
    /// [left, right] per frame.
    pub ambient_t: [&'a AmbientFeature; 2],
    pub ambient_t1: [&'a AmbientFeature; 2],
    pub proximity_t: [&'a ProximityFeature; 2],
    pub proximity_t1: [&'a ProximityFeature; 2],
    /// [left, right].
    pub future: [FutureDistance; 2],
}

pub fn assemble_cnet_input(
    layout: &CnetInputLayout,
    inputs: &CnetInputs,
) -> Result<Vec<f64>, SensorError> {
    let check = |what: &'static str, expected: usize, got: usize| {
        if expected != got {
            Err(SensorError::DimensionMismatch { what, expected, got })
        } else {
            Ok(())
        }
    };
    check("shape", layout.shape_dim, inputs.shape.len())?;
    check("theta_t", layout.theta_dim, inputs.theta_t.len())?;
    check("theta_t1", layout.theta_dim, inputs.theta_t1.len())?;
    for a in inputs.ambient_t.iter().chain(&inputs.ambient_t1) {
        check("ambient", layout.ambient_count, a.values.len())?;
    }
    for p in inputs.proximity_t.iter().chain(&inputs.proximity_t1) {
        check("proximity", layout.marker_count, p.transformed.len())?;
    }

    let mut x = Vec::with_capacity(layout.total());
    x.extend_from_slice(inputs.shape);
    x.extend_from_slice(inputs.theta_t);
    x.extend_from_slice(inputs.theta_t1);
    for a in inputs.ambient_t.iter() {
        x.extend_from_slice(&a.values);
    }
    for a in inputs.ambient_t1.iter() {
        x.extend_from_slice(&a.values);
    }
    for p in inputs.proximity_t.iter() {
        x.extend_from_slice(&p.transformed);
    }
    for p in inputs.proximity_t1.iter() {
        x.extend_from_slice(&p.transformed);
    }
    x.push(inputs.future[0].d_mean);
    x.push(inputs.future[1].d_mean);
    x.push(inputs.future[0].d_rate);
    x.push(inputs.future[1].d_rate);
    debug_assert_eq!(x.len(), layout.total());
    Ok(x)
}
