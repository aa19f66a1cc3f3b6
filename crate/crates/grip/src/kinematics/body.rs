use crate::geom::{Mat3, RigidTransform, Vec3};
use crate::kinematics::rot6d::{matrix_to_rot6d, rot6d_to_matrix, Rot6D};
use crate::kinematics::KinError;
use serde::{Deserialize, Serialize};

/// Default subject-shape dimensionality; component 0 is (hand scale - 1),
/// the rest are reserved.
pub const SHAPE_DIM: usize = 4;

/// Shoulder and elbow 6D rotations for one arm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArmPose {
    pub shoulder: Rot6D,
    pub elbow: Rot6D,
}

impl ArmPose {
    pub const REST: ArmPose = ArmPose { shoulder: Rot6D::IDENTITY, elbow: Rot6D::IDENTITY };

    pub fn is_finite(&self) -> bool {
        self.shoulder.is_finite() && self.elbow.is_finite()
    }

    pub fn to_vec(&self) -> [f64; 12] {
        let mut v = [0.0; 12];
        v[..6].copy_from_slice(&self.shoulder.0);
        v[6..].copy_from_slice(&self.elbow.0);
        v
    }

    pub fn from_slice(v: &[f64]) -> ArmPose {
        let mut s = [0.0; 6];
        let mut e = [0.0; 6];
        s.copy_from_slice(&v[..6]);
        e.copy_from_slice(&v[6..12]);
        ArmPose { shoulder: Rot6D(s), elbow: Rot6D(e) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BodySide {
    Left,
    Right,
}

/// Per-frame body configuration: root transform, both arms, both wrists
/// (relative to the forearm end), and subject shape parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BodyState {
    pub root: RigidTransform,
    pub left_arm: ArmPose,
    pub right_arm: ArmPose,
    /// Wrist transform relative to the forearm attachment frame. Identity
    /// translation means the wrist sits exactly at the forearm end.
    pub left_wrist: RigidTransform,
    pub right_wrist: RigidTransform,
    pub shape_params: Vec<f64>,
}

impl BodyState {
    pub fn arm(&self, side: BodySide) -> &ArmPose {
        match side {
            BodySide::Left => &self.left_arm,
            BodySide::Right => &self.right_arm,
        }
    }

    pub fn wrist_local(&self, side: BodySide) -> &RigidTransform {
        match side {
            BodySide::Left => &self.left_wrist,
            BodySide::Right => &self.right_wrist,
        }
    }

    pub fn hand_scale(&self) -> f64 {
        1.0 + self.shape_params.first().copied().unwrap_or(0.0)
    }
}

/// Fixed reduced-body dimensions: a clavicle-free 3-segment chain
/// (shoulder anchor -> elbow -> wrist) per arm hanging from the root.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BodyModel {
    /// Shoulder anchor in the root frame (right side; left mirrors x).
    pub shoulder_anchor: Vec3,
    pub upper_arm: f64,
    pub forearm: f64,
}

impl Default for BodyModel {
    fn default() -> BodyModel {
        BodyModel {
            shoulder_anchor: Vec3::new(0.18, 0.45, 0.0),
            upper_arm: 0.28,
            forearm: 0.25,
        }
    }
}

/// World transforms along one arm: (shoulder, elbow, forearm end).
pub struct ArmWorld {
    pub shoulder: RigidTransform,
    pub elbow: RigidTransform,
    pub wrist_attach: RigidTransform,
}

impl BodyModel {
    pub fn anchor(&self, side: BodySide) -> Vec3 {
        match side {
            BodySide::Right => self.shoulder_anchor,
            BodySide::Left => Vec3::new(-self.shoulder_anchor.x, self.shoulder_anchor.y, self.shoulder_anchor.z),
        }
    }

    /// Arm forward kinematics. At rest both segments hang along -y.
    pub fn arm_fk(&self, root: &RigidTransform, pose: &ArmPose, side: BodySide) -> Result<ArmWorld, KinError> {
        let r_shoulder = rot6d_to_matrix(pose.shoulder)?;
        let r_elbow = rot6d_to_matrix(pose.elbow)?;
        let shoulder = *root * RigidTransform::new(r_shoulder, self.anchor(side));
        let elbow = shoulder * RigidTransform::new(r_elbow, Vec3::new(0.0, -self.upper_arm, 0.0));
        let wrist_attach = elbow * RigidTransform::from_translation(Vec3::new(0.0, -self.forearm, 0.0));
        Ok(ArmWorld { shoulder, elbow, wrist_attach })
    }

    /// Full wrist world transform for a body state.
    pub fn wrist_world(&self, state: &BodyState, side: BodySide) -> Result<RigidTransform, KinError> {
        let arm = self.arm_fk(&state.root, state.arm(side), side)?;
        Ok(arm.wrist_attach * *state.wrist_local(side))
    }

    /// Arm joint positions (shoulder, elbow, wrist) used for arm MPJPE.
    pub fn arm_joint_positions(&self, state: &BodyState, side: BodySide) -> Result<[Vec3; 3], KinError> {
        let arm = self.arm_fk(&state.root, state.arm(side), side)?;
        let wrist = arm.wrist_attach * *state.wrist_local(side);
        Ok([arm.shoulder.translation, arm.elbow.translation, wrist.translation])
    }

    /// Closed-form two-bone IK: returns the arm pose and wrist-local
    /// transform realizing the target wrist world transform exactly in
    /// position (clamped to the reachable annulus) and exactly in rotation.
    pub fn solve_arm_ik(
        &self,
        root: &RigidTransform,
        target_wrist: &RigidTransform,
        side: BodySide,
    ) -> Result<(ArmPose, RigidTransform), KinError> {
        let s_world = root.apply(self.anchor(side));
        let to_target = target_wrist.translation - s_world;
        let dist = to_target.norm();
        let (l1, l2) = (self.upper_arm, self.forearm);
        let d = dist.clamp((l1 - l2).abs() + 1e-4, l1 + l2 - 1e-4);
        if dist < 1e-9 {
            return Err(KinError::IkUnreachable);
        }
        let c = to_target / dist;

        // Elbow pole: down and slightly outward/back, so elbows bend the
        // anatomically plausible way.
        let side_sign = match side {
            BodySide::Right => 1.0,
            BodySide::Left => -1.0,
        };
        let pole_hint = root.apply_vector(Vec3::new(side_sign * 0.45, -1.0, -0.25).normalized());
        let mut n = c.cross(pole_hint);
        if n.norm() < 1e-6 {
            n = c.any_orthogonal();
        } else {
            n = n.normalized();
        }

        // Shoulder interior angle between the target direction and the
        // upper arm (law of cosines).
        let cos_alpha = ((l1 * l1 + d * d - l2 * l2) / (2.0 * l1 * d)).clamp(-1.0, 1.0);
        let alpha = cos_alpha.acos();
        let u = Mat3::rotation(n, alpha) * c; // upper-arm direction
        let elbow_pos = s_world + u * l1;
        // Forearm direction toward the clamped target; |clamped - elbow| = l2
        // by the law of cosines.
        let clamped_target = s_world + c * d;
        let v = (clamped_target - elbow_pos).normalized();

        // Frames: rest upper-arm direction is -y, rest bend axis is +x.
        let e1 = Vec3::new(0.0, -1.0, 0.0);
        let e2 = Vec3::X;
        let e3 = e1.cross(e2);
        let rest = Mat3::from_cols(e1, e2, e3);
        let shoulder_world_rot = Mat3::from_cols(u, n, u.cross(n)) * rest.transpose();
        let elbow_world_rot = Mat3::from_cols(v, n, v.cross(n)) * rest.transpose();

        let shoulder_local = root.rotation.transpose() * shoulder_world_rot;
        let elbow_local = shoulder_world_rot.transpose() * elbow_world_rot;
        let pose = ArmPose {
            shoulder: matrix_to_rot6d(&shoulder_local)?,
            elbow: matrix_to_rot6d(&elbow_local)?,
        };

        // Complete with the wrist-local transform so the wrist world frame
        // matches the target exactly even when the position was clamped.
        let arm = self.arm_fk(root, &pose, side)?;
        let wrist_local = arm.wrist_attach.inverse() * *target_wrist;
        Ok((pose, wrist_local))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn rest_arm_hangs_down() {
        let body = BodyModel::default();
        let state = BodyState {
            root: RigidTransform::IDENTITY,
            left_arm: ArmPose::REST,
            right_arm: ArmPose::REST,
            left_wrist: RigidTransform::IDENTITY,
            right_wrist: RigidTransform::IDENTITY,
            shape_params: vec![0.0; SHAPE_DIM],
        };
        let [s, e, w] = body.arm_joint_positions(&state, BodySide::Right).unwrap();
        assert!(s.distance(Vec3::new(0.18, 0.45, 0.0)) < 1e-12);
        assert!(e.distance(Vec3::new(0.18, 0.45 - 0.28, 0.0)) < 1e-12);
        assert!(w.distance(Vec3::new(0.18, 0.45 - 0.53, 0.0)) < 1e-12);
    }

    #[test]
    fn ik_reaches_reachable_targets_exactly() {
        let body = BodyModel::default();
        let mut rng = SplitMix64::new(8);
        let root = RigidTransform::new(Mat3::rotation(Vec3::Y, 0.3), Vec3::new(0.0, 0.95, 0.0));
        for _ in 0..200 {
            let s_world = root.apply(body.anchor(BodySide::Right));
            let dir = Vec3::new(rng.gaussian(), rng.gaussian(), rng.gaussian()).normalized();
            let radius = rng.uniform(0.10, 0.51);
            let target_pos = s_world + dir * radius;
            let target_rot = Mat3::rotation(
                Vec3::new(rng.gaussian(), rng.gaussian(), rng.gaussian()).normalized(),
                rng.uniform(-2.0, 2.0),
            );
            let target = RigidTransform::new(target_rot, target_pos);
            let (pose, wrist_local) = body.solve_arm_ik(&root, &target, BodySide::Right).unwrap();
            let state = BodyState {
                root,
                left_arm: ArmPose::REST,
                right_arm: pose,
                left_wrist: RigidTransform::IDENTITY,
                right_wrist: wrist_local,
                shape_params: vec![0.0; SHAPE_DIM],
            };
            let wrist = body.wrist_world(&state, BodySide::Right).unwrap();
            assert!(wrist.translation.distance(target_pos) < 1e-9);
            assert!(wrist.rotation.frobenius_distance(&target_rot) < 1e-9);
        }
    }

    #[test]
    fn ik_wrist_local_translation_small_for_reachable_targets() {
        // In-reach targets are realized by arm rotations alone; the wrist
        // local translation stays at the numerical floor.
        let body = BodyModel::default();
        let root = RigidTransform::from_translation(Vec3::new(0.0, 0.95, 0.0));
        let s_world = root.apply(body.anchor(BodySide::Left));
        let target = RigidTransform::from_translation(s_world + Vec3::new(-0.1, -0.25, 0.3));
        let (_, wrist_local) = body.solve_arm_ik(&root, &target, BodySide::Left).unwrap();
        assert!(wrist_local.translation.norm() < 1e-9);
    }

    #[test]
    fn out_of_reach_target_realized_via_wrist_offset() {
        let body = BodyModel::default();
        let root = RigidTransform::IDENTITY;
        let s_world = body.anchor(BodySide::Right);
        let target = RigidTransform::from_translation(s_world + Vec3::new(0.0, -1.2, 0.0));
        let (pose, wrist_local) = body.solve_arm_ik(&root, &target, BodySide::Right).unwrap();
        let state = BodyState {
            root,
            left_arm: ArmPose::REST,
            right_arm: pose,
            left_wrist: RigidTransform::IDENTITY,
            right_wrist: wrist_local,
            shape_params: vec![0.0; SHAPE_DIM],
        };
        let wrist = body.wrist_world(&state, BodySide::Right).unwrap();
        assert!(wrist.translation.distance(target.translation) < 1e-9);
        // Clamped: the local translation carries the shortfall.
        assert!(wrist_local.translation.norm() > 0.5);
    }
}
