use crate::geom::{Mat3, RigidTransform, Vec3};
use crate::kinematics::rot6d::{rot6d_to_matrix, Rot6D};
use crate::kinematics::KinError;
use serde::{Deserialize, Serialize};

/// Topologically sorted joint hierarchy: parent index strictly below own
/// index, exactly one root (parent -1, stored as None).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Skeleton {
    pub names: Vec<String>,
    pub parents: Vec<Option<usize>>,
    /// Rest-pose offset of each joint in its parent's frame, meters.
    pub offsets: Vec<Vec3>,
}

impl Skeleton {
    pub fn new(
        names: Vec<String>,
        parents: Vec<Option<usize>>,
        offsets: Vec<Vec3>,
    ) -> Result<Skeleton, KinError> {
        let n = names.len();
        if parents.len() != n || offsets.len() != n || n == 0 {
            return Err(KinError::SkeletonShape);
        }
        let mut roots = 0;
        for (i, p) in parents.iter().enumerate() {
            match p {
                None => roots += 1,
                Some(pi) if *pi >= i => return Err(KinError::SkeletonShape),
                _ => {}
            }
        }
        if roots != 1 {
            return Err(KinError::SkeletonShape);
        }
        Ok(Skeleton { names, parents, offsets })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Rest-pose world transforms (all joint rotations identity, root at
    /// the given transform).
    pub fn rest_world(&self, root: &RigidTransform) -> Vec<RigidTransform> {
        let identity = vec![Rot6D::IDENTITY; self.len()];
        forward_kinematics(self, &identity, root).expect("identity pose is valid")
    }
}

/// World transform per joint:
/// `world(j) = world(parent(j)) * translate(offset_j) * rotate(pose_j)`;
/// the root composes onto the given root transform.
pub fn forward_kinematics(
    skeleton: &Skeleton,
    pose: &[Rot6D],
    root: &RigidTransform,
) -> Result<Vec<RigidTransform>, KinError> {
    if pose.len() != skeleton.len() {
        return Err(KinError::PoseLengthMismatch { expected: skeleton.len(), got: pose.len() });
    }
    let mut world = Vec::with_capacity(skeleton.len());
    for j in 0..skeleton.len() {
        let rot = rot6d_to_matrix(pose[j])?;
        let local = RigidTransform::new(rot, skeleton.offsets[j]);
        let parent_world = match skeleton.parents[j] {
            None => *root,
            Some(p) => world[p],
        };
        world.push(parent_world * local);
    }
    Ok(world)
}

/// Decoded joint rotation matrices for a pose (used by losses and tests).
pub fn decode_pose(pose: &[Rot6D]) -> Result<Vec<Mat3>, KinError> {
    pose.iter().map(|r| rot6d_to_matrix(*r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::rot6d::matrix_to_rot6d;
    use crate::rng::SplitMix64;

    fn chain3() -> Skeleton {
        Skeleton::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![None, Some(0), Some(1)],
            vec![Vec3::ZERO, Vec3::new(0.1, 0.0, 0.0), Vec3::new(0.2, 0.0, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn identity_pose_accumulates_offsets() {
        let sk = chain3();
        let world = sk.rest_world(&RigidTransform::IDENTITY);
        assert!(world[0].translation.distance(Vec3::ZERO) < 1e-15);
        assert!(world[1].translation.distance(Vec3::new(0.1, 0.0, 0.0)) < 1e-15);
        assert!(world[2].translation.distance(Vec3::new(0.3, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn root_rotation_rotates_all_joints() {
        let sk = chain3();
        let g = RigidTransform::new(Mat3::rotation(Vec3::Z, std::f64::consts::FRAC_PI_2), Vec3::ZERO);
        let pose = vec![Rot6D::IDENTITY; 3];
        let world = forward_kinematics(&sk, &pose, &g).unwrap();
        assert!(world[2].translation.distance(Vec3::new(0.0, 0.3, 0.0)) < 1e-12);
    }

    #[test]
    fn fk_equivariance_under_rigid_motion() {
        let sk = chain3();
        let mut rng = SplitMix64::new(31);
        for _ in 0..50 {
            let pose: Vec<Rot6D> = (0..3)
                .map(|_| {
                    let axis =
                        Vec3::new(rng.gaussian(), rng.gaussian(), rng.gaussian()).normalized();
                    matrix_to_rot6d(&Mat3::rotation(axis, rng.uniform(-2.0, 2.0))).unwrap()
                })
                .collect();
            let root = RigidTransform::new(
                Mat3::rotation(Vec3::new(rng.gaussian(), rng.gaussian(), rng.gaussian()).normalized(), 0.7),
                Vec3::new(0.2, -0.1, 0.5),
            );
            let g = RigidTransform::new(
                Mat3::rotation(Vec3::new(rng.gaussian(), rng.gaussian(), rng.gaussian()).normalized(), -1.3),
                Vec3::new(-1.0, 2.0, 0.3),
            );
            let direct = forward_kinematics(&sk, &pose, &(g * root)).unwrap();
            let moved: Vec<RigidTransform> = forward_kinematics(&sk, &pose, &root)
                .unwrap()
                .into_iter()
                .map(|w| g * w)
                .collect();
            for (a, b) in direct.iter().zip(&moved) {
                assert!(a.rotation.frobenius_distance(&b.rotation) < 1e-12);
                assert!(a.translation.distance(b.translation) < 1e-12);
            }
        }
    }

    #[test]
    fn random_chain_matches_manual_matrix_product() {
        let sk = chain3();
        let mut rng = SplitMix64::new(32);
        let pose: Vec<Rot6D> = (0..3)
            .map(|_| {
                let axis = Vec3::new(rng.gaussian(), rng.gaussian(), rng.gaussian()).normalized();
                matrix_to_rot6d(&Mat3::rotation(axis, rng.uniform(-2.0, 2.0))).unwrap()
            })
            .collect();
        let root = RigidTransform::from_translation(Vec3::new(0.5, 0.0, 0.0));
        let world = forward_kinematics(&sk, &pose, &root).unwrap();

        // Hand-computed: root * T0 R0 * T1 R1 * T2 R2.
        let r: Vec<Mat3> = pose.iter().map(|p| rot6d_to_matrix(*p).unwrap()).collect();
        let l0 = RigidTransform::new(r[0], sk.offsets[0]);
        let l1 = RigidTransform::new(r[1], sk.offsets[1]);
        let l2 = RigidTransform::new(r[2], sk.offsets[2]);
        let manual = root * l0 * l1 * l2;
        assert!(world[2].rotation.frobenius_distance(&manual.rotation) < 1e-12);
        assert!(world[2].translation.distance(manual.translation) < 1e-12);
    }

    #[test]
    fn pose_length_mismatch_rejected() {
        let sk = chain3();
        let err = forward_kinematics(&sk, &[Rot6D::IDENTITY], &RigidTransform::IDENTITY).unwrap_err();
        assert!(matches!(err, KinError::PoseLengthMismatch { .. }));
    }

    #[test]
    fn two_roots_rejected() {
        let err = Skeleton::new(
            vec!["a".into(), "b".into()],
            vec![None, None],
            vec![Vec3::ZERO, Vec3::ZERO],
        )
        .unwrap_err();
        assert!(matches!(err, KinError::SkeletonShape));
    }
}
