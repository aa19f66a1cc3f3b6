use crate::geom::{Point3, RigidTransform, TriMesh};
use crate::kinematics::KinError;
use serde::{Deserialize, Serialize};

/// Up to four (joint, weight) influences per vertex; weights nonnegative and
/// summing to 1 within 1e-9.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexWeights {
    pub joints: Vec<usize>,
    pub weights: Vec<f64>,
}

/// Rest-pose template mesh plus linear-blend skinning weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkinnedHand {
    pub template: TriMesh,
    pub weights: Vec<VertexWeights>,
}

impl SkinnedHand {
    pub fn new(template: TriMesh, weights: Vec<VertexWeights>, joint_count: usize) -> Result<SkinnedHand, KinError> {
        if weights.len() != template.vertices().len() {
            return Err(KinError::WeightShape);
        }
        for w in &weights {
            if w.joints.len() != w.weights.len() || w.joints.is_empty() || w.joints.len() > 4 {
                return Err(KinError::WeightShape);
            }
            if w.joints.iter().any(|&j| j >= joint_count) {
                return Err(KinError::WeightShape);
            }
            if w.weights.iter().any(|&x| x < 0.0) {
                return Err(KinError::WeightShape);
            }
            let sum: f64 = w.weights.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(KinError::WeightShape);
            }
        }
        Ok(SkinnedHand { template, weights })
    }
}

/// Linear blend skinning: `v' = sum_j w_j (world_j * rest_j^-1)(v)`.
/// `joint_rest` is the world transform of each joint in the pose the
/// template was modeled in.
pub fn skin(
    hand: &SkinnedHand,
    joint_world: &[RigidTransform],
    joint_rest: &[RigidTransform],
) -> Vec<Point3> {
    assert_eq!(joint_world.len(), joint_rest.len());
    let deform: Vec<RigidTransform> = joint_world
        .iter()
        .zip(joint_rest)
        .map(|(w, r)| *w * r.inverse())
        .collect();
    hand.template
        .vertices()
        .iter()
        .zip(&hand.weights)
        .map(|(v, vw)| {
            let mut out = Point3::ZERO;
            for (&j, &w) in vw.joints.iter().zip(&vw.weights) {
                out += deform[j].apply(*v) * w;
            }
            out
        })
        .collect()
}

/// Skins only the listed vertices (marker extraction without touching the
/// full template).
pub fn skin_subset(
    hand: &SkinnedHand,
    joint_world: &[RigidTransform],
    joint_rest: &[RigidTransform],
    vertex_ids: &[usize],
) -> Vec<Point3> {
    let deform: Vec<RigidTransform> = joint_world
        .iter()
        .zip(joint_rest)
        .map(|(w, r)| *w * r.inverse())
        .collect();
    vertex_ids
        .iter()
        .map(|&vi| {
            let v = hand.template.vertices()[vi];
            let vw = &hand.weights[vi];
            let mut out = Point3::ZERO;
            for (&j, &w) in vw.joints.iter().zip(&vw.weights) {
                out += deform[j].apply(v) * w;
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Mat3, Vec3};

    fn tiny_hand(weights: Vec<VertexWeights>, joint_count: usize) -> SkinnedHand {
        let template = TriMesh::new(
            vec![Point3::ZERO, Point3::new(0.1, 0.0, 0.0), Point3::new(0.0, 0.1, 0.0)],
            vec![[0, 1, 2]],
        )
        .unwrap();
        SkinnedHand::new(template, weights, joint_count).unwrap()
    }

    fn single_joint_weights(n: usize) -> Vec<VertexWeights> {
        (0..n).map(|_| VertexWeights { joints: vec![0], weights: vec![1.0] }).collect()
    }

    #[test]
    fn rest_pose_is_identity_deformation() {
        let hand = tiny_hand(single_joint_weights(3), 1);
        let rest = vec![RigidTransform::new(Mat3::rotation(Vec3::Z, 0.4), Vec3::new(0.1, 0.2, 0.3))];
        let posed = skin(&hand, &rest, &rest);
        for (p, v) in posed.iter().zip(hand.template.vertices()) {
            assert!(p.distance(*v) < 1e-12);
        }
    }

    #[test]
    fn single_joint_translation_moves_all_vertices() {
        let hand = tiny_hand(single_joint_weights(3), 1);
        let rest = vec![RigidTransform::IDENTITY];
        let t = Vec3::new(0.0, 0.0, 0.25);
        let world = vec![RigidTransform::from_translation(t)];
        let posed = skin(&hand, &world, &rest);
        for (p, v) in posed.iter().zip(hand.template.vertices()) {
            assert!(p.distance(*v + t) < 1e-12);
        }
    }

    #[test]
    fn half_weighted_vertex_moves_half_way() {
        let weights = vec![
            VertexWeights { joints: vec![0, 1], weights: vec![0.5, 0.5] },
            VertexWeights { joints: vec![0], weights: vec![1.0] },
            VertexWeights { joints: vec![1], weights: vec![1.0] },
        ];
        let hand = tiny_hand(weights, 2);
        let rest = vec![RigidTransform::IDENTITY; 2];
        let world = vec![
            RigidTransform::from_translation(Vec3::new(0.1, 0.0, 0.0)),
            RigidTransform::IDENTITY,
        ];
        let posed = skin(&hand, &world, &rest);
        let expect = hand.template.vertices()[0] + Vec3::new(0.05, 0.0, 0.0);
        assert!(posed[0].distance(expect) < 1e-12);
    }

    #[test]
    fn weight_validation() {
        let template = TriMesh::new(
            vec![Point3::ZERO, Point3::new(0.1, 0.0, 0.0), Point3::new(0.0, 0.1, 0.0)],
            vec![[0, 1, 2]],
        )
        .unwrap();
        // Sum != 1.
        let bad = vec![
            VertexWeights { joints: vec![0], weights: vec![0.9] },
            VertexWeights { joints: vec![0], weights: vec![1.0] },
            VertexWeights { joints: vec![0], weights: vec![1.0] },
        ];
        assert!(SkinnedHand::new(template.clone(), bad, 1).is_err());
        // Joint out of range.
        let bad = vec![
            VertexWeights { joints: vec![3], weights: vec![1.0] },
            VertexWeights { joints: vec![0], weights: vec![1.0] },
            VertexWeights { joints: vec![0], weights: vec![1.0] },
        ];
        assert!(SkinnedHand::new(template, bad, 1).is_err());
    }

    #[test]
    fn subset_matches_full_skin() {
        let hand = tiny_hand(single_joint_weights(3), 1);
        let rest = vec![RigidTransform::IDENTITY];
        let world = vec![RigidTransform::new(Mat3::rotation(Vec3::Y, 0.8), Vec3::new(0.0, 0.1, 0.0))];
        let full = skin(&hand, &world, &rest);
        let sub = skin_subset(&hand, &world, &rest, &[2, 0]);
        assert!(sub[0].distance(full[2]) < 1e-15);
        assert!(sub[1].distance(full[0]) < 1e-15);
    }
}
