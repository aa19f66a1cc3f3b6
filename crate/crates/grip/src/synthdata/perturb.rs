use crate::geom::{Mat3, Vec3};
use crate::kinematics::{matrix_to_rot6d, rot6d_to_matrix, ArmPose, HandPose, Rot6D};
use crate::rng::SplitMix64;
use crate::synthdata::sequence::MotionSequence;
use serde::{Deserialize, Serialize};

/// Perturbation protocols for robustness evaluation and denoiser training.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseSpec {
    /// Gaussian noise (meters) on both wrists' local translations.
    Translation { sigma: f64 },
    /// Gaussian noise (radians) added to the axis-angle representation of
    /// every finger joint of both hands.
    Rotation { sigma: f64 },
    /// Gaussian axis-angle noise on both arms and both wrist translations
    /// (the arm-denoiser training protocol).
    Arm { shoulder_sigma: f64, elbow_sigma: f64, wrist_sigma: f64 },
}

impl NoiseSpec {
    pub fn is_zero(&self) -> bool {
        match *self {
            NoiseSpec::Translation { sigma } => sigma == 0.0,
            NoiseSpec::Rotation { sigma } => sigma == 0.0,
            NoiseSpec::Arm { shoulder_sigma, elbow_sigma, wrist_sigma } => {
                shoulder_sigma == 0.0 && elbow_sigma == 0.0 && wrist_sigma == 0.0
            }
        }
    }
}

fn gauss_vec(rng: &mut SplitMix64, sigma: f64) -> Vec3 {
    Vec3::new(rng.gaussian() * sigma, rng.gaussian() * sigma, rng.gaussian() * sigma)
}

/// Adds Gaussian noise to the axis-angle representation of a 6D rotation.
fn perturb_rot6d(r: Rot6D, sigma: f64, rng: &mut SplitMix64) -> Rot6D {
    let m = rot6d_to_matrix(r).expect("stored pose decodes");
    let aa = m.to_axis_angle_vec() + gauss_vec(rng, sigma);
    matrix_to_rot6d(&Mat3::from_axis_angle_vec(aa)).expect("perturbed rotation encodes")
}

fn perturb_hand(pose: &HandPose, sigma: f64, rng: &mut SplitMix64) -> HandPose {
    let mut out = *pose;
    for r in out.0.iter_mut() {
        *r = perturb_rot6d(*r, sigma, rng);
    }
    out
}

fn perturb_arm(pose: &ArmPose, shoulder_sigma: f64, elbow_sigma: f64, rng: &mut SplitMix64) -> ArmPose {
    ArmPose {
        shoulder: perturb_rot6d(pose.shoulder, shoulder_sigma, rng),
        elbow: perturb_rot6d(pose.elbow, elbow_sigma, rng),
    }
}

/// Applies a noise protocol to a sequence; metadata and length are
/// preserved. The caller keeps the input as ground truth.
pub fn perturb(seq: &MotionSequence, noise: &NoiseSpec, seed: u64) -> MotionSequence {
    if noise.is_zero() {
        return seq.clone();
    }
    let mut rng = SplitMix64::new(seed);
    let mut out = seq.clone();
    for frame in out.frames.iter_mut() {
        match *noise {
            NoiseSpec::Translation { sigma } => {
                frame.body.left_wrist.translation += gauss_vec(&mut rng, sigma);
                frame.body.right_wrist.translation += gauss_vec(&mut rng, sigma);
            }
            NoiseSpec::Rotation { sigma } => {
                frame.left_hand = perturb_hand(&frame.left_hand, sigma, &mut rng);
                frame.right_hand = perturb_hand(&frame.right_hand, sigma, &mut rng);
            }
            NoiseSpec::Arm { shoulder_sigma, elbow_sigma, wrist_sigma } => {
                frame.body.left_arm =
                    perturb_arm(&frame.body.left_arm, shoulder_sigma, elbow_sigma, &mut rng);
                frame.body.right_arm =
                    perturb_arm(&frame.body.right_arm, shoulder_sigma, elbow_sigma, &mut rng);
                frame.body.left_wrist.translation += gauss_vec(&mut rng, wrist_sigma);
                frame.body.right_wrist.translation += gauss_vec(&mut rng, wrist_sigma);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthdata::generate::{generate_grasp_sequence, GenParams, HandPair};
    use crate::synthdata::primitives::ObjectSpec;
    use crate::synthdata::script::default_scripts;

    fn base_seq() -> MotionSequence {
        let hands = HandPair::canonical();
        generate_grasp_sequence(
            &ObjectSpec::sphere(0.035),
            &default_scripts()[2].1,
            7,
            &hands,
            &GenParams::default(),
        )
        .unwrap()
    }

    #[test]
    fn zero_sigma_is_identity() {
        let seq = base_seq();
        let p = perturb(&seq, &NoiseSpec::Translation { sigma: 0.0 }, 3);
        assert_eq!(seq, p);
        let p = perturb(&seq, &NoiseSpec::Rotation { sigma: 0.0 }, 3);
        assert_eq!(seq, p);
    }

    #[test]
    fn perturbation_preserves_length_and_metadata() {
        let seq = base_seq();
        let p = perturb(&seq, &NoiseSpec::Rotation { sigma: 0.3 }, 3);
        assert_eq!(seq.len(), p.len());
        assert_eq!(seq.meta, p.meta);
        assert_ne!(seq.frames, p.frames);
    }

    #[test]
    fn translation_noise_statistics() {
        // Mean 3D displacement of N(0, sigma^2 I) is sigma * sqrt(2/pi) *
        // sqrt(2) * Gamma(2)/Gamma(3/2)... easier: E||x|| = sigma * 2 *
        // sqrt(2/pi) for 3 dof? Use the exact chi distribution mean:
        // E||x|| = sigma * sqrt(2) * Gamma(2) / Gamma(1.5) = sigma * 2 *
        // sqrt(2/pi).
        let seq = base_seq();
        let sigma = 0.01;
        let mut displacements = Vec::new();
        for trial in 0..300 {
            let p = perturb(&seq, &NoiseSpec::Translation { sigma }, 1000 + trial);
            for (a, b) in seq.frames.iter().zip(&p.frames) {
                displacements.push(
                    (a.body.right_wrist.translation - b.body.right_wrist.translation).norm(),
                );
            }
        }
        let mean: f64 = displacements.iter().sum::<f64>() / displacements.len() as f64;
        let expect = sigma * 2.0 * (2.0 / std::f64::consts::PI).sqrt();
        assert!(
            (mean - expect).abs() / expect < 0.01,
            "mean {mean}, expected {expect} over {} samples",
            displacements.len()
        );
    }

    #[test]
    fn rotation_noise_moves_the_hand() {
        let seq = base_seq();
        let p = perturb(&seq, &NoiseSpec::Rotation { sigma: 0.3 }, 5);
        let hands = HandPair::canonical().scaled(seq.frames[0].body.hand_scale());
        let body = crate::kinematics::BodyModel::default();
        let mut total = 0.0;
        let mut count = 0;
        for (a, b) in seq.frames.iter().zip(&p.frames) {
            let wrist = body.wrist_world(&a.body, crate::kinematics::BodySide::Right).unwrap();
            let ma = hands.right.marker_positions(&a.right_hand, &wrist).unwrap();
            let mb = hands.right.marker_positions(&b.right_hand, &wrist).unwrap();
            for (x, y) in ma.iter().zip(&mb) {
                total += x.distance(*y);
                count += 1;
            }
        }
        let mpvpe_mm = total / count as f64 * 1000.0;
        // Large enough to make refinement meaningful, small enough to stay
        // a hand.
        assert!(mpvpe_mm > 5.0 && mpvpe_mm < 80.0, "perturbed MPVPE {mpvpe_mm} mm");
    }

    #[test]
    fn determinism_per_seed() {
        let seq = base_seq();
        let a = perturb(&seq, &NoiseSpec::Rotation { sigma: 0.3 }, 9);
        let b = perturb(&seq, &NoiseSpec::Rotation { sigma: 0.3 }, 9);
        assert_eq!(a, b);
    }
}
