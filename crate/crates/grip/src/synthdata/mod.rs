//! Procedural generation of ground-truth grasp motion sequences on
//! primitive objects, perturbation protocols, and object-disjoint dataset
//! splits.

pub mod generate;
pub mod perturb;
pub mod primitives;
pub mod script;
pub mod sequence;
pub mod split;

pub use generate::{generate_grasp_sequence, GenParams, HandPair};
pub use perturb::{perturb, NoiseSpec};
pub use primitives::{make_primitive_mesh, ObjectKind, ObjectSpec};
pub use script::{default_scripts, GraspScript, Handedness, ManipulateStyle, PhaseSpans};
pub use sequence::{Frame, MotionSequence, SequenceMeta, SEQUENCE_SCHEMA_VERSION};
pub use split::{split_dataset, SplitManifest};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("invalid object or script spec: {0}")]
    InvalidSpec(String),
    #[error("object is out of reach for the grasping arm")]
    UnreachableObject,
    #[error("need at least {need} distinct objects, have {have}")]
    TooFewObjects { have: usize, need: usize },
    #[error("serialization: {0}")]
    Serde(String),
    #[error(transparent)]
    Kin(#[from] crate::kinematics::KinError),
    #[error(transparent)]
    Geom(#[from] crate::geom::GeomError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// The default desk-scale corpus: 3 object kinds x 6 size variants x 8
/// scripts x a configurable number of seeds.
pub fn default_object_specs() -> Vec<ObjectSpec> {
    let mut specs = Vec::new();
    for i in 0..6 {
        let s = i as f64 / 5.0;
        specs.push(ObjectSpec::sphere(0.028 + 0.014 * s));
        specs.push(ObjectSpec::cuboid(0.024 + 0.012 * s, 0.028 + 0.010 * s, 0.024 + 0.012 * s));
        specs.push(ObjectSpec::cylinder(0.020 + 0.010 * s, 0.045 + 0.020 * s));
    }
    specs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_has_18_distinct_objects() {
        let specs = default_object_specs();
        assert_eq!(specs.len(), 18);
        let mut ids: Vec<String> = specs.iter().map(|s| s.object_id()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 18);
    }

    #[test]
    fn sequence_jsonl_round_trip() {
        let hands = HandPair::canonical();
        let seq = generate_grasp_sequence(
            &ObjectSpec::sphere(0.035),
            &default_scripts()[2].1,
            3,
            &hands,
            &GenParams::default(),
        )
        .unwrap();
        let mut buf = Vec::new();
        seq.write_jsonl(&mut buf).unwrap();
        let back = MotionSequence::read_jsonl(&buf[..]).unwrap();
        assert_eq!(seq, back);
    }
}
