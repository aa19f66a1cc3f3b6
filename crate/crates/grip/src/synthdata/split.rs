use crate::rng::SplitMix64;
use crate::synthdata::DataError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Object-disjoint dataset split: sequences of a held-out object never
/// appear in training.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitManifest {
    pub train_objects: Vec<String>,
    pub val_objects: Vec<String>,
    pub test_objects: Vec<String>,
    /// Sequence indices per split, aligned with the input order.
    pub train: Vec<usize>,
    pub val: Vec<usize>,
    pub test: Vec<usize>,
}

/// Splits by object id with the given proportions (train, val, test).
/// Proportions are by object count, rounded, with at least one object per
/// nonempty bucket.
pub fn split_dataset(
    object_ids: &[String],
    proportions: (f64, f64, f64),
    seed: u64,
) -> Result<SplitManifest, DataError> {
    let mut by_object: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, id) in object_ids.iter().enumerate() {
        by_object.entry(id.clone()).or_default().push(i);
    }
    let n_objects = by_object.len();
    if n_objects < 3 {
        return Err(DataError::TooFewObjects { have: n_objects, need: 3 });
    }
    let (p_train, p_val, p_test) = proportions;
    let total = p_train + p_val + p_test;
    if !(total > 0.0) {
        return Err(DataError::InvalidSpec("split proportions must be positive".into()));
    }

    let mut objects: Vec<String> = by_object.keys().cloned().collect();
    let mut rng = SplitMix64::new(seed);
    rng.shuffle(&mut objects);

    let mut n_val = ((p_val / total) * n_objects as f64).round() as usize;
    let mut n_test = ((p_test / total) * n_objects as f64).round() as usize;
    n_val = n_val.max(1);
    n_test = n_test.max(1);
    while n_val + n_test >= n_objects {
        if n_test > 1 {
            n_test -= 1;
        } else {
            n_val -= 1;
        }
    }
    let n_train = n_objects - n_val - n_test;

    let train_objects: Vec<String> = objects[..n_train].to_vec();
    let val_objects: Vec<String> = objects[n_train..n_train + n_val].to_vec();
    let test_objects: Vec<String> = objects[n_train + n_val..].to_vec();

    let collect = |names: &[String]| -> Vec<usize> {
        let mut out = Vec::new();
        for n in names {
            out.extend_from_slice(&by_object[n]);
        }
        out.sort_unstable();
        out
    };
    Ok(SplitManifest {
        train: collect(&train_objects),
        val: collect(&val_objects),
        test: collect(&test_objects),
        train_objects,
        val_objects,
        test_objects,
    })
}
