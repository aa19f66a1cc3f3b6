use crate::geom::RigidTransform;
use crate::kinematics::{BodyState, HandPose};
use crate::synthdata::primitives::ObjectSpec;
use crate::synthdata::script::GraspScript;
use crate::synthdata::DataError;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

/// One motion frame: body, object transform, and ground-truth hand poses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub body: BodyState,
    pub object: RigidTransform,
    pub left_hand: HandPose,
    pub right_hand: HandPose,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceMeta {
    pub schema_version: u32,
    pub object: ObjectSpec,
    pub script: GraspScript,
    pub script_id: String,
    pub fps: u32,
    pub seed: u64,
}

pub const SEQUENCE_SCHEMA_VERSION: u32 = 1;

/// A full motion sequence; the unit of training and evaluation data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MotionSequence {
    pub meta: SequenceMeta,
    pub frames: Vec<Frame>,
}

impl MotionSequence {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn object_id(&self) -> String {
        self.meta.object.object_id()
    }

    /// JSON-lines: line 0 is the metadata record, each following line one
    /// frame.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<(), DataError> {
        let meta = serde_json::to_string(&self.meta).map_err(|e| DataError::Serde(e.to_string()))?;
        writeln!(w, "{meta}")?;
        for f in &self.frames {
            let line = serde_json::to_string(f).map_err(|e| DataError::Serde(e.to_string()))?;
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn save_jsonl(&self, path: &Path) -> Result<(), DataError> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_jsonl(&mut f)?;
        f.flush()?;
        Ok(())
    }

    pub fn read_jsonl<R: std::io::Read>(r: R) -> Result<MotionSequence, DataError> {
        let reader = BufReader::new(r);
        let mut lines = reader.lines();
        let meta_line = lines.next().ok_or_else(|| DataError::Serde("empty file".into()))??;
        let meta: SequenceMeta =
            serde_json::from_str(&meta_line).map_err(|e| DataError::Serde(e.to_string()))?;
        if meta.schema_version != SEQUENCE_SCHEMA_VERSION {
            return Err(DataError::Serde(format!(
                "sequence schema {} (expected {})",
                meta.schema_version, SEQUENCE_SCHEMA_VERSION
            )));
        }
        let mut frames = Vec::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            frames.push(serde_json::from_str(&line).map_err(|e| DataError::Serde(e.to_string()))?);
        }
        Ok(MotionSequence { meta, frames })
    }

    pub fn load_jsonl(path: &Path) -> Result<MotionSequence, DataError> {
        let f = std::fs::File::open(path)?;
        MotionSequence::read_jsonl(f)
    }
}
