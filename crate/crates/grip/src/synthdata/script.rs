use crate::synthdata::DataError;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Handedness {
    Left,
    Right,
    Bimanual,
}

/// How the object is moved while held.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManipulateStyle {
    /// Straight lift and hold.
    Lift,
    /// Lift with a lateral sway.
    LiftSway,
    /// Lift then partial lower.
    LiftLower,
}

/// Phase durations in frames, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraspScript {
    pub approach: u32,
    pub pregrasp: u32,
    pub close: u32,
    pub manipulate: u32,
    pub release: u32,
    pub retreat: u32,
    pub handedness: Handedness,
    pub style: ManipulateStyle,
    pub fps: u32,
}

/// Frame index ranges per phase.
#[derive(Clone, Copy, Debug)]
pub struct PhaseSpans {
    pub approach: (usize, usize),
    pub pregrasp: (usize, usize),
    pub close: (usize, usize),
    pub manipulate: (usize, usize),
    pub release: (usize, usize),
    pub retreat: (usize, usize),
}

impl GraspScript {
    pub fn validate(&self) -> Result<(), DataError> {
        let durations = [
            self.approach,
            self.pregrasp,
            self.close,
            self.manipulate,
            self.release,
            self.retreat,
        ];
        if durations.iter().any(|&d| d == 0) || self.fps == 0 {
            return Err(DataError::InvalidSpec("script durations and fps must be >= 1".into()));
        }
        Ok(())
    }

    pub fn total_frames(&self) -> usize {
        (self.approach + self.pregrasp + self.close + self.manipulate + self.release + self.retreat)
            as usize
    }

    pub fn spans(&self) -> PhaseSpans {
        let mut at = 0usize;
        let mut next = |d: u32| {
            let s = (at, at + d as usize);
            at += d as usize;
            s
        };
        PhaseSpans {
            approach: next(self.approach),
            pregrasp: next(self.pregrasp),
            close: next(self.close),
            manipulate: next(self.manipulate),
            release: next(self.release),
            retreat: next(self.retreat),
        }
    }
}

/// The default script corpus: eight variants spanning handedness, pace, and
/// manipulation style.
pub fn default_scripts() -> Vec<(String, GraspScript)> {
    let base = |handedness, style, approach, manipulate| GraspScript {
        approach,
        pregrasp: 8,
        close: 12,
        manipulate,
        release: 10,
        retreat: 14,
        handedness,
        style,
        fps: 30,
    };
    vec![
        ("right_lift".into(), base(Handedness::Right, ManipulateStyle::Lift, 20, 24)),
        ("right_sway".into(), base(Handedness::Right, ManipulateStyle::LiftSway, 20, 30)),
        ("right_quick".into(), base(Handedness::Right, ManipulateStyle::Lift, 12, 16)),
        ("right_lower".into(), base(Handedness::Right, ManipulateStyle::LiftLower, 24, 30)),
        ("left_lift".into(), base(Handedness::Left, ManipulateStyle::Lift, 20, 24)),
        ("left_sway".into(), base(Handedness::Left, ManipulateStyle::LiftSway, 18, 28)),
        ("bimanual_lift".into(), base(Handedness::Bimanual, ManipulateStyle::Lift, 22, 26)),
        ("bimanual_sway".into(), base(Handedness::Bimanual, ManipulateStyle::LiftSway, 20, 30)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_cover_all_frames_in_order() {
        for (_, s) in default_scripts() {
            s.validate().unwrap();
            let spans = s.spans();
            assert_eq!(spans.approach.0, 0);
            assert_eq!(spans.approach.1, spans.pregrasp.0);
            assert_eq!(spans.pregrasp.1, spans.close.0);
            assert_eq!(spans.close.1, spans.manipulate.0);
            assert_eq!(spans.manipulate.1, spans.release.0);
            assert_eq!(spans.release.1, spans.retreat.0);
            assert_eq!(spans.retreat.1, s.total_frames());
        }
    }

    #[test]
    fn zero_duration_rejected() {
        let mut s = default_scripts()[0].1;
        s.close = 0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn default_lengths_are_desk_scale() {
        for (_, s) in default_scripts() {
            let n = s.total_frames();
            assert!((60..=130).contains(&n), "script length {n}");
        }
    }
}
