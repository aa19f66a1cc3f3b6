use crate::geom::{Mat3, Vec3};
use crate::kinematics::KinError;
use serde::{Deserialize, Serialize};

/// Continuous 6D rotation parameterization: the first two columns of a
/// rotation matrix, stored as [a.x, a.y, a.z, b.x, b.y, b.z]. The vectors
/// need not be orthonormal; decoding Gram-Schmidts them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rot6D(pub [f64; 6]);

impl Rot6D {
    pub const IDENTITY: Rot6D = Rot6D([1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);

    pub fn from_cols(a: Vec3, b: Vec3) -> Rot6D {
        Rot6D([a.x, a.y, a.z, b.x, b.y, b.z])
    }

    pub fn col_a(&self) -> Vec3 {
        Vec3::new(self.0[0], self.0[1], self.0[2])
    }

    pub fn col_b(&self) -> Vec3 {
        Vec3::new(self.0[3], self.0[4], self.0[5])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

const DEGENERATE_EPS: f64 = 1e-9;

/// Gram-Schmidt decode: normalize a; b <- b - (a.b)a, normalize; c = a x b.
/// Scale-invariant in `a` and invariant to the component of `b` along `a`.
pub fn rot6d_to_matrix(r: Rot6D) -> Result<Mat3, KinError> {
    if !r.is_finite() {
        return Err(KinError::DegenerateRot6D);
    }
    let a = r.col_a();
    let na = a.norm();
    if na < DEGENERATE_EPS {
        return Err(KinError::DegenerateRot6D);
    }
    let a = a / na;
    let b_raw = r.col_b();
    let b = b_raw - a * a.dot(b_raw);
    let nb = b.norm();
    if nb < DEGENERATE_EPS * b_raw.norm().max(1.0) {
        return Err(KinError::DegenerateRot6D);
    }
    let b = b / nb;
    let c = a.cross(b);
    Ok(Mat3::from_cols(a, b, c))
}

/// Drops the third column. Requires an orthonormal input within 1e-6 so the
/// encode/decode pair round-trips.
pub fn matrix_to_rot6d(m: &Mat3) -> Result<Rot6D, KinError> {
    if !m.is_rotation(1e-6) {
        return Err(KinError::NotARotation);
    }
    Ok(Rot6D::from_cols(m.col(0), m.col(1)))
}
