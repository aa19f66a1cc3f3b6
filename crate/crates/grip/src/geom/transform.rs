use super::vec3::Vec3;
use super::GeomError;
use serde::{Deserialize, Serialize};
use std::ops::Mul;

/// Row-major 3x3 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat3 {
    pub m: [[f64; 3]; 3],
}

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3 {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub fn from_rows(r0: Vec3, r1: Vec3, r2: Vec3) -> Mat3 {
        Mat3 {
            m: [[r0.x, r0.y, r0.z], [r1.x, r1.y, r1.z], [r2.x, r2.y, r2.z]],
        }
    }

    pub fn from_cols(c0: Vec3, c1: Vec3, c2: Vec3) -> Mat3 {
        Mat3 {
            m: [[c0.x, c1.x, c2.x], [c0.y, c1.y, c2.y], [c0.z, c1.z, c2.z]],
        }
    }

    pub fn col(&self, j: usize) -> Vec3 {
        Vec3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    pub fn row(&self, i: usize) -> Vec3 {
        Vec3::new(self.m[i][0], self.m[i][1], self.m[i][2])
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_rows(self.col(0), self.col(1), self.col(2))
    }

    pub fn det(&self) -> f64 {
        self.row(0).dot(self.row(1).cross(self.row(2)))
    }

    /// Rotation about a unit axis by `angle` radians (Rodrigues).
    pub fn rotation(axis: Vec3, angle: f64) -> Mat3 {
        let a = axis.normalized();
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        Mat3 {
            m: [
                [t * a.x * a.x + c, t * a.x * a.y - s * a.z, t * a.x * a.z + s * a.y],
                [t * a.x * a.y + s * a.z, t * a.y * a.y + c, t * a.y * a.z - s * a.x],
                [t * a.x * a.z - s * a.y, t * a.y * a.z + s * a.x, t * a.z * a.z + c],
            ],
        }
    }

    /// Rotation from an axis-angle vector (angle = |v|, axis = v/|v|).
    pub fn from_axis_angle_vec(v: Vec3) -> Mat3 {
        let angle = v.norm();
        if angle < 1e-12 {
            return Mat3::IDENTITY;
        }
        Mat3::rotation(v / angle, angle)
    }

    /// Axis-angle vector of a rotation matrix (inverse of
    /// [`Mat3::from_axis_angle_vec`]).
    pub fn to_axis_angle_vec(&self) -> Vec3 {
        let trace = self.m[0][0] + self.m[1][1] + self.m[2][2];
        let cos_a = ((trace - 1.0) * 0.5).clamp(-1.0, 1.0);
        let angle = cos_a.acos();
        if angle < 1e-9 {
            return Vec3::ZERO;
        }
        if angle > std::f64::consts::PI - 1e-6 {
            // Near pi the off-diagonal differences vanish; recover the axis
            // from the symmetric part instead.
            let xx = ((self.m[0][0] + 1.0) * 0.5).max(0.0).sqrt();
            let yy = ((self.m[1][1] + 1.0) * 0.5).max(0.0).sqrt();
            let zz = ((self.m[2][2] + 1.0) * 0.5).max(0.0).sqrt();
            let mut axis = Vec3::new(xx, yy, zz);
            if self.m[0][1] + self.m[1][0] < 0.0 {
                axis.y = -axis.y;
            }
            if self.m[0][2] + self.m[2][0] < 0.0 {
                axis.z = -axis.z;
            }
            if axis.norm_sq() < 1e-18 {
                axis = Vec3::X;
            }
            return axis.normalized() * angle;
        }
        let axis = Vec3::new(
            self.m[2][1] - self.m[1][2],
            self.m[0][2] - self.m[2][0],
            self.m[1][0] - self.m[0][1],
        ) * (0.5 / angle.sin());
        axis * angle
    }

    pub fn is_rotation(&self, tol: f64) -> bool {
        let rt_r = self.transpose() * *self;
        let mut max_dev: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                max_dev = max_dev.max((rt_r.m[i][j] - expect).abs());
            }
        }
        max_dev <= tol && (self.det() - 1.0).abs() <= tol
    }

    pub fn frobenius_distance(&self, other: &Mat3) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let d = self.m[i][j] - other.m[i][j];
                s += d * d;
            }
        }
        s.sqrt()
    }
}

impl Mul<Vec3> for Mat3 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        Vec3::new(self.row(0).dot(v), self.row(1).dot(v), self.row(2).dot(v))
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.row(i).dot(o.col(j));
            }
        }
        Mat3 { m }
    }
}

/// Rigid motion: `p -> rotation * p + translation`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigidTransform {
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl RigidTransform {
    pub const IDENTITY: RigidTransform = RigidTransform {
        rotation: Mat3::IDENTITY,
        translation: Vec3::ZERO,
    };

    pub fn new(rotation: Mat3, translation: Vec3) -> RigidTransform {
        RigidTransform { rotation, translation }
    }

    pub fn from_translation(t: Vec3) -> RigidTransform {
        RigidTransform { rotation: Mat3::IDENTITY, translation: t }
    }

    /// Rejects rotations that are not orthonormal with det +1 within `1e-9`.
    pub fn validated(rotation: Mat3, translation: Vec3) -> Result<RigidTransform, GeomError> {
        if !rotation.is_rotation(1e-9) {
            return Err(GeomError::NotARotation);
        }
        Ok(RigidTransform { rotation, translation })
    }

    pub fn apply(&self, p: Vec3) -> Vec3 {
        self.rotation * p + self.translation
    }

    pub fn apply_vector(&self, v: Vec3) -> Vec3 {
        self.rotation * v
    }

    pub fn inverse(&self) -> RigidTransform {
        let rt = self.rotation.transpose();
        RigidTransform { rotation: rt, translation: -(rt * self.translation) }
    }

    /// Geodesic interpolation: position lerped, rotation along the shortest
    /// arc. `t` in [0, 1].
    pub fn interpolate(&self, other: &RigidTransform, t: f64) -> RigidTransform {
        let rel = self.rotation.transpose() * other.rotation;
        let aa = rel.to_axis_angle_vec();
        RigidTransform {
            rotation: self.rotation * Mat3::from_axis_angle_vec(aa * t),
            translation: self.translation * (1.0 - t) + other.translation * t,
        }
    }
}

impl Mul for RigidTransform {
    type Output = RigidTransform;
    fn mul(self, o: RigidTransform) -> RigidTransform {
        RigidTransform {
            rotation: self.rotation * o.rotation,
            translation: self.rotation * o.translation + self.translation,
        }
    }
}
