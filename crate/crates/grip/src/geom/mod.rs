//! Triangle-mesh geometry: rigid transforms, accelerated closest-point and
//! closest-vertex queries, hemisphere sampling, and volumetric overlap.

mod hemisphere;
mod index;
mod mesh;
mod transform;
mod vec3;
mod voxel;

pub use hemisphere::sample_hemisphere;
pub use index::{brute_force_surface, brute_force_vertex, ClosestPointIndex, SurfaceHit, RAY_EPS};
pub use mesh::{closest_point_on_triangle, cube, triangle_area, unit_cube, TriMesh, MIN_TRIANGLE_AREA};
pub use transform::{Mat3, RigidTransform};
pub use vec3::{Point3, Vec3};
pub use voxel::{intersection_volume, intersection_volume_indexed, is_watertight, VoxelGrid};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("mesh has no vertices or no triangles")]
    EmptyMesh,
    #[error("triangle {triangle} references vertex {index} out of range")]
    IndexOutOfRange { triangle: usize, index: usize },
    #[error("triangle {triangle} is degenerate (repeated vertex or near-zero area)")]
    DegenerateTriangle { triangle: usize },
    #[error("mesh contains a non-finite vertex")]
    NonFiniteVertex,
    #[error("matrix is not a rotation (orthonormal, det +1)")]
    NotARotation,
    #[error("invalid hemisphere radius {0}")]
    InvalidRadius(f64),
    #[error("invalid sample count {0}")]
    InvalidCount(usize),
    #[error("invalid voxel size {0}")]
    InvalidVoxelSize(f64),
    #[error("mesh is not watertight (ray-parity inconsistency)")]
    NotWatertight,
    #[error("OBJ parse error at line {line}: {what}")]
    ObjParse { line: usize, what: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
