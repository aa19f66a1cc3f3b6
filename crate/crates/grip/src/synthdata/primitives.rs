use crate::geom::{Point3, TriMesh};
use crate::synthdata::DataError;
use serde::{Deserialize, Serialize};

/// Primitive object geometry.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectKind {
    Sphere { radius: f64 },
    Box { half_extents: [f64; 3] },
    Cylinder { radius: f64, half_height: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectSpec {
    #[serde(flatten)]
    pub kind: ObjectKind,
    /// Tessellation density (segments around the axis for curved shapes).
    pub resolution: usize,
}

impl ObjectSpec {
    pub fn sphere(radius: f64) -> ObjectSpec {
        ObjectSpec { kind: ObjectKind::Sphere { radius }, resolution: 48 }
    }

    pub fn cuboid(hx: f64, hy: f64, hz: f64) -> ObjectSpec {
        ObjectSpec { kind: ObjectKind::Box { half_extents: [hx, hy, hz] }, resolution: 1 }
    }

    pub fn cylinder(radius: f64, half_height: f64) -> ObjectSpec {
        ObjectSpec { kind: ObjectKind::Cylinder { radius, half_height }, resolution: 48 }
    }

    pub fn analytic_volume(&self) -> f64 {
        match self.kind {
            ObjectKind::Sphere { radius } => 4.0 / 3.0 * std::f64::consts::PI * radius.powi(3),
            ObjectKind::Box { half_extents: [hx, hy, hz] } => 8.0 * hx * hy * hz,
            ObjectKind::Cylinder { radius, half_height } => {
                std::f64::consts::PI * radius * radius * 2.0 * half_height
            }
        }
    }

    pub fn bounding_radius(&self) -> f64 {
        match self.kind {
            ObjectKind::Sphere { radius } => radius,
            ObjectKind::Box { half_extents: [hx, hy, hz] } => (hx * hx + hy * hy + hz * hz).sqrt(),
            ObjectKind::Cylinder { radius, half_height } => {
                (radius * radius + half_height * half_height).sqrt()
            }
        }
    }

    /// A short stable identifier used for object-disjoint splits.
    pub fn object_id(&self) -> String {
        match self.kind {
            ObjectKind::Sphere { radius } => format!("sphere_r{:.4}", radius),
            ObjectKind::Box { half_extents: [hx, hy, hz] } => {
                format!("box_{:.4}x{:.4}x{:.4}", hx, hy, hz)
            }
            ObjectKind::Cylinder { radius, half_height } => {
                format!("cyl_r{:.4}_h{:.4}", radius, half_height)
            }
        }
    }

    fn validate(&self) -> Result<(), DataError> {
        let ok = match self.kind {
            ObjectKind::Sphere { radius } => radius > 0.0 && radius.is_finite(),
            ObjectKind::Box { half_extents } => half_extents.iter().all(|h| *h > 0.0 && h.is_finite()),
            ObjectKind::Cylinder { radius, half_height } => {
                radius > 0.0 && half_height > 0.0 && radius.is_finite() && half_height.is_finite()
            }
        };
        if !ok || self.resolution == 0 {
            return Err(DataError::InvalidSpec(format!("{:?}", self)));
        }
        Ok(())
    }
}

/// Watertight mesh for a primitive spec, centered at the origin.
pub fn make_primitive_mesh(spec: &ObjectSpec) -> Result<TriMesh, DataError> {
    spec.validate()?;
    let mesh = match spec.kind {
        ObjectKind::Box { half_extents: [hx, hy, hz] } => crate::geom::cube(
            Point3::new(-hx, -hy, -hz),
            Point3::new(hx, hy, hz),
        ),
        ObjectKind::Sphere { radius } => uv_sphere(radius, spec.resolution.max(8)),
        ObjectKind::Cylinder { radius, half_height } => {
            cylinder(radius, half_height, spec.resolution.max(8))
        }
    };
    Ok(mesh)
}

/// Latitude/longitude sphere; `segments` slices around the axis and
/// `segments * 3 / 4` stacks, poles as fans. Tessellation volume error is
/// O(1/segments^2).
fn uv_sphere(r: f64, segments: usize) -> TriMesh {
    let slices = segments;
    let stacks = (segments * 3 / 4).max(6);
    let mut verts: Vec<Point3> = Vec::new();
    verts.push(Point3::new(0.0, r, 0.0)); // north pole
    for i in 1..stacks {
        let phi = std::f64::consts::PI * i as f64 / stacks as f64;
        let (sp, cp) = phi.sin_cos();
        for j in 0..slices {
            let th = std::f64::consts::TAU * j as f64 / slices as f64;
            verts.push(Point3::new(r * sp * th.cos(), r * cp, r * sp * th.sin()));
        }
    }
    verts.push(Point3::new(0.0, -r, 0.0)); // south pole
    let south = verts.len() - 1;
    let ring = |i: usize, j: usize| 1 + (i - 1) * slices + (j % slices);

    let mut tris = Vec::new();
    for j in 0..slices {
        tris.push([0, ring(1, j + 1), ring(1, j)]);
    }
    for i in 1..stacks - 1 {
        for j in 0..slices {
            let (a, b) = (ring(i, j), ring(i, j + 1));
            let (c, d) = (ring(i + 1, j), ring(i + 1, j + 1));
            tris.push([a, b, c]);
            tris.push([b, d, c]);
        }
    }
    for j in 0..slices {
        tris.push([south, ring(stacks - 1, j), ring(stacks - 1, j + 1)]);
    }
    TriMesh::new(verts, tris).expect("uv sphere is valid")
}

/// Closed cylinder along y: side bands plus cap fans.
fn cylinder(r: f64, hh: f64, segments: usize) -> TriMesh {
    let mut verts: Vec<Point3> = Vec::new();
    let top_center = 0;
    verts.push(Point3::new(0.0, hh, 0.0));
    let bottom_center = 1;
    verts.push(Point3::new(0.0, -hh, 0.0));
    let top0 = verts.len();
    for j in 0..segments {
        let th = std::f64::consts::TAU * j as f64 / segments as f64;
        verts.push(Point3::new(r * th.cos(), hh, r * th.sin()));
    }
    let bot0 = verts.len();
    for j in 0..segments {
        let th = std::f64::consts::TAU * j as f64 / segments as f64;
        verts.push(Point3::new(r * th.cos(), -hh, r * th.sin()));
    }
    let mut tris = Vec::new();
    for j in 0..segments {
        let j1 = (j + 1) % segments;
        tris.push([top_center, top0 + j1, top0 + j]);
        tris.push([bottom_center, bot0 + j, bot0 + j1]);
        tris.push([top0 + j, top0 + j1, bot0 + j1]);
        tris.push([top0 + j, bot0 + j1, bot0 + j]);
    }
    TriMesh::new(verts, tris).expect("cylinder is valid")
}
