use super::transform::RigidTransform;
use super::vec3::Point3;
use super::GeomError;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

/// Minimum accepted triangle area in square meters; anything below is
/// rejected at build as degenerate.
pub const MIN_TRIANGLE_AREA: f64 = 1e-12;

/// Indexed triangle mesh. Validated at construction: indices in range, no
/// repeated vertex within a triangle, no degenerate (near-zero-area)
/// triangles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriMesh {
    vertices: Vec<Point3>,
    triangles: Vec<[usize; 3]>,
}

impl TriMesh {
    pub fn new(vertices: Vec<Point3>, triangles: Vec<[usize; 3]>) -> Result<TriMesh, GeomError> {
        if vertices.is_empty() || triangles.is_empty() {
            return Err(GeomError::EmptyMesh);
        }
        for (ti, tri) in triangles.iter().enumerate() {
            for &idx in tri {
                if idx >= vertices.len() {
                    return Err(GeomError::IndexOutOfRange { triangle: ti, index: idx });
                }
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(GeomError::DegenerateTriangle { triangle: ti });
            }
            let [a, b, c] = [vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]];
            if triangle_area(a, b, c) <= MIN_TRIANGLE_AREA {
                return Err(GeomError::DegenerateTriangle { triangle: ti });
            }
        }
        for v in &vertices {
            if !v.is_finite() {
                return Err(GeomError::NonFiniteVertex);
            }
        }
        Ok(TriMesh { vertices, triangles })
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_points(&self, t: usize) -> [Point3; 3] {
        let [i, j, k] = self.triangles[t];
        [self.vertices[i], self.vertices[j], self.vertices[k]]
    }

    pub fn transformed(&self, t: &RigidTransform) -> TriMesh {
        TriMesh {
            vertices: self.vertices.iter().map(|v| t.apply(*v)).collect(),
            triangles: self.triangles.clone(),
        }
    }

    /// Signed volume via the divergence theorem; positive for outward-wound
    /// closed meshes.
    pub fn signed_volume(&self) -> f64 {
        let mut vol = 0.0;
        for t in 0..self.triangles.len() {
            let [a, b, c] = self.triangle_points(t);
            vol += a.dot(b.cross(c)) / 6.0;
        }
        vol
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.triangles.len())
            .map(|t| {
                let [a, b, c] = self.triangle_points(t);
                triangle_area(a, b, c)
            })
            .sum()
    }

    pub fn aabb(&self) -> (Point3, Point3) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo = lo.min_elem(*v);
            hi = hi.max_elem(*v);
        }
        (lo, hi)
    }

    /// Writes ASCII OBJ (v/f records, 1-based indices). Floats are printed
    /// with Rust's shortest-round-trip formatting so import is bit-exact.
    pub fn write_obj<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        let mut w = BufWriter::new(w);
        for v in &self.vertices {
            writeln!(w, "v {:?} {:?} {:?}", v.x, v.y, v.z)?;
        }
        for t in &self.triangles {
            writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
        }
        w.flush()
    }

    pub fn save_obj(&self, path: &Path) -> Result<(), GeomError> {
        let mut f = std::fs::File::create(path)?;
        self.write_obj(&mut f)?;
        Ok(())
    }

    /// Parses v/f records; polygons with more than three vertices are
    /// fan-triangulated. Ignores other record types.
    pub fn read_obj<R: Read>(r: R) -> Result<TriMesh, GeomError> {
        let reader = BufReader::new(r);
        let mut vertices = Vec::new();
        let mut triangles = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("v") => {
                    let mut coord = |what: &str| -> Result<f64, GeomError> {
                        parts
                            .next()
                            .ok_or(GeomError::ObjParse { line: lineno + 1, what: what.into() })?
                            .parse::<f64>()
                            .map_err(|_| GeomError::ObjParse { line: lineno + 1, what: what.into() })
                    };
                    let (x, y, z) = (coord("x")?, coord("y")?, coord("z")?);
                    vertices.push(Point3::new(x, y, z));
                }
                Some("f") => {
                    let idx: Result<Vec<usize>, GeomError> = parts
                        .map(|p| {
                            // "i", "i/t", "i/t/n" forms; indices are 1-based.
                            let head = p.split('/').next().unwrap_or("");
                            head.parse::<usize>()
                                .ok()
                                .and_then(|i| i.checked_sub(1))
                                .ok_or(GeomError::ObjParse { line: lineno + 1, what: "face index".into() })
                        })
                        .collect();
                    let idx = idx?;
                    if idx.len() < 3 {
                        return Err(GeomError::ObjParse { line: lineno + 1, what: "face arity".into() });
                    }
                    for k in 1..idx.len() - 1 {
                        triangles.push([idx[0], idx[k], idx[k + 1]]);
                    }
                }
                _ => {}
            }
        }
        TriMesh::new(vertices, triangles)
    }

    pub fn load_obj(path: &Path) -> Result<TriMesh, GeomError> {
        let f = std::fs::File::open(path)?;
        TriMesh::read_obj(f)
    }
}

pub fn triangle_area(a: Point3, b: Point3, c: Point3) -> f64 {
    (b - a).cross(c - a).norm() * 0.5
}

/// Closest point on triangle (a, b, c) to `p` (Ericson, Real-Time Collision
/// Detection §5.1.5). Exact region classification, no tolerance knobs.
pub fn closest_point_on_triangle(p: Point3, a: Point3, b: Point3, c: Point3) -> Point3 {
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(ap);
    let d2 = ac.dot(ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return a;
    }

    let bp = p - b;
    let d3 = ab.dot(bp);
    let d4 = ac.dot(bp);
    if d3 >= 0.0 && d4 <= d3 {
        return b;
    }

    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return a + ab * v;
    }

    let cp = p - c;
    let d5 = ab.dot(cp);
    let d6 = ac.dot(cp);
    if d6 >= 0.0 && d5 <= d6 {
        return c;
    }

    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return a + ac * w;
    }

    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return b + (c - b) * w;
    }

    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    a + ab * v + ac * w
}

/// Unit cube [0,1]^3: 8 vertices, 12 outward-wound triangles.
pub fn unit_cube() -> TriMesh {
    cube(Point3::ZERO, Point3::new(1.0, 1.0, 1.0))
}

/// Axis-aligned box between two corners, outward winding.
pub fn cube(lo: Point3, hi: Point3) -> TriMesh {
    let v = vec![
        Point3::new(lo.x, lo.y, lo.z),
        Point3::new(hi.x, lo.y, lo.z),
        Point3::new(hi.x, hi.y, lo.z),
        Point3::new(lo.x, hi.y, lo.z),
        Point3::new(lo.x, lo.y, hi.z),
        Point3::new(hi.x, lo.y, hi.z),
        Point3::new(hi.x, hi.y, hi.z),
        Point3::new(lo.x, hi.y, hi.z),
    ];
    let t = vec![
        [0, 2, 1], [0, 3, 2], // z = lo (normal -z)
        [4, 5, 6], [4, 6, 7], // z = hi (+z)
        [0, 1, 5], [0, 5, 4], // y = lo (-y)
        [3, 6, 2], [3, 7, 6], // y = hi (+y)
        [0, 7, 3], [0, 4, 7], // x = lo (-x)
        [1, 2, 6], [1, 6, 5], // x = hi (+x)
    ];
    TriMesh::new(v, t).expect("cube is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_cube_has_12_triangles_and_unit_volume() {
        let m = unit_cube();
        assert_eq!(m.triangles().len(), 12);
        assert_eq!(m.vertices().len(), 8);
        assert!((m.signed_volume() - 1.0).abs() < 1e-12);
        assert!((m.surface_area() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn repeated_vertex_index_is_degenerate() {
        let verts = vec![Point3::ZERO, Point3::X, Point3::Y];
        let err = TriMesh::new(verts, vec![[0, 1, 1]]).unwrap_err();
        assert!(matches!(err, GeomError::DegenerateTriangle { .. }));
    }

    #[test]
    fn zero_area_triangle_rejected() {
        let verts = vec![Point3::ZERO, Point3::X, Point3::X * 2.0];
        let err = TriMesh::new(verts, vec![[0, 1, 2]]).unwrap_err();
        assert!(matches!(err, GeomError::DegenerateTriangle { .. }));
    }

    #[test]
    fn out_of_range_index_rejected() {
        let verts = vec![Point3::ZERO, Point3::X, Point3::Y];
        let err = TriMesh::new(verts, vec![[0, 1, 7]]).unwrap_err();
        assert!(matches!(err, GeomError::IndexOutOfRange { .. }));
    }

    #[test]
    fn obj_round_trip_is_bit_exact() {
        let m = cube(Point3::new(-0.3, 0.1, 2.0e-7), Point3::new(1.7e3, 0.2, 1.0));
        let mut buf = Vec::new();
        m.write_obj(&mut buf).unwrap();
        let back = TriMesh::read_obj(&buf[..]).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn closest_point_regions() {
        let (a, b, c) = (Point3::ZERO, Point3::X, Point3::Y);
        // Interior projection.
        let p = Point3::new(0.25, 0.25, 1.0);
        assert!(closest_point_on_triangle(p, a, b, c).distance(Point3::new(0.25, 0.25, 0.0)) < 1e-12);
        // Vertex region.
        let p = Point3::new(-1.0, -1.0, 0.5);
        assert!(closest_point_on_triangle(p, a, b, c).distance(a) < 1e-12);
        // Edge region.
        let p = Point3::new(0.5, -2.0, 0.0);
        assert!(closest_point_on_triangle(p, a, b, c).distance(Point3::new(0.5, 0.0, 0.0)) < 1e-12);
    }
}
