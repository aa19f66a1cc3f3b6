use super::mesh::{closest_point_on_triangle, TriMesh};
use super::vec3::{Point3, Vec3};

const LEAF_SIZE: usize = 4;

#[derive(Clone, Copy, Debug)]
struct Aabb {
    lo: Point3,
    hi: Point3,
}

impl Aabb {
    fn empty() -> Aabb {
        Aabb {
            lo: Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY),
            hi: Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn grow(&mut self, p: Point3) {
        self.lo = self.lo.min_elem(p);
        self.hi = self.hi.max_elem(p);
    }

    fn merge(&mut self, other: &Aabb) {
        self.lo = self.lo.min_elem(other.lo);
        self.hi = self.hi.max_elem(other.hi);
    }

    fn centroid(&self) -> Point3 {
        (self.lo + self.hi) * 0.5
    }

    /// Squared distance from a point to the box (0 inside).
    fn dist_sq(&self, p: Point3) -> f64 {
        let mut d = 0.0;
        for i in 0..3 {
            let (lo, hi, x) = (self.lo.axis(i), self.hi.axis(i), p.axis(i));
            let e = if x < lo { lo - x } else if x > hi { x - hi } else { 0.0 };
            d += e * e;
        }
        d
    }

    /// Slab test; returns the entry parameter if the ray hits [0, t_max].
    fn ray_hit(&self, origin: Point3, inv_dir: Vec3, t_max: f64) -> bool {
        let mut t0 = 0.0f64;
        let mut t1 = t_max;
        for i in 0..3 {
            let inv = inv_dir.axis(i);
            let mut near = (self.lo.axis(i) - origin.axis(i)) * inv;
            let mut far = (self.hi.axis(i) - origin.axis(i)) * inv;
            if near > far {
                std::mem::swap(&mut near, &mut far);
            }
            t0 = t0.max(near);
            t1 = t1.min(far);
            if t0 > t1 {
                return false;
            }
        }
        true
    }
}

enum BvhNode {
    Leaf { tris: Vec<usize> },
    Inner { left: usize, right: usize },
}

struct Bvh {
    nodes: Vec<BvhNode>,
    bounds: Vec<Aabb>,
    root: usize,
}

impl Bvh {
    fn build(tri_bounds: &[Aabb]) -> Bvh {
        let mut bvh = Bvh { nodes: Vec::new(), bounds: Vec::new(), root: 0 };
        let mut items: Vec<usize> = (0..tri_bounds.len()).collect();
        bvh.root = bvh.build_node(&mut items, tri_bounds);
        bvh
    }

    fn build_node(&mut self, items: &mut [usize], tri_bounds: &[Aabb]) -> usize {
        let mut bb = Aabb::empty();
        for &t in items.iter() {
            bb.merge(&tri_bounds[t]);
        }
        if items.len() <= LEAF_SIZE {
            self.nodes.push(BvhNode::Leaf { tris: items.to_vec() });
            self.bounds.push(bb);
            return self.nodes.len() - 1;
        }
        // Median split along the longest axis of the centroid bounds.
        let mut cb = Aabb::empty();
        for &t in items.iter() {
            cb.grow(tri_bounds[t].centroid());
        }
        let ext = cb.hi - cb.lo;
        let axis = if ext.x >= ext.y && ext.x >= ext.z {
            0
        } else if ext.y >= ext.z {
            1
        } else {
            2
        };
        let mid = items.len() / 2;
        items.select_nth_unstable_by(mid, |&a, &b| {
            tri_bounds[a]
                .centroid()
                .axis(axis)
                .partial_cmp(&tri_bounds[b].centroid().axis(axis))
                .unwrap()
                .then(a.cmp(&b))
        });
        let (left_items, right_items) = items.split_at_mut(mid);
        let left = self.build_node(left_items, tri_bounds);
        let right = self.build_node(right_items, tri_bounds);
        self.nodes.push(BvhNode::Inner { left, right });
        self.bounds.push(bb);
        self.nodes.len() - 1
    }
}

/// KD-tree over vertices for nearest-vertex queries. Ties on distance are
/// broken toward the lowest vertex index.
struct KdTree {
    // Flattened nodes: (vertex index, split axis); children implicit via
    // subtree ranges stored alongside.
    nodes: Vec<KdNode>,
    root: Option<usize>,
}

struct KdNode {
    vertex: usize,
    axis: usize,
    left: Option<usize>,
    right: Option<usize>,
}

impl KdTree {
    fn build(points: &[Point3], ids: &[usize]) -> KdTree {
        let mut tree = KdTree { nodes: Vec::new(), root: None };
        let mut idx: Vec<usize> = ids.to_vec();
        tree.root = tree.build_node(&mut idx, points, 0);
        tree
    }

    fn build_node(&mut self, idx: &mut [usize], points: &[Point3], depth: usize) -> Option<usize> {
        if idx.is_empty() {
            return None;
        }
        let axis = depth % 3;
        let mid = idx.len() / 2;
        idx.select_nth_unstable_by(mid, |&a, &b| {
            points[a]
                .axis(axis)
                .partial_cmp(&points[b].axis(axis))
                .unwrap()
                .then(a.cmp(&b))
        });
        let vertex = idx[mid];
        let (left_slice, rest) = idx.split_at_mut(mid);
        let right_slice = &mut rest[1..];
        let left = self.build_node(left_slice, points, depth + 1);
        let right = self.build_node(right_slice, points, depth + 1);
        self.nodes.push(KdNode { vertex, axis, left, right });
        Some(self.nodes.len() - 1)
    }

    fn nearest(&self, points: &[Point3], query: Point3) -> (usize, f64) {
        let mut best = (usize::MAX, f64::INFINITY);
        if let Some(root) = self.root {
            self.search(root, points, query, &mut best);
        }
        (best.0, best.1.sqrt())
    }

    fn search(&self, node: usize, points: &[Point3], query: Point3, best: &mut (usize, f64)) {
        let n = &self.nodes[node];
        let p = points[n.vertex];
        let d_sq = (p - query).norm_sq();
        if d_sq < best.1 || (d_sq == best.1 && n.vertex < best.0) {
            *best = (n.vertex, d_sq);
        }
        let delta = query.axis(n.axis) - p.axis(n.axis);
        let (first, second) = if delta < 0.0 { (n.left, n.right) } else { (n.right, n.left) };
        if let Some(c) = first {
            self.search(c, points, query, best);
        }
        if let Some(c) = second {
            if delta * delta <= best.1 {
                self.search(c, points, query, best);
            }
        }
    }
}

/// Result of a closest-surface-point query.
#[derive(Clone, Copy, Debug)]
pub struct SurfaceHit {
    pub point: Point3,
    pub distance: f64,
    pub triangle: usize,
}

/// Accelerated closest-point / closest-vertex / ray queries over a triangle
/// mesh. Immutable after construction; concurrent reads are safe.
pub struct ClosestPointIndex {
    mesh: TriMesh,
    bvh: Bvh,
    kd: KdTree,
}

impl ClosestPointIndex {
    pub fn new(mesh: TriMesh) -> ClosestPointIndex {
        let tri_bounds: Vec<Aabb> = (0..mesh.triangles().len())
            .map(|t| {
                let mut bb = Aabb::empty();
                for p in mesh.triangle_points(t) {
                    bb.grow(p);
                }
                bb
            })
            .collect();
        let bvh = Bvh::build(&tri_bounds);
        // Vertex queries target the surface, so only triangle-referenced
        // vertices enter the KD-tree; orphan vertices are legal mesh data
        // but never query results.
        let mut referenced = vec![false; mesh.vertices().len()];
        for tri in mesh.triangles() {
            for &i in tri {
                referenced[i] = true;
            }
        }
        let ids: Vec<usize> = (0..mesh.vertices().len()).filter(|&i| referenced[i]).collect();
        let kd = KdTree::build(mesh.vertices(), &ids);
        ClosestPointIndex { mesh, bvh, kd }
    }

    pub fn mesh(&self) -> &TriMesh {
        &self.mesh
    }

    /// Closest point on the mesh surface. Distance equals the brute-force
    /// minimum over all triangles.
    pub fn closest_surface_point(&self, query: Point3) -> SurfaceHit {
        let mut best = SurfaceHit { point: query, distance: f64::INFINITY, triangle: usize::MAX };
        let mut best_sq = f64::INFINITY;
        self.surface_search(self.bvh.root, query, &mut best, &mut best_sq);
        best.distance = best_sq.sqrt();
        best
    }

    fn surface_search(&self, node: usize, query: Point3, best: &mut SurfaceHit, best_sq: &mut f64) {
        match &self.bvh.nodes[node] {
            BvhNode::Leaf { tris } => {
                for &t in tris {
                    let [a, b, c] = self.mesh.triangle_points(t);
                    let p = closest_point_on_triangle(query, a, b, c);
                    let d_sq = (p - query).norm_sq();
                    if d_sq < *best_sq || (d_sq == *best_sq && t < best.triangle) {
                        *best_sq = d_sq;
                        best.point = p;
                        best.triangle = t;
                    }
                }
            }
            BvhNode::Inner { left, right } => {
                let (l, r) = (*left, *right);
                let dl = self.bvh.bounds[l].dist_sq(query);
                let dr = self.bvh.bounds[r].dist_sq(query);
                let (near, far, d_near, d_far) = if dl <= dr { (l, r, dl, dr) } else { (r, l, dr, dl) };
                if d_near <= *best_sq {
                    self.surface_search(near, query, best, best_sq);
                }
                if d_far <= *best_sq {
                    self.surface_search(far, query, best, best_sq);
                }
            }
        }
    }

    /// Nearest mesh vertex: (vertex index, distance).
    pub fn closest_vertex(&self, query: Point3) -> (usize, f64) {
        self.kd.nearest(self.mesh.vertices(), query)
    }

    /// Counts ray-triangle crossings for `origin + t * dir`, `t` in
    /// `(eps, t_max)`. Triangles nearly parallel to the ray (|det| <= eps)
    /// are skipped; the caller is responsible for jittering degenerate
    /// configurations away.
    pub fn count_ray_crossings(&self, origin: Point3, dir: Vec3, t_max: f64) -> usize {
        let mut ts = Vec::new();
        self.collect_ray_crossings(origin, dir, t_max, &mut ts);
        ts.len()
    }

    /// Appends the ray parameters of all crossings in `(eps, t_max)` to
    /// `out` (unsorted).
    pub fn collect_ray_crossings(&self, origin: Point3, dir: Vec3, t_max: f64, out: &mut Vec<f64>) {
        let inv_dir = Vec3::new(1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z);
        self.ray_search(self.bvh.root, origin, dir, inv_dir, t_max, out);
    }

    fn ray_search(
        &self,
        node: usize,
        origin: Point3,
        dir: Vec3,
        inv_dir: Vec3,
        t_max: f64,
        out: &mut Vec<f64>,
    ) {
        if !self.bvh.bounds[node].ray_hit(origin, inv_dir, t_max) {
            return;
        }
        match &self.bvh.nodes[node] {
            BvhNode::Leaf { tris } => {
                for &t in tris {
                    let [a, b, c] = self.mesh.triangle_points(t);
                    if let Some(hit_t) = ray_triangle(origin, dir, a, b, c) {
                        if hit_t > RAY_EPS && hit_t < t_max {
                            out.push(hit_t);
                        }
                    }
                }
            }
            BvhNode::Inner { left, right } => {
                let (l, r) = (*left, *right);
                self.ray_search(l, origin, dir, inv_dir, t_max, out);
                self.ray_search(r, origin, dir, inv_dir, t_max, out);
            }
        }
    }
}

/// Tie tolerance for ray-parity tests.
pub const RAY_EPS: f64 = 1e-9;

/// Moeller-Trumbore; returns the ray parameter of the intersection, or None
/// if the ray misses or is nearly parallel (|det| <= RAY_EPS * scale).
fn ray_triangle(origin: Point3, dir: Vec3, a: Point3, b: Point3, c: Point3) -> Option<f64> {
    let e1 = b - a;
    let e2 = c - a;
    let pvec = dir.cross(e2);
    let det = e1.dot(pvec);
    if det.abs() <= RAY_EPS * e1.norm() * e2.norm() {
        return None;
    }
    let inv_det = 1.0 / det;
    let tvec = origin - a;
    let u = tvec.dot(pvec) * inv_det;
    if !(0.0..=1.0).contains(&u) {
        return None;
    }
    let qvec = tvec.cross(e1);
    let v = dir.dot(qvec) * inv_det;
    if v < 0.0 || u + v > 1.0 {
        return None;
    }
    Some(e2.dot(qvec) * inv_det)
}

/// Brute-force closest surface point; the oracle the index is tested
/// against.
pub fn brute_force_surface(mesh: &TriMesh, query: Point3) -> SurfaceHit {
    let mut best = SurfaceHit { point: query, distance: f64::INFINITY, triangle: usize::MAX };
    let mut best_sq = f64::INFINITY;
    for t in 0..mesh.triangles().len() {
        let [a, b, c] = mesh.triangle_points(t);
        let p = closest_point_on_triangle(query, a, b, c);
        let d_sq = (p - query).norm_sq();
        if d_sq < best_sq {
            best_sq = d_sq;
            best.point = p;
            best.triangle = t;
        }
    }
    best.distance = best_sq.sqrt();
    best
}

/// Brute-force nearest vertex over triangle-referenced vertices; the oracle
/// for closest_vertex.
pub fn brute_force_vertex(mesh: &TriMesh, query: Point3) -> (usize, f64) {
    let mut referenced = vec![false; mesh.vertices().len()];
    for tri in mesh.triangles() {
        for &i in tri {
            referenced[i] = true;
        }
    }
    let mut best = (usize::MAX, f64::INFINITY);
    for (i, v) in mesh.vertices().iter().enumerate() {
        if !referenced[i] {
            continue;
        }
        let d_sq = (*v - query).norm_sq();
        if d_sq < best.1 {
            best = (i, d_sq);
        }
    }
    (best.0, best.1.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::mesh::unit_cube;
    use crate::rng::SplitMix64;

    fn random_soup(rng: &mut SplitMix64, tris: usize) -> TriMesh {
        loop {
            let nv = tris + 2;
            let verts: Vec<Point3> = (0..nv)
                .map(|_| Point3::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)))
                .collect();
            let mut faces = Vec::with_capacity(tris);
            for _ in 0..tris {
                let i = rng.below(nv);
                let mut j = rng.below(nv);
                let mut k = rng.below(nv);
                while j == i {
                    j = rng.below(nv);
                }
                while k == i || k == j {
                    k = rng.below(nv);
                }
                faces.push([i, j, k]);
            }
            if let Ok(m) = TriMesh::new(verts, faces) {
                return m;
            }
        }
    }

    #[test]
    fn cube_face_query() {
        let idx = ClosestPointIndex::new(unit_cube());
        let hit = idx.closest_surface_point(Point3::new(2.0, 0.5, 0.5));
        assert!((hit.distance - 1.0).abs() < 1e-12);
        assert!(hit.point.distance(Point3::new(1.0, 0.5, 0.5)) < 1e-12);
    }

    #[test]
    fn cube_center_query() {
        let idx = ClosestPointIndex::new(unit_cube());
        let hit = idx.closest_surface_point(Point3::new(0.5, 0.5, 0.5));
        assert!((hit.distance - 0.5).abs() < 1e-12);
    }

    #[test]
    fn cube_vertex_query() {
        let idx = ClosestPointIndex::new(unit_cube());
        let (v, d) = idx.closest_vertex(Point3::new(2.0, 0.0, 0.0));
        assert_eq!(idx.mesh().vertices()[v], Point3::new(1.0, 0.0, 0.0));
        assert!((d - 1.0).abs() < 1e-12);
        // Exactly on a vertex -> zero distance.
        let (_, d0) = idx.closest_vertex(Point3::new(1.0, 1.0, 0.0));
        assert_eq!(d0, 0.0);
    }

    #[test]
    fn single_triangle_mesh() {
        let m = TriMesh::new(vec![Point3::ZERO, Point3::X, Point3::Y], vec![[0, 1, 2]]).unwrap();
        let idx = ClosestPointIndex::new(m);
        let hit = idx.closest_surface_point(Point3::new(0.2, 0.2, 3.0));
        assert!((hit.distance - 3.0).abs() < 1e-12);
        assert_eq!(hit.triangle, 0);
    }

    #[test]
    fn matches_brute_force_on_random_meshes() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..20 {
            let mesh = random_soup(&mut rng, 60);
            let idx = ClosestPointIndex::new(mesh.clone());
            for _ in 0..50 {
                let q = Point3::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
                let fast = idx.closest_surface_point(q);
                let slow = brute_force_surface(&mesh, q);
                let rel = (fast.distance - slow.distance).abs() / slow.distance.max(1e-30);
                assert!(rel < 1e-9, "rel {rel}");
                let (fv, fd) = idx.closest_vertex(q);
                let (sv, sd) = brute_force_vertex(&mesh, q);
                assert!((fd - sd).abs() / sd.max(1e-30) < 1e-12);
                assert!((mesh.vertices()[fv] - mesh.vertices()[sv]).norm() < 1e-30 || fv == sv);
            }
        }
    }

    #[test]
    fn surface_never_farther_than_vertex() {
        let mut rng = SplitMix64::new(5);
        let mesh = random_soup(&mut rng, 40);
        let idx = ClosestPointIndex::new(mesh);
        for _ in 0..200 {
            let q = Point3::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
            let s = idx.closest_surface_point(q).distance;
            let (_, v) = idx.closest_vertex(q);
            assert!(s <= v + 1e-12);
        }
    }

    #[test]
    fn ray_crossings_in_and_out_of_cube() {
        let idx = ClosestPointIndex::new(unit_cube());
        // From inside, a +x ray crosses once; from outside, twice (or zero).
        let dir = Vec3::new(1.0, 1e-4, 2e-4).normalized();
        let inside = idx.count_ray_crossings(Point3::new(0.5, 0.5, 0.5), dir, 1e9);
        assert_eq!(inside % 2, 1);
        let outside = idx.count_ray_crossings(Point3::new(-1.0, 0.4, 0.4), dir, 1e9);
        assert_eq!(outside % 2, 0);
    }
}
