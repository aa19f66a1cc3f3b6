use crate::geom::{Mat3, Point3, RigidTransform, TriMesh, Vec3};
use crate::kinematics::rot6d::{matrix_to_rot6d, Rot6D};
use crate::kinematics::skeleton::{forward_kinematics, Skeleton};
use crate::kinematics::skinning::{skin, skin_subset, SkinnedHand, VertexWeights};
use crate::kinematics::KinError;
use crate::rng::SplitMix64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::Path;

pub const HAND_ASSET_SCHEMA_VERSION: u32 = 1;

/// Finger joints per hand (5 fingers x 3 joints); the wrist is joint 0 of
/// the skeleton and is driven by the body, not the hand pose.
pub const FINGER_JOINTS: usize = 15;
pub const HAND_JOINTS: usize = FINGER_JOINTS + 1;
pub const FINGERS: usize = 5;
/// Sampled hand-surface vertices used as the hand representation.
pub const MARKERS_PER_HAND: usize = 99;

pub const FINGER_NAMES: [&str; FINGERS] = ["thumb", "index", "middle", "ring", "pinky"];

/// Finger poses for one hand, ordered thumb/index/middle/ring/pinky, each
/// proximal -> middle -> distal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HandPose(pub [Rot6D; FINGER_JOINTS]);

impl HandPose {
    pub const FLAT: HandPose = HandPose([Rot6D::IDENTITY; FINGER_JOINTS]);

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|r| r.is_finite())
    }

    /// Flat 90-vector, row per joint.
    pub fn to_vec(&self) -> Vec<f64> {
        self.0.iter().flat_map(|r| r.0).collect()
    }

    pub fn from_slice(v: &[f64]) -> HandPose {
        assert_eq!(v.len(), FINGER_JOINTS * 6);
        let mut joints = [Rot6D::IDENTITY; FINGER_JOINTS];
        for (j, r) in joints.iter_mut().enumerate() {
            let mut c = [0.0; 6];
            c.copy_from_slice(&v[j * 6..j * 6 + 6]);
            *r = Rot6D(c);
        }
        HandPose(joints)
    }
}

/// Which hand a model represents; the left model is the z-mirror of the
/// right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Surface-region label per template vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Palm,
    /// seg: 0 proximal, 1 middle, 2 distal (below the tip zone).
    Finger { finger: u8, seg: u8 },
    Tip { finger: u8 },
}

/// 99 distinct template-vertex indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkerSet {
    pub indices: Vec<usize>,
}

impl MarkerSet {
    pub fn new(indices: Vec<usize>, vertex_count: usize) -> Result<MarkerSet, KinError> {
        let mut seen = vec![false; vertex_count];
        for &i in &indices {
            if i >= vertex_count || seen[i] {
                return Err(KinError::BadMarkerSet);
            }
            seen[i] = true;
        }
        Ok(MarkerSet { indices })
    }
}

/// The hand asset: skeleton, skinned template, bend axes, vertex regions,
/// and the default marker set. Stored as one versioned JSON document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HandModel {
    pub schema_version: u32,
    pub side: Side,
    pub skeleton: Skeleton,
    pub hand: SkinnedHand,
    /// Local bending axis per finger joint (skeleton joints 1..16); positive
    /// rotation curls the finger toward the palm side.
    pub bend_axes: Vec<Vec3>,
    pub regions: Vec<Region>,
    pub markers: MarkerSet,
}

struct FingerSpec {
    mcp: Vec3,
    dir: Vec3,
    lengths: [f64; 3],
    radius: f64,
}

fn finger_specs() -> [FingerSpec; FINGERS] {
    [
        FingerSpec {
            mcp: Vec3::new(0.030, 0.0, 0.040),
            dir: Vec3::new(0.75, 0.0, 0.66).normalized(),
            lengths: [0.034, 0.030, 0.026],
            radius: 0.0105,
        },
        FingerSpec {
            mcp: Vec3::new(0.088, 0.0, 0.026),
            dir: Vec3::X,
            lengths: [0.032, 0.024, 0.021],
            radius: 0.0088,
        },
        FingerSpec {
            mcp: Vec3::new(0.092, 0.0, 0.003),
            dir: Vec3::X,
            lengths: [0.035, 0.026, 0.022],
            radius: 0.0092,
        },
        FingerSpec {
            mcp: Vec3::new(0.088, 0.0, -0.020),
            dir: Vec3::X,
            lengths: [0.032, 0.024, 0.021],
            radius: 0.0085,
        },
        FingerSpec {
            mcp: Vec3::new(0.080, 0.0, -0.042),
            dir: Vec3::X,
            lengths: [0.026, 0.019, 0.017],
            radius: 0.0072,
        },
    ]
}

const RING_SIDES: usize = 8;
const PALM_LO: Vec3 = Vec3 { x: -0.025, y: -0.012, z: -0.052 };
const PALM_HI: Vec3 = Vec3 { x: 0.095, y: 0.012, z: 0.052 };
const BLEND_HALF_WIDTH: f64 = 0.006;
/// Finger tubes start this far behind the MCP so each closed tube overlaps
/// the palm slab instead of leaving a gap.
const TUBE_ROOT_INSET: f64 = 0.012;

impl HandModel {
    /// Canonical right hand at scale 1. Hand local frame: origin at the
    /// wrist, fingers along +x, palm facing +y, thumb toward +z.
    pub fn build_right() -> HandModel {
        let specs = finger_specs();

        // Skeleton: wrist root + 3 joints per finger.
        let mut names = vec!["wrist".to_string()];
        let mut parents = vec![None];
        let mut offsets = vec![Vec3::ZERO];
        let mut bend_axes = Vec::with_capacity(FINGER_JOINTS);
        for (f, spec) in specs.iter().enumerate() {
            let base = names.len();
            for (s, seg) in ["prox", "mid", "dist"].iter().enumerate() {
                names.push(format!("{}_{}", FINGER_NAMES[f], seg));
                parents.push(if s == 0 { Some(0) } else { Some(base + s - 1) });
                offsets.push(if s == 0 { spec.mcp } else { spec.dir * spec.lengths[s - 1] });
                bend_axes.push(Vec3::new(-spec.dir.z, 0.0, spec.dir.x).normalized());
            }
        }
        let skeleton = Skeleton::new(names, parents, offsets).expect("hand skeleton is valid");

        let mut vertices: Vec<Point3> = Vec::new();
        let mut triangles: Vec<[usize; 3]> = Vec::new();
        let mut regions: Vec<Region> = Vec::new();
        let mut weights: Vec<VertexWeights> = Vec::new();

        // Palm slab: subdivided box, rigid to the wrist.
        let palm = subdivided_box(PALM_LO, PALM_HI, 3);
        for v in palm.vertices() {
            vertices.push(*v);
            regions.push(Region::Palm);
            weights.push(VertexWeights { joints: vec![0], weights: vec![1.0] });
        }
        triangles.extend_from_slice(palm.triangles());

        // Fingers: closed tapered tubes, one component each.
        let mut pad_markers: Vec<usize> = Vec::new();
        for (f, spec) in specs.iter().enumerate() {
            let joint_base = 1 + f * 3; // proximal joint index in skeleton
            let [l1, l2, l3] = spec.lengths;
            let total = l1 + l2 + l3;
            let ring_s = [
                -TUBE_ROOT_INSET,
                0.0,
                0.5 * l1,
                l1,
                l1 + 0.5 * l2,
                l1 + l2,
                l1 + l2 + 0.45 * l3,
                l1 + l2 + 0.80 * l3,
            ];
            // Orthonormal frame around the finger axis: u on the palm side.
            let w_axis = Vec3::new(-spec.dir.z, 0.0, spec.dir.x).normalized();
            let u_axis = w_axis.cross(spec.dir);

            let base_center_id = vertices.len();
            vertices.push(spec.mcp - spec.dir * TUBE_ROOT_INSET);
            regions.push(Region::Finger { finger: f as u8, seg: 0 });
            weights.push(VertexWeights { joints: vec![0], weights: vec![1.0] });

            let mut ring_ids: Vec<Vec<usize>> = Vec::new();
            let mut palmar_ids: Vec<usize> = Vec::new();
            for &s in &ring_s {
                let center = spec.mcp + spec.dir * s;
                let taper = 1.0 - 0.30 * (s.max(0.0) / total);
                let r = spec.radius * taper;
                let mut ring = Vec::with_capacity(RING_SIDES);
                let mut palmar = 0usize;
                let mut best_u = f64::NEG_INFINITY;
                for k in 0..RING_SIDES {
                    let th = std::f64::consts::TAU * (k as f64 + 0.5) / RING_SIDES as f64;
                    let p = center + u_axis * (r * th.cos()) + w_axis * (r * th.sin());
                    let id = vertices.len();
                    vertices.push(p);
                    regions.push(region_for_arc(f, s, l1, l2, l3));
                    weights.push(weights_for_arc(joint_base, s, l1, l2));
                    ring.push(id);
                    if th.cos() > best_u {
                        best_u = th.cos();
                        palmar = id;
                    }
                }
                palmar_ids.push(palmar);
                ring_ids.push(ring);
            }

            let apex_id = vertices.len();
            vertices.push(spec.mcp + spec.dir * (total + 0.6 * spec.radius * 0.7));
            regions.push(Region::Tip { finger: f as u8 });
            weights.push(VertexWeights { joints: vec![joint_base + 2], weights: vec![1.0] });

            // Base cap fan (inward-facing -> wound toward -dir).
            let first = &ring_ids[0];
            for k in 0..RING_SIDES {
                triangles.push([base_center_id, first[(k + 1) % RING_SIDES], first[k]]);
            }
            // Side bands.
            for b in 0..ring_ids.len() - 1 {
                let (ra, rb) = (&ring_ids[b], &ring_ids[b + 1]);
                for k in 0..RING_SIDES {
                    let k1 = (k + 1) % RING_SIDES;
                    triangles.push([ra[k], ra[k1], rb[k]]);
                    triangles.push([ra[k1], rb[k1], rb[k]]);
                }
            }
            // Tip fan.
            let last = ring_ids.last().unwrap();
            for k in 0..RING_SIDES {
                triangles.push([apex_id, last[k], last[(k + 1) % RING_SIDES]]);
            }

            // Contact pads: palmar vertices from mid-middle outward + apex.
            pad_markers.extend_from_slice(&palmar_ids[4..]);
            pad_markers.push(apex_id);
        }

        let template = TriMesh::new(vertices, triangles).expect("hand template is valid");
        let hand = SkinnedHand::new(template, weights, HAND_JOINTS).expect("hand weights are valid");

        // Palm-surface anchors for palm contact sensing.
        for probe in [
            Vec3::new(0.045, PALM_HI.y, 0.000),
            Vec3::new(0.060, PALM_HI.y, 0.025),
            Vec3::new(0.060, PALM_HI.y, -0.025),
        ] {
            pad_markers.push(nearest_vertex(&hand.template, probe));
        }

        let mut model = HandModel {
            schema_version: HAND_ASSET_SCHEMA_VERSION,
            side: Side::Right,
            skeleton,
            hand,
            bend_axes,
            regions,
            markers: MarkerSet { indices: Vec::new() },
        };
        model.markers = sample_hand_vertices_with_mandatory(&model, MARKERS_PER_HAND, 0, &pad_markers)
            .expect("marker sampling on the template succeeds");
        model
    }

    /// z-mirror of this model (left <-> right). Vertex and joint order are
    /// preserved, so marker indices and pose layouts carry over.
    pub fn mirrored(&self) -> HandModel {
        let mirror = |v: Vec3| Vec3::new(v.x, v.y, -v.z);
        let skeleton = Skeleton::new(
            self.skeleton.names.clone(),
            self.skeleton.parents.clone(),
            self.skeleton.offsets.iter().map(|o| mirror(*o)).collect(),
        )
        .expect("mirrored skeleton is valid");
        let verts: Vec<Point3> = self.hand.template.vertices().iter().map(|v| mirror(*v)).collect();
        let tris: Vec<[usize; 3]> = self
            .hand
            .template
            .triangles()
            .iter()
            .map(|t| [t[0], t[2], t[1]])
            .collect();
        let template = TriMesh::new(verts, tris).expect("mirrored template is valid");
        let hand = SkinnedHand::new(template, self.hand.weights.clone(), HAND_JOINTS)
            .expect("mirrored weights are valid");
        HandModel {
            schema_version: self.schema_version,
            side: match self.side {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            },
            skeleton,
            hand,
            // Conjugating a rotation by the z-reflection maps axis a to
            // (-a.x, -a.y, a.z).
            bend_axes: self.bend_axes.iter().map(|a| Vec3::new(-a.x, -a.y, a.z)).collect(),
            regions: self.regions.clone(),
            markers: self.markers.clone(),
        }
    }

    /// Uniformly scaled copy (offsets and template vertices).
    pub fn scaled(&self, s: f64) -> HandModel {
        assert!(s > 0.0);
        let skeleton = Skeleton::new(
            self.skeleton.names.clone(),
            self.skeleton.parents.clone(),
            self.skeleton.offsets.iter().map(|o| *o * s).collect(),
        )
        .expect("scaled skeleton is valid");
        let verts: Vec<Point3> = self.hand.template.vertices().iter().map(|v| *v * s).collect();
        let template = TriMesh::new(verts, self.hand.template.triangles().to_vec())
            .expect("scaled template is valid");
        let hand = SkinnedHand::new(template, self.hand.weights.clone(), HAND_JOINTS)
            .expect("scaled weights are valid");
        HandModel {
            schema_version: self.schema_version,
            side: self.side,
            skeleton,
            hand,
            bend_axes: self.bend_axes.clone(),
            regions: self.regions.clone(),
            markers: self.markers.clone(),
        }
    }

    /// Skeleton pose vector for this hand: identity at the wrist, finger
    /// joints from the hand pose.
    pub fn skeleton_pose(&self, pose: &HandPose) -> Vec<Rot6D> {
        let mut full = Vec::with_capacity(HAND_JOINTS);
        full.push(Rot6D::IDENTITY);
        full.extend_from_slice(&pose.0);
        full
    }

    /// Joint world transforms for a hand pose mounted at a wrist frame.
    pub fn fk(&self, pose: &HandPose, wrist: &RigidTransform) -> Result<Vec<RigidTransform>, KinError> {
        forward_kinematics(&self.skeleton, &self.skeleton_pose(pose), wrist)
    }

    /// Rest-pose joint worlds in hand-local coordinates (the template's
    /// modeling pose).
    pub fn rest_worlds(&self) -> Vec<RigidTransform> {
        self.skeleton.rest_world(&RigidTransform::IDENTITY)
    }

    /// All template vertices posed by FK + linear blend skinning.
    pub fn posed_vertices(&self, pose: &HandPose, wrist: &RigidTransform) -> Result<Vec<Point3>, KinError> {
        let world = self.fk(pose, wrist)?;
        Ok(skin(&self.hand, &world, &self.rest_worlds()))
    }

    /// Marker positions only.
    pub fn marker_positions(&self, pose: &HandPose, wrist: &RigidTransform) -> Result<Vec<Point3>, KinError> {
        let world = self.fk(pose, wrist)?;
        Ok(skin_subset(&self.hand, &world, &self.rest_worlds(), &self.markers.indices))
    }

    /// Posed full mesh (for intersection-volume metrics and OBJ export).
    pub fn posed_mesh(&self, pose: &HandPose, wrist: &RigidTransform) -> Result<TriMesh, KinError> {
        let verts = self.posed_vertices(pose, wrist)?;
        Ok(TriMesh::new(verts, self.hand.template.triangles().to_vec()).expect("posing preserves validity"))
    }

    /// Closed submesh of one finger, from already-posed vertices.
    pub fn finger_submesh(&self, posed: &[Point3], finger: usize) -> TriMesh {
        let keep: Vec<bool> = self
            .regions
            .iter()
            .map(|r| matches!(r, Region::Finger { finger: f, .. } | Region::Tip { finger: f } if *f == finger as u8))
            .collect();
        let mut remap = vec![usize::MAX; posed.len()];
        let mut verts = Vec::new();
        for (i, &k) in keep.iter().enumerate() {
            if k {
                remap[i] = verts.len();
                verts.push(posed[i]);
            }
        }
        let tris: Vec<[usize; 3]> = self
            .hand
            .template
            .triangles()
            .iter()
            .filter(|t| t.iter().all(|&i| keep[i]))
            .map(|t| [remap[t[0]], remap[t[1]], remap[t[2]]])
            .collect();
        TriMesh::new(verts, tris).expect("finger submesh is valid")
    }

    /// Hemisphere mount point: the base middle-finger joint, hand-local.
    pub fn middle_mcp(&self) -> Vec3 {
        self.skeleton.offsets[1 + 2 * 3] // middle finger proximal joint
    }

    pub fn save_asset(&self, path: &Path) -> Result<(), KinError> {
        let json = serde_json::to_string_pretty(self).map_err(|e| KinError::Asset(e.to_string()))?;
        std::fs::write(path, json).map_err(|e| KinError::Asset(e.to_string()))?;
        Ok(())
    }

    pub fn load_asset(path: &Path) -> Result<HandModel, KinError> {
        let text = std::fs::read_to_string(path).map_err(|e| KinError::Asset(e.to_string()))?;
        let model: HandModel = serde_json::from_str(&text).map_err(|e| KinError::Asset(e.to_string()))?;
        if model.schema_version != HAND_ASSET_SCHEMA_VERSION {
            return Err(KinError::AssetVersion {
                expected: HAND_ASSET_SCHEMA_VERSION,
                got: model.schema_version,
            });
        }
        Ok(model)
    }
}

fn region_for_arc(finger: usize, s: f64, l1: f64, l2: f64, l3: f64) -> Region {
    let f = finger as u8;
    if s >= l1 + l2 + 0.3 * l3 {
        Region::Tip { finger: f }
    } else if s >= l1 + l2 {
        Region::Finger { finger: f, seg: 2 }
    } else if s >= l1 {
        Region::Finger { finger: f, seg: 1 }
    } else {
        Region::Finger { finger: f, seg: 0 }
    }
}

/// Per-segment rigid weights with a linear blend band at each joint
/// boundary; the tube root blends into the wrist.
fn weights_for_arc(joint_base: usize, s: f64, l1: f64, l2: f64) -> VertexWeights {
    let blend = |a: usize, b: usize, t: f64| VertexWeights {
        joints: vec![a, b],
        weights: vec![1.0 - t, t],
    };
    let b = BLEND_HALF_WIDTH;
    if s < -b {
        VertexWeights { joints: vec![0], weights: vec![1.0] }
    } else if s < b {
        blend(0, joint_base, (s + b) / (2.0 * b))
    } else if s < l1 - b {
        VertexWeights { joints: vec![joint_base], weights: vec![1.0] }
    } else if s < l1 + b {
        blend(joint_base, joint_base + 1, (s - (l1 - b)) / (2.0 * b))
    } else if s < l1 + l2 - b {
        VertexWeights { joints: vec![joint_base + 1], weights: vec![1.0] }
    } else if s < l1 + l2 + b {
        blend(joint_base + 1, joint_base + 2, (s - (l1 + l2 - b)) / (2.0 * b))
    } else {
        VertexWeights { joints: vec![joint_base + 2], weights: vec![1.0] }
    }
}

fn nearest_vertex(mesh: &TriMesh, probe: Vec3) -> usize {
    let mut best = (0usize, f64::INFINITY);
    for (i, v) in mesh.vertices().iter().enumerate() {
        let d = (*v - probe).norm_sq();
        if d < best.1 {
            best = (i, d);
        }
    }
    best.0
}

/// Axis-aligned box subdivided `levels` times by triangle midpoint
/// subdivision, edge-welded so the result stays closed.
fn subdivided_box(lo: Vec3, hi: Vec3, levels: usize) -> TriMesh {
    let base = crate::geom::cube(lo, hi);
    let mut verts = base.vertices().to_vec();
    let mut tris = base.triangles().to_vec();
    for _ in 0..levels {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = Vec::with_capacity(tris.len() * 4);
        for t in &tris {
            let mid = |a: usize, b: usize, verts: &mut Vec<Point3>, map: &mut HashMap<(usize, usize), usize>| {
                let key = (a.min(b), a.max(b));
                *map.entry(key).or_insert_with(|| {
                    verts.push((verts[a] + verts[b]) * 0.5);
                    verts.len() - 1
                })
            };
            let (a, b, c) = (t[0], t[1], t[2]);
            let ab = mid(a, b, &mut verts, &mut midpoint);
            let bc = mid(b, c, &mut verts, &mut midpoint);
            let ca = mid(c, a, &mut verts, &mut midpoint);
            next.push([a, ab, ca]);
            next.push([ab, b, bc]);
            next.push([ca, bc, c]);
            next.push([ab, bc, ca]);
        }
        tris = next;
    }
    TriMesh::new(verts, tris).expect("subdivided box is valid")
}

/// Fixed slightly-curled pose: every finger joint flexed 0.15 rad about its
/// bend axis. Used to compute stage-1 proximity features before any
/// prediction exists.
pub fn mean_hand_pose(model: &HandModel) -> HandPose {
    let mut joints = [Rot6D::IDENTITY; FINGER_JOINTS];
    for (j, r) in joints.iter_mut().enumerate() {
        let m = Mat3::rotation(model.bend_axes[j], 0.15);
        *r = matrix_to_rot6d(&m).expect("rotation encodes");
    }
    HandPose(joints)
}

/// Deterministic, approximately area-uniform marker sampling with
/// guaranteed fingertip coverage (>= 3 vertices per tip region).
pub fn sample_hand_vertices(model: &HandModel, count: usize, seed: u64) -> Result<MarkerSet, KinError> {
    sample_hand_vertices_with_mandatory(model, count, seed, &[])
}

fn sample_hand_vertices_with_mandatory(
    model: &HandModel,
    count: usize,
    seed: u64,
    mandatory: &[usize],
) -> Result<MarkerSet, KinError> {
    let mesh = &model.hand.template;
    let nv = mesh.vertices().len();
    if count > nv {
        return Err(KinError::TooFewVertices { have: nv, need: count });
    }
    if count == nv {
        return MarkerSet::new((0..nv).collect(), nv);
    }

    let mut chosen = vec![false; nv];
    let mut picked: Vec<usize> = Vec::with_capacity(count);
    let push = |i: usize, chosen: &mut Vec<bool>, picked: &mut Vec<usize>| {
        if !chosen[i] {
            chosen[i] = true;
            picked.push(i);
        }
    };
    for &m in mandatory {
        push(m, &mut chosen, &mut picked);
    }

    // Tip coverage: at least 3 vertices per fingertip region.
    for f in 0..FINGERS as u8 {
        let mut have = picked
            .iter()
            .filter(|&&i| model.regions[i] == Region::Tip { finger: f })
            .count();
        if have < 3 {
            for i in 0..nv {
                if have >= 3 {
                    break;
                }
                if model.regions[i] == (Region::Tip { finger: f }) && !chosen[i] {
                    push(i, &mut chosen, &mut picked);
                    have += 1;
                }
            }
        }
    }
    if picked.len() > count {
        return Err(KinError::TooFewVertices { have: count, need: picked.len() });
    }

    // Remaining picks: area-weighted (a third of each adjacent triangle).
    let mut area = vec![0.0f64; nv];
    for t in 0..mesh.triangles().len() {
        let [a, b, c] = mesh.triangle_points(t);
        let third = crate::geom::triangle_area(a, b, c) / 3.0;
        for &i in &mesh.triangles()[t] {
            area[i] += third;
        }
    }
    let mut rng = SplitMix64::new(seed);
    let total: f64 = area.iter().sum();
    while picked.len() < count {
        let mut target = rng.next_f64() * total;
        let mut pick = nv - 1;
        for (i, &a) in area.iter().enumerate() {
            target -= a;
            if target <= 0.0 {
                pick = i;
                break;
            }
        }
        push(pick, &mut chosen, &mut picked);
    }
    picked.sort_unstable();
    MarkerSet::new(picked, nv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{intersection_volume, is_watertight, ClosestPointIndex};
    use crate::kinematics::rot6d::rot6d_to_matrix;

    fn model() -> HandModel {
        HandModel::build_right()
    }

    #[test]
    fn template_is_watertight_and_sized() {
        let m = model();
        let nv = m.hand.template.vertices().len();
        assert!((600..1000).contains(&nv), "vertex count {nv}");
        let idx = ClosestPointIndex::new(m.hand.template.clone());
        assert!(is_watertight(&idx));
    }

    #[test]
    fn default_markers_are_99_distinct() {
        let m = model();
        assert_eq!(m.markers.indices.len(), MARKERS_PER_HAND);
        let mut sorted = m.markers.indices.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), MARKERS_PER_HAND);
    }

    #[test]
    fn marker_sets_cover_fingertips_for_any_seed() {
        let m = model();
        for seed in [0u64, 1, 99] {
            let set = sample_hand_vertices(&m, 99, seed).unwrap();
            for f in 0..FINGERS as u8 {
                let tips = set
                    .indices
                    .iter()
                    .filter(|&&i| m.regions[i] == Region::Tip { finger: f })
                    .count();
                assert!(tips >= 3, "finger {f} has {tips} tip markers (seed {seed})");
            }
        }
    }

    #[test]
    fn sampling_all_vertices_returns_everything() {
        let m = model();
        let nv = m.hand.template.vertices().len();
        let set = sample_hand_vertices(&m, nv, 5).unwrap();
        assert_eq!(set.indices.len(), nv);
        assert!(sample_hand_vertices(&m, nv + 1, 5).is_err());
    }

    #[test]
    fn mean_pose_is_constant_and_orthonormal() {
        let m = model();
        let a = mean_hand_pose(&m);
        let b = mean_hand_pose(&m);
        assert_eq!(a, b);
        for r in a.0 {
            let rot = rot6d_to_matrix(r).unwrap();
            assert!(rot.is_rotation(1e-12));
        }
    }

    #[test]
    fn mean_pose_fingers_do_not_interpenetrate() {
        let m = model();
        let posed = m.posed_vertices(&mean_hand_pose(&m), &RigidTransform::IDENTITY).unwrap();
        // Adjacent finger pairs are the closest; check all pairs.
        for a in 0..FINGERS {
            for b in a + 1..FINGERS {
                let ma = m.finger_submesh(&posed, a);
                let mb = m.finger_submesh(&posed, b);
                let iv = intersection_volume(&ma, &mb, 0.0015).unwrap();
                assert_eq!(iv, 0.0, "fingers {a} and {b} overlap: {iv} cm^3");
            }
        }
    }

    #[test]
    fn flat_pose_skins_to_template() {
        let m = model();
        let posed = m.posed_vertices(&HandPose::FLAT, &RigidTransform::IDENTITY).unwrap();
        for (p, v) in posed.iter().zip(m.hand.template.vertices()) {
            assert!(p.distance(*v) < 1e-12);
        }
    }

    #[test]
    fn curling_moves_fingertips_toward_palm_normal() {
        let m = model();
        let mut pose = HandPose::FLAT;
        for (j, r) in pose.0.iter_mut().enumerate() {
            *r = matrix_to_rot6d(&Mat3::rotation(m.bend_axes[j], 0.9)).unwrap();
        }
        let flat_tip = m.posed_vertices(&HandPose::FLAT, &RigidTransform::IDENTITY).unwrap();
        let curled = m.posed_vertices(&pose, &RigidTransform::IDENTITY).unwrap();
        // Index apex: find a Tip{1} vertex and compare y.
        let tip_id = m
            .regions
            .iter()
            .position(|r| *r == Region::Tip { finger: 1 })
            .unwrap();
        assert!(curled[tip_id].y > flat_tip[tip_id].y + 0.02, "curl should lift the tip toward +y");
    }

    #[test]
    fn mirrored_model_mirrors_fk() {
        let right = model();
        let left = right.mirrored();
        assert_eq!(left.side, Side::Left);
        let pose = mean_hand_pose(&right);
        let lpose = mean_hand_pose(&left);
        let pr = right.posed_vertices(&pose, &RigidTransform::IDENTITY).unwrap();
        let pl = left.posed_vertices(&lpose, &RigidTransform::IDENTITY).unwrap();
        for (r, l) in pr.iter().zip(&pl) {
            assert!((r.x - l.x).abs() < 1e-9 && (r.y - l.y).abs() < 1e-9 && (r.z + l.z).abs() < 1e-9);
        }
    }

    #[test]
    fn scaled_model_scales_positions() {
        let m = model();
        let s = m.scaled(1.1);
        let p1 = m.posed_vertices(&HandPose::FLAT, &RigidTransform::IDENTITY).unwrap();
        let p2 = s.posed_vertices(&HandPose::FLAT, &RigidTransform::IDENTITY).unwrap();
        for (a, b) in p1.iter().zip(&p2) {
            assert!((*a * 1.1).distance(*b) < 1e-12);
        }
    }

    #[test]
    fn asset_round_trip() {
        let m = model();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hand.json");
        m.save_asset(&path).unwrap();
        let back = HandModel::load_asset(&path).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn marker_indices_survive_serialization() {
        let m = model();
        let json = serde_json::to_string(&m.markers).unwrap();
        let back: MarkerSet = serde_json::from_str(&json).unwrap();
        assert_eq!(m.markers, back);
    }
}
