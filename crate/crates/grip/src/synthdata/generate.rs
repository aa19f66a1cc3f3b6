use crate::geom::{ClosestPointIndex, Mat3, Point3, RigidTransform, Vec3};
use crate::kinematics::{
    matrix_to_rot6d, mean_hand_pose, ArmPose, BodyModel, BodySide, BodyState, HandModel, HandPose,
    Region, FINGERS, SHAPE_DIM,
};
use crate::rng::SplitMix64;
use crate::synthdata::primitives::{make_primitive_mesh, ObjectKind, ObjectSpec};
use crate::synthdata::script::{GraspScript, Handedness, ManipulateStyle};
use crate::synthdata::sequence::{Frame, MotionSequence, SequenceMeta, SEQUENCE_SCHEMA_VERSION};
use crate::synthdata::DataError;

/// Per-joint flexion step of the closing oracle, radians per iteration
/// (proximal; middle and distal follow at 0.8x and 0.6x).
const CLOSE_STEP: f64 = 0.02;
/// Joint flexion limits (proximal, middle, distal).
const JOINT_LIMITS: [f64; 3] = [1.60, 1.70, 1.30];
/// Finger flexion at the open (pre-grasp) pose.
const OPEN_ANGLE: f64 = 0.02;
/// Finger flexion at the relaxed pose, matching the mean hand pose.
const REST_ANGLE: f64 = 0.15;
/// Palm anchor on the palm surface, hand-local (before scaling).
const PALM_CENTER: Vec3 = Vec3 { x: 0.055, y: 0.012, z: 0.0 };

/// Both hand models at a sequence's hand scale.
#[derive(Clone)]
pub struct HandPair {
    pub left: HandModel,
    pub right: HandModel,
}

impl HandPair {
    pub fn canonical() -> HandPair {
        let right = HandModel::build_right();
        HandPair { left: right.mirrored(), right }
    }

    pub fn scaled(&self, s: f64) -> HandPair {
        if (s - 1.0).abs() < 1e-12 {
            return self.clone();
        }
        HandPair { left: self.left.scaled(s), right: self.right.scaled(s) }
    }

    pub fn get(&self, side: BodySide) -> &HandModel {
        match side {
            BodySide::Left => &self.left,
            BodySide::Right => &self.right,
        }
    }
}

/// Generation knobs shared by the corpus builder.
#[derive(Clone, Debug)]
pub struct GenParams {
    pub contact_threshold: f64,
    pub hand_scale_jitter: f64,
    pub placement_jitter: f64,
}

impl Default for GenParams {
    fn default() -> GenParams {
        GenParams { contact_threshold: 0.005, hand_scale_jitter: 0.03, placement_jitter: 0.02 }
    }
}

/// Per-finger flexion angles (proximal, middle, distal).
type Flexion = [[f64; 3]; FINGERS];

fn flexion_pose(model: &HandModel, flex: &Flexion) -> HandPose {
    let mut joints = [crate::kinematics::Rot6D::IDENTITY; 15];
    for f in 0..FINGERS {
        for s in 0..3 {
            let j = f * 3 + s;
            let m = Mat3::rotation(model.bend_axes[j], flex[f][s]);
            joints[j] = matrix_to_rot6d(&m).expect("flexion rotation encodes");
        }
    }
    HandPose(joints)
}

fn uniform_flexion(angle: f64) -> Flexion {
    [[angle; 3]; FINGERS]
}

fn lerp_flexion(a: &Flexion, b: &Flexion, t: f64) -> Flexion {
    let mut out = [[0.0; 3]; FINGERS];
    for f in 0..FINGERS {
        for s in 0..3 {
            out[f][s] = a[f][s] * (1.0 - t) + b[f][s] * t;
        }
    }
    out
}

fn smoothstep(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    u * u * (3.0 - 2.0 * u)
}

/// Phase-local parameter: the last frame of a phase lands exactly on the
/// target keyframe.
fn phase_u(frame: usize, span: (usize, usize)) -> f64 {
    let len = span.1 - span.0;
    (frame - span.0 + 1) as f64 / len as f64
}

#[derive(Debug)]
struct GraspPlan {
    side: BodySide,
    /// Wrist world pose at full grasp.
    grasp_wrist: RigidTransform,
    /// Wrist world pose at the pre-grasp standoff.
    pre_wrist: RigidTransform,
    /// Wrist pose at the end of release (pulled back).
    release_wrist: RigidTransform,
    /// Resting wrist pose (arm hanging).
    rest_wrist: RigidTransform,
    final_flex: Flexion,
}

/// Marker indices belonging to one finger (pads and tip).
fn finger_markers(model: &HandModel, finger: usize) -> Vec<usize> {
    model
        .markers
        .indices
        .iter()
        .enumerate()
        .filter(|(_, &vi)| {
            matches!(
                model.regions[vi],
                Region::Finger { finger: f, .. } | Region::Tip { finger: f } if f == finger as u8
            )
        })
        .map(|(k, _)| k)
        .collect()
}

/// Closes the fingers at a fixed wrist pose until each finger's closest
/// marker reaches the contact band or its joints hit their limits; then
/// backs off any finger whose surface dipped inside the object.
fn close_fingers(
    model: &HandModel,
    wrist: &RigidTransform,
    object: &ClosestPointIndex,
    contact_threshold: f64,
) -> Result<Flexion, DataError> {
    let stop_at = contact_threshold * 0.8;
    let mut flex = uniform_flexion(OPEN_ANGLE);
    let mut stopped = [false; FINGERS];
    let per_finger_markers: Vec<Vec<usize>> = (0..FINGERS).map(|f| finger_markers(model, f)).collect();

    let min_marker_dist = |flex: &Flexion, finger: usize| -> f64 {
        let pose = flexion_pose(model, flex);
        let markers = model.marker_positions(&pose, wrist).expect("pose valid");
        per_finger_markers[finger]
            .iter()
            .map(|&k| object.closest_surface_point(markers[k]).distance)
            .fold(f64::INFINITY, f64::min)
    };

    for _ in 0..200 {
        let mut all_stopped = true;
        for f in 0..FINGERS {
            if stopped[f] {
                continue;
            }
            let at_limit = flex[f][0] >= JOINT_LIMITS[0]
                && flex[f][1] >= JOINT_LIMITS[1]
                && flex[f][2] >= JOINT_LIMITS[2];
            if at_limit {
                stopped[f] = true;
                continue;
            }
            flex[f][0] = (flex[f][0] + CLOSE_STEP).min(JOINT_LIMITS[0]);
            flex[f][1] = (flex[f][1] + CLOSE_STEP * 0.8).min(JOINT_LIMITS[1]);
            flex[f][2] = (flex[f][2] + CLOSE_STEP * 0.6).min(JOINT_LIMITS[2]);
            if min_marker_dist(&flex, f) <= stop_at {
                stopped[f] = true;
            } else {
                all_stopped = false;
            }
        }
        if all_stopped {
            break;
        }
    }

    // Penetration guard: no template vertex of a finger may end up inside
    // the object.
    let probe_dir = Vec3::new(0.93481234, 0.23412345, 0.26781234).normalized();
    for f in 0..FINGERS {
        for _ in 0..12 {
            let pose = flexion_pose(model, &flex);
            let posed = model.posed_vertices(&pose, wrist).expect("pose valid");
            let inside = posed.iter().enumerate().any(|(vi, p)| {
                let belongs = matches!(
                    model.regions[vi],
                    Region::Finger { finger: g, .. } | Region::Tip { finger: g } if g == f as u8
                );
                belongs && object.count_ray_crossings(*p, probe_dir, 10.0) % 2 == 1
            });
            if !inside {
                break;
            }
            flex[f][0] = (flex[f][0] - CLOSE_STEP).max(OPEN_ANGLE);
            flex[f][1] = (flex[f][1] - CLOSE_STEP * 0.8).max(OPEN_ANGLE);
            flex[f][2] = (flex[f][2] - CLOSE_STEP * 0.6).max(OPEN_ANGLE);
        }
    }
    Ok(flex)
}

/// Area-weighted surface samples with outward normals.
fn surface_samples(
    object: &ClosestPointIndex,
    count: usize,
    rng: &mut SplitMix64,
) -> Vec<(Point3, Vec3)> {
    let mesh = object.mesh();
    let areas: Vec<f64> = (0..mesh.triangles().len())
        .map(|t| {
            let [a, b, c] = mesh.triangle_points(t);
            crate::geom::triangle_area(a, b, c)
        })
        .collect();
    let total: f64 = areas.iter().sum();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut target = rng.next_f64() * total;
        let mut tri = areas.len() - 1;
        for (i, a) in areas.iter().enumerate() {
            target -= a;
            if target <= 0.0 {
                tri = i;
                break;
            }
        }
        let [a, b, c] = mesh.triangle_points(tri);
        let (mut u, mut v) = (rng.next_f64(), rng.next_f64());
        if u + v > 1.0 {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        let p = a + (b - a) * u + (c - a) * v;
        let n = (b - a).cross(c - a).normalized();
        out.push((p, n));
    }
    out
}

/// Picks a grasp site whose outward normal faces the preferred direction
/// within 60 degrees, preferring the best-aligned candidate.
fn pick_grasp_site(
    object: &ClosestPointIndex,
    prefer: Vec3,
    rng: &mut SplitMix64,
) -> (Point3, Vec3) {
    let samples = surface_samples(object, 64, rng);
    let mut best: Option<(f64, Point3, Vec3)> = None;
    for (p, n) in samples {
        let score = n.dot(prefer);
        if score >= 0.5 {
            // within 60 degrees
            if best.map(|(s, _, _)| score > s).unwrap_or(true) {
                best = Some((score, p, n));
            }
        }
    }
    match best {
        Some((_, p, n)) => (p, n),
        None => {
            // No aligned face (e.g. degenerate orientation); take the
            // closest surface point in the preferred direction.
            let far = object.mesh().aabb();
            let center = (far.0 + far.1) * 0.5;
            let hit = object.closest_surface_point(center + prefer * 1.0);
            (hit.point, prefer)
        }
    }
}

/// Wrist world pose placing the palm anchor at `site + standoff * n` with
/// the palm facing the surface and fingers along the wrap tangent.
fn wrist_pose_for_site(
    site: Point3,
    n: Vec3,
    wrap_hint: Vec3,
    palm_center: Vec3,
    standoff: f64,
) -> RigidTransform {
    let mut t = wrap_hint - n * wrap_hint.dot(n);
    if t.norm() < 1e-6 {
        t = n.any_orthogonal();
    } else {
        t = t.normalized();
    }
    let y = -n;
    let z = t.cross(y);
    let rot = Mat3::from_cols(t, y, z);
    let pos = site + n * standoff - rot * palm_center;
    RigidTransform::new(rot, pos)
}

fn plan_grasp(
    model: &HandModel,
    body: &BodyModel,
    root: &RigidTransform,
    side: BodySide,
    object_spec: &ObjectSpec,
    object: &ClosestPointIndex,
    object_center: Point3,
    contact_threshold: f64,
    rng: &mut SplitMix64,
) -> Result<GraspPlan, DataError> {
    let shoulder = root.apply(body.anchor(side));
    if (object_center - shoulder).norm() > body.upper_arm + body.forearm + 0.12 {
        return Err(DataError::UnreachableObject);
    }

    // Sites face back toward the grasping shoulder; for bimanual grasps the
    // two shoulders naturally select opposite sides of the object.
    let prefer = (shoulder - object_center).normalized();
    let (site, n) = pick_grasp_site(object, prefer, rng);

    // Wrap tangent: around the cylinder axis when there is one, otherwise
    // horizontal across the object.
    let wrap_hint = match object_spec.kind {
        ObjectKind::Cylinder { .. } => Vec3::Y.cross(n),
        _ => {
            let h = Vec3::Y.cross(n);
            if h.norm() > 0.2 {
                h
            } else {
                Vec3::Z.cross(n)
            }
        }
    };
    // Palm anchor scales with the template (canonical middle MCP x is the
    // reference).
    let palm_center = PALM_CENTER * (model.middle_mcp().x / 0.092);

    // Choose the tangent sign that keeps the wrist closer to the shoulder.
    let cand_a = wrist_pose_for_site(site, n, wrap_hint, palm_center, contact_threshold);
    let cand_b = wrist_pose_for_site(site, n, -wrap_hint, palm_center, contact_threshold);
    let pick_b = (cand_b.translation - shoulder).norm() < (cand_a.translation - shoulder).norm();
    let wrap = if pick_b { -wrap_hint } else { wrap_hint };

    // Standoff ladder: tighten until the closing oracle finds contact.
    let mut chosen: Option<(RigidTransform, Flexion)> = None;
    for standoff in [contact_threshold, 0.001, 0.009] {
        let wrist = wrist_pose_for_site(site, n, wrap, palm_center, standoff);
        let flex = close_fingers(model, &wrist, object, contact_threshold)?;
        let pose = flexion_pose(model, &flex);
        let markers = model.marker_positions(&pose, &wrist).expect("pose valid");
        let min_d = markers
            .iter()
            .map(|p| object.closest_surface_point(*p).distance)
            .fold(f64::INFINITY, f64::min);
        if min_d <= contact_threshold {
            chosen = Some((wrist, flex));
            break;
        }
    }
    let (grasp_wrist, final_flex) = chosen.ok_or(DataError::UnreachableObject)?;

    let pre_wrist = wrist_pose_for_site(site, n, wrap, palm_center, 0.10);
    let release_wrist = wrist_pose_for_site(site, n, wrap, palm_center, 0.06);
    let rest_wrist = body.arm_fk(root, &ArmPose::REST, side)?.wrist_attach;

    Ok(GraspPlan { side, grasp_wrist, pre_wrist, release_wrist, rest_wrist, final_flex })
}

/// Deterministic synthetic grasp sequence: smooth wrist approach, pre-grasp
/// opening, oracle-closed fingers, rigid co-manipulation, release and
/// retreat. The ground truth is penetration-free by construction.
pub fn generate_grasp_sequence(
    object_spec: &ObjectSpec,
    script: &GraspScript,
    seed: u64,
    hands: &HandPair,
    params: &GenParams,
) -> Result<MotionSequence, DataError> {
    script.validate()?;
    let mesh = make_primitive_mesh(object_spec)?;
    let object = ClosestPointIndex::new(mesh);
    let body = BodyModel::default();
    let mut rng = SplitMix64::new(seed);

    let hand_scale = 1.0 + rng.uniform(-params.hand_scale_jitter, params.hand_scale_jitter);
    let scaled = hands.scaled(hand_scale);
    let mut shape = vec![0.0; SHAPE_DIM];
    shape[0] = hand_scale - 1.0;

    let root = RigidTransform::from_translation(Vec3::new(0.0, 0.95, 0.0));
    let center_x = match script.handedness {
        Handedness::Right => 0.14,
        Handedness::Left => -0.14,
        Handedness::Bimanual => 0.0,
    };
    let jitter = params.placement_jitter;
    let center = Point3::new(
        center_x + rng.uniform(-jitter, jitter),
        1.08 + rng.uniform(-jitter, jitter),
        0.33 + rng.uniform(-jitter, jitter),
    );
    let obj0 = RigidTransform::from_translation(center);
    let object_at_origin = object; // mesh is centered at origin
    let object_world = ClosestPointIndex::new(object_at_origin.mesh().transformed(&obj0));

    let active: Vec<BodySide> = match script.handedness {
        Handedness::Right => vec![BodySide::Right],
        Handedness::Left => vec![BodySide::Left],
        Handedness::Bimanual => vec![BodySide::Right, BodySide::Left],
    };
    let primary = active[0];

    let mut plans = Vec::new();
    for side in &active {
        plans.push(plan_grasp(
            scaled.get(*side),
            &body,
            &root,
            *side,
            object_spec,
            &object_world,
            center,
            params.contact_threshold,
            &mut rng,
        )?);
    }

    let spans = script.spans();
    let total = script.total_frames();
    let mean_flex = uniform_flexion(REST_ANGLE);
    let open_flex = uniform_flexion(OPEN_ANGLE);

    // Manipulate-phase world offset applied to the primary wrist.
    let style_offset = |u: f64| -> Vec3 {
        let rise = smoothstep((u / 0.5).min(1.0));
        match script.style {
            ManipulateStyle::Lift => Vec3::new(0.0, 0.08 * rise, 0.0),
            ManipulateStyle::LiftSway => Vec3::new(
                0.03 * (std::f64::consts::TAU * u).sin(),
                0.08 * rise,
                0.02 * (std::f64::consts::PI * u).sin(),
            ),
            ManipulateStyle::LiftLower => {
                let lower = smoothstep(((u - 0.6) / 0.4).max(0.0));
                Vec3::new(0.0, 0.08 * rise - 0.03 * lower, 0.0)
            }
        }
    };

    // Per-frame wrist pose and flexion for an active hand. `attach` is
    // obj0^-1 * grasp_wrist, so obj_now * attach keeps the hand rigid
    // relative to the object.
    let wrist_and_flex = |plan: &GraspPlan, f: usize, obj_now: &RigidTransform, attach: &RigidTransform| -> (RigidTransform, Flexion) {
        if f < spans.approach.1 {
            let u = smoothstep(phase_u(f, spans.approach));
            (plan.rest_wrist.interpolate(&plan.pre_wrist, u), mean_flex)
        } else if f < spans.pregrasp.1 {
            let u = smoothstep(phase_u(f, spans.pregrasp));
            let w = plan.pre_wrist.interpolate(&plan.grasp_wrist, u);
            (w, lerp_flexion(&mean_flex, &open_flex, u))
        } else if f < spans.close.1 {
            let u = smoothstep(phase_u(f, spans.close));
            (plan.grasp_wrist, lerp_flexion(&open_flex, &plan.final_flex, u))
        } else if f < spans.manipulate.1 {
            if plan.side == primary {
                let u = phase_u(f, spans.manipulate);
                let w = RigidTransform::from_translation(style_offset(u)) * plan.grasp_wrist;
                (w, plan.final_flex)
            } else {
                // Secondary hand rides the object rigidly.
                (*obj_now * *attach, plan.final_flex)
            }
        } else if f < spans.release.1 {
            let u = smoothstep(phase_u(f, spans.release));
            let base = *obj_now * *attach;
            (base.interpolate(&plan.release_wrist, u), lerp_flexion(&plan.final_flex, &open_flex, u))
        } else {
            let u = smoothstep(phase_u(f, spans.retreat));
            (plan.release_wrist.interpolate(&plan.rest_wrist, u), lerp_flexion(&open_flex, &mean_flex, u))
        }
    };

    // Grip offsets: the object rides the primary wrist via
    // wrist * (wrist0^-1 * obj0); secondary wrists ride the object via
    // obj * (obj0^-1 * wrist0).
    let primary_plan = plans.iter().find(|p| p.side == primary).unwrap();
    let grip_primary = primary_plan.grasp_wrist.inverse() * obj0;
    let attaches: Vec<RigidTransform> = plans.iter().map(|p| obj0.inverse() * p.grasp_wrist).collect();

    let mut frames = Vec::with_capacity(total);
    let mut obj_now = obj0;
    for f in 0..total {
        // Object transform: static until manipulation, rigidly attached to
        // the primary wrist during it, frozen afterwards.
        if f >= spans.manipulate.0 && f < spans.manipulate.1 {
            let u = phase_u(f, spans.manipulate);
            let w = RigidTransform::from_translation(style_offset(u)) * primary_plan.grasp_wrist;
            obj_now = w * grip_primary;
        }

        let mut state = BodyState {
            root,
            left_arm: ArmPose::REST,
            right_arm: ArmPose::REST,
            left_wrist: RigidTransform::IDENTITY,
            right_wrist: RigidTransform::IDENTITY,
            shape_params: shape.clone(),
        };
        let mut left_pose = mean_hand_pose(&scaled.left);
        let mut right_pose = mean_hand_pose(&scaled.right);

        for (k, plan) in plans.iter().enumerate() {
            let (wrist_world, flex) = wrist_and_flex(plan, f, &obj_now, &attaches[k]);
            let (arm, wrist_local) = body.solve_arm_ik(&root, &wrist_world, plan.side)?;
            let pose = flexion_pose(scaled.get(plan.side), &flex);
            match plan.side {
                BodySide::Left => {
                    state.left_arm = arm;
                    state.left_wrist = wrist_local;
                    left_pose = pose;
                }
                BodySide::Right => {
                    state.right_arm = arm;
                    state.right_wrist = wrist_local;
                    right_pose = pose;
                }
            }
        }

        frames.push(Frame { body: state, object: obj_now, left_hand: left_pose, right_hand: right_pose });
    }

    Ok(MotionSequence {
        meta: SequenceMeta {
            schema_version: SEQUENCE_SCHEMA_VERSION,
            object: *object_spec,
            script: *script,
            script_id: String::new(),
            fps: script.fps,
            seed,
        },
        frames,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthdata::script::default_scripts;

    fn quick_gen(kind: usize, script_idx: usize, seed: u64) -> MotionSequence {
        let spec = match kind {
            0 => ObjectSpec::sphere(0.035),
            1 => ObjectSpec::cuboid(0.03, 0.035, 0.03),
            _ => ObjectSpec::cylinder(0.025, 0.05),
        };
        let script = default_scripts()[script_idx].1;
        let hands = HandPair::canonical();
        generate_grasp_sequence(&spec, &script, seed, &hands, &GenParams::default()).unwrap()
    }

    #[test]
    fn sequence_has_expected_length_and_contact() {
        let seq = quick_gen(0, 0, 11);
        let script = seq.meta.script;
        assert_eq!(seq.len(), script.total_frames());

        // At the end of the close phase, at least one right-hand marker is
        // within the contact threshold.
        let spans = script.spans();
        let f = &seq.frames[spans.close.1 - 1];
        let hands = HandPair::canonical().scaled(f.body.hand_scale());
        let body = BodyModel::default();
        let wrist = body.wrist_world(&f.body, BodySide::Right).unwrap();
        let markers = hands.right.marker_positions(&f.right_hand, &wrist).unwrap();
        let mesh = make_primitive_mesh(&seq.meta.object).unwrap().transformed(&f.object);
        let index = ClosestPointIndex::new(mesh);
        let min_d = markers
            .iter()
            .map(|p| index.closest_surface_point(*p).distance)
            .fold(f64::INFINITY, f64::min);
        assert!(min_d <= 0.005, "min marker distance {min_d}");
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let a = quick_gen(1, 1, 42);
        let b = quick_gen(1, 1, 42);
        assert_eq!(a, b);
        let c = quick_gen(1, 1, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn object_co_moves_with_wrist_during_manipulation() {
        let seq = quick_gen(2, 0, 5);
        let spans = seq.meta.script.spans();
        let body = BodyModel::default();
        // wrist^-1 * object must be constant over the manipulate phase.
        let mut reference: Option<RigidTransform> = None;
        for f in spans.manipulate.0..spans.manipulate.1 {
            let frame = &seq.frames[f];
            let wrist = body.wrist_world(&frame.body, BodySide::Right).unwrap();
            let rel = wrist.inverse() * frame.object;
            match &reference {
                None => reference = Some(rel),
                Some(r) => {
                    assert!(r.rotation.frobenius_distance(&rel.rotation) < 1e-9);
                    assert!(r.translation.distance(rel.translation) < 1e-9);
                }
            }
        }
    }

    #[test]
    fn bimanual_keeps_both_hands_on_the_object() {
        let seq = quick_gen(1, 6, 3);
        assert_eq!(seq.meta.script.handedness, Handedness::Bimanual);
        let spans = seq.meta.script.spans();
        let body = BodyModel::default();
        let mid = (spans.manipulate.0 + spans.manipulate.1) / 2;
        let frame = &seq.frames[mid];
        let hands = HandPair::canonical().scaled(frame.body.hand_scale());
        let mesh = make_primitive_mesh(&seq.meta.object).unwrap().transformed(&frame.object);
        let index = ClosestPointIndex::new(mesh);
        for side in [BodySide::Left, BodySide::Right] {
            let wrist = body.wrist_world(&frame.body, side).unwrap();
            let pose = match side {
                BodySide::Left => &frame.left_hand,
                BodySide::Right => &frame.right_hand,
            };
            let markers = hands.get(side).marker_positions(pose, &wrist).unwrap();
            let min_d = markers
                .iter()
                .map(|p| index.closest_surface_point(*p).distance)
                .fold(f64::INFINITY, f64::min);
            assert!(min_d <= 0.005, "{side:?} min marker distance {min_d}");
        }
    }

    #[test]
    fn far_hand_stays_at_mean_pose() {
        let seq = quick_gen(0, 0, 9);
        let hands = HandPair::canonical().scaled(seq.frames[0].body.hand_scale());
        let mean = mean_hand_pose(&hands.left);
        for f in &seq.frames {
            assert_eq!(f.left_hand, mean);
        }
    }

    #[test]
    fn unreachable_object_rejected() {
        let spec = ObjectSpec::sphere(0.03);
        let mut script = default_scripts()[0].1;
        script.approach = 10;
        let hands = HandPair::canonical();
        // Far placement: forced via a generator with huge jitter bounds is
        // not possible, so call the planner directly.
        let mesh = make_primitive_mesh(&spec).unwrap();
        let far_center = Point3::new(2.0, 1.0, 2.0);
        let index = ClosestPointIndex::new(mesh.transformed(&RigidTransform::from_translation(far_center)));
        let body = BodyModel::default();
        let root = RigidTransform::from_translation(Vec3::new(0.0, 0.95, 0.0));
        let mut rng = SplitMix64::new(1);
        let err = plan_grasp(
            &hands.right,
            &body,
            &root,
            BodySide::Right,
            &spec,
            &index,
            far_center,
            0.005,
            &mut rng,
        )
        .unwrap_err();
        assert!(matches!(err, DataError::UnreachableObject));
    }
}
