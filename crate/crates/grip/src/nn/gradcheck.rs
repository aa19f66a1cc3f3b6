use super::layers::ParamSet;
use super::tensor::Tensor;

/// Central-difference step used by the gradient checks.
pub const FD_STEP: f64 = 1e-5;

/// Compares an analytic gradient against central finite differences of
/// `loss_fn` at sampled coordinates; returns the worst relative error.
///
/// `analytic` is aligned with the parameter set (None = zero gradient).
/// The denominator is floored at 1e-6 so near-zero gradients compare on an
/// absolute scale instead of blowing up the ratio.
pub fn finite_diff_max_rel_err(
    params: &ParamSet,
    loss_fn: &mut dyn FnMut(&ParamSet) -> f64,
    analytic: &[Option<Tensor>],
    probes: &[(usize, usize)],
) -> f64 {
    let mut worst = 0.0f64;
    for &(pi, ci) in probes {
        let a = analytic[pi].as_ref().map(|t| t.values()[ci]).unwrap_or(0.0);
        let mut plus = params.clone();
        plus.tensors[pi].make_mut()[ci] += FD_STEP;
        let mut minus = params.clone();
        minus.tensors[pi].make_mut()[ci] -= FD_STEP;
        let n = (loss_fn(&plus) - loss_fn(&minus)) / (2.0 * FD_STEP);
        let rel = (a - n).abs() / a.abs().max(n.abs()).max(1e-6);
        worst = worst.max(rel);
    }
    worst
}

/// All (param, coord) pairs of a set, for exhaustive checks on small nets.
pub fn all_coords(params: &ParamSet) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (pi, t) in params.tensors.iter().enumerate() {
        for ci in 0..t.len() {
            out.push((pi, ci));
        }
    }
    out
}
