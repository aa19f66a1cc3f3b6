use super::layers::ParamSet;
use super::tensor::Tensor;
use super::NnError;

/// Bias-corrected adaptive-moment optimizer state.
#[derive(Clone, Debug)]
pub struct AdamState {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    step: u64,
    m: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
}

impl AdamState {
    pub fn new(lr: f64, params: &ParamSet) -> AdamState {
        AdamState {
            lr,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            step: 0,
            m: params.tensors.iter().map(|t| vec![0.0; t.len()]).collect(),
            v: params.tensors.iter().map(|t| vec![0.0; t.len()]).collect(),
        }
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    /// One update; `grads` is aligned with the parameter set (None means
    /// zero gradient for that tensor).
    pub fn step(&mut self, params: &mut ParamSet, grads: &[Option<Tensor>]) -> Result<(), NnError> {
        if grads.len() != params.len() {
            return Err(NnError::ShapeMismatch {
                what: "adam grads",
                left: vec![params.len()],
                right: vec![grads.len()],
            });
        }
        self.step += 1;
        let t = self.step as f64;
        let bc1 = 1.0 - self.beta1.powf(t);
        let bc2 = 1.0 - self.beta2.powf(t);
        for (k, grad) in grads.iter().enumerate() {
            let Some(g) = grad else { continue };
            if g.len() != params.tensors[k].len() {
                return Err(NnError::ShapeMismatch {
                    what: "adam grad tensor",
                    left: vec![params.tensors[k].len()],
                    right: vec![g.len()],
                });
            }
            let p = params.tensors[k].make_mut();
            let (m, v) = (&mut self.m[k], &mut self.v[k]);
            for i in 0..p.len() {
                let gi = g.values()[i];
                m[i] = self.beta1 * m[i] + (1.0 - self.beta1) * gi;
                v[i] = self.beta2 * v[i] + (1.0 - self.beta2) * gi * gi;
                let m_hat = m[i] / bc1;
                let v_hat = v[i] / bc2;
                p[i] -= self.lr * m_hat / (v_hat.sqrt() + self.eps);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_is_a_no_op() {
        let mut params = ParamSet::new();
        params.add("p", Tensor::vector(vec![1.0, -2.0]));
        let before = params.tensors[0].clone();
        let mut adam = AdamState::new(0.1, &params);
        adam.step(&mut params, &[Some(Tensor::vector(vec![0.0, 0.0]))]).unwrap();
        assert_eq!(params.tensors[0], before);
    }

    #[test]
    fn lr_zero_is_a_no_op() {
        let mut params = ParamSet::new();
        params.add("p", Tensor::vector(vec![1.0, -2.0]));
        let before = params.tensors[0].clone();
        let mut adam = AdamState::new(0.0, &params);
        adam.step(&mut params, &[Some(Tensor::vector(vec![0.5, -0.3]))]).unwrap();
        assert_eq!(params.tensors[0], before);
    }

    #[test]
    fn quadratic_converges() {
        // f(x) = x^2, grad = 2x, x0 = 1, lr = 0.1 -> |x| < 0.05 in 200 steps.
        let mut params = ParamSet::new();
        params.add("x", Tensor::vector(vec![1.0]));
        let mut adam = AdamState::new(0.1, &params);
        for _ in 0..200 {
            let x = params.tensors[0].values()[0];
            adam.step(&mut params, &[Some(Tensor::vector(vec![2.0 * x]))]).unwrap();
        }
        let x = params.tensors[0].values()[0];
        assert!(x.abs() < 0.05, "x = {x}");
    }

    #[test]
    fn identical_runs_are_bit_identical() {
        let run = || {
            let mut params = ParamSet::new();
            params.add("x", Tensor::vector(vec![0.7, -0.3]));
            let mut adam = AdamState::new(0.05, &params);
            for k in 0..50 {
                let g: Vec<f64> = params.tensors[0]
                    .values()
                    .iter()
                    .map(|x| 2.0 * x + (k as f64 * 0.1).sin())
                    .collect();
                adam.step(&mut params, &[Some(Tensor::vector(g))]).unwrap();
            }
            params.tensors[0].values().to_vec()
        };
        assert_eq!(run(), run());
    }
}
