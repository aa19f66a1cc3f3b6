use super::tape::{NodeId, Tape};
use super::tensor::Tensor;
use super::NnError;
use crate::rng::SplitMix64;

/// Negative-side slope of the leaky ramp activation used throughout.
pub const LEAKY_SLOPE: f64 = 0.01;

/// Index of a parameter tensor inside a [`ParamSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamId(pub usize);

/// Named parameter tensors for one network. Order is the serialization
/// order of the weight file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamSet {
    pub names: Vec<String>,
    pub tensors: Vec<Tensor>,
}

impl ParamSet {
    pub fn new() -> ParamSet {
        ParamSet::default()
    }

    pub fn add(&mut self, name: impl Into<String>, t: Tensor) -> ParamId {
        self.names.push(name.into());
        self.tensors.push(t);
        ParamId(self.tensors.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.tensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tensors.is_empty()
    }

    pub fn get(&self, id: ParamId) -> &Tensor {
        &self.tensors[id.0]
    }

    pub fn total_values(&self) -> usize {
        self.tensors.iter().map(|t| t.len()).sum()
    }

    /// Registers every parameter as a tape leaf; returns ids aligned with
    /// this set.
    pub fn leaves(&self, tape: &mut Tape) -> Vec<NodeId> {
        self.tensors.iter().map(|t| tape.leaf(t.clone())).collect()
    }
}

/// Dense layer y = W x + b with fan-in-scaled uniform initialization.
#[derive(Clone, Copy, Debug)]
pub struct LinearLayer {
    pub w: ParamId,
    pub b: ParamId,
    pub in_dim: usize,
    pub out_dim: usize,
}

impl LinearLayer {
    pub fn new(
        params: &mut ParamSet,
        name: &str,
        in_dim: usize,
        out_dim: usize,
        rng: &mut SplitMix64,
    ) -> LinearLayer {
        let bound = (1.0 / in_dim as f64).sqrt();
        let w: Vec<f64> = (0..in_dim * out_dim).map(|_| rng.uniform(-bound, bound)).collect();
        let w = params.add(format!("{name}.w"), Tensor::matrix(out_dim, in_dim, w));
        let b = params.add(format!("{name}.b"), Tensor::vector(vec![0.0; out_dim]));
        LinearLayer { w, b, in_dim, out_dim }
    }

    pub fn forward(&self, tape: &mut Tape, leaves: &[NodeId], x: NodeId) -> Result<NodeId, NnError> {
        tape.affine(leaves[self.w.0], x, leaves[self.b.0])
    }
}

/// Two dense layers with a skip connection:
/// `y = act(L2(act(L1(x)))) + x`. Input and output widths are equal; at
/// zero initialization the block is the identity map.
#[derive(Clone, Copy, Debug)]
pub struct ResidualBlock {
    pub l1: LinearLayer,
    pub l2: LinearLayer,
}

impl ResidualBlock {
    pub fn new(params: &mut ParamSet, name: &str, width: usize, rng: &mut SplitMix64) -> ResidualBlock {
        ResidualBlock {
            l1: LinearLayer::new(params, &format!("{name}.l1"), width, width, rng),
            l2: LinearLayer::new(params, &format!("{name}.l2"), width, width, rng),
        }
    }

    pub fn forward(&self, tape: &mut Tape, leaves: &[NodeId], x: NodeId) -> Result<NodeId, NnError> {
        let h = self.l1.forward(tape, leaves, x)?;
        let h = tape.leaky_relu(h, LEAKY_SLOPE);
        let h = self.l2.forward(tape, leaves, h)?;
        let h = tape.leaky_relu(h, LEAKY_SLOPE);
        tape.add(h, x)
    }
}

/// Input projection, a stack of residual blocks, and an output projection.
#[derive(Clone, Debug)]
pub struct ResidualStack {
    pub input: LinearLayer,
    pub blocks: Vec<ResidualBlock>,
    pub output: LinearLayer,
}

impl ResidualStack {
    pub fn new(
        params: &mut ParamSet,
        name: &str,
        in_dim: usize,
        width: usize,
        depth: usize,
        out_dim: usize,
        rng: &mut SplitMix64,
    ) -> ResidualStack {
        ResidualStack {
            input: LinearLayer::new(params, &format!("{name}.in"), in_dim, width, rng),
            blocks: (0..depth)
                .map(|i| ResidualBlock::new(params, &format!("{name}.res{i}"), width, rng))
                .collect(),
            output: LinearLayer::new(params, &format!("{name}.out"), width, out_dim, rng),
        }
    }

    pub fn forward(&self, tape: &mut Tape, leaves: &[NodeId], x: NodeId) -> Result<NodeId, NnError> {
        let mut h = self.input.forward(tape, leaves, x)?;
        h = tape.leaky_relu(h, LEAKY_SLOPE);
        for b in &self.blocks {
            h = b.forward(tape, leaves, h)?;
        }
        self.output.forward(tape, leaves, h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_linear_layer_passes_input_through() {
        let mut params = ParamSet::new();
        let w = params.add("w", Tensor::matrix(3, 3, vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]));
        let b = params.add("b", Tensor::vector(vec![0.0; 3]));
        let layer = LinearLayer { w, b, in_dim: 3, out_dim: 3 };
        let mut tape = Tape::new();
        let leaves = params.leaves(&mut tape);
        let x = tape.leaf(Tensor::vector(vec![0.3, -1.0, 2.0]));
        let y = layer.forward(&mut tape, &leaves, x).unwrap();
        assert_eq!(tape.value(y).values(), tape.value(x).values());
    }

    #[test]
    fn zero_initialized_residual_block_is_identity() {
        let mut params = ParamSet::new();
        let mk = |params: &mut ParamSet, n: &str| {
            let w = params.add(format!("{n}.w"), Tensor::zeros(vec![4, 4]));
            let b = params.add(format!("{n}.b"), Tensor::vector(vec![0.0; 4]));
            LinearLayer { w, b, in_dim: 4, out_dim: 4 }
        };
        let block = ResidualBlock { l1: mk(&mut params, "a"), l2: mk(&mut params, "b") };
        let mut tape = Tape::new();
        let leaves = params.leaves(&mut tape);
        let x = tape.leaf(Tensor::vector(vec![1.0, -2.0, 0.5, 3.0]));
        let y = block.forward(&mut tape, &leaves, x).unwrap();
        assert_eq!(tape.value(y).values(), tape.value(x).values());
    }

    #[test]
    fn stack_forward_matches_straight_line_reimplementation() {
        let mut rng = SplitMix64::new(77);
        let mut params = ParamSet::new();
        let stack = ResidualStack::new(&mut params, "s", 5, 8, 3, 4, &mut rng);
        let x_data: Vec<f64> = (0..5).map(|i| (i as f64 * 0.7).sin()).collect();

        let mut tape = Tape::new();
        let leaves = params.leaves(&mut tape);
        let x = tape.leaf(Tensor::vector(x_data.clone()));
        let y = stack.forward(&mut tape, &leaves, x).unwrap();

        // Straight-line oracle with plain loops.
        let affine = |w: &Tensor, b: &Tensor, x: &[f64]| -> Vec<f64> {
            let (out, inp) = (w.shape()[0], w.shape()[1]);
            (0..out)
                .map(|o| {
                    let mut s = b.values()[o];
                    for i in 0..inp {
                        s += w.values()[o * inp + i] * x[i];
                    }
                    s
                })
                .collect()
        };
        let act = |v: Vec<f64>| -> Vec<f64> {
            v.into_iter().map(|x| if x >= 0.0 { x } else { LEAKY_SLOPE * x }).collect()
        };
        let mut h = act(affine(params.get(stack.input.w), params.get(stack.input.b), &x_data));
        for blk in &stack.blocks {
            let skip = h.clone();
            let mut t = act(affine(params.get(blk.l1.w), params.get(blk.l1.b), &h));
            t = act(affine(params.get(blk.l2.w), params.get(blk.l2.b), &t));
            h = t.iter().zip(&skip).map(|(a, b)| a + b).collect();
        }
        let expect = affine(params.get(stack.output.w), params.get(stack.output.b), &h);

        for (a, e) in tape.value(y).values().iter().zip(&expect) {
            assert!((a - e).abs() < 1e-12);
        }
    }
}
