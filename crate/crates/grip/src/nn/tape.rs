use super::tensor::{dot, Tensor};
use super::NnError;

/// Handle to a node on a [`Tape`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NodeId(pub usize);

#[derive(Debug)]
enum Op {
    Leaf,
    Add(NodeId, NodeId),
    Sub(NodeId, NodeId),
    Mul(NodeId, NodeId),
    Scale(NodeId, f64),
    /// y = a * s with scalar node s.
    MulScalar(NodeId, NodeId),
    /// y = a / s with scalar node s.
    DivScalar(NodeId, NodeId),
    /// y = W x + b; W is [out, in], x and b are vectors.
    Affine { w: NodeId, x: NodeId, b: NodeId },
    LeakyRelu(NodeId, f64),
    Abs(NodeId),
    Square(NodeId),
    Sqrt(NodeId),
    Sum(NodeId),
    Mean(NodeId),
    Dot(NodeId, NodeId),
    Cross(NodeId, NodeId),
    /// Row-major 3x3 product of two 9-vectors.
    Mat3Mul(NodeId, NodeId),
    /// Row-major 3x3 applied to a 3-vector.
    Mat3Vec(NodeId, NodeId),
    Concat(Vec<NodeId>),
    Slice { a: NodeId, start: usize, len: usize },
    /// y[k] = a[idx[k]].
    Gather { a: NodeId, idx: Vec<usize> },
}

struct Node {
    op: Op,
    value: Tensor,
}

/// Wengert-list reverse-mode autodiff tape. Operations execute eagerly and
/// record themselves; [`Tape::backward`] replays the list once in reverse
/// topological (= construction) order.
#[derive(Default)]
pub struct Tape {
    nodes: Vec<Node>,
}

/// Per-node gradients produced by [`Tape::backward`].
pub struct Gradients {
    grads: Vec<Option<Tensor>>,
}

impl Gradients {
    pub fn get(&self, id: NodeId) -> Option<&Tensor> {
        self.grads[id.0].as_ref()
    }

    /// Gradient for a node, zeros if the node does not influence the loss.
    pub fn get_or_zeros(&self, id: NodeId, shape: &[usize]) -> Tensor {
        match &self.grads[id.0] {
            Some(t) => t.clone(),
            None => Tensor::zeros(shape.to_vec()),
        }
    }
}

impl Tape {
    pub fn new() -> Tape {
        Tape::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn value(&self, id: NodeId) -> &Tensor {
        &self.nodes[id.0].value
    }

    fn push(&mut self, op: Op, value: Tensor) -> NodeId {
        self.nodes.push(Node { op, value });
        NodeId(self.nodes.len() - 1)
    }

    pub fn leaf(&mut self, value: Tensor) -> NodeId {
        self.push(Op::Leaf, value)
    }

    pub fn scalar(&mut self, v: f64) -> NodeId {
        self.leaf(Tensor::scalar(v))
    }

    fn binary_elementwise(
        &mut self,
        a: NodeId,
        b: NodeId,
        f: impl Fn(f64, f64) -> f64,
        op: Op,
    ) -> Result<NodeId, NnError> {
        let (ta, tb) = (self.value(a), self.value(b));
        if ta.shape() != tb.shape() {
            return Err(NnError::ShapeMismatch {
                what: "elementwise op",
                left: ta.shape().to_vec(),
                right: tb.shape().to_vec(),
            });
        }
        let data: Vec<f64> = ta.values().iter().zip(tb.values()).map(|(x, y)| f(*x, *y)).collect();
        let value = Tensor::new(ta.shape().to_vec(), data);
        Ok(self.push(op, value))
    }

    pub fn add(&mut self, a: NodeId, b: NodeId) -> Result<NodeId, NnError> {
        self.binary_elementwise(a, b, |x, y| x + y, Op::Add(a, b))
    }

    pub fn sub(&mut self, a: NodeId, b: NodeId) -> Result<NodeId, NnError> {
        self.binary_elementwise(a, b, |x, y| x - y, Op::Sub(a, b))
    }

    pub fn mul(&mut self, a: NodeId, b: NodeId) -> Result<NodeId, NnError> {
        self.binary_elementwise(a, b, |x, y| x * y, Op::Mul(a, b))
    }

    pub fn scale(&mut self, a: NodeId, c: f64) -> NodeId {
        let data: Vec<f64> = self.value(a).values().iter().map(|x| x * c).collect();
        let value = Tensor::new(self.value(a).shape().to_vec(), data);
        self.push(Op::Scale(a, c), value)
    }

    pub fn mul_scalar(&mut self, a: NodeId, s: NodeId) -> Result<NodeId, NnError> {
        if !self.value(s).is_scalar() {
            return Err(NnError::ScalarExpected);
        }
        let sv = self.value(s).values()[0];
        let data: Vec<f64> = self.value(a).values().iter().map(|x| x * sv).collect();
        let value = Tensor::new(self.value(a).shape().to_vec(), data);
        Ok(self.push(Op::MulScalar(a, s), value))
    }

    pub fn div_scalar(&mut self, a: NodeId, s: NodeId) -> Result<NodeId, NnError> {
        if !self.value(s).is_scalar() {
            return Err(NnError::ScalarExpected);
        }
        let sv = self.value(s).values()[0];
        let data: Vec<f64> = self.value(a).values().iter().map(|x| x / sv).collect();
        let value = Tensor::new(self.value(a).shape().to_vec(), data);
        Ok(self.push(Op::DivScalar(a, s), value))
    }

    pub fn affine(&mut self, w: NodeId, x: NodeId, b: NodeId) -> Result<NodeId, NnError> {
        let (tw, tx, tb) = (self.value(w), self.value(x), self.value(b));
        let (out, inp) = match tw.shape() {
            [o, i] => (*o, *i),
            _ => {
                return Err(NnError::ShapeMismatch {
                    what: "affine weight",
                    left: tw.shape().to_vec(),
                    right: vec![],
                })
            }
        };
        if tx.len() != inp || tb.len() != out {
            return Err(NnError::ShapeMismatch {
                what: "affine input",
                left: vec![out, inp],
                right: vec![tx.len(), tb.len()],
            });
        }
        let wv = tw.values();
        let xv = tx.values();
        let bv = tb.values();
        let mut y = Vec::with_capacity(out);
        for o in 0..out {
            y.push(dot(&wv[o * inp..(o + 1) * inp], xv) + bv[o]);
        }
        Ok(self.push(Op::Affine { w, x, b }, Tensor::vector(y)))
    }

    pub fn leaky_relu(&mut self, a: NodeId, slope: f64) -> NodeId {
        let data: Vec<f64> = self
            .value(a)
            .values()
            .iter()
            .map(|&x| if x >= 0.0 { x } else { slope * x })
            .collect();
        let value = Tensor::new(self.value(a).shape().to_vec(), data);
        self.push(Op::LeakyRelu(a, slope), value)
    }

    pub fn abs(&mut self, a: NodeId) -> NodeId {
        let data: Vec<f64> = self.value(a).values().iter().map(|x| x.abs()).collect();
        let value = Tensor::new(self.value(a).shape().to_vec(), data);
        self.push(Op::Abs(a), value)
    }

    pub fn square(&mut self, a: NodeId) -> NodeId {
        let data: Vec<f64> = self.value(a).values().iter().map(|x| x * x).collect();
        let value = Tensor::new(self.value(a).shape().to_vec(), data);
        self.push(Op::Square(a), value)
    }

    pub fn sqrt(&mut self, a: NodeId) -> NodeId {
        let data: Vec<f64> = self.value(a).values().iter().map(|x| x.sqrt()).collect();
        let value = Tensor::new(self.value(a).shape().to_vec(), data);
        self.push(Op::Sqrt(a), value)
    }

    pub fn sum(&mut self, a: NodeId) -> NodeId {
        let s: f64 = self.value(a).values().iter().sum();
        self.push(Op::Sum(a), Tensor::scalar(s))
    }

    pub fn mean(&mut self, a: NodeId) -> NodeId {
        let n = self.value(a).len().max(1);
        let s: f64 = self.value(a).values().iter().sum();
        self.push(Op::Mean(a), Tensor::scalar(s / n as f64))
    }

    pub fn dot_nodes(&mut self, a: NodeId, b: NodeId) -> Result<NodeId, NnError> {
        let (ta, tb) = (self.value(a), self.value(b));
        if ta.len() != tb.len() {
            return Err(NnError::ShapeMismatch {
                what: "dot",
                left: ta.shape().to_vec(),
                right: tb.shape().to_vec(),
            });
        }
        let v = dot(ta.values(), tb.values());
        Ok(self.push(Op::Dot(a, b), Tensor::scalar(v)))
    }

    pub fn cross(&mut self, a: NodeId, b: NodeId) -> Result<NodeId, NnError> {
        let (ta, tb) = (self.value(a), self.value(b));
        if ta.len() != 3 || tb.len() != 3 {
            return Err(NnError::ShapeMismatch {
                what: "cross",
                left: ta.shape().to_vec(),
                right: tb.shape().to_vec(),
            });
        }
        let (x, y) = (ta.values(), tb.values());
        let v = vec![
            x[1] * y[2] - x[2] * y[1],
            x[2] * y[0] - x[0] * y[2],
            x[0] * y[1] - x[1] * y[0],
        ];
        Ok(self.push(Op::Cross(a, b), Tensor::vector(v)))
    }

    pub fn mat3_mul(&mut self, a: NodeId, b: NodeId) -> Result<NodeId, NnError> {
        let (ta, tb) = (self.value(a), self.value(b));
        if ta.len() != 9 || tb.len() != 9 {
            return Err(NnError::ShapeMismatch {
                what: "mat3 mul",
                left: ta.shape().to_vec(),
                right: tb.shape().to_vec(),
            });
        }
        let (x, y) = (ta.values(), tb.values());
        let mut v = vec![0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                v[i * 3 + j] = x[i * 3] * y[j] + x[i * 3 + 1] * y[3 + j] + x[i * 3 + 2] * y[6 + j];
            }
        }
        Ok(self.push(Op::Mat3Mul(a, b), Tensor::vector(v)))
    }

    pub fn mat3_vec(&mut self, a: NodeId, v3: NodeId) -> Result<NodeId, NnError> {
        let (ta, tv) = (self.value(a), self.value(v3));
        if ta.len() != 9 || tv.len() != 3 {
            return Err(NnError::ShapeMismatch {
                what: "mat3 vec",
                left: ta.shape().to_vec(),
                right: tv.shape().to_vec(),
            });
        }
        let (m, x) = (ta.values(), tv.values());
        let v = vec![
            m[0] * x[0] + m[1] * x[1] + m[2] * x[2],
            m[3] * x[0] + m[4] * x[1] + m[5] * x[2],
            m[6] * x[0] + m[7] * x[1] + m[8] * x[2],
        ];
        Ok(self.push(Op::Mat3Vec(a, v3), Tensor::vector(v)))
    }

    pub fn concat(&mut self, parts: &[NodeId]) -> NodeId {
        let mut data = Vec::new();
        for p in parts {
            data.extend_from_slice(self.value(*p).values());
        }
        self.push(Op::Concat(parts.to_vec()), Tensor::vector(data))
    }

    pub fn slice(&mut self, a: NodeId, start: usize, len: usize) -> Result<NodeId, NnError> {
        if start + len > self.value(a).len() {
            return Err(NnError::SliceOutOfRange { start, len, have: self.value(a).len() });
        }
        let data = self.value(a).values()[start..start + len].to_vec();
        Ok(self.push(Op::Slice { a, start, len }, Tensor::vector(data)))
    }

    pub fn gather(&mut self, a: NodeId, idx: Vec<usize>) -> Result<NodeId, NnError> {
        let ta = self.value(a);
        if idx.iter().any(|&i| i >= ta.len()) {
            return Err(NnError::SliceOutOfRange { start: 0, len: idx.len(), have: ta.len() });
        }
        let data: Vec<f64> = idx.iter().map(|&i| ta.values()[i]).collect();
        Ok(self.push(Op::Gather { a, idx }, Tensor::vector(data)))
    }

    /// Mean absolute difference.
    pub fn l1_loss(&mut self, a: NodeId, b: NodeId) -> Result<NodeId, NnError> {
        let d = self.sub(a, b)?;
        let ad = self.abs(d);
        Ok(self.mean(ad))
    }

    /// Mean squared difference.
    pub fn mse_loss(&mut self, a: NodeId, b: NodeId) -> Result<NodeId, NnError> {
        let d = self.sub(a, b)?;
        let sq = self.square(d);
        Ok(self.mean(sq))
    }

    /// Reverse pass from a scalar loss node. Each node is visited exactly
    /// once, in reverse construction order.
    pub fn backward(&self, loss: NodeId) -> Result<Gradients, NnError> {
        if loss.0 >= self.nodes.len() {
            return Err(NnError::DetachedLoss);
        }
        if !self.nodes[loss.0].value.is_scalar() {
            return Err(NnError::DetachedLoss);
        }
        let mut grads: Vec<Option<Tensor>> = (0..self.nodes.len()).map(|_| None).collect();
        grads[loss.0] = Some(Tensor::scalar(1.0));

        for i in (0..self.nodes.len()).rev() {
            let g = match &grads[i] {
                Some(t) => t.clone(),
                None => continue,
            };
            let gv = g.values();
            let node = &self.nodes[i];
            match &node.op {
                Op::Leaf => {}
                Op::Add(a, b) => {
                    self.accumulate(&mut grads, *a, &gv);
                    self.accumulate(&mut grads, *b, &gv);
                }
                Op::Sub(a, b) => {
                    self.accumulate(&mut grads, *a, &gv);
                    let neg: Vec<f64> = gv.iter().map(|x| -x).collect();
                    self.accumulate(&mut grads, *b, &neg);
                }
                Op::Mul(a, b) => {
                    let av = self.value(*a).values();
                    let bv = self.value(*b).values();
                    let ga: Vec<f64> = gv.iter().zip(bv).map(|(g, y)| g * y).collect();
                    let gb: Vec<f64> = gv.iter().zip(av).map(|(g, x)| g * x).collect();
                    self.accumulate(&mut grads, *a, &ga);
                    self.accumulate(&mut grads, *b, &gb);
                }
                Op::Scale(a, c) => {
                    let ga: Vec<f64> = gv.iter().map(|g| g * c).collect();
                    self.accumulate(&mut grads, *a, &ga);
                }
                Op::MulScalar(a, s) => {
                    let sv = self.value(*s).values()[0];
                    let av = self.value(*a).values();
                    let ga: Vec<f64> = gv.iter().map(|g| g * sv).collect();
                    let gs = dot(&gv, av);
                    self.accumulate(&mut grads, *a, &ga);
                    self.accumulate(&mut grads, *s, &[gs]);
                }
                Op::DivScalar(a, s) => {
                    let sv = self.value(*s).values()[0];
                    let av = self.value(*a).values();
                    let ga: Vec<f64> = gv.iter().map(|g| g / sv).collect();
                    let gs = -dot(&gv, av) / (sv * sv);
                    self.accumulate(&mut grads, *a, &ga);
                    self.accumulate(&mut grads, *s, &[gs]);
                }
                Op::Affine { w, x, b } => {
                    let tw = self.value(*w);
                    let (out, inp) = (tw.shape()[0], tw.shape()[1]);
                    let wv = tw.values();
                    let xv = self.value(*x).values();
                    // gW = g (outer) x
                    let mut gw = vec![0.0; out * inp];
                    for o in 0..out {
                        let go = gv[o];
                        let row = &mut gw[o * inp..(o + 1) * inp];
                        for (r, xi) in row.iter_mut().zip(xv) {
                            *r = go * xi;
                        }
                    }
                    // gx = W^T g, accumulated row-wise to stay sequential.
                    let mut gx = vec![0.0; inp];
                    for o in 0..out {
                        let go = gv[o];
                        let row = &wv[o * inp..(o + 1) * inp];
                        for (gxi, wi) in gx.iter_mut().zip(row) {
                            *gxi += go * wi;
                        }
                    }
                    self.accumulate(&mut grads, *w, &gw);
                    self.accumulate(&mut grads, *x, &gx);
                    self.accumulate(&mut grads, *b, &gv);
                }
                Op::LeakyRelu(a, slope) => {
                    let av = self.value(*a).values();
                    let ga: Vec<f64> = gv
                        .iter()
                        .zip(av)
                        .map(|(g, x)| if *x >= 0.0 { *g } else { g * slope })
                        .collect();
                    self.accumulate(&mut grads, *a, &ga);
                }
                Op::Abs(a) => {
                    let av = self.value(*a).values();
                    let ga: Vec<f64> = gv
                        .iter()
                        .zip(av)
                        .map(|(g, x)| g * if *x > 0.0 { 1.0 } else if *x < 0.0 { -1.0 } else { 0.0 })
                        .collect();
                    self.accumulate(&mut grads, *a, &ga);
                }
                Op::Square(a) => {
                    let av = self.value(*a).values();
                    let ga: Vec<f64> = gv.iter().zip(av).map(|(g, x)| 2.0 * g * x).collect();
                    self.accumulate(&mut grads, *a, &ga);
                }
                Op::Sqrt(a) => {
                    let yv = node.value.values();
                    let ga: Vec<f64> = gv.iter().zip(yv).map(|(g, y)| g / (2.0 * y)).collect();
                    self.accumulate(&mut grads, *a, &ga);
                }
                Op::Sum(a) => {
                    let n = self.value(*a).len();
                    let ga = vec![gv[0]; n];
                    self.accumulate(&mut grads, *a, &ga);
                }
                Op::Mean(a) => {
                    let n = self.value(*a).len().max(1);
                    let ga = vec![gv[0] / n as f64; n];
                    self.accumulate(&mut grads, *a, &ga);
                }
                Op::Dot(a, b) => {
                    let av = self.value(*a).values();
                    let bv = self.value(*b).values();
                    let ga: Vec<f64> = bv.iter().map(|y| gv[0] * y).collect();
                    let gb: Vec<f64> = av.iter().map(|x| gv[0] * x).collect();
                    self.accumulate(&mut grads, *a, &ga);
                    self.accumulate(&mut grads, *b, &gb);
                }
                Op::Cross(a, b) => {
                    let av = self.value(*a).values();
                    let bv = self.value(*b).values();
                    // d(a x b) . g: ga = b x g, gb = g x a.
                    let ga = vec![
                        bv[1] * gv[2] - bv[2] * gv[1],
                        bv[2] * gv[0] - bv[0] * gv[2],
                        bv[0] * gv[1] - bv[1] * gv[0],
                    ];
                    let gb = vec![
                        gv[1] * av[2] - gv[2] * av[1],
                        gv[2] * av[0] - gv[0] * av[2],
                        gv[0] * av[1] - gv[1] * av[0],
                    ];
                    self.accumulate(&mut grads, *a, &ga);
                    self.accumulate(&mut grads, *b, &gb);
                }
                Op::Mat3Mul(a, b) => {
                    let av = self.value(*a).values();
                    let bv = self.value(*b).values();
                    // C = A B: gA = G B^T, gB = A^T G.
                    let mut ga = vec![0.0; 9];
                    let mut gb = vec![0.0; 9];
                    for i in 0..3 {
                        for j in 0..3 {
                            let gij = gv[i * 3 + j];
                            for k in 0..3 {
                                ga[i * 3 + k] += gij * bv[k * 3 + j];
                                gb[k * 3 + j] += av[i * 3 + k] * gij;
                            }
                        }
                    }
                    self.accumulate(&mut grads, *a, &ga);
                    self.accumulate(&mut grads, *b, &gb);
                }
                Op::Mat3Vec(a, v3) => {
                    let av = self.value(*a).values();
                    let xv = self.value(*v3).values();
                    // y = M x: gM = g (outer) x, gx = M^T g.
                    let mut gm = vec![0.0; 9];
                    let mut gx = vec![0.0; 3];
                    for i in 0..3 {
                        for j in 0..3 {
                            gm[i * 3 + j] = gv[i] * xv[j];
                            gx[j] += av[i * 3 + j] * gv[i];
                        }
                    }
                    self.accumulate(&mut grads, *a, &gm);
                    self.accumulate(&mut grads, *v3, &gx);
                }
                Op::Concat(parts) => {
                    let mut off = 0;
                    for p in parts {
                        let n = self.value(*p).len();
                        self.accumulate(&mut grads, *p, &gv[off..off + n]);
                        off += n;
                    }
                }
                Op::Slice { a, start, len } => {
                    let mut ga = vec![0.0; self.value(*a).len()];
                    ga[*start..*start + *len].copy_from_slice(&gv);
                    self.accumulate(&mut grads, *a, &ga);
                }
                Op::Gather { a, idx } => {
                    let mut ga = vec![0.0; self.value(*a).len()];
                    for (k, &src) in idx.iter().enumerate() {
                        ga[src] += gv[k];
                    }
                    self.accumulate(&mut grads, *a, &ga);
                }
            }
        }
        Ok(Gradients { grads })
    }

    fn accumulate(&self, grads: &mut [Option<Tensor>], id: NodeId, add: &[f64]) {
        match &mut grads[id.0] {
            Some(t) => {
                let dst = t.make_mut();
                debug_assert_eq!(dst.len(), add.len());
                for (d, a) in dst.iter_mut().zip(add) {
                    *d += a;
                }
            }
            None => {
                let shape = self.value(id).shape().to_vec();
                grads[id.0] = Some(Tensor::new(shape, add.to_vec()));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backward_of_identity_quadratic() {
        // loss = 1/2 ||W x||^2 with W = I: grad_W = (Wx) x^T = x x^T.
        let mut tape = Tape::new();
        let w = tape.leaf(Tensor::matrix(2, 2, vec![1.0, 0.0, 0.0, 1.0]));
        let x = tape.leaf(Tensor::vector(vec![3.0, -2.0]));
        let b = tape.leaf(Tensor::vector(vec![0.0, 0.0]));
        let y = tape.affine(w, x, b).unwrap();
        let sq = tape.square(y);
        let s = tape.sum(sq);
        let loss = tape.scale(s, 0.5);
        let grads = tape.backward(loss).unwrap();
        let gw = grads.get(w).unwrap();
        let expect = [9.0, -6.0, -6.0, 4.0]; // x x^T
        for (a, e) in gw.values().iter().zip(&expect) {
            assert!((a - e).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_loss_gives_zero_gradients() {
        let mut tape = Tape::new();
        let a = tape.leaf(Tensor::vector(vec![1.0, 2.0]));
        let l = tape.l1_loss(a, a).unwrap();
        assert_eq!(tape.value(l).item(), 0.0);
        let grads = tape.backward(l).unwrap();
        let ga = grads.get(a).unwrap();
        assert!(ga.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn detached_loss_rejected() {
        let mut tape = Tape::new();
        let a = tape.leaf(Tensor::vector(vec![1.0, 2.0]));
        assert!(matches!(tape.backward(a), Err(NnError::DetachedLoss)));
        assert!(matches!(tape.backward(NodeId(99)), Err(NnError::DetachedLoss)));
    }

    #[test]
    fn l1_and_mse_reference_values() {
        let mut tape = Tape::new();
        let a = tape.leaf(Tensor::vector(vec![0.0, 0.0]));
        let b = tape.leaf(Tensor::vector(vec![3.0, 4.0]));
        let l1 = tape.l1_loss(a, b).unwrap();
        let mse = tape.mse_loss(a, b).unwrap();
        assert!((tape.value(l1).item() - 3.5).abs() < 1e-15);
        assert!((tape.value(mse).item() - 12.5).abs() < 1e-15);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let mut tape = Tape::new();
        let a = tape.leaf(Tensor::vector(vec![1.0]));
        let b = tape.leaf(Tensor::vector(vec![1.0, 2.0]));
        assert!(matches!(tape.add(a, b), Err(NnError::ShapeMismatch { .. })));
    }

    #[test]
    fn concat_slice_round_trip_gradient() {
        let mut tape = Tape::new();
        let a = tape.leaf(Tensor::vector(vec![1.0, 2.0]));
        let b = tape.leaf(Tensor::vector(vec![3.0]));
        let cat = tape.concat(&[a, b]);
        let sl = tape.slice(cat, 1, 2).unwrap();
        let l = tape.sum(sl);
        let grads = tape.backward(l).unwrap();
        assert_eq!(grads.get(a).unwrap().values(), &[0.0, 1.0]);
        assert_eq!(grads.get(b).unwrap().values(), &[1.0]);
    }
}
