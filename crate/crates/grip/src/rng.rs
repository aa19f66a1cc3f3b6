//! Portable deterministic random number generation.
//!
//! Every stochastic choice in the crate (sampling, data generation, weight
//! initialization, batch shuffling) flows through [`SplitMix64`] so that a
//! seed fully determines all outputs, bit for bit, on any platform. SplitMix64
//! is a 64-bit counter-based generator: the state advances by a fixed odd
//! increment (the golden-ratio constant 0x9E3779B97F4A7C15) and each output is
//! a finalizing mix of the counter, so streams can also be split by seeding a
//! child from a parent draw.

/// SplitMix64 generator (Steele, Lea & Flood 2014).
///
/// Constants: increment `0x9E3779B97F4A7C15`, mix multipliers
/// `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`, shifts 30/27/31.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Derive an independent child stream; draws one value from `self`.
    pub fn split(&mut self) -> Self {
        Self::new(self.next_u64())
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of mantissa.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in [0, n). Rejection-free modulo is fine here; the
    /// bias for n << 2^64 is far below anything observable.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    /// Standard normal via Box-Muller (polar form rejected; the trig form is
    /// branch-free and portable).
    pub fn gaussian(&mut self) -> f64 {
        let u1 = (self.next_u64() >> 11) as f64 + 1.0; // in [1, 2^53]
        let u1 = u1 * (1.0 / (1u64 << 53) as f64); // in (0, 1]
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}
