//! Deterministic instance generation: SplitMix64, chosen because the whole
//! generator is ten lines, seeds reproduce across languages, and the test
//! corpus must be reconstructible from a single integer.

use crate::quaternion::Quaternion;

/// SplitMix64 (Steele–Lea–Flood update and finalizer).
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1): the top 53 bits over 2⁵³.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [−1, 1).
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    /// Four symmetric draws, coordinate order w, x, y, z.
    pub fn next_quaternion(&mut self) -> Quaternion {
        let w = self.next_symmetric();
        let x = self.next_symmetric();
        let y = self.next_symmetric();
        let z = self.next_symmetric();
        Quaternion::new(w, x, y, z)
    }
}
