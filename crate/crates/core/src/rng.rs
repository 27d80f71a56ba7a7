//! SplitMix64, seeded directly from a `u64`.
//!
//! Streams are part of the file-format contract: the same seed must produce
//! the same matrices in every implementation, so the generator and the
//! bounded-draw rule below are fixed.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` by rejection: raw outputs at or above the
    /// largest multiple of `bound` representable in 64 bits are discarded,
    /// the rest are reduced modulo `bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        // 2^64 mod bound
        let excess = (u64::MAX % bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if excess == 0 || x < u64::MAX - excess + 1 {
                return x % bound;
            }
        }
    }
}
