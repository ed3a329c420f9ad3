//! SplitMix64 and the seed-derivation rule used by the simulator.
//!
//! The generator is Vigna's SplitMix64: the state advances by the golden-ratio
//! increment `0x9E3779B97F4A7C15` and each output is the state passed through
//! the `mix64` finalizer. Trials are grouped into blocks of [`BLOCK_TRIALS`];
//! block `j` of a run seeded with `s` draws from a fresh generator seeded with
//! `block_seed(s, j) = mix64(s ^ mix64(j))`, so any partition of the blocks
//! across workers reproduces the sequential counts.

use num_bigint::BigUint;

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Trials per independently seeded block.
pub const BLOCK_TRIALS: u64 = 1 << 16;

/// SplitMix64 output finalizer applied to `x + GOLDEN_GAMMA`.
pub fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn block_seed(seed: u64, block: u64) -> u64 {
    mix64(seed ^ mix64(block))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        let out = mix64(self.state);
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        out
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Uniform integer in `[0, n)` by masked rejection. `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        if n.is_power_of_two() {
            return self.next_u64() & (n - 1);
        }
        let mask = u64::MAX >> (n - 1).leading_zeros();
        loop {
            let x = self.next_u64() & mask;
            if x < n {
                return x;
            }
        }
    }

    /// Uniform integer in `[0, n)` for arbitrarily large `n`.
    pub fn below_big(&mut self, n: &BigUint) -> BigUint {
        let bits = (n - 1u32).bits().max(1);
        let words = bits.div_ceil(64) as usize;
        let top_mask = u64::MAX >> (words as u64 * 64 - bits);
        loop {
            let mut digits = alloc::vec::Vec::with_capacity(words * 2);
            for i in 0..words {
                let mut w = self.next_u64();
                if i == words - 1 {
                    w &= top_mask;
                }
                digits.push(w as u32);
                digits.push((w >> 32) as u32);
            }
            let x = BigUint::new(digits);
            if &x < n {
                return x;
            }
        }
    }
}
