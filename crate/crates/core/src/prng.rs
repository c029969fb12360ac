//! Deterministic pseudo-randomness for all seeded operations.
//!
//! The generator is splitmix64: state advances by the odd constant
//! 0x9e3779b97f4a7c15 and each output is finalized with the murmur-style
//! mixer (shifts 30/27/31, multipliers 0xbf58476d1ce4e5b9 and
//! 0x94d049bb133111eb). It is fully specified here so that a run can be
//! reproduced bit-for-bit from the seed in any language.
//!
//! Stream discipline, shared by every randomized operation in the crate:
//!
//! * one draw per item, taken in the item's canonical sorted order
//!   (vertices ascending, edges/pairs ascending by `(u,v)`),
//! * derived streams (trial `t` of a sampler, restart `r` of a search) use a
//!   fresh generator seeded with `seed.wrapping_add(t)`,
//! * a Bernoulli(p) decision consumes exactly one draw, as does a coin flip.

/// splitmix64 generator. Copy-free, 8 bytes of state.
#[derive(Clone, Debug)]
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

    /// Uniform on the 2^53 dyadic rationals in [0,1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// One draw; true with probability `p`. Exact for dyadic `p = a/2^k`,
    /// `k <= 53`, which covers every probability used by the generators.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// One draw; a fair coin.
    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// Uniform integer in `0..bound` (`bound >= 1`). Uses the standard
    /// 128-bit multiply-shift reduction; the tiny modulo bias of plain `%`
    /// is avoided but, more importantly, the mapping is pinned for
    /// reproducibility.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound >= 1);
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_stream() {
        // First three outputs for seed 0 and seed 1234567, frozen so that the
        // generator can never drift silently.
        let mut g = SplitMix64::new(0);
        assert_eq!(g.next_u64(), 0xe220a8397b1dcdaf);
        assert_eq!(g.next_u64(), 0x6e789e6aa1b965f4);
        assert_eq!(g.next_u64(), 0x06c45d188009454f);
        let mut g = SplitMix64::new(1234567);
        assert_eq!(g.next_u64(), 0x599ed017fb08fc85);
    }

    #[test]
    fn f64_in_unit_interval() {
        let mut g = SplitMix64::new(42);
        for _ in 0..1000 {
            let x = g.next_f64();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn below_respects_bound() {
        let mut g = SplitMix64::new(7);
        for bound in 1..50u64 {
            for _ in 0..50 {
                assert!(g.below(bound) < bound);
            }
        }
    }
}
