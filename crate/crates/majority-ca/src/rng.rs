//! Deterministic pseudorandomness for reproducible experiments.
//!
//! Everything random in this crate flows through splitmix64 with the exact
//! standard finalizer, so two runs (or two implementations) given the same
//! seeds produce identical bit streams, identical colorings, and identical
//! output files.

/// SplitMix64 stream (Sebastiano Vigna). Non-cryptographic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1): top 53 bits of the next output divided by 2^53.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        const DEN: f64 = (1u64 << 53) as f64;
        ((self.next_u64() >> 11) as f64) / DEN
    }

    /// Fair coin from the top bit of the next output.
    #[inline]
    pub fn next_bool(&mut self) -> bool {
        (self.next_u64() >> 63) == 1
    }

    /// Uniform in 0..bound via rejection-free modulo (bias negligible for
    /// the small bounds used in tests and sweeps).
    #[inline]
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }
}

/// One splitmix64 output for the given seed, without keeping the stream.
///
/// Used to derive independent sub-seeds (per-trial seeds, tie-break streams).
#[inline]
pub fn mix(seed: u64) -> u64 {
    SplitMix64::new(seed).next_u64()
}
