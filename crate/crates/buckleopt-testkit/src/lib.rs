//! Independent oracles for the buckleopt test suites.
//!
//! Everything in this crate is computed from first principles (series
//! expansions, closed-form spectra, brute-force enumeration) and never calls
//! into `buckleopt` itself, so it can serve as the reference side of a
//! two-route check.

pub mod bessel;
pub mod geometry;
pub mod spectra;

/// Tiny deterministic generator for test fixtures (Knuth MMIX constants).
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Relative difference |a - b| / max(|a|, |b|), 0 when both vanish.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
