//! Seeded random streams.
//!
//! Every random draw in the simulator comes from an [`RngStream`], a
//! xoshiro256** generator whose 256-bit state is filled by SplitMix64 from a
//! `(master_seed, stream_id)` pair. The mixing is:
//!
//! ```text
//! x = mix64(master_seed ^ 0x6A09E667F3BCC909)
//! x = mix64(x ^ stream_id.wrapping_mul(0x9E3779B97F4A7C15) ^ 0xBB67AE8584CAA73B)
//! state[i] = splitmix64(x) for i = 0..4
//! ```
//!
//! where `mix64` is the SplitMix64 finalizer. Gaussian samples use the
//! Box–Muller transform; both outputs of each pair are consumed, cosine branch
//! first.

use num_complex::Complex64;
use std::f64::consts::PI;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
fn splitmix_next(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN);
    mix64(*state)
}

/// A deterministic xoshiro256** stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    s: [u64; 4],
    stream_id: u64,
    spare_normal: Option<u64>,
}

/// Builds the stream identified by `(master_seed, stream_id)`.
pub fn derive_stream(master_seed: u64, stream_id: u64) -> RngStream {
    let mut x = mix64(master_seed ^ 0x6A09_E667_F3BC_C909);
    x = mix64(x ^ stream_id.wrapping_mul(GOLDEN) ^ 0xBB67_AE85_84CA_A73B);
    let mut s = [0u64; 4];
    for word in s.iter_mut() {
        *word = splitmix_next(&mut x);
    }
    // xoshiro must not start from the all-zero state
    if s == [0; 4] {
        s[0] = GOLDEN;
    }
    RngStream {
        s,
        stream_id,
        spare_normal: None,
    }
}

impl RngStream {
    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    #[inline]
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `[0, n)` by rejection (no modulo bias). `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// One standard normal sample.
    pub fn std_normal(&mut self) -> f64 {
        if let Some(bits) = self.spare_normal.take() {
            return f64::from_bits(bits);
        }
        // u1 in (0, 1] keeps ln finite
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * PI * u2;
        self.spare_normal = Some((radius * angle.sin()).to_bits());
        radius * angle.cos()
    }

    /// Circularly-symmetric complex normal with unit variance.
    #[inline]
    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.std_normal();
        let im = self.std_normal();
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Exponential variate with the given rate.
    pub fn exponential(&mut self, rate: f64) -> f64 {
        -(1.0 - self.next_f64()).ln() / rate
    }

    /// Child stream seeded from this stream's next output.
    pub fn fork(&mut self, label: u64) -> RngStream {
        let seed = self.next_u64();
        derive_stream(seed, label)
    }
}

/// `count` i.i.d. standard normal samples.
pub fn draw_std_normal(rng: &mut RngStream, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.std_normal()).collect()
}
