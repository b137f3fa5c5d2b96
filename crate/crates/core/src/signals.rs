//! Deterministic test signals shared by the property suites and the
//! verification report.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods exist once std is linked
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::buffer::ComplexBuffer;

/// Seed used by every reproducible random signal in the verification suite.
pub const DEFAULT_SEED: u64 = 0x5EED_F4F7;

/// Sampled `exp(-pi u^2)`, the fixed point of every transform order.
pub fn gaussian(n: usize) -> ComplexBuffer {
    ComplexBuffer::from_fn(n, |u| Complex64::new((-PI * u * u).exp(), 0.0)).expect("n >= 1")
}

/// Sum of three unit-width Gaussian atoms with random complex amplitudes,
/// time offsets and frequency offsets. Offsets stay within `0.08 sqrt(n)` of
/// the origin in both time and frequency, so every order keeps the signal
/// well inside the grid.
pub fn gaussian_enveloped_random(n: usize, seed: u64) -> ComplexBuffer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let reach = 0.08 * (n as f64).sqrt();
    let atoms: Vec<(Complex64, f64, f64)> = (0..3)
        .map(|_| {
            let amp = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let t0 = rng.random_range(-reach..reach);
            let f0 = rng.random_range(-reach..reach);
            (amp, t0, f0)
        })
        .collect();
    ComplexBuffer::from_fn(n, |u| {
        atoms
            .iter()
            .map(|&(amp, t0, f0)| {
                let d = u - t0;
                amp * (-PI * d * d).exp() * Complex64::from_polar(1.0, 2.0 * PI * f0 * u)
            })
            .sum()
    })
    .expect("n >= 1")
}

/// Complex tone of `cycles_per_sample` under an `exp(-pi (u / width)^2)`
/// envelope centered on the grid origin.
pub fn gaussian_tone(n: usize, cycles_per_sample: f64, width: f64) -> ComplexBuffer {
    let c = crate::buffer::center_index(n) as f64;
    ComplexBuffer::new(
        (0..n)
            .map(|k| {
                let u = crate::buffer::coordinate(k, n) / width;
                let phase = 2.0 * PI * cycles_per_sample * (k as f64 - c);
                Complex64::from_polar((-PI * u * u).exp(), phase)
            })
            .collect(),
    )
    .expect("finite samples")
}
