//! FFT kernels and the exact integer-order transforms of the centered grid.
//!
//! Power-of-two lengths use an iterative radix-2 transform; every other
//! length goes through Bluestein's chirp-z reformulation on top of it.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods exist once std is linked
use num_traits::Float;

use crate::buffer::center_index;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `exp(-2 pi i k m / n)`
    Forward,
    /// `exp(+2 pi i k m / n)`
    Inverse,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        }
    }
}

/// Unnormalized in-place DFT of any length.
pub fn fft_in_place(buf: &mut [Complex64], direction: Direction) {
    let n = buf.len();
    if n <= 1 {
        return;
    }
    if n.is_power_of_two() {
        radix2(buf, direction);
    } else {
        bluestein(buf, direction);
    }
}

fn twiddles(n: usize, direction: Direction) -> Vec<Complex64> {
    let sign = direction.sign();
    (0..n / 2)
        .map(|k| {
            let theta = sign * 2.0 * PI * k as f64 / n as f64;
            Complex64::new(theta.cos(), theta.sin())
        })
        .collect()
}

fn radix2(buf: &mut [Complex64], direction: Direction) {
    let n = buf.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }
    let table = twiddles(n, direction);
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = table[k * stride];
                let a = buf[start + k];
                let b = buf[start + k + half] * w;
                buf[start + k] = a + b;
                buf[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

fn bluestein(buf: &mut [Complex64], direction: Direction) {
    let n = buf.len();
    let m = (2 * n - 1).next_power_of_two();
    let sign = direction.sign();
    // k^2 mod 2n keeps the chirp argument small and exact
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let k2 = ((k as u128 * k as u128) % (2 * n as u128)) as f64;
            let theta = sign * PI * k2 / n as f64;
            Complex64::new(theta.cos(), theta.sin())
        })
        .collect();

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = buf[k] * chirp[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        b[k] = chirp[k].conj();
        b[m - k] = chirp[k].conj();
    }
    radix2(&mut a, Direction::Forward);
    radix2(&mut b, Direction::Forward);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    radix2(&mut a, Direction::Inverse);
    let scale = 1.0 / m as f64;
    for k in 0..n {
        buf[k] = a[k] * chirp[k] * scale;
    }
}

/// Centered unitary DFT:
/// `y[m] = n^-1/2 sum_k x[k] exp(-2 pi i (k - c)(m - c) / n)`, `c = floor(n/2)`.
pub fn centered_dft(x: &[Complex64]) -> Vec<Complex64> {
    centered(x, Direction::Forward)
}

/// Inverse of [`centered_dft`].
pub fn centered_idft(x: &[Complex64]) -> Vec<Complex64> {
    centered(x, Direction::Inverse)
}

fn centered(x: &[Complex64], direction: Direction) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    let c = center_index(n);
    // position j holds sample k with j = (k - c) mod n
    let mut work: Vec<Complex64> = (0..n).map(|j| x[(j + c) % n]).collect();
    fft_in_place(&mut work, direction);
    let scale = 1.0 / (n as f64).sqrt();
    (0..n).map(|m| work[(m + n - c) % n] * scale).collect()
}

/// Centered reversal `k -> (2c - k) mod n`, i.e. `u -> -u`.
pub fn centered_reversal(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let c2 = 2 * center_index(n);
    (0..n).map(|k| x[(c2 + n - k) % n]).collect()
}

/// Full linear convolution (`a.len() + b.len() - 1` samples) via zero-padded FFTs.
pub fn linear_convolution(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let m = out_len.next_power_of_two();
    let mut fa = vec![Complex64::new(0.0, 0.0); m];
    fa[..a.len()].copy_from_slice(a);
    let mut fb = vec![Complex64::new(0.0, 0.0); m];
    fb[..b.len()].copy_from_slice(b);
    radix2(&mut fa, Direction::Forward);
    radix2(&mut fb, Direction::Forward);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    radix2(&mut fa, Direction::Inverse);
    let scale = 1.0 / m as f64;
    fa.truncate(out_len);
    for z in fa.iter_mut() {
        *z *= scale;
    }
    fa
}

/// Band-limited ×2 interpolation: the output has `2n` samples and
/// `out[2k] == x[k]` up to rounding. The Nyquist bin of an even-length input
/// is split evenly between the positive and negative halves.
pub fn upsample2(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let mut spectrum = x.to_vec();
    fft_in_place(&mut spectrum, Direction::Forward);
    let mut padded = vec![Complex64::new(0.0, 0.0); 2 * n];
    let positive = n.div_ceil(2);
    padded[..positive].copy_from_slice(&spectrum[..positive]);
    let negative = n / 2;
    for j in 1..=negative {
        padded[2 * n - j] = spectrum[n - j];
    }
    if n % 2 == 0 && n > 0 {
        let nyq = spectrum[n / 2] * 0.5;
        padded[n / 2] = nyq;
        padded[2 * n - n / 2] = nyq;
    }
    fft_in_place(&mut padded, Direction::Inverse);
    let scale = 1.0 / n as f64;
    for z in padded.iter_mut() {
        *z *= scale;
    }
    padded
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buffer::relative_l2_error;

    fn naive_dft(x: &[Complex64], sign: f64) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|m| {
                x.iter()
                    .enumerate()
                    .map(|(k, &v)| {
                        let e = ((k * m) % n) as f64;
                        let th = sign * 2.0 * PI * e / n as f64;
                        v * Complex64::new(th.cos(), th.sin())
                    })
                    .sum()
            })
            .collect()
    }

    fn sample(n: usize) -> Vec<Complex64> {
        (0..n).map(|k| Complex64::new((k as f64 * 0.37).sin(), (k as f64 * 1.3).cos() * 0.5)).collect()
    }

    #[test]
    fn fft_matches_naive_for_assorted_lengths() {
        for &n in &[1usize, 2, 3, 5, 8, 12, 17, 64, 100, 243] {
            let x = sample(n);
            for (dir, sign) in [(Direction::Forward, -1.0), (Direction::Inverse, 1.0)] {
                let mut y = x.clone();
                fft_in_place(&mut y, dir);
                let expected = naive_dft(&x, sign);
                assert!(relative_l2_error(&y, &expected) < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn centered_pair_round_trips() {
        for &n in &[7usize, 64, 90] {
            let x = sample(n);
            let back = centered_idft(&centered_dft(&x));
            assert!(relative_l2_error(&back, &x) < 1e-13);
        }
    }

    #[test]
    fn reversal_maps_coordinates() {
        let x: Vec<Complex64> = (0..4).map(|k| Complex64::new(k as f64, 0.0)).collect();
        // c = 2: 0 -> 0 (wrap), 1 -> 3, 2 -> 2, 3 -> 1
        let r: Vec<f64> = centered_reversal(&x).iter().map(|z| z.re).collect();
        assert_eq!(r, [0.0, 3.0, 2.0, 1.0]);
        let y: Vec<Complex64> = (0..5).map(|k| Complex64::new(k as f64, 0.0)).collect();
        let r: Vec<f64> = centered_reversal(&y).iter().map(|z| z.re).collect();
        assert_eq!(r, [4.0, 3.0, 2.0, 1.0, 0.0]);
    }

    #[test]
    fn convolution_matches_direct_sum() {
        let a = sample(13);
        let b = sample(6);
        let c = linear_convolution(&a, &b);
        assert_eq!(c.len(), 18);
        for (i, &v) in c.iter().enumerate() {
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &aj) in a.iter().enumerate() {
                if i >= j && i - j < b.len() {
                    s += aj * b[i - j];
                }
            }
            assert!((v - s).norm() < 1e-12);
        }
    }

    #[test]
    fn upsample_keeps_even_samples() {
        for &n in &[8usize, 9, 30] {
            let x: Vec<Complex64> =
                (0..n).map(|k| Complex64::new((2.0 * PI * k as f64 / n as f64).cos(), 0.0)).collect();
            let up = upsample2(&x);
            assert_eq!(up.len(), 2 * n);
            for k in 0..n {
                assert!((up[2 * k] - x[k]).norm() < 1e-12);
            }
            // odd samples of a low tone interpolate the cosine
            let mid = (PI * 3.0 / n as f64).cos();
            assert!((up[3].re - mid).abs() < 1e-12, "n={n}");
        }
    }
}
