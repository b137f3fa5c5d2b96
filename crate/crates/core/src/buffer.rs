use alloc::vec::Vec;
use core::ops::Deref;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods exist once std is linked
use num_traits::Float;

use crate::error::{FrftError, Result};

/// Length-`N` complex signal on the library's centered grid.
///
/// Guaranteed non-empty with finite samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexBuffer {
    samples: Vec<Complex64>,
}

impl ComplexBuffer {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(FrftError::InvalidArgument("buffer must hold at least one sample"));
        }
        if !samples.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(FrftError::InvalidArgument("buffer samples must be finite"));
        }
        Ok(Self { samples })
    }

    pub fn from_real(samples: &[f64]) -> Result<Self> {
        Self::new(samples.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Samples `f(u_k)` of a function of the centered coordinate.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new((0..n).map(|k| f(coordinate(k, n))).collect())
    }

    /// Wraps transform output. Finite inputs to the transforms in this crate
    /// produce finite outputs, so only length is checked in debug builds.
    pub(crate) fn from_vec_unchecked(samples: Vec<Complex64>) -> Self {
        debug_assert!(!samples.is_empty());
        Self { samples }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.samples
    }

    /// Euclidean norm of the sample vector.
    pub fn norm(&self) -> f64 {
        l2_norm(&self.samples)
    }

    pub fn real_part(&self) -> Vec<f64> {
        self.samples.iter().map(|z| z.re).collect()
    }

    pub fn imag_part(&self) -> Vec<f64> {
        self.samples.iter().map(|z| z.im).collect()
    }

    /// Dimensionless coordinate of sample `k`.
    pub fn coordinate(&self, k: usize) -> f64 {
        coordinate(k, self.len())
    }
}

impl Deref for ComplexBuffer {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.samples
    }
}

/// Index of the grid origin: `floor(n / 2)`.
pub fn center_index(n: usize) -> usize {
    n / 2
}

/// `u_k = (k - floor(n/2)) / sqrt(n)`.
pub fn coordinate(k: usize, n: usize) -> f64 {
    (k as f64 - center_index(n) as f64) / (n as f64).sqrt()
}

pub fn l2_norm(samples: &[Complex64]) -> f64 {
    samples.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `||a - b|| / ||b||`; `b` is the reference.
pub fn relative_l2_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "relative_l2_error on mismatched lengths");
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let reference = l2_norm(b);
    if reference == 0.0 {
        diff
    } else {
        diff / reference
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(ComplexBuffer::new(Vec::new()).is_err());
        assert!(ComplexBuffer::from_real(&[1.0, f64::NAN]).is_err());
        assert!(ComplexBuffer::from_real(&[1.0, f64::INFINITY]).is_err());
        assert!(ComplexBuffer::from_real(&[0.0]).is_ok());
    }

    #[test]
    fn centered_coordinates() {
        assert_eq!(coordinate(2, 4), 0.0);
        assert_eq!(coordinate(0, 4), -1.0);
        assert_eq!(coordinate(3, 4), 0.5);
        // odd lengths put the origin on the middle sample
        assert_eq!(coordinate(2, 5), 0.0);
        assert_eq!(center_index(1), 0);
    }
}
