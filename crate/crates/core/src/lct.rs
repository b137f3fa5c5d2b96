//! Direct quadrature of the symmetric linear canonical transform.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods exist once std is linked
use num_traits::Float;

use crate::buffer::{center_index, ComplexBuffer};
use crate::dft::upsample2;
use crate::error::{FrftError, Result};

/// The matrix `[[diag, -offdiag], [-offdiag, diag]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricLctMatrix {
    pub diag: f64,
    pub offdiag: f64,
}

impl SymmetricLctMatrix {
    pub fn new(diag: f64, offdiag: f64) -> Result<Self> {
        if !diag.is_finite() || !offdiag.is_finite() {
            return Err(FrftError::InvalidArgument("LCT matrix entries must be finite"));
        }
        if offdiag == 0.0 {
            return Err(FrftError::SingularMatrix);
        }
        Ok(Self { diag, offdiag })
    }

    /// The matrix of the fractional Fourier transform at rotation angle `phi`.
    pub fn rotation(phi: f64) -> Result<Self> {
        let s = phi.sin();
        Self::new(phi.cos() / s, 1.0 / s)
    }

    /// Kernel constant with `|C| = sqrt(|offdiag|)`. Its phase continues the
    /// fractional Fourier constant `exp(-i(pi sgn(phi)/4 - phi/2)) / |sin phi|^1/2`
    /// through the angle with `csc = offdiag`, `cot = diag`.
    pub fn kernel_constant(&self) -> Complex64 {
        let b = self.offdiag;
        let theta = (1.0 / b).atan2(self.diag / b);
        let phase = theta / 2.0 - FRAC_PI_4 * b.signum();
        Complex64::from_polar(b.abs().sqrt(), phase)
    }
}

/// Quadrature of the kernel `C exp(i pi (d f^2 - 2 b f t + d t^2))` against
/// the band-limited interpolant of `x`, evaluated on the input grid:
///
/// `y[m] = C / (2 sqrt n) sum_j exp(i pi (d u_m^2 - 2 b u_m v_j + d v_j^2)) x2[j]`
///
/// where `x2` is `x` interpolated ×2 and `v_j` its half-step grid. The
/// half-step sampling pushes the periodic images of the sum (spaced
/// `2 sqrt(n) / |b|` apart) off the output grid.
pub fn lct_direct(x: &ComplexBuffer, m: SymmetricLctMatrix) -> Result<ComplexBuffer> {
    if m.offdiag == 0.0 {
        return Err(FrftError::SingularMatrix);
    }
    Ok(ComplexBuffer::from_vec_unchecked(quadrature(x, m)))
}

pub(crate) fn quadrature(x: &[Complex64], m: SymmetricLctMatrix) -> Vec<Complex64> {
    let n = x.len();
    let c = center_index(n) as i64;
    let nf = n as f64;
    let constant = m.kernel_constant() / (2.0 * nf.sqrt());

    // fine sample j sits at v_j = (j - 2c) / (2 sqrt n)
    let fine = upsample2(x);
    let weighted: Vec<Complex64> = fine
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let q = (j as i64 - 2 * c) as f64;
            v * Complex64::from_polar(1.0, PI * m.diag * q * q / (4.0 * nf))
        })
        .collect();

    (0..n as i64)
        .map(|out| {
            let p = (out - c) as f64;
            let acc: Complex64 = weighted
                .iter()
                .enumerate()
                .map(|(j, &v)| {
                    let q = (j as i64 - 2 * c) as f64;
                    v * Complex64::from_polar(1.0, -PI * m.offdiag * p * q / nf)
                })
                .sum();
            constant * Complex64::from_polar(1.0, PI * m.diag * p * p / nf) * acc
        })
        .collect()
}
