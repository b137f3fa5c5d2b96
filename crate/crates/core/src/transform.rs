//! The discrete fractional Fourier transform.
//!
//! Both implementations first move the order into `0.5 <= |a| <= 1.5` by
//! composing with an exact centered DFT or IDFT, where the kernel chirps are
//! well resolved by the sampling grid. Positive orders apply the integer
//! step first and negative orders apply it last, so `F_{-a}` is the adjoint
//! of `F_a` step for step.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods exist once std is linked
use num_traits::Float;

use crate::buffer::{center_index, ComplexBuffer};
use crate::dft::{centered_dft, centered_idft, centered_reversal, linear_convolution, upsample2};
use crate::error::{FrftError, Result};
use crate::lct::{quadrature, SymmetricLctMatrix};
use crate::order::{FrftOrder, IntegerOrder, ORDER_EPSILON};

/// Minimum length accepted by [`frft_fast`].
pub const FAST_MIN_LEN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Implementation {
    /// O(N log N) chirp decomposition on a ×2 oversampled grid.
    #[default]
    Fast,
    /// O(N^2) quadrature of the kernel; the reference oracle.
    Direct,
}

pub(crate) fn apply_integer(x: &[Complex64], which: IntegerOrder) -> Vec<Complex64> {
    match which {
        IntegerOrder::Identity => x.to_vec(),
        IntegerOrder::Dft => centered_dft(x),
        IntegerOrder::InverseDft => centered_idft(x),
        IntegerOrder::Reversal => centered_reversal(x),
    }
}

#[derive(Debug, Clone, Copy)]
enum Peel {
    None,
    Before(IntegerOrder),
    After(IntegerOrder),
}

/// Splits a non-integer reduced order into an exact integer step and a
/// remainder with `0.5 <= |a'| <= 1.5`.
fn peel(reduced: f64) -> (Peel, f64) {
    if (0.5..=1.5).contains(&reduced.abs()) {
        (Peel::None, reduced)
    } else if reduced > 1.5 {
        (Peel::Before(IntegerOrder::Dft), reduced - 1.0)
    } else if reduced > 0.0 {
        (Peel::Before(IntegerOrder::InverseDft), reduced + 1.0)
    } else if reduced > -0.5 {
        (Peel::After(IntegerOrder::Dft), reduced - 1.0)
    } else {
        (Peel::After(IntegerOrder::InverseDft), reduced + 1.0)
    }
}

fn with_peel(
    x: &[Complex64],
    reduced: f64,
    fractional: impl Fn(&[Complex64], f64) -> Vec<Complex64>,
) -> Vec<Complex64> {
    let (step, rest) = peel(reduced);
    let phi = rest * core::f64::consts::FRAC_PI_2;
    match step {
        Peel::None => fractional(x, phi),
        Peel::Before(i) => fractional(&apply_integer(x, i), phi),
        Peel::After(i) => apply_integer(&fractional(x, phi), i),
    }
}

/// Reference transform by direct quadrature of the kernel.
///
/// Fails with [`FrftError::SingularOrder`] for orders within `1e-6` of an
/// even integer, where the kernel degenerates to a delta; [`frft`] handles
/// those exactly.
pub fn frft_direct(x: &ComplexBuffer, order: FrftOrder) -> Result<ComplexBuffer> {
    let reduced = order.reduced();
    let nearest = reduced.round();
    if (reduced - nearest).abs() <= ORDER_EPSILON && (nearest as i64) % 2 == 0 {
        return Err(FrftError::SingularOrder { order: order.raw() });
    }
    let out = with_peel(x, reduced, |v, phi| {
        let m = SymmetricLctMatrix::rotation(phi).expect("|sin phi| >= sin(pi/4)");
        quadrature(v, m)
    });
    Ok(ComplexBuffer::from_vec_unchecked(out))
}

/// Fast transform: ×2 band-limited oversampling, chirp multiplication,
/// chirp convolution, chirp multiplication, decimation.
pub fn frft_fast(x: &ComplexBuffer, order: FrftOrder) -> Result<ComplexBuffer> {
    if x.len() < FAST_MIN_LEN {
        return Err(FrftError::TooShort { len: x.len(), min: FAST_MIN_LEN });
    }
    if let Some(which) = order.as_integer() {
        return Ok(ComplexBuffer::from_vec_unchecked(apply_integer(x, which)));
    }
    Ok(ComplexBuffer::from_vec_unchecked(with_peel(x, order.reduced(), chirp_decomposition)))
}

/// Fractional transform at angle `phi` with `pi/4 <= |phi| <= 3pi/4`.
fn chirp_decomposition(x: &[Complex64], phi: f64) -> Vec<Complex64> {
    let n = x.len();
    let nf = n as f64;
    let c2 = 2 * center_index(n) as i64;
    let tan_half = (phi / 2.0).tan();
    let csc = 1.0 / phi.sin();
    let constant = SymmetricLctMatrix::rotation(phi)
        .expect("|sin phi| >= sin(pi/4)")
        .kernel_constant();

    // fine sample j sits at u = (j - 2c) / (2 sqrt n), so u^2 = (j - 2c)^2 / 4n
    let fine = upsample2(x);
    let pre: Vec<Complex64> = fine
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let d = (j as i64 - c2) as f64;
            v * Complex64::from_polar(1.0, -PI * tan_half * d * d / (4.0 * nf))
        })
        .collect();

    // kernel over fine-index differences -(2n-1) ..= 2n-2
    let span = 2 * n as i64 - 1;
    let kernel: Vec<Complex64> = (-span..=span - 1)
        .map(|d| {
            let d = d as f64;
            Complex64::from_polar(1.0, PI * csc * d * d / (4.0 * nf))
        })
        .collect();
    let conv = linear_convolution(&pre, &kernel);

    // coarse output k is fine index 2k; conv index t = 2k + (2n - 1)
    let scale = constant / (2.0 * nf.sqrt());
    (0..n)
        .map(|k| {
            let d = (2 * k as i64 - c2) as f64;
            let post = Complex64::from_polar(1.0, -PI * tan_half * d * d / (4.0 * nf));
            conv[2 * k + span as usize] * post * scale
        })
        .collect()
}

/// Transform at any order. Orders within `1e-6` of an integer run the exact
/// identity, centered DFT, centered IDFT, or centered reversal whatever the
/// implementation choice.
pub fn frft(x: &ComplexBuffer, order: FrftOrder, implementation: Implementation) -> Result<ComplexBuffer> {
    if let Some(which) = order.as_integer() {
        return Ok(ComplexBuffer::from_vec_unchecked(apply_integer(x, which)));
    }
    match implementation {
        Implementation::Fast => frft_fast(x, order),
        Implementation::Direct => frft_direct(x, order),
    }
}

/// `frft(y, -order)`.
pub fn frft_inverse(y: &ComplexBuffer, order: FrftOrder, implementation: Implementation) -> Result<ComplexBuffer> {
    frft(y, order.negated(), implementation)
}
