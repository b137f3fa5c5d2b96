//! Alpha-filtering: multiply a fractional-domain representation by the
//! spectrum of a Gaussian-windowed cosine impulse response, then transform
//! back.
//!
//! The kernel is the complex centered DFT of the impulse response, aligned
//! bin for bin with the fractional-domain samples. At order 1 the fractional
//! domain is the centered frequency domain, and the method reduces to
//! ordinary spectral multiplication.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods exist once std is linked
use num_traits::Float;

use crate::buffer::{center_index, ComplexBuffer};
use crate::dft::centered_dft;
use crate::error::{FrftError, Result};
use crate::framing::{frame_signal, overlap_add, Projection, WindowSpec};
use crate::order::FrftOrder;
use crate::transform::{frft, frft_inverse, Implementation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CenterSchedule {
    Constant(f64),
    /// `start * (end / start)^(m / (M - 1))` for frame `m` of `M`.
    ExponentialSweep { start: f64, end: f64 },
}

impl CenterSchedule {
    pub fn center_for_frame(&self, frame: usize, frame_count: usize) -> f64 {
        match *self {
            CenterSchedule::Constant(c) => c,
            CenterSchedule::ExponentialSweep { start, end } => {
                if frame_count <= 1 {
                    start
                } else if frame + 1 == frame_count {
                    end
                } else {
                    start * (end / start).powf(frame as f64 / (frame_count - 1) as f64)
                }
            }
        }
    }

    fn is_valid(&self) -> bool {
        match *self {
            CenterSchedule::Constant(c) => c.is_finite() && c > 0.0,
            CenterSchedule::ExponentialSweep { start, end } => {
                start.is_finite() && end.is_finite() && start > 0.0 && end > 0.0
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaFilterSpec {
    /// Gaussian width parameter `b`, in 1/s.
    pub bandwidth: f64,
    pub center: CenterSchedule,
    pub order: FrftOrder,
    pub window: WindowSpec,
    pub sample_rate: f64,
}

impl AlphaFilterSpec {
    fn validate(&self) -> Result<()> {
        if !(self.bandwidth.is_finite() && self.bandwidth > 0.0) {
            return Err(FrftError::InvalidArgument("filter bandwidth must be positive"));
        }
        if !self.center.is_valid() {
            return Err(FrftError::InvalidArgument("filter center frequencies must be positive"));
        }
        if !(self.sample_rate.is_finite() && self.sample_rate > 0.0) {
            return Err(FrftError::InvalidArgument("sample rate must be positive"));
        }
        Ok(())
    }
}

/// `exp(-0.5 (t b)^2) cos(2 pi c t)` on `t_k = (k - floor(n/2)) / fs`.
pub fn gaussian_cosine_ir(bandwidth: f64, center: f64, n: usize, sample_rate: f64) -> Vec<f64> {
    let c = center_index(n) as f64;
    (0..n)
        .map(|k| {
            let t = (k as f64 - c) / sample_rate;
            let envelope = (-0.5 * (t * bandwidth) * (t * bandwidth)).exp();
            envelope * (2.0 * PI * center * t).cos()
        })
        .collect()
}

/// Centered unitary DFT of an impulse response spanning exactly one frame.
pub fn build_alpha_kernel(ir: &[f64], frame_len: usize) -> Result<ComplexBuffer> {
    if ir.len() != frame_len {
        return Err(FrftError::LengthMismatch { expected: frame_len, found: ir.len() });
    }
    let ir = ComplexBuffer::from_real(ir)?;
    Ok(ComplexBuffer::from_vec_unchecked(centered_dft(&ir)))
}

/// Per frame: transform to `order`, multiply by `kernel(m, M)`, transform
/// back, keep the real part; then overlap-add.
pub fn alpha_filter_with<K>(
    x: &[f64],
    order: FrftOrder,
    window: &WindowSpec,
    implementation: Implementation,
    mut kernel: K,
) -> Result<Vec<f64>>
where
    K: FnMut(usize, usize) -> Result<ComplexBuffer>,
{
    let frames = frame_signal(x, window)?;
    let count = frames.len();
    let filtered = frames
        .iter()
        .enumerate()
        .map(|(m, frame)| {
            let k = kernel(m, count)?;
            if k.len() != frame.len() {
                return Err(FrftError::LengthMismatch { expected: frame.len(), found: k.len() });
            }
            let spectrum = frft(frame, order, implementation)?;
            let product: Vec<Complex64> = spectrum.iter().zip(k.iter()).map(|(a, b)| a * b).collect();
            let back = frft_inverse(&ComplexBuffer::new(product)?, order, implementation)?;
            Ok(Projection::Real.apply(back))
        })
        .collect::<Result<Vec<_>>>()?;
    overlap_add(&filtered, window, x.len())
}

/// Alpha-filtering with the Gaussian-cosine kernel, the center frequency
/// following `spec.center` from frame to frame.
pub fn alpha_filter(x: &[f64], spec: &AlphaFilterSpec, implementation: Implementation) -> Result<Vec<f64>> {
    spec.validate()?;
    let len = spec.window.length();
    alpha_filter_with(x, spec.order, &spec.window, implementation, |m, count| {
        let center = spec.center.center_for_frame(m, count);
        build_alpha_kernel(&gaussian_cosine_ir(spec.bandwidth, center, len, spec.sample_rate), len)
    })
}
