//! Frame-wise transform processing with overlap-add reconstruction.
//!
//! Each frame is an independent centered grid; the transform order may step
//! from frame to frame but is constant within one. Reconstruction divides the
//! overlap-added frames by the overlap-added window product, so any
//! analysis/synthesis pair reproduces the input exactly at order 0 wherever
//! that product sum is at least [`ENVELOPE_FLOOR`].

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods exist once std is linked
use num_traits::Float;

use crate::buffer::ComplexBuffer;
use crate::error::{FrftError, Result};
use crate::order::reduce_order;
use crate::transform::{frft, Implementation};

/// Below this overlap-added window product the output is divided by the floor
/// instead, which keeps signal edges bounded under tapered analysis windows.
pub const ENVELOPE_FLOOR: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowFn {
    #[default]
    Rectangular,
    /// Periodic Hann, `0.5 - 0.5 cos(2 pi n / L)`.
    Hann,
}

impl WindowFn {
    pub fn coefficients(self, len: usize) -> Vec<f64> {
        match self {
            WindowFn::Rectangular => vec![1.0; len],
            WindowFn::Hann => (0..len)
                .map(|n| 0.5 - 0.5 * (2.0 * PI * n as f64 / len as f64).cos())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowSpec {
    length: usize,
    hop: usize,
    pub analysis: WindowFn,
    pub synthesis: WindowFn,
}

impl WindowSpec {
    pub fn new(length: usize, hop: usize, analysis: WindowFn, synthesis: WindowFn) -> Result<Self> {
        if length == 0 || hop == 0 {
            return Err(FrftError::InvalidArgument("window length and hop must be positive"));
        }
        if hop > length {
            return Err(FrftError::InvalidArgument("hop must not exceed the window length"));
        }
        Ok(Self { length, hop, analysis, synthesis })
    }

    /// Rectangular analysis, Hann crossfade, hop of half the window.
    pub fn with_half_hop(length: usize) -> Result<Self> {
        Self::new(length, (length / 2).max(1), WindowFn::Rectangular, WindowFn::Hann)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn hop(&self) -> usize {
        self.hop
    }

    /// `ceil((len - length) / hop) + 1` for `len >= length`.
    pub fn frame_count(&self, signal_len: usize) -> usize {
        signal_len.saturating_sub(self.length).div_ceil(self.hop) + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderSchedule {
    Constant(f64),
    /// `start + (end - start) m / (M - 1)` for frame `m` of `M`.
    LinearRamp { start: f64, end: f64 },
}

impl OrderSchedule {
    pub fn order_for_frame(&self, frame: usize, frame_count: usize) -> f64 {
        match *self {
            OrderSchedule::Constant(a) => a,
            OrderSchedule::LinearRamp { start, end } => {
                if frame_count <= 1 {
                    start
                } else if frame + 1 == frame_count {
                    end
                } else {
                    start + (end - start) * frame as f64 / (frame_count - 1) as f64
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Projection {
    #[default]
    Real,
    Imaginary,
    ComplexPassthrough,
}

impl Projection {
    pub fn apply(self, x: ComplexBuffer) -> ComplexBuffer {
        match self {
            Projection::ComplexPassthrough => x,
            Projection::Real => ComplexBuffer::from_vec_unchecked(
                x.iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
            ),
            Projection::Imaginary => ComplexBuffer::from_vec_unchecked(
                x.iter().map(|z| Complex64::new(z.im, 0.0)).collect(),
            ),
        }
    }
}

/// Cuts `x` into analysis-windowed frames starting at multiples of the hop;
/// the last frame is zero-padded.
pub fn frame_signal(x: &[f64], w: &WindowSpec) -> Result<Vec<ComplexBuffer>> {
    if x.is_empty() {
        return Err(FrftError::InvalidArgument("cannot frame an empty signal"));
    }
    if x.len() < w.length {
        return Err(FrftError::TooShort { len: x.len(), min: w.length });
    }
    if !x.iter().all(|v| v.is_finite()) {
        return Err(FrftError::InvalidArgument("signal samples must be finite"));
    }
    let window = w.analysis.coefficients(w.length);
    let count = w.frame_count(x.len());
    Ok((0..count)
        .map(|m| {
            let start = m * w.hop;
            let frame = (0..w.length)
                .map(|i| {
                    let v = x.get(start + i).copied().unwrap_or(0.0);
                    Complex64::new(v * window[i], 0.0)
                })
                .collect();
            ComplexBuffer::from_vec_unchecked(frame)
        })
        .collect())
}

/// Frame `m` becomes `projection(frft(frame_m, a_m))`.
pub fn process_frames(
    frames: &[ComplexBuffer],
    schedule: OrderSchedule,
    projection: Projection,
    implementation: Implementation,
) -> Result<Vec<ComplexBuffer>> {
    if frames.is_empty() {
        return Err(FrftError::InvalidArgument("no frames to process"));
    }
    let count = frames.len();
    frames
        .iter()
        .enumerate()
        .map(|(m, frame)| {
            let order = reduce_order(schedule.order_for_frame(m, count))?;
            Ok(projection.apply(frft(frame, order, implementation)?))
        })
        .collect()
}

/// Weighted overlap-add of the real parts of `frames`, truncated or
/// zero-extended to exactly `out_len` samples.
pub fn overlap_add(frames: &[ComplexBuffer], w: &WindowSpec, out_len: usize) -> Result<Vec<f64>> {
    Ok(overlap_add_complex(frames, w, out_len)?.into_iter().map(|z| z.re).collect())
}

/// Weighted overlap-add keeping both parts of each sample. Each output sample
/// is divided by the summed analysis-synthesis window product at that
/// position, floored at [`ENVELOPE_FLOOR`].
pub fn overlap_add_complex(frames: &[ComplexBuffer], w: &WindowSpec, out_len: usize) -> Result<Vec<Complex64>> {
    if let Some(bad) = frames.iter().find(|f| f.len() != w.length) {
        return Err(FrftError::LengthMismatch { expected: w.length, found: bad.len() });
    }
    let analysis = w.analysis.coefficients(w.length);
    let synthesis = w.synthesis.coefficients(w.length);
    let product: Vec<f64> = analysis.iter().zip(&synthesis).map(|(a, s)| a * s).collect();

    let mut acc = vec![Complex64::new(0.0, 0.0); out_len];
    let mut envelope = vec![0.0; out_len];
    for (m, frame) in frames.iter().enumerate() {
        let start = m * w.hop;
        if start >= out_len {
            break;
        }
        let end = (start + w.length).min(out_len);
        for (i, n) in (start..end).enumerate() {
            acc[n] += frame[i] * synthesis[i];
            envelope[n] += product[i];
        }
    }
    for (y, e) in acc.iter_mut().zip(&envelope) {
        *y /= e.max(ENVELOPE_FLOOR);
    }
    Ok(acc)
}

/// Frame, transform at the scheduled orders, project, and overlap-add back
/// to `x.len()` samples.
pub fn process_signal(
    x: &[f64],
    w: &WindowSpec,
    schedule: OrderSchedule,
    projection: Projection,
    implementation: Implementation,
) -> Result<Vec<f64>> {
    let frames = frame_signal(x, w)?;
    let processed = process_frames(&frames, schedule, projection, implementation)?;
    overlap_add(&processed, w, x.len())
}

/// [`process_signal`] without the final real part, for complex renders.
pub fn process_signal_complex(
    x: &[f64],
    w: &WindowSpec,
    schedule: OrderSchedule,
    projection: Projection,
    implementation: Implementation,
) -> Result<Vec<Complex64>> {
    let frames = frame_signal(x, w)?;
    let processed = process_frames(&frames, schedule, projection, implementation)?;
    overlap_add_complex(&processed, w, x.len())
}
