//! Alpha-synthesis: pure tones pushed through the windowed transform.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods exist once std is linked
use num_traits::Float;

use crate::error::{FrftError, Result};
use crate::framing::{process_signal, process_signal_complex, OrderSchedule, Projection, WindowSpec};
use crate::transform::Implementation;

pub const DEFAULT_SAMPLE_RATE: f64 = 44_100.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineSpec {
    pub frequency: f64,
    pub duration: f64,
    pub amplitude: f64,
    pub sample_rate: f64,
    pub phase: f64,
}

impl SineSpec {
    /// Unit amplitude, zero phase, 44.1 kHz.
    pub fn new(frequency: f64, duration: f64) -> Self {
        Self { frequency, duration, amplitude: 1.0, sample_rate: DEFAULT_SAMPLE_RATE, phase: 0.0 }
    }

    pub fn len(&self) -> usize {
        (self.duration * self.sample_rate).round() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.frequency, self.duration, self.amplitude, self.sample_rate, self.phase]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.sample_rate <= 0.0 {
            return Err(FrftError::InvalidArgument("sine parameters must be finite with a positive sample rate"));
        }
        if self.frequency <= 0.0 || self.frequency >= self.sample_rate / 2.0 {
            return Err(FrftError::InvalidArgument("sine frequency must lie strictly between 0 and Nyquist"));
        }
        if self.duration <= 0.0 || self.is_empty() {
            return Err(FrftError::InvalidArgument("sine duration must cover at least one sample"));
        }
        Ok(())
    }
}

/// `amplitude * cos(2 pi f n / fs + phase)` for `round(duration * fs)` samples.
pub fn sine(spec: &SineSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    // reduce f n modulo fs first so long tones keep full phase precision
    Ok((0..spec.len())
        .map(|n| {
            let cycles = (spec.frequency * n as f64) % spec.sample_rate / spec.sample_rate;
            spec.amplitude * (2.0 * PI * cycles + spec.phase).cos()
        })
        .collect())
}

/// Sine generation followed by the framed transform pipeline. The result has
/// the same number of samples as the tone and is not normalized.
pub fn alpha_synthesize(
    spec: &SineSpec,
    window: &WindowSpec,
    schedule: OrderSchedule,
    projection: Projection,
    implementation: Implementation,
) -> Result<Vec<f64>> {
    let tone = sine(spec)?;
    process_signal(&tone, window, schedule, projection, implementation)
}

/// [`alpha_synthesize`] keeping the complex frame outputs, as used for the
/// two-sided spectrogram renders.
pub fn alpha_synthesize_complex(
    spec: &SineSpec,
    window: &WindowSpec,
    schedule: OrderSchedule,
    implementation: Implementation,
) -> Result<Vec<Complex64>> {
    let tone = sine(spec)?;
    process_signal_complex(&tone, window, schedule, Projection::ComplexPassthrough, implementation)
}
