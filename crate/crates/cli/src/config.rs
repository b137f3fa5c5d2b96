//! JSON render configuration and the render pipeline it drives.

use std::path::{Path, PathBuf};

use frft_core::analysis::{stft_spectrogram, stft_spectrogram_complex, SpectrogramGrid};
use frft_core::filtering::{alpha_filter, AlphaFilterSpec, CenterSchedule};
use frft_core::framing::{process_signal, process_signal_complex, OrderSchedule, Projection, WindowFn, WindowSpec};
use frft_core::synthesis::{sine, SineSpec, DEFAULT_SAMPLE_RATE};
use frft_core::{frft, reduce_order, Complex64, ComplexBuffer, Implementation};
use serde::{Deserialize, Serialize};

use crate::emit::{write_spectrogram_csv, write_spectrogram_png};
use crate::error::{CliError, Result};
use crate::wav::{load_wav, save_wav, SampleFormat};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Sine(SineConfig),
    /// Path of a PCM16 or float32 WAV file.
    Wav(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SineConfig {
    pub frequency: f64,
    /// Seconds; the tone has `round(duration * sample_rate)` samples.
    pub duration: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default)]
    pub phase: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// One transform over the whole signal at a constant order.
    FrftRaw,
    #[default]
    AlphaSynthesis,
    AlphaFilter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum WindowName {
    #[default]
    Rectangular,
    Hann,
}

impl From<WindowName> for WindowFn {
    fn from(w: WindowName) -> Self {
        match w {
            WindowName::Rectangular => WindowFn::Rectangular,
            WindowName::Hann => WindowFn::Hann,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub length: usize,
    /// Defaults to half the length.
    #[serde(default)]
    pub hop: Option<usize>,
    #[serde(default)]
    pub analysis: WindowName,
    #[serde(default = "hann")]
    pub synthesis: WindowName,
}

impl Default for WindowConfig {
    fn default() -> Self {
        Self { length: 2048, hop: None, analysis: WindowName::Rectangular, synthesis: WindowName::Hann }
    }
}

impl WindowConfig {
    pub fn hop(&self) -> usize {
        self.hop.unwrap_or((self.length / 2).max(1))
    }

    fn spec(&self) -> Result<WindowSpec> {
        Ok(WindowSpec::new(self.length, self.hop(), self.analysis.into(), self.synthesis.into())?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderConfig {
    Constant(f64),
    LinearRamp { start: f64, end: f64 },
}

impl Default for OrderConfig {
    fn default() -> Self {
        OrderConfig::Constant(0.0)
    }
}

impl From<OrderConfig> for OrderSchedule {
    fn from(o: OrderConfig) -> Self {
        match o {
            OrderConfig::Constant(a) => OrderSchedule::Constant(a),
            OrderConfig::LinearRamp { start, end } => OrderSchedule::LinearRamp { start, end },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterConfig {
    Constant(f64),
    ExponentialSweep { start: f64, end: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterConfig {
    #[serde(default = "one")]
    pub bandwidth: f64,
    pub center: CenterConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionName {
    #[default]
    Real,
    Imaginary,
    /// Keep the complex output: the WAV stores the real part and the
    /// spectrogram is two-sided.
    Complex,
}

impl From<ProjectionName> for Projection {
    fn from(p: ProjectionName) -> Self {
        match p {
            ProjectionName::Real => Projection::Real,
            ProjectionName::Imaginary => Projection::Imaginary,
            ProjectionName::Complex => Projection::ComplexPassthrough,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ImplementationName {
    #[default]
    Fast,
    Direct,
}

impl From<ImplementationName> for Implementation {
    fn from(i: ImplementationName) -> Self {
        match i {
            ImplementationName::Fast => Implementation::Fast,
            ImplementationName::Direct => Implementation::Direct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrogramConfig {
    pub window: usize,
    pub hop: usize,
    #[serde(default = "hann")]
    pub window_fn: WindowName,
}

impl Default for SpectrogramConfig {
    fn default() -> Self {
        Self { window: 2048, hop: 512, window_fn: WindowName::Hann }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub wav: Option<PathBuf>,
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub png: Option<PathBuf>,
    #[serde(default)]
    pub format: SampleFormat,
    #[serde(default)]
    pub spectrogram: SpectrogramConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderConfig {
    #[serde(default)]
    pub source: Option<Source>,
    #[serde(default)]
    pub method: Method,
    #[serde(default)]
    pub window: WindowConfig,
    #[serde(default)]
    pub order: OrderConfig,
    #[serde(default)]
    pub filter: Option<FilterConfig>,
    #[serde(default)]
    pub projection: ProjectionName,
    #[serde(default)]
    pub implementation: ImplementationName,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default = "yes")]
    pub normalize: bool,
    /// Rate of synthesized sources; WAV sources keep their own rate.
    #[serde(default = "default_rate")]
    pub sample_rate: u32,
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self {
            source: None,
            method: Method::default(),
            window: WindowConfig::default(),
            order: OrderConfig::default(),
            filter: None,
            projection: ProjectionName::default(),
            implementation: ImplementationName::default(),
            output: OutputConfig::default(),
            normalize: true,
            sample_rate: DEFAULT_SAMPLE_RATE as u32,
        }
    }
}

fn one() -> f64 {
    1.0
}

fn yes() -> bool {
    true
}

fn hann() -> WindowName {
    WindowName::Hann
}

fn default_rate() -> u32 {
    DEFAULT_SAMPLE_RATE as u32
}

impl RenderConfig {
    pub fn from_json(text: &str, origin: &Path) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::format(origin, e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text, path)
    }

    /// Checks everything that does not need the input signal.
    pub fn validate(&self) -> Result<()> {
        let usage = |m: &str| Err(CliError::Usage(m.into()));
        match &self.source {
            None => return usage("no source: give a sine or an input WAV"),
            Some(Source::Wav(_)) if self.method == Method::AlphaSynthesis => {
                return usage("alpha_synthesis renders a sine source; use alpha_filter or frft_raw for WAV input")
            }
            _ => {}
        }
        if self.output.wav.is_none() {
            return usage("no output WAV path");
        }
        if self.sample_rate == 0 {
            return usage("sample rate must be positive");
        }
        if self.window.length == 0 || self.window.hop() == 0 || self.window.hop() > self.window.length {
            return usage("window needs length > 0 and 0 < hop <= length");
        }
        match self.method {
            Method::AlphaFilter => {
                if self.filter.is_none() {
                    return usage("alpha_filter needs a filter section");
                }
                if !matches!(self.order, OrderConfig::Constant(_)) {
                    return usage("alpha_filter uses a single constant order");
                }
                if self.projection != ProjectionName::Real {
                    return usage("alpha_filter output is always the real part");
                }
            }
            Method::FrftRaw => {
                if !matches!(self.order, OrderConfig::Constant(_)) {
                    return usage("frft_raw uses a single constant order");
                }
            }
            Method::AlphaSynthesis => {}
        }
        let s = self.output.spectrogram;
        if (self.output.csv.is_some() || self.output.png.is_some()) && (s.window == 0 || s.hop == 0) {
            return usage("spectrogram window and hop must be positive");
        }
        Ok(())
    }

    fn input(&self) -> Result<(Vec<f64>, u32)> {
        match self.source.as_ref().expect("validated") {
            Source::Sine(s) => {
                let spec = SineSpec {
                    frequency: s.frequency,
                    duration: s.duration,
                    amplitude: s.amplitude,
                    sample_rate: f64::from(self.sample_rate),
                    phase: s.phase,
                };
                Ok((sine(&spec)?, self.sample_rate))
            }
            Source::Wav(path) => {
                let audio = load_wav(path)?;
                Ok((audio.samples, audio.sample_rate))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    /// What goes into the WAV file, before normalization.
    pub samples: Vec<f64>,
    /// The complex signal, kept for complex-projection renders.
    pub complex: Option<Vec<Complex64>>,
    pub sample_rate: u32,
}

impl Rendered {
    pub fn spectrogram(&self, s: SpectrogramConfig) -> Result<SpectrogramGrid> {
        let fs = f64::from(self.sample_rate);
        let grid = match &self.complex {
            Some(z) => stft_spectrogram_complex(z, fs, s.window, s.hop, s.window_fn.into())?,
            None => stft_spectrogram(&self.samples, fs, s.window, s.hop, s.window_fn.into())?,
        };
        Ok(grid)
    }
}

/// Runs the configured method without touching the output paths.
pub fn render(cfg: &RenderConfig) -> Result<Rendered> {
    cfg.validate()?;
    let (x, sample_rate) = cfg.input()?;
    let implementation = cfg.implementation.into();
    let keep_complex = cfg.projection == ProjectionName::Complex;
    let projection: Projection = cfg.projection.into();

    let (samples, complex) = match cfg.method {
        Method::FrftRaw => {
            let OrderConfig::Constant(a) = cfg.order else { unreachable!("validated") };
            let y = projection.apply(frft(&ComplexBuffer::from_real(&x)?, reduce_order(a)?, implementation)?);
            let z = y.into_inner();
            (z.iter().map(|v| v.re).collect(), keep_complex.then_some(z))
        }
        Method::AlphaSynthesis => {
            let window = cfg.window.spec()?;
            if keep_complex {
                let z = process_signal_complex(&x, &window, cfg.order.into(), projection, implementation)?;
                (z.iter().map(|v| v.re).collect(), Some(z))
            } else {
                (process_signal(&x, &window, cfg.order.into(), projection, implementation)?, None)
            }
        }
        Method::AlphaFilter => {
            let OrderConfig::Constant(a) = cfg.order else { unreachable!("validated") };
            let filter = cfg.filter.expect("validated");
            let spec = AlphaFilterSpec {
                bandwidth: filter.bandwidth,
                center: match filter.center {
                    CenterConfig::Constant(c) => CenterSchedule::Constant(c),
                    CenterConfig::ExponentialSweep { start, end } => CenterSchedule::ExponentialSweep { start, end },
                },
                order: reduce_order(a)?,
                window: cfg.window.spec()?,
                sample_rate: f64::from(sample_rate),
            };
            (alpha_filter(&x, &spec, implementation)?, None)
        }
    };
    Ok(Rendered { samples, complex, sample_rate })
}

/// Renders and writes every requested output; returns the written paths in
/// the order WAV, CSV, PNG.
pub fn render_to_files(cfg: &RenderConfig) -> Result<Vec<PathBuf>> {
    let rendered = render(cfg)?;
    let mut written = Vec::new();
    let wav = cfg.output.wav.as_ref().expect("validated");
    save_wav(&rendered.samples, rendered.sample_rate, wav, cfg.output.format, cfg.normalize)?;
    written.push(wav.clone());
    if cfg.output.csv.is_some() || cfg.output.png.is_some() {
        let grid = rendered.spectrogram(cfg.output.spectrogram)?;
        if let Some(csv) = &cfg.output.csv {
            write_spectrogram_csv(&grid, csv)?;
            written.push(csv.clone());
        }
        if let Some(png) = &cfg.output.png {
            write_spectrogram_png(&grid, png)?;
            written.push(png.clone());
        }
    }
    Ok(written)
}
