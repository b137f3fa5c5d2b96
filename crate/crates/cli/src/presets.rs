//! The published sound-example groups and figures as reproducible render
//! batches.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{
    render_to_files, CenterConfig, FilterConfig, ImplementationName, Method, OrderConfig, OutputConfig,
    ProjectionName, RenderConfig, SineConfig, Source, SpectrogramConfig, WindowConfig, WindowName,
};
use crate::emit::write_json;
use crate::error::{CliError, Result};
use crate::wav::SampleFormat;

pub const SAMPLE_RATE: u32 = 44_100;
pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Tones at 55/220/880 Hz, 1 s, windows of 0.5 s and 1 s, six constant orders.
    Group1,
    /// Same tones, four short windows, order ramping from 0 to 0.5.
    Group2,
    /// Alpha band-pass filtering of 2 s tones with a swept center frequency.
    Group3,
    /// The 11025 Hz tone at four window sizes up to the whole signal.
    Figure1,
    /// Whole-signal transform of the 11025 Hz tone, complex versus real part.
    Figure2,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Group1, Preset::Group2, Preset::Group3, Preset::Figure1, Preset::Figure2];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Group1 => "group1",
            Preset::Group2 => "group2",
            Preset::Group3 => "group3",
            Preset::Figure1 => "figure1",
            Preset::Figure2 => "figure2",
        }
    }

    pub fn render_count(self) -> usize {
        match self {
            Preset::Group1 => 36,
            Preset::Group2 => 12,
            Preset::Group3 => 20,
            Preset::Figure1 | Preset::Figure2 => 4,
        }
    }
}

/// Everything that distinguishes one render, as recorded in the manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderParameters {
    pub method: Method,
    pub frequency_hz: f64,
    pub samples: usize,
    pub duration_s: f64,
    pub window_samples: usize,
    pub window_s: f64,
    pub hop_samples: usize,
    pub analysis_window: WindowName,
    pub synthesis_window: WindowName,
    pub order: OrderConfig,
    pub projection: ProjectionName,
    pub filter: Option<FilterConfig>,
    pub spectrogram: SpectrogramConfig,
    pub implementation: ImplementationName,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderFiles {
    pub wav: String,
    pub csv: String,
    pub png: String,
}

impl RenderFiles {
    pub fn all(&self) -> [&str; 3] {
        [&self.wav, &self.csv, &self.png]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub files: RenderFiles,
    pub parameters: RenderParameters,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub preset: Preset,
    pub sample_rate: u32,
    pub renders: Vec<ManifestEntry>,
}

#[derive(Debug, Clone)]
struct Job {
    name: String,
    frequency: f64,
    samples: usize,
    method: Method,
    window: WindowConfig,
    order: OrderConfig,
    projection: ProjectionName,
    filter: Option<FilterConfig>,
    spectrogram: SpectrogramConfig,
}

impl Job {
    fn synthesis(name: String, frequency: f64, samples: usize, window: usize, order: OrderConfig) -> Self {
        Job {
            name,
            frequency,
            samples,
            method: Method::AlphaSynthesis,
            window: WindowConfig { length: window, hop: Some(window / 2), ..WindowConfig::default() },
            order,
            projection: ProjectionName::Real,
            filter: None,
            spectrogram: SHORT_SPECTROGRAM,
        }
    }

    fn files(&self) -> RenderFiles {
        RenderFiles {
            wav: format!("{}.wav", self.name),
            csv: format!("{}.csv", self.name),
            png: format!("{}.png", self.name),
        }
    }

    fn config(&self, dir: &Path, implementation: ImplementationName) -> RenderConfig {
        let files = self.files();
        RenderConfig {
            source: Some(Source::Sine(SineConfig {
                frequency: self.frequency,
                duration: self.samples as f64 / f64::from(SAMPLE_RATE),
                amplitude: 1.0,
                phase: 0.0,
            })),
            method: self.method,
            window: self.window,
            order: self.order,
            filter: self.filter,
            projection: self.projection,
            implementation,
            output: OutputConfig {
                wav: Some(dir.join(&files.wav)),
                csv: Some(dir.join(&files.csv)),
                png: Some(dir.join(&files.png)),
                format: SampleFormat::Pcm16,
                spectrogram: self.spectrogram,
            },
            normalize: true,
            sample_rate: SAMPLE_RATE,
        }
    }

    fn entry(&self, implementation: ImplementationName) -> ManifestEntry {
        let fs = f64::from(SAMPLE_RATE);
        ManifestEntry {
            name: self.name.clone(),
            files: self.files(),
            parameters: RenderParameters {
                method: self.method,
                frequency_hz: self.frequency,
                samples: self.samples,
                duration_s: self.samples as f64 / fs,
                window_samples: self.window.length,
                window_s: self.window.length as f64 / fs,
                hop_samples: self.window.hop(),
                analysis_window: self.window.analysis,
                synthesis_window: self.window.synthesis,
                order: self.order,
                projection: self.projection,
                filter: self.filter,
                spectrogram: self.spectrogram,
                implementation,
            },
        }
    }
}

const SHORT_SPECTROGRAM: SpectrogramConfig = SpectrogramConfig { window: 2048, hop: 1024, window_fn: WindowName::Hann };
const LONG_SPECTROGRAM: SpectrogramConfig = SpectrogramConfig { window: 4096, hop: 2048, window_fn: WindowName::Hann };

const TONES: [f64; 3] = [55.0, 220.0, 880.0];
const GROUP1_WINDOWS: [usize; 2] = [22_050, 44_100];
const GROUP1_ORDERS: [f64; 6] = [0.0, 0.01, 0.05, 0.1, 0.25, 0.5];
const GROUP2_WINDOWS: [usize; 4] = [2048, 4096, 8192, 16_384];
const GROUP3_TONES: [f64; 2] = [220.0, 3520.0];
const GROUP3_WINDOWS: [usize; 2] = [8192, 16_384];
const GROUP3_ORDERS: [f64; 5] = [0.01, 0.05, 0.1, 0.25, 0.5];
const FIGURE_TONE: f64 = 11_025.0;
const FIGURE_SAMPLES: usize = 524_288;
const FIGURE1_WINDOWS: [usize; 4] = [65_536, 131_072, 262_144, 524_288];
const FIGURE1_ORDER: f64 = 0.3;
const FIGURE2_ORDERS: [f64; 2] = [0.3, 0.45];

fn jobs(preset: Preset) -> Vec<Job> {
    let mut jobs = Vec::with_capacity(preset.render_count());
    match preset {
        Preset::Group1 => {
            for f in TONES {
                for w in GROUP1_WINDOWS {
                    for a in GROUP1_ORDERS {
                        let name = format!("group1_f{f}_w{w}_a{a}");
                        jobs.push(Job::synthesis(name, f, 44_100, w, OrderConfig::Constant(a)));
                    }
                }
            }
        }
        Preset::Group2 => {
            for f in TONES {
                for w in GROUP2_WINDOWS {
                    let name = format!("group2_f{f}_w{w}_ramp0-0.5");
                    let ramp = OrderConfig::LinearRamp { start: 0.0, end: 0.5 };
                    jobs.push(Job::synthesis(name, f, 44_100, w, ramp));
                }
            }
        }
        Preset::Group3 => {
            for f in GROUP3_TONES {
                for w in GROUP3_WINDOWS {
                    for a in GROUP3_ORDERS {
                        jobs.push(Job {
                            name: format!("group3_f{f}_w{w}_a{a}"),
                            frequency: f,
                            samples: 88_200,
                            method: Method::AlphaFilter,
                            // tapered analysis keeps each frame inside the
                            // transform's time-frequency box
                            window: WindowConfig {
                                length: w,
                                hop: Some(w / 2),
                                analysis: WindowName::Hann,
                                synthesis: WindowName::Hann,
                            },
                            order: OrderConfig::Constant(a),
                            projection: ProjectionName::Real,
                            filter: Some(FilterConfig {
                                bandwidth: 1.0,
                                center: CenterConfig::ExponentialSweep { start: 100.0, end: 10_000.0 },
                            }),
                            spectrogram: SHORT_SPECTROGRAM,
                        });
                    }
                }
            }
        }
        Preset::Figure1 => {
            for w in FIGURE1_WINDOWS {
                let mut job = Job::synthesis(
                    format!("figure1_f{FIGURE_TONE}_w{w}_a{FIGURE1_ORDER}"),
                    FIGURE_TONE,
                    FIGURE_SAMPLES,
                    w,
                    OrderConfig::Constant(FIGURE1_ORDER),
                );
                job.spectrogram = LONG_SPECTROGRAM;
                jobs.push(job);
            }
        }
        Preset::Figure2 => {
            for a in FIGURE2_ORDERS {
                for projection in [ProjectionName::Complex, ProjectionName::Real] {
                    let label = if projection == ProjectionName::Complex { "complex" } else { "real" };
                    jobs.push(Job {
                        name: format!("figure2_f{FIGURE_TONE}_a{a}_{label}"),
                        frequency: FIGURE_TONE,
                        samples: FIGURE_SAMPLES,
                        method: Method::FrftRaw,
                        window: WindowConfig {
                            length: FIGURE_SAMPLES,
                            hop: Some(FIGURE_SAMPLES),
                            analysis: WindowName::Rectangular,
                            synthesis: WindowName::Rectangular,
                        },
                        order: OrderConfig::Constant(a),
                        projection,
                        filter: None,
                        spectrogram: LONG_SPECTROGRAM,
                    });
                }
            }
        }
    }
    jobs
}

/// The manifest a run of `preset` produces, without rendering anything.
pub fn plan(preset: Preset, implementation: ImplementationName) -> Manifest {
    Manifest {
        preset,
        sample_rate: SAMPLE_RATE,
        renders: jobs(preset).iter().map(|j| j.entry(implementation)).collect(),
    }
}

/// Manifest entries paired with the configurations that render them into
/// `dir`.
pub fn configs(preset: Preset, dir: &Path, implementation: ImplementationName) -> Vec<(ManifestEntry, RenderConfig)> {
    jobs(preset).iter().map(|j| (j.entry(implementation), j.config(dir, implementation))).collect()
}

/// Renders every combination of `preset` into `root/<preset name>/` and
/// writes the manifest there once all renders have succeeded.
pub fn run_preset(preset: Preset, root: &Path, implementation: ImplementationName) -> Result<(PathBuf, Manifest)> {
    let dir = root.join(preset.name());
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let jobs = configs(preset, &dir, implementation);
    jobs.par_iter().try_for_each(|(_, config)| render_to_files(config).map(drop))?;
    let manifest = Manifest {
        preset,
        sample_rate: SAMPLE_RATE,
        renders: jobs.into_iter().map(|(entry, _)| entry).collect(),
    };
    write_json(&manifest, dir.join(MANIFEST_NAME))?;
    Ok((dir, manifest))
}
