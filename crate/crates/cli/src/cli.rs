use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{
    render_to_files, CenterConfig, FilterConfig, ImplementationName, Method, OrderConfig, ProjectionName,
    RenderConfig, SineConfig, Source, SpectrogramConfig, WindowName,
};
use crate::emit::{write_spectrogram_csv, write_spectrogram_png};
use crate::error::{CliError, Result};
use crate::presets::{run_preset, Preset};
use crate::verify::{verify, Level};
use crate::wav::{load_wav, SampleFormat};

#[derive(Debug, Parser)]
#[command(name = "frft", version, about = "Fractional Fourier transform sound design")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transform a whole WAV file at one order.
    Frft {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        order: f64,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        projection: ProjectionName,
        #[command(flatten)]
        common: CommonOutput,
    },
    /// Alpha-synthesis: windowed transform of a pure tone.
    Synth(RenderArgs),
    /// Alpha-filtering of a tone or WAV file.
    Filter(RenderArgs),
    /// Spectrogram of a WAV file as CSV and/or PNG.
    Spectrogram {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2048)]
        window: usize,
        #[arg(long, default_value_t = 512)]
        hop: usize,
        #[arg(long, value_enum, default_value_t = WindowName::Hann)]
        window_fn: WindowName,
        #[arg(long, required_unless_present = "png")]
        csv: Option<PathBuf>,
        #[arg(long)]
        png: Option<PathBuf>,
    },
    /// Render one of the published example groups.
    Preset {
        #[arg(value_enum)]
        name: Preset,
        #[arg(long, default_value = "renders")]
        out_dir: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        implementation: ImplementationName,
    },
    /// Check the transform's properties against their tolerances.
    Verify {
        /// Include N = 1024 cases and the Wigner checks.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Debug, Args)]
struct CommonOutput {
    #[arg(long, value_enum)]
    implementation: Option<ImplementationName>,
    #[arg(long, value_enum)]
    format: Option<SampleFormat>,
    /// Write samples unscaled even when the peak exceeds 1.
    #[arg(long)]
    no_normalize: bool,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    png: Option<PathBuf>,
    #[arg(long)]
    spectrogram_window: Option<usize>,
    #[arg(long)]
    spectrogram_hop: Option<usize>,
}

/// Every field overrides the value read from `--config`.
#[derive(Debug, Args)]
struct RenderArgs {
    /// JSON render configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, conflicts_with = "input")]
    frequency: Option<f64>,
    /// Seconds of tone.
    #[arg(long)]
    duration: Option<f64>,
    #[arg(long)]
    amplitude: Option<f64>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    order: Option<f64>,
    /// Ramp the order linearly from `--order` to this value across frames.
    #[arg(long, allow_hyphen_values = true, requires = "order")]
    order_end: Option<f64>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    hop: Option<usize>,
    #[arg(long, value_enum)]
    analysis_window: Option<WindowName>,
    #[arg(long, value_enum)]
    synthesis_window: Option<WindowName>,
    #[arg(long, value_enum)]
    projection: Option<ProjectionName>,
    #[arg(long)]
    bandwidth: Option<f64>,
    /// Filter center frequency in Hz, or the sweep start with `--center-end`.
    #[arg(long)]
    center: Option<f64>,
    #[arg(long, requires = "center")]
    center_end: Option<f64>,
    #[arg(long)]
    sample_rate: Option<u32>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    common: CommonOutput,
}

impl CommonOutput {
    fn apply(&self, cfg: &mut RenderConfig) {
        if let Some(i) = self.implementation {
            cfg.implementation = i;
        }
        if let Some(f) = self.format {
            cfg.output.format = f;
        }
        if self.no_normalize {
            cfg.normalize = false;
        }
        if self.csv.is_some() {
            cfg.output.csv.clone_from(&self.csv);
        }
        if self.png.is_some() {
            cfg.output.png.clone_from(&self.png);
        }
        if let Some(w) = self.spectrogram_window {
            cfg.output.spectrogram.window = w;
        }
        if let Some(h) = self.spectrogram_hop {
            cfg.output.spectrogram.hop = h;
        }
    }
}

impl RenderArgs {
    fn into_config(self, method: Method) -> Result<RenderConfig> {
        let mut cfg = match &self.config {
            Some(path) => RenderConfig::load(path)?,
            None => RenderConfig::default(),
        };
        cfg.method = method;

        if let Some(path) = self.input {
            cfg.source = Some(Source::Wav(path));
        }
        if self.frequency.is_some() || self.duration.is_some() || self.amplitude.is_some() {
            let mut sine = match cfg.source {
                Some(Source::Sine(s)) => s,
                _ => SineConfig {
                    frequency: self
                        .frequency
                        .ok_or_else(|| CliError::Usage("--duration/--amplitude need a tone: add --frequency".into()))?,
                    duration: 1.0,
                    amplitude: 1.0,
                    phase: 0.0,
                },
            };
            if let Some(f) = self.frequency {
                sine.frequency = f;
            }
            if let Some(d) = self.duration {
                sine.duration = d;
            }
            if let Some(a) = self.amplitude {
                sine.amplitude = a;
            }
            cfg.source = Some(Source::Sine(sine));
        }
        match (self.order, self.order_end) {
            (Some(start), Some(end)) => cfg.order = OrderConfig::LinearRamp { start, end },
            (Some(a), None) => cfg.order = OrderConfig::Constant(a),
            _ => {}
        }
        if let Some(w) = self.window {
            cfg.window.length = w;
            if self.hop.is_none() && cfg.window.hop.is_some_and(|h| h > w) {
                cfg.window.hop = None;
            }
        }
        if self.hop.is_some() {
            cfg.window.hop = self.hop;
        }
        if let Some(w) = self.analysis_window {
            cfg.window.analysis = w;
        }
        if let Some(w) = self.synthesis_window {
            cfg.window.synthesis = w;
        }
        if let Some(p) = self.projection {
            cfg.projection = p;
        }
        if self.bandwidth.is_some() || self.center.is_some() {
            let mut filter = cfg.filter.unwrap_or(FilterConfig { bandwidth: 1.0, center: CenterConfig::Constant(1000.0) });
            if let Some(b) = self.bandwidth {
                filter.bandwidth = b;
            }
            match (self.center, self.center_end) {
                (Some(start), Some(end)) => filter.center = CenterConfig::ExponentialSweep { start, end },
                (Some(c), None) => filter.center = CenterConfig::Constant(c),
                _ => {}
            }
            cfg.filter = Some(filter);
        }
        if let Some(r) = self.sample_rate {
            cfg.sample_rate = r;
        }
        if self.output.is_some() {
            cfg.output.wav = self.output;
        }
        self.common.apply(&mut cfg);
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    let say = |out: &mut dyn Write, line: String| {
        let _ = writeln!(out, "{line}");
    };
    match command {
        Command::Frft { input, order, output, projection, common } => {
            let mut cfg = RenderConfig {
                source: Some(Source::Wav(input)),
                method: Method::FrftRaw,
                order: OrderConfig::Constant(order),
                projection,
                ..RenderConfig::default()
            };
            cfg.output.wav = Some(output);
            common.apply(&mut cfg);
            cfg.validate()?;
            for path in render_to_files(&cfg)? {
                say(out, format!("wrote {}", path.display()));
            }
        }
        Command::Synth(args) => {
            for path in render_to_files(&args.into_config(Method::AlphaSynthesis)?)? {
                say(out, format!("wrote {}", path.display()));
            }
        }
        Command::Filter(args) => {
            for path in render_to_files(&args.into_config(Method::AlphaFilter)?)? {
                say(out, format!("wrote {}", path.display()));
            }
        }
        Command::Spectrogram { input, window, hop, window_fn, csv, png } => {
            let audio = load_wav(&input)?;
            let rendered = crate::config::Rendered { samples: audio.samples, complex: None, sample_rate: audio.sample_rate };
            let grid = rendered.spectrogram(SpectrogramConfig { window, hop, window_fn })?;
            if let Some(path) = csv {
                write_spectrogram_csv(&grid, &path)?;
                say(out, format!("wrote {}", path.display()));
            }
            if let Some(path) = png {
                write_spectrogram_png(&grid, &path)?;
                say(out, format!("wrote {}", path.display()));
            }
        }
        Command::Preset { name, out_dir, implementation } => {
            let (dir, manifest) = run_preset(name, &out_dir, implementation)?;
            say(out, format!("{}: {} renders in {}", name.name(), manifest.renders.len(), dir.display()));
        }
        Command::Verify { full } => {
            let report = verify(if full { Level::Full } else { Level::Quick });
            say(out, report.to_string());
            if !report.all_passed() {
                return Err(CliError::Verification { failed: report.failures().count(), total: report.checks.len() });
            }
        }
    }
    Ok(())
}
