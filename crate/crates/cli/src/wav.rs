//! Mono WAV reading and writing.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use hound::{SampleFormat as HoundFormat, WavReader, WavSpec, WavWriter};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Peak level that loud renders are scaled down to when normalizing.
pub const NORMALIZED_PEAK: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SampleFormat {
    #[default]
    Pcm16,
    Float32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Audio {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
}

/// Reads a PCM16 or float32 file, averaging stereo to mono. PCM16 samples are
/// scaled by 1/32768.
pub fn load_wav(path: impl AsRef<Path>) -> Result<Audio> {
    let path = path.as_ref();
    let reader = WavReader::open(path).map_err(|e| match e {
        hound::Error::IoError(io) => CliError::io(path, io),
        other => CliError::format(path, other.to_string()),
    })?;
    let spec = reader.spec();
    let channels = spec.channels as usize;
    if channels == 0 || channels > 2 {
        return Err(CliError::format(path, format!("{channels} channels; expected mono or stereo")));
    }
    let interleaved: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (HoundFormat::Int, 16) => reader
            .into_samples::<i16>()
            .map(|s| s.map(|v| v as f64 / 32768.0))
            .collect::<Result<_, _>>(),
        (HoundFormat::Float, 32) => reader.into_samples::<f32>().map(|s| s.map(f64::from)).collect::<Result<_, _>>(),
        (format, bits) => {
            return Err(CliError::format(path, format!("unsupported encoding {format:?} {bits}-bit")));
        }
    }
    .map_err(|e| CliError::format(path, e.to_string()))?;
    let samples = if channels == 2 {
        interleaved.chunks_exact(2).map(|f| 0.5 * (f[0] + f[1])).collect()
    } else {
        interleaved
    };
    Ok(Audio { samples, sample_rate: spec.sample_rate })
}

/// Rejects non-finite samples and, with `normalize`, scales a signal whose
/// peak exceeds 1 down to [`NORMALIZED_PEAK`].
pub fn prepare_for_output(samples: &[f64], normalize: bool) -> Result<Vec<f64>> {
    if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
        return Err(CliError::Data(format!("non-finite sample {} at index {i}", samples[i])));
    }
    let peak = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if normalize && peak > 1.0 {
        let gain = NORMALIZED_PEAK / peak;
        Ok(samples.iter().map(|v| v * gain).collect())
    } else {
        Ok(samples.to_vec())
    }
}

/// Writes mono samples. PCM16 stores `round(x * 32768)` clamped to the i16
/// range.
pub fn save_wav(
    samples: &[f64],
    sample_rate: u32,
    path: impl AsRef<Path>,
    format: SampleFormat,
    normalize: bool,
) -> Result<()> {
    let path = path.as_ref();
    let samples = prepare_for_output(samples, normalize)?;
    let spec = match format {
        SampleFormat::Pcm16 => {
            WavSpec { channels: 1, sample_rate, bits_per_sample: 16, sample_format: HoundFormat::Int }
        }
        SampleFormat::Float32 => {
            WavSpec { channels: 1, sample_rate, bits_per_sample: 32, sample_format: HoundFormat::Float }
        }
    };
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let hound_err = |e: hound::Error| match e {
        hound::Error::IoError(io) => CliError::io(path, io),
        other => CliError::format(path, other.to_string()),
    };
    let mut writer = WavWriter::new(BufWriter::new(file), spec).map_err(hound_err)?;
    match format {
        SampleFormat::Pcm16 => {
            let mut w = writer.get_i16_writer(samples.len() as u32);
            for v in &samples {
                w.write_sample((v * 32768.0).round().clamp(-32768.0, 32767.0) as i16);
            }
            w.flush().map_err(hound_err)?;
        }
        SampleFormat::Float32 => {
            for &v in &samples {
                writer.write_sample(v as f32).map_err(hound_err)?;
            }
        }
    }
    writer.finalize().map_err(hound_err)
}
