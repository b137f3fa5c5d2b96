//! Spectrogram files: a CSV table (the exact surface) and a PNG heat map.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use frft_core::analysis::{SpectrogramGrid, DB_FLOOR};

use crate::error::{CliError, Result};

/// C `printf("%.6g")`.
pub fn format_g6(v: f64) -> String {
    const PRECISION: i32 = 6;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // the exponent after rounding to six significant digits decides the style
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..PRECISION).contains(&exp) {
        let decimals = (PRECISION - 1 - exp) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Header `time_s,<bin Hz>...`, then one row per frame: center time and the
/// dB magnitude of every bin. LF line endings.
pub fn spectrogram_csv(grid: &SpectrogramGrid) -> String {
    let mut out = String::from("time_s");
    for f in &grid.freq_axis {
        out.push(',');
        out.push_str(&format_g6(*f));
    }
    out.push('\n');
    for (t, col) in grid.time_axis.iter().zip(grid.to_db()) {
        out.push_str(&format_g6(*t));
        for db in col {
            write!(out, ",{}", format_g6(db)).expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

pub fn write_spectrogram_csv(grid: &SpectrogramGrid, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, spectrogram_csv(grid)).map_err(|e| CliError::io(path, e))
}

/// Grayscale heat map, one column per frame and one row per bin with the
/// lowest frequency at the bottom. Brightness spans the 100 dB below the
/// loudest cell.
pub fn write_spectrogram_png(grid: &SpectrogramGrid, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let width = grid.frame_count();
    let height = grid.bin_count();
    if width == 0 || height == 0 {
        return Err(CliError::Data("spectrogram has no cells".into()));
    }
    let db = grid.to_db();
    let top = db.iter().flatten().fold(DB_FLOOR, |m, &v| m.max(v));
    let bottom = top + DB_FLOOR;
    let mut pixels = vec![0u8; width * height];
    for (x, col) in db.iter().enumerate() {
        for (bin, &v) in col.iter().enumerate() {
            let level = ((v - bottom) / (top - bottom)).clamp(0.0, 1.0);
            pixels[(height - 1 - bin) * width + x] = (level * 255.0).round() as u8;
        }
    }

    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut encoder = png::Encoder::new(BufWriter::new(file), width as u32, height as u32);
    encoder.set_color(png::ColorType::Grayscale);
    encoder.set_depth(png::BitDepth::Eight);
    let png_err = |e: png::EncodingError| match e {
        png::EncodingError::IoError(io) => CliError::io(path, io),
        other => CliError::format(path, other.to_string()),
    };
    let mut writer = encoder.write_header().map_err(png_err)?;
    writer.write_image_data(&pixels).map_err(png_err)?;
    writer.finish().map_err(png_err)?;
    Ok(())
}

/// Writes any serializable value as pretty JSON with a trailing newline.
pub fn write_json<T: serde::Serialize>(value: &T, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::format(path, e.to_string()))?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(|e| CliError::io(path, e))
}
