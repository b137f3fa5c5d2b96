//! Time-frequency diagnostics: STFT spectrograms, a discrete Wigner
//! distribution, a check that the transform rotates that distribution, and
//! straight-ridge extraction from spectrograms.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods exist once std is linked
use num_traits::Float;

use crate::buffer::{center_index, ComplexBuffer};
use crate::dft::{fft_in_place, upsample2, Direction};
use crate::error::{FrftError, Result};
use crate::framing::WindowFn;
use crate::order::FrftOrder;
use crate::transform::{frft, Implementation};

/// Largest signal [`wigner`] accepts.
pub const WIGNER_MAX_LEN: usize = 512;
/// Largest signal [`rotation_check`] accepts.
pub const ROTATION_CHECK_MAX_LEN: usize = 256;
/// Display floor for decibel output.
pub const DB_FLOOR: f64 = -100.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrogramGrid {
    /// `magnitudes[frame][bin]`, linear, non-negative.
    pub magnitudes: Vec<Vec<f64>>,
    /// Frame center times in seconds.
    pub time_axis: Vec<f64>,
    /// Bin center frequencies in Hz, strictly increasing.
    pub freq_axis: Vec<f64>,
    pub window_len: usize,
    pub hop: usize,
    pub window: WindowFn,
    pub sample_rate: f64,
}

impl SpectrogramGrid {
    pub fn frame_count(&self) -> usize {
        self.magnitudes.len()
    }

    pub fn bin_count(&self) -> usize {
        self.freq_axis.len()
    }

    /// `20 log10 |X|`, clamped below at [`DB_FLOOR`].
    pub fn to_db(&self) -> Vec<Vec<f64>> {
        self.magnitudes
            .iter()
            .map(|col| col.iter().map(|&m| magnitude_db(m)).collect())
            .collect()
    }

    fn bin_width(&self) -> f64 {
        self.sample_rate / self.window_len as f64
    }
}

pub fn magnitude_db(m: f64) -> f64 {
    if m <= 0.0 {
        DB_FLOOR
    } else {
        (20.0 * m.log10()).max(DB_FLOOR)
    }
}

fn check_stft_sizes(len: usize, window_len: usize, hop: usize, sample_rate: f64) -> Result<()> {
    if window_len == 0 || hop == 0 {
        return Err(FrftError::InvalidArgument("spectrogram window and hop must be positive"));
    }
    if window_len > len {
        return Err(FrftError::TooShort { len, min: window_len });
    }
    if !(sample_rate.is_finite() && sample_rate > 0.0) {
        return Err(FrftError::InvalidArgument("sample rate must be positive"));
    }
    Ok(())
}

fn stft_frames(
    x: &[Complex64],
    window_len: usize,
    hop: usize,
    window: WindowFn,
    sample_rate: f64,
) -> (Vec<Vec<Complex64>>, Vec<f64>) {
    let w = window.coefficients(window_len);
    let norm = 1.0 / w.iter().sum::<f64>();
    let count = (x.len() - window_len) / hop + 1;
    let mut times = Vec::with_capacity(count);
    let frames = (0..count)
        .map(|m| {
            let start = m * hop;
            times.push((start as f64 + window_len as f64 / 2.0) / sample_rate);
            let mut buf: Vec<Complex64> = x[start..start + window_len]
                .iter()
                .zip(&w)
                .map(|(v, c)| v * (c * norm))
                .collect();
            fft_in_place(&mut buf, Direction::Forward);
            buf
        })
        .collect();
    (frames, times)
}

/// One-sided magnitude STFT (bins `0..=L/2`) of a real signal. Only frames
/// that fit entirely inside the signal are computed. Magnitudes are scaled by
/// the inverse window sum.
pub fn stft_spectrogram(
    x: &[f64],
    sample_rate: f64,
    window_len: usize,
    hop: usize,
    window: WindowFn,
) -> Result<SpectrogramGrid> {
    check_stft_sizes(x.len(), window_len, hop, sample_rate)?;
    let complex: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let (frames, time_axis) = stft_frames(&complex, window_len, hop, window, sample_rate);
    let bins = window_len / 2 + 1;
    let magnitudes = frames.iter().map(|f| f[..bins].iter().map(|z| z.norm()).collect()).collect();
    let freq_axis = (0..bins).map(|k| k as f64 * sample_rate / window_len as f64).collect();
    Ok(SpectrogramGrid { magnitudes, time_axis, freq_axis, window_len, hop, window, sample_rate })
}

/// Two-sided magnitude STFT of a complex signal, bins ordered from the most
/// negative frequency upwards.
pub fn stft_spectrogram_complex(
    x: &[Complex64],
    sample_rate: f64,
    window_len: usize,
    hop: usize,
    window: WindowFn,
) -> Result<SpectrogramGrid> {
    check_stft_sizes(x.len(), window_len, hop, sample_rate)?;
    let (frames, time_axis) = stft_frames(x, window_len, hop, window, sample_rate);
    let neg = window_len / 2;
    // bin order: -neg, ..., -1, 0, 1, ..., L - 1 - neg
    let order: Vec<usize> = (0..window_len).map(|i| (i + window_len - neg) % window_len).collect();
    let magnitudes = frames.iter().map(|f| order.iter().map(|&k| f[k].norm()).collect()).collect();
    let freq_axis = (0..window_len)
        .map(|i| (i as f64 - neg as f64) * sample_rate / window_len as f64)
        .collect();
    Ok(SpectrogramGrid { magnitudes, time_axis, freq_axis, window_len, hop, window, sample_rate })
}

/// Discrete Wigner distribution on the `n × n` centered grid.
///
/// `values[t][f]` sits at `(u_t, u_f) = ((t - c) / sqrt n, (f - c) / sqrt n)`,
/// both axes with the same spacing, so rotations of the time-frequency plane
/// are rotations of the index grid. Scaled so that the cell sum divided by `n`
/// equals the signal energy.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub values: Vec<Vec<f64>>,
    /// Largest discarded imaginary part, relative to the largest value.
    pub imaginary_residue: f64,
}

impl WignerGrid {
    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn cell_area(&self) -> f64 {
        1.0 / self.size() as f64
    }

    /// `sum W dA`, which approximates the signal energy.
    pub fn total_mass(&self) -> f64 {
        self.values.iter().flatten().sum::<f64>() * self.cell_area()
    }

    fn sample_bilinear(&self, t: f64, f: f64) -> f64 {
        let n = self.size() as isize;
        let t0 = t.floor();
        let f0 = f.floor();
        let (dt, df) = (t - t0, f - f0);
        let (ti, fi) = (t0 as isize, f0 as isize);
        let at = |a: isize, b: isize| -> f64 {
            if a < 0 || b < 0 || a >= n || b >= n {
                0.0
            } else {
                self.values[a as usize][b as usize]
            }
        };
        at(ti, fi) * (1.0 - dt) * (1.0 - df)
            + at(ti + 1, fi) * dt * (1.0 - df)
            + at(ti, fi + 1) * (1.0 - dt) * df
            + at(ti + 1, fi + 1) * dt * df
    }
}

/// Pseudo-Wigner distribution: at each time `t` the lag product
/// `x2[2t + k] conj(x2[2t - k])` of the ×2 interpolated signal, over the
/// symmetric lag range `|k| < n/2`, transformed by a centered DFT in `k`.
pub fn wigner(x: &ComplexBuffer) -> Result<WignerGrid> {
    let n = x.len();
    if n > WIGNER_MAX_LEN {
        return Err(FrftError::TooLarge { len: n, max: WIGNER_MAX_LEN });
    }
    let c = center_index(n);
    let fine = upsample2(x);
    let fine_at = |i: isize| -> Complex64 {
        if i < 0 || i as usize >= fine.len() {
            Complex64::new(0.0, 0.0)
        } else {
            fine[i as usize]
        }
    };
    // lags paired with their negatives only; an unpaired -n/2 lag would
    // leave an imaginary residue
    let max_lag = (n as isize - 1) / 2;

    let mut residue: f64 = 0.0;
    let mut peak: f64 = 0.0;
    let values = (0..n)
        .map(|t| {
            let mid = 2 * t as isize;
            // position j holds lag k with j = k mod n, as the centered DFT expects
            let mut lag = vec![Complex64::new(0.0, 0.0); n];
            for k in -max_lag..=max_lag {
                let v = fine_at(mid + k) * fine_at(mid - k).conj();
                lag[k.rem_euclid(n as isize) as usize] = v;
            }
            fft_in_place(&mut lag, Direction::Forward);
            // bin f holds frequency index f - c; the lag axis is centered on 0
            (0..n)
                .map(|f| {
                    let z = lag[(f + n - c) % n];
                    residue = residue.max(z.im.abs());
                    peak = peak.max(z.re.abs());
                    z.re
                })
                .collect()
        })
        .collect();
    let imaginary_residue = if peak > 0.0 { residue / peak } else { 0.0 };
    Ok(WignerGrid { values, imaginary_residue })
}

/// Which sense of rotation matched in [`rotation_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `W_out(u, v) = W_in(u cos phi - v sin phi, u sin phi + v cos phi)`.
    Clockwise,
    /// `W_out(u, v) = W_in(u cos phi + v sin phi, -u sin phi + v cos phi)`.
    CounterClockwise,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationCheck {
    /// Normalized cross-correlation of the better orientation, in `[-1, 1]`.
    pub correlation: f64,
    pub orientation: Orientation,
    /// Correlation of the other orientation.
    pub other: f64,
}

/// Correlates the Wigner distribution of `frft(x, order)` with that of `x`
/// rotated by the order's angle, trying both senses of rotation.
pub fn rotation_check(x: &ComplexBuffer, order: FrftOrder, implementation: Implementation) -> Result<RotationCheck> {
    let n = x.len();
    if n > ROTATION_CHECK_MAX_LEN {
        return Err(FrftError::TooLarge { len: n, max: ROTATION_CHECK_MAX_LEN });
    }
    let input = wigner(x)?;
    let output = wigner(&frft(x, order, implementation)?)?;
    let (s, co) = order.angle().sin_cos();
    let c = center_index(n) as f64;

    let correlate = |sense: f64| -> f64 {
        let mut dot = 0.0;
        let mut out_energy = 0.0;
        let mut rot_energy = 0.0;
        for (t, row) in output.values.iter().enumerate() {
            for (f, &w_out) in row.iter().enumerate() {
                let (u, v) = (t as f64 - c, f as f64 - c);
                let src_t = u * co - sense * v * s;
                let src_f = sense * u * s + v * co;
                let w_rot = input.sample_bilinear(src_t + c, src_f + c);
                dot += w_out * w_rot;
                out_energy += w_out * w_out;
                rot_energy += w_rot * w_rot;
            }
        }
        let denom = (out_energy * rot_energy).sqrt();
        if denom == 0.0 {
            0.0
        } else {
            (dot / denom).clamp(-1.0, 1.0)
        }
    };
    let cw = correlate(1.0);
    let ccw = correlate(-1.0);
    Ok(if cw >= ccw {
        RotationCheck { correlation: cw, orientation: Orientation::Clockwise, other: ccw }
    } else {
        RotationCheck { correlation: ccw, orientation: Orientation::CounterClockwise, other: cw }
    })
}

/// Straight ridge predicted for the transform of a tone of `frequency` Hz
/// spanning `len` samples: the tone's horizontal line rotated clockwise by
/// the order's angle. Returns `(slope Hz/s, frequency Hz at the grid center
/// time floor(len/2)/fs)`. `None` when the rotated line is vertical.
pub fn predicted_tone_ridge(frequency: f64, order: FrftOrder, len: usize, sample_rate: f64) -> Option<(f64, f64)> {
    let (s, c) = order.angle().sin_cos();
    if c.abs() < 1e-12 {
        return None;
    }
    let slope = -(s / c) * sample_rate * sample_rate / len as f64;
    Some((slope, frequency / c))
}

/// Time-frequency window and peak-picking options for [`ridge_fit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RidgeRegion {
    pub t_min: f64,
    pub t_max: f64,
    pub f_min: f64,
    pub f_max: f64,
    /// Peaks taken from each column (1 for a single ridge, 2 for mirrored pairs).
    pub peaks_per_column: usize,
    /// Intercepts are reported at this time.
    pub reference_time: f64,
}

impl RidgeRegion {
    /// Whole grid, one peak per column, intercept at the central time.
    pub fn whole(grid: &SpectrogramGrid) -> Self {
        let t_min = grid.time_axis.first().copied().unwrap_or(0.0);
        let t_max = grid.time_axis.last().copied().unwrap_or(0.0);
        Self {
            t_min,
            t_max,
            f_min: grid.freq_axis.first().copied().unwrap_or(0.0),
            f_max: grid.freq_axis.last().copied().unwrap_or(0.0),
            peaks_per_column: 1,
            reference_time: 0.5 * (t_min + t_max),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RidgeLine {
    pub slope: f64,
    /// Frequency at the region's reference time, Hz.
    pub intercept: f64,
    /// Sum of squared peak magnitudes on the line.
    pub energy: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy)]
struct Peak {
    t: f64,
    f: f64,
    weight: f64,
}

/// Minimum spacing, in bins, between peaks picked from one column.
const PEAK_SEPARATION_BINS: usize = 3;
/// Peaks weaker than this fraction of the column maximum are ignored.
const PEAK_RELATIVE_FLOOR: f64 = 0.1;
/// Inlier distance from a candidate line, in bins.
const INLIER_BINS: f64 = 3.0;
/// Anchors used to propose candidate lines.
const MAX_ANCHORS: usize = 64;

/// Fits straight ridges through per-column spectral peaks inside `region`,
/// strongest first.
///
/// Lines are extracted greedily: candidate lines through pairs of anchor
/// peaks are scored by the squared magnitude of the peaks within three bins,
/// the best is refined by weighted least squares on its inliers, and its
/// peaks are removed before the next search. At most `peaks_per_column`
/// lines are returned.
pub fn ridge_fit(grid: &SpectrogramGrid, region: &RidgeRegion) -> Result<Vec<RidgeLine>> {
    if region.peaks_per_column == 0 || !(region.t_min <= region.t_max) || !(region.f_min <= region.f_max) {
        return Err(FrftError::InvalidArgument("ridge region is empty"));
    }
    let bins: Vec<usize> = (0..grid.bin_count())
        .filter(|&b| (region.f_min..=region.f_max).contains(&grid.freq_axis[b]))
        .collect();
    let mut peaks = Vec::new();
    for (col, &t) in grid.magnitudes.iter().zip(&grid.time_axis) {
        if t < region.t_min || t > region.t_max {
            continue;
        }
        peaks.extend(column_peaks(col, &bins, &grid.freq_axis, region.peaks_per_column).into_iter().map(
            |(f, weight)| Peak { t, f, weight },
        ));
    }
    if peaks.len() < 2 {
        return Err(FrftError::InvalidArgument("ridge region holds fewer than two spectral peaks"));
    }

    let tolerance = INLIER_BINS * grid.bin_width();
    let min_points = (peaks.len() / 10).max(3);
    let mut lines = Vec::new();
    while lines.len() < region.peaks_per_column && peaks.len() >= min_points {
        let Some((slope, offset)) = best_line(&peaks, tolerance, region.reference_time) else {
            break;
        };
        let (inliers, rest): (Vec<Peak>, Vec<Peak>) = peaks
            .iter()
            .partition(|p| (p.f - (offset + slope * (p.t - region.reference_time))).abs() <= tolerance);
        if inliers.len() < min_points {
            break;
        }
        lines.push(RidgeLine {
            slope,
            intercept: offset,
            energy: inliers.iter().map(|p| p.weight * p.weight).sum(),
            points: inliers.len(),
        });
        peaks = rest;
    }
    if lines.is_empty() {
        return Err(FrftError::InvalidArgument("no ridge found in region"));
    }
    lines.sort_by(|a, b| b.energy.total_cmp(&a.energy));
    Ok(lines)
}

/// Strongest local maxima of one column restricted to `bins`, refined by a
/// parabola through the log magnitudes around each maximum.
fn column_peaks(col: &[f64], bins: &[usize], freqs: &[f64], count: usize) -> Vec<(f64, f64)> {
    let (Some(&lo), Some(&hi)) = (bins.first(), bins.last()) else {
        return Vec::new();
    };
    let mut maxima: Vec<usize> = (lo..=hi)
        .filter(|&b| {
            let left = if b > lo { col[b - 1] } else { f64::NEG_INFINITY };
            let right = if b < hi { col[b + 1] } else { f64::NEG_INFINITY };
            col[b] > 0.0 && col[b] >= left && col[b] > right
        })
        .collect();
    maxima.sort_by(|&a, &b| col[b].total_cmp(&col[a]).then(a.cmp(&b)));
    let Some(&top) = maxima.first() else {
        return Vec::new();
    };
    let floor = PEAK_RELATIVE_FLOOR * col[top];
    let mut picked: Vec<usize> = Vec::new();
    for b in maxima {
        if picked.len() == count || col[b] < floor {
            break;
        }
        if picked.iter().all(|&p| p.abs_diff(b) >= PEAK_SEPARATION_BINS) {
            picked.push(b);
        }
    }
    let step = if freqs.len() > 1 { freqs[1] - freqs[0] } else { 0.0 };
    picked
        .into_iter()
        .map(|b| {
            let mut shift = 0.0;
            if b > lo && b < hi && col[b - 1] > 0.0 && col[b + 1] > 0.0 {
                let (l, m, r) = (col[b - 1].ln(), col[b].ln(), col[b + 1].ln());
                let denom = l - 2.0 * m + r;
                if denom < 0.0 {
                    shift = (0.5 * (l - r) / denom).clamp(-0.5, 0.5);
                }
            }
            (freqs[b] + shift * step, col[b])
        })
        .collect()
}

fn best_line(peaks: &[Peak], tolerance: f64, t_ref: f64) -> Option<(f64, f64)> {
    let mut sorted: Vec<&Peak> = peaks.iter().collect();
    sorted.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.f.total_cmp(&b.f)));
    let stride = sorted.len().div_ceil(MAX_ANCHORS).max(1);
    let anchors: Vec<&Peak> = sorted.iter().step_by(stride).copied().collect();

    let score = |slope: f64, offset: f64| -> f64 {
        peaks
            .iter()
            .filter(|p| (p.f - (offset + slope * (p.t - t_ref))).abs() <= tolerance)
            .map(|p| p.weight * p.weight)
            .sum()
    };

    let mut best: Option<(f64, f64, f64)> = None;
    for (i, a) in anchors.iter().enumerate() {
        for b in &anchors[i + 1..] {
            if b.t == a.t {
                continue;
            }
            let slope = (b.f - a.f) / (b.t - a.t);
            let offset = a.f + slope * (t_ref - a.t);
            let s = score(slope, offset);
            if best.is_none_or(|(bs, _, _)| s > bs) {
                best = Some((s, slope, offset));
            }
        }
    }
    let (_, mut slope, mut offset) = best?;
    // two refinement passes: refit on inliers, then re-select inliers
    for _ in 0..2 {
        let inliers: Vec<&Peak> = peaks
            .iter()
            .filter(|p| (p.f - (offset + slope * (p.t - t_ref))).abs() <= tolerance)
            .collect();
        if let Some(fit) = weighted_least_squares(&inliers, t_ref) {
            (slope, offset) = fit;
        }
    }
    Some((slope, offset))
}

fn weighted_least_squares(points: &[&Peak], t_ref: f64) -> Option<(f64, f64)> {
    let w: f64 = points.iter().map(|p| p.weight).sum();
    if points.len() < 2 || w <= 0.0 {
        return None;
    }
    let mt = points.iter().map(|p| p.weight * (p.t - t_ref)).sum::<f64>() / w;
    let mf = points.iter().map(|p| p.weight * p.f).sum::<f64>() / w;
    let stt: f64 = points.iter().map(|p| p.weight * (p.t - t_ref - mt).powi(2)).sum();
    if stt <= 0.0 {
        return None;
    }
    let stf: f64 = points.iter().map(|p| p.weight * (p.t - t_ref - mt) * (p.f - mf)).sum();
    let slope = stf / stt;
    Some((slope, mf - slope * mt))
}

/// Linear chirp `cos(2 pi (f0 t + rate t^2 / 2))`, a helper for ridge tests.
pub fn linear_chirp(f0: f64, rate: f64, len: usize, sample_rate: f64) -> Vec<f64> {
    (0..len)
        .map(|n| {
            let t = n as f64 / sample_rate;
            (2.0 * PI * (f0 * t + 0.5 * rate * t * t)).cos()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::reduce_order;
    use crate::signals::{gaussian, gaussian_tone};
    use crate::synthesis::{sine, SineSpec};

    #[test]
    fn tone_peaks_at_its_bin() {
        let x = sine(&SineSpec::new(220.0, 1.0)).unwrap();
        let g = stft_spectrogram(&x, 44100.0, 2048, 1024, WindowFn::Hann).unwrap();
        let width = 44100.0 / 2048.0;
        for col in &g.magnitudes {
            let arg = (0..col.len()).max_by(|&a, &b| col[a].total_cmp(&col[b])).unwrap();
            assert!((g.freq_axis[arg] - 220.0).abs() <= width);
        }
    }

    #[test]
    fn silence_gives_zero_grid_and_floor_db() {
        let g = stft_spectrogram(&[0.0; 4096], 44100.0, 1024, 512, WindowFn::Hann).unwrap();
        assert!(g.magnitudes.iter().flatten().all(|&m| m == 0.0));
        assert!(g.to_db().iter().flatten().all(|&d| d == DB_FLOOR));
    }

    #[test]
    fn axes_increase() {
        let g = stft_spectrogram(&[0.1; 5000], 8000.0, 256, 100, WindowFn::Rectangular).unwrap();
        assert!(g.time_axis.windows(2).all(|w| w[0] < w[1]));
        assert!(g.freq_axis.windows(2).all(|w| w[0] < w[1]));
        let z: Vec<Complex64> = (0..5000).map(|k| Complex64::new(k as f64, 0.0)).collect();
        let g = stft_spectrogram_complex(&z, 8000.0, 255, 100, WindowFn::Hann).unwrap();
        assert!(g.freq_axis.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(g.freq_axis[127], 0.0);
    }

    #[test]
    fn stft_size_errors() {
        assert!(stft_spectrogram(&[0.0; 10], 100.0, 16, 4, WindowFn::Hann).is_err());
        assert!(stft_spectrogram(&[0.0; 10], 100.0, 4, 0, WindowFn::Hann).is_err());
    }

    #[test]
    fn padded_silence_has_zero_columns() {
        let mut x = vec![0.0; 4096];
        for (n, v) in x.iter_mut().enumerate().skip(2048) {
            *v = (n as f64 * 0.3).sin();
        }
        let g = stft_spectrogram(&x, 1000.0, 512, 512, WindowFn::Rectangular).unwrap();
        for col in &g.magnitudes[..4] {
            assert!(col.iter().all(|&m| m == 0.0));
        }
        assert!(g.magnitudes[4].iter().any(|&m| m > 0.0));
    }

    #[test]
    fn wigner_of_gaussian_is_isotropic_bump() {
        let n = 64;
        let w = wigner(&gaussian(n)).unwrap();
        let c = n / 2;
        let scale = (2.0 * n as f64).sqrt();
        let mut err = 0.0;
        let mut norm = 0.0;
        for t in 0..n {
            for f in 0..n {
                let u = (t as f64 - c as f64) / 8.0;
                let v = (f as f64 - c as f64) / 8.0;
                let expected = scale * (-2.0 * PI * (u * u + v * v)).exp();
                err += (w.values[t][f] - expected).powi(2);
                norm += expected * expected;
            }
        }
        assert!((err / norm).sqrt() < 0.02);
        assert!(w.imaginary_residue < 1e-9);
    }

    #[test]
    fn wigner_marginal_matches_energy() {
        let x = gaussian_tone(128, 0.1, 1.5);
        let w = wigner(&x).unwrap();
        let energy: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        assert!((w.total_mass() - energy).abs() / energy < 0.05);
    }

    #[test]
    fn wigner_of_impulse_marginal_peaks_at_impulse() {
        let mut v = vec![Complex64::new(0.0, 0.0); 32];
        v[10] = Complex64::new(1.0, 0.0);
        let w = wigner(&ComplexBuffer::new(v).unwrap()).unwrap();
        // the interpolant of an impulse is a sinc, so only the marginal peak is sharp
        let marginal: Vec<f64> = w.values.iter().map(|row| row.iter().sum()).collect();
        let arg = (0..32).max_by(|&a, &b| marginal[a].total_cmp(&marginal[b])).unwrap();
        assert_eq!(arg, 10);
        assert!((marginal[10] - 32.0).abs() < 1e-9);
    }

    #[test]
    fn wigner_of_real_signal_is_symmetric_in_frequency() {
        let x = ComplexBuffer::from_fn(96, |u| Complex64::new((-u * u).exp() * (3.0 * u).cos(), 0.0)).unwrap();
        let w = wigner(&x).unwrap();
        let c = 48;
        for row in &w.values {
            for d in 1..c {
                assert!((row[c + d] - row[c - d]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn wigner_size_limit() {
        let x = ComplexBuffer::from_real(&[0.0; 513]).unwrap();
        assert_eq!(wigner(&x), Err(FrftError::TooLarge { len: 513, max: 512 }));
    }

    #[test]
    fn rotation_check_identity_and_gaussian() {
        let x = gaussian_tone(64, 0.1, 1.0);
        let r = rotation_check(&x, reduce_order(0.0).unwrap(), Implementation::Fast).unwrap();
        assert_eq!(r.correlation, 1.0);
        let g = gaussian(64);
        for &a in &[0.3, 0.5, 1.2] {
            let r = rotation_check(&g, reduce_order(a).unwrap(), Implementation::Fast).unwrap();
            assert!(r.correlation > 0.99, "a={a}: {r:?}");
        }
    }

    #[test]
    fn chirp_ridge_slope() {
        let fs = 8000.0;
        let x = linear_chirp(0.0, 3000.0, 8000, fs);
        let g = stft_spectrogram(&x, fs, 256, 64, WindowFn::Hann).unwrap();
        let lines = ridge_fit(&g, &RidgeRegion::whole(&g)).unwrap();
        assert!((lines[0].slope - 3000.0).abs() / 3000.0 < 0.05, "{lines:?}");
    }

    #[test]
    fn tone_ridge_is_flat() {
        let x = sine(&SineSpec::new(440.0, 1.0)).unwrap();
        let g = stft_spectrogram(&x, 44100.0, 2048, 512, WindowFn::Hann).unwrap();
        let lines = ridge_fit(&g, &RidgeRegion::whole(&g)).unwrap();
        let duration = 1.0;
        let bin = 44100.0 / 2048.0;
        assert_eq!(lines.len(), 1);
        assert!(lines[0].slope.abs() < bin / duration);
        assert!((lines[0].intercept - 440.0).abs() < bin);
    }

    #[test]
    fn crossing_chirps_are_separated() {
        let fs = 8000.0;
        let up = linear_chirp(1000.0, 1000.0, 16000, fs);
        let down = linear_chirp(3000.0, -1000.0, 16000, fs);
        let x: Vec<f64> = up.iter().zip(&down).map(|(a, b)| a + 0.8 * b).collect();
        let g = stft_spectrogram(&x, fs, 512, 128, WindowFn::Hann).unwrap();
        let mut region = RidgeRegion::whole(&g);
        region.peaks_per_column = 2;
        region.reference_time = 1.0;
        let lines = ridge_fit(&g, &region).unwrap();
        assert_eq!(lines.len(), 2);
        assert!((lines[0].slope - 1000.0).abs() < 50.0, "{lines:?}");
        assert!((lines[1].slope + 1000.0).abs() < 50.0, "{lines:?}");
        for l in &lines {
            assert!((l.intercept - 2000.0).abs() < 40.0);
        }
    }

    #[test]
    fn empty_region_is_rejected() {
        let x = sine(&SineSpec::new(440.0, 0.2)).unwrap();
        let g = stft_spectrogram(&x, 44100.0, 1024, 512, WindowFn::Hann).unwrap();
        let mut region = RidgeRegion::whole(&g);
        region.t_min = 10.0;
        region.t_max = 11.0;
        assert!(ridge_fit(&g, &region).is_err());
        region.t_max = 1.0;
        assert!(ridge_fit(&g, &region).is_err());
    }
}
