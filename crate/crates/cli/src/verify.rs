//! Self-check of a build: the transform's defining properties measured on
//! seeded test signals, each against a stated tolerance.

use std::f64::consts::PI;
use std::fmt;

use frft_core::analysis::{rotation_check, wigner};
use frft_core::buffer::relative_l2_error;
use frft_core::filtering::{alpha_filter, gaussian_cosine_ir, AlphaFilterSpec, CenterSchedule};
use frft_core::framing::{process_signal, OrderSchedule, Projection, WindowFn, WindowSpec};
use frft_core::signals::{gaussian, gaussian_enveloped_random, gaussian_tone, DEFAULT_SEED};
use crate::emit::format_g6;
use frft_core::{frft, frft_fast, reduce_order, Complex64, ComplexBuffer, FrftOrder, Implementation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    /// Adds N = 1024 cases and the Wigner-distribution checks.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub bound: Bound,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, measured: f64, bound: Bound, tolerance: f64) -> Self {
        Self { name: name.into(), measured, bound, tolerance }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.measured <= self.tolerance,
            Bound::AtLeast => self.measured >= self.tolerance,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let op = match self.bound {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
        };
        write!(f, "{verdict}  {:<50} {:>10.3e} {op} {}", self.name, self.measured, format_g6(self.tolerance))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub level: Level,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Stand-in for the fast transform under test.
pub type FastTransform<'a> = &'a (dyn Fn(&ComplexBuffer, FrftOrder) -> frft_core::Result<ComplexBuffer> + Sync);

pub fn verify(level: Level) -> Report {
    verify_with(level, &|x: &ComplexBuffer, a| frft_fast(x, a))
}

const ORACLE_ORDERS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 1.3];
const INVERSE_ORDERS: [f64; 4] = [0.01, 0.25, 0.5, 1.0];
const EIGEN_ORDERS: [f64; 8] = [0.01, 0.1, 0.25, 0.5, 0.75, 1.3, 1.5, -0.4];

/// Runs every check with `fast` in place of the fast transform. Errors
/// inside a check count as an infinite measurement.
pub fn verify_with(level: Level, fast: FastTransform<'_>) -> Report {
    let sizes: &[usize] = match level {
        Level::Quick => &[64, 256],
        Level::Full => &[64, 256, 1024],
    };
    let order = |a: f64| reduce_order(a).expect("finite order");
    let direct = |x: &ComplexBuffer, a: FrftOrder| frft(x, a, Implementation::Direct);
    let mut checks = Vec::new();
    let mut push = |name: String, measured: frft_core::Result<f64>, bound, tolerance| {
        checks.push(Check::new(name, measured.unwrap_or(f64::INFINITY), bound, tolerance));
    };

    let integer_sizes: &[usize] = match level {
        Level::Quick => &[64],
        Level::Full => &[64, 1024],
    };
    for &n in integer_sizes {
        let x = gaussian_enveloped_random(n, DEFAULT_SEED);
        let references = [
            (0.0, x.to_vec()),
            (1.0, naive_centered_dft(&x, 1.0)),
            (-1.0, naive_centered_dft(&x, -1.0)),
            (2.0, (0..n).map(|k| x[(2 * (n / 2) + n - k) % n]).collect()),
        ];
        for (label, transform) in [("fast", fast), ("direct", &direct as FastTransform<'_>)] {
            let worst = references.iter().try_fold(0.0f64, |m, (a, reference)| {
                Ok(m.max(relative_l2_error(&transform(&x, order(*a))?, reference)))
            });
            push(format!("integer orders ({label}, N={n})"), worst, Bound::AtMost, 1e-12);
        }
    }

    for &n in sizes {
        let x = gaussian_enveloped_random(n, DEFAULT_SEED);
        let energy = l2(&x).powi(2);
        let max_over = |orders: &[f64], f: &dyn Fn(FrftOrder) -> frft_core::Result<f64>| {
            orders.iter().try_fold(0.0f64, |m, &a| Ok(m.max(f(order(a))?)))
        };
        push(
            format!("fast vs direct oracle (N={n})"),
            max_over(&ORACLE_ORDERS, &|a| Ok(relative_l2_error(&fast(&x, a)?, &direct(&x, a)?))),
            Bound::AtMost,
            1e-2,
        );
        push(
            format!("unitarity, fast (N={n})"),
            max_over(&ORACLE_ORDERS, &|a| Ok((l2(&fast(&x, a)?).powi(2) - energy).abs() / energy)),
            Bound::AtMost,
            1e-3,
        );
        push(
            format!("inverse round trip, fast (N={n})"),
            max_over(&INVERSE_ORDERS, &|a| Ok(relative_l2_error(&fast(&fast(&x, a)?, a.negated())?, &x))),
            Bound::AtMost,
            1e-2,
        );
        if n <= 512 {
            push(
                format!("unitarity, direct (N={n})"),
                max_over(&ORACLE_ORDERS, &|a| Ok((l2(&direct(&x, a)?).powi(2) - energy).abs() / energy)),
                Bound::AtMost,
                1e-4,
            );
            push(
                format!("inverse round trip, direct (N={n})"),
                max_over(&INVERSE_ORDERS, &|a| Ok(relative_l2_error(&direct(&direct(&x, a)?, a.negated())?, &x))),
                Bound::AtMost,
                1e-4,
            );
        }
        let g = gaussian(n);
        push(
            format!("Gaussian eigenfunction, fast (N={n})"),
            max_over(&EIGEN_ORDERS, &|a| Ok(relative_l2_error(&fast(&g, a)?, &g))),
            Bound::AtMost,
            1e-2,
        );
    }

    let n = *sizes.last().expect("non-empty");
    let x = gaussian_enveloped_random(n, DEFAULT_SEED);
    let additivity = (|| {
        let two = fast(&fast(&x, order(0.3))?, order(0.2))?;
        Ok(relative_l2_error(&two, &fast(&x, order(0.5))?))
    })();
    push(format!("index additivity 0.2 + 0.3 (N={n})"), additivity, Bound::AtMost, 2e-2);

    push("first-order alpha filter vs classical filtering".into(), classical_filter_error(), Bound::AtMost, 1e-6);
    push("order-0 overlap-add neutrality (hann/hann, 50%)".into(), cola_error(), Bound::AtMost, 1e-9);

    if level == Level::Full {
        let tone = gaussian_tone(128, 0.1, 1.0);
        for a in [0.25, 0.5] {
            let r = rotation_check(&tone, order(a), Implementation::Fast).map(|r| r.correlation);
            push(format!("Wigner rotation, a={a} (N=128)"), r, Bound::AtLeast, 0.95);
        }
        let r = rotation_check(&tone, order(0.0), Implementation::Fast).map(|r| r.correlation);
        push("Wigner rotation, a=0 (N=128)".into(), r, Bound::AtLeast, 1.0);
        let marginal = wigner(&tone).map(|w| (w.total_mass() - l2(&tone).powi(2)).abs() / l2(&tone).powi(2));
        push("Wigner energy marginal (N=128)".into(), marginal, Bound::AtMost, 5e-2);
    }

    Report { level, checks }
}

fn l2(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// O(N^2) centered unitary DFT from the definition; `sign = -1` inverts.
pub fn naive_centered_dft(x: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = x.len();
    let c = (n / 2) as f64;
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|m| {
            let sum: Complex64 = x
                .iter()
                .enumerate()
                .map(|(k, &v)| v * Complex64::from_polar(1.0, -sign * 2.0 * PI * (k as f64 - c) * (m as f64 - c) / n as f64))
                .sum();
            sum * scale
        })
        .collect()
}

fn classical_filter_error() -> frft_core::Result<f64> {
    let (fs, len) = (44_100.0, 256usize);
    let window = WindowSpec::with_half_hop(len)?;
    let x: Vec<f64> = (0..2000)
        .map(|n| {
            let t = n as f64 / fs;
            (2.0 * PI * 700.0 * t).sin() + 0.4 * (2.0 * PI * 5000.0 * t).cos()
        })
        .collect();
    let spec = AlphaFilterSpec {
        bandwidth: 1.0,
        center: CenterSchedule::Constant(1000.0),
        order: reduce_order(1.0)?,
        window,
        sample_rate: fs,
    };
    let got = alpha_filter(&x, &spec, Implementation::Fast)?;

    // frame, multiply spectra, invert, weighted overlap-add
    let real = |v: &[f64]| v.iter().map(|&r| Complex64::new(r, 0.0)).collect::<Vec<_>>();
    let h = naive_centered_dft(&real(&gaussian_cosine_ir(1.0, 1000.0, len, fs)), 1.0);
    let analysis = window.analysis.coefficients(len);
    let synthesis = window.synthesis.coefficients(len);
    let hop = window.hop();
    let mut acc = vec![0.0; x.len()];
    let mut weight = vec![0.0; x.len()];
    let frames = (x.len() - len).div_ceil(hop) + 1;
    for start in (0..frames).map(|m| m * hop) {
        let frame: Vec<f64> = (0..len).map(|i| x.get(start + i).map_or(0.0, |v| v * analysis[i])).collect();
        let spectrum = naive_centered_dft(&real(&frame), 1.0);
        let product: Vec<Complex64> = spectrum.iter().zip(&h).map(|(a, b)| a * b).collect();
        let y = naive_centered_dft(&product, -1.0);
        for i in 0..len {
            if start + i < x.len() {
                acc[start + i] += synthesis[i] * y[i].re;
                weight[start + i] += synthesis[i] * analysis[i];
            }
        }
    }
    let expected: Vec<f64> = acc.iter().zip(&weight).map(|(a, w)| a / w.max(0.1)).collect();
    let num: f64 = got.iter().zip(&expected).map(|(a, b)| (a - b).powi(2)).sum();
    let den: f64 = expected.iter().map(|b| b * b).sum();
    Ok((num / den).sqrt())
}

fn cola_error() -> frft_core::Result<f64> {
    let len = 512;
    let w = WindowSpec::new(len, len / 2, WindowFn::Hann, WindowFn::Hann)?;
    let x: Vec<f64> = gaussian_enveloped_random(8192, DEFAULT_SEED).iter().map(|z| z.re + z.im).collect();
    let y = process_signal(&x, &w, OrderSchedule::Constant(0.0), Projection::Real, Implementation::Fast)?;
    Ok(x[len..x.len() - len]
        .iter()
        .zip(&y[len..y.len() - len])
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_marks_failures() {
        let c = Check::new("x", 0.5, Bound::AtMost, 0.1);
        assert!(!c.passed());
        assert!(c.to_string().starts_with("FAIL"));
        assert!(Check::new("y", 1.0, Bound::AtLeast, 1.0).passed());
    }

    #[test]
    fn classical_anchor_holds() {
        assert!(classical_filter_error().unwrap() < 1e-6);
    }
}
