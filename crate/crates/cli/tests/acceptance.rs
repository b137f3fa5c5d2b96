//! Acceptance suite: every criterion at its stated tolerance, one report
//! line each. Exits non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::path::Path;
use std::time::{Duration, Instant};

use frft_cli::config::{render, ImplementationName};
use frft_cli::presets::{configs, run_preset, Manifest, Preset, MANIFEST_NAME};
use frft_core::analysis::{predicted_tone_ridge, ridge_fit, rotation_check, RidgeRegion};
use frft_core::buffer::relative_l2_error;
use frft_core::filtering::{alpha_filter, gaussian_cosine_ir, AlphaFilterSpec, CenterSchedule};
use frft_core::framing::{process_signal, OrderSchedule, Projection, WindowFn, WindowSpec};
use frft_core::signals::{gaussian, gaussian_enveloped_random, gaussian_tone, DEFAULT_SEED};
use frft_core::{frft, frft_inverse, reduce_order, Complex64, FrftOrder, Implementation};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn order(a: f64) -> FrftOrder {
    reduce_order(a).unwrap()
}

fn naive_centered_dft(x: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = x.len();
    let c = (n / 2) as f64;
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|m| {
            x.iter()
                .enumerate()
                .map(|(k, &v)| v * Complex64::from_polar(1.0, -sign * 2.0 * PI * (k as f64 - c) * (m as f64 - c) / n as f64))
                .sum::<Complex64>()
                * scale
        })
        .collect()
}

fn energy(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

const BOTH: [Implementation; 2] = [Implementation::Fast, Implementation::Direct];
const ORACLE_ORDERS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 1.3];
const INVERSE_ORDERS: [f64; 4] = [0.01, 0.25, 0.5, 1.0];

fn integer_orders() -> Outcome {
    let mut worst = 0.0f64;
    for n in [64usize, 1024] {
        let x = gaussian_enveloped_random(n, DEFAULT_SEED);
        let c = n / 2;
        let cases = [
            (0.0, x.to_vec()),
            (1.0, naive_centered_dft(&x, 1.0)),
            (-1.0, naive_centered_dft(&x, -1.0)),
            (2.0, (0..n).map(|k| x[(2 * c + n - k) % n]).collect()),
        ];
        for (a, expected) in &cases {
            for implementation in BOTH {
                worst = worst.max(relative_l2_error(&frft(&x, order(*a), implementation).unwrap(), expected));
            }
        }
    }
    outcome(worst <= 1e-12, format!("max relative error {worst:.2e} (tol 1e-12)"))
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for n in [64usize, 256, 1024] {
        let x = gaussian_enveloped_random(n, DEFAULT_SEED);
        for a in ORACLE_ORDERS {
            let fast = frft(&x, order(a), Implementation::Fast).unwrap();
            let direct = frft(&x, order(a), Implementation::Direct).unwrap();
            worst = worst.max(relative_l2_error(&fast, &direct));
        }
    }
    outcome(worst < 1e-2, format!("max relative L2 {worst:.2e} (tol 1e-2)"))
}

fn unitarity() -> Outcome {
    let (mut fast, mut direct) = (0.0f64, 0.0f64);
    for n in [64usize, 256, 1024] {
        let x = gaussian_enveloped_random(n, DEFAULT_SEED);
        let e = energy(&x);
        for a in ORACLE_ORDERS {
            let y = frft(&x, order(a), Implementation::Fast).unwrap();
            fast = fast.max((energy(&y) - e).abs() / e);
            if n <= 512 {
                let y = frft(&x, order(a), Implementation::Direct).unwrap();
                direct = direct.max((energy(&y) - e).abs() / e);
            }
        }
    }
    outcome(
        fast < 1e-3 && direct < 1e-4,
        format!("energy deviation fast {fast:.2e} (tol 1e-3), direct {direct:.2e} (tol 1e-4)"),
    )
}

fn additivity() -> Outcome {
    let x = gaussian_enveloped_random(1024, DEFAULT_SEED);
    let two = frft(&frft(&x, order(0.3), Implementation::Fast).unwrap(), order(0.2), Implementation::Fast).unwrap();
    let one = frft(&x, order(0.5), Implementation::Fast).unwrap();
    let diff: Vec<Complex64> = two.iter().zip(one.iter()).map(|(a, b)| a - b).collect();
    let err = (energy(&diff) / energy(&x)).sqrt();
    outcome(err < 2e-2, format!("|F0.2 F0.3 x - F0.5 x| / |x| = {err:.2e} (tol 2e-2)"))
}

fn inverse_round_trip() -> Outcome {
    let (mut fast, mut direct) = (0.0f64, 0.0f64);
    for n in [64usize, 256, 1024] {
        let x = gaussian_enveloped_random(n, DEFAULT_SEED);
        for a in INVERSE_ORDERS {
            let back = |implementation| {
                let y = frft(&x, order(a), implementation).unwrap();
                relative_l2_error(&frft_inverse(&y, order(a), implementation).unwrap(), &x)
            };
            fast = fast.max(back(Implementation::Fast));
            if n <= 512 {
                direct = direct.max(back(Implementation::Direct));
            }
        }
    }
    outcome(
        fast < 1e-2 && direct < 1e-4,
        format!("round-trip error fast {fast:.2e} (tol 1e-2), direct {direct:.2e} (tol 1e-4)"),
    )
}

fn gaussian_eigenfunction() -> Outcome {
    let mut worst = 0.0f64;
    let orders = [0.01, 0.1, 0.25, 0.5, 0.75, 1.0, 1.3, -1.0, 2.0];
    for n in [64usize, 256, 1024] {
        let g = gaussian(n);
        for a in orders {
            for implementation in BOTH {
                worst = worst.max(relative_l2_error(&frft(&g, order(a), implementation).unwrap(), &g));
            }
        }
    }
    outcome(worst < 1e-2, format!("max relative error {worst:.2e} (tol 1e-2)"))
}

fn wigner_rotation() -> Outcome {
    let x = gaussian_tone(128, 0.1, 1.0);
    let mut parts = Vec::new();
    let mut ok = true;
    for a in [0.25, 0.5] {
        let r = rotation_check(&x, order(a), Implementation::Fast).unwrap();
        ok &= r.correlation >= 0.95;
        parts.push(format!("a={a}: {:.4} ({:?})", r.correlation, r.orientation));
    }
    let zero = rotation_check(&x, order(0.0), Implementation::Fast).unwrap().correlation;
    ok &= zero == 1.0;
    parts.push(format!("a=0: {zero}"));
    outcome(ok, format!("{} (tol >= 0.95, exactly 1 at a=0)", parts.join(", ")))
}

fn classical_filter_anchor() -> Outcome {
    let (fs, len) = (44_100.0, 1024usize);
    let x: Vec<f64> = (0..6000)
        .map(|n| {
            let t = n as f64 / fs;
            (2.0 * PI * 300.0 * t).sin() + 0.6 * (2.0 * PI * 1000.0 * t).cos() + 0.3 * (2.0 * PI * 7000.0 * t).sin()
        })
        .collect();
    let window = WindowSpec::with_half_hop(len).unwrap();
    let spec = AlphaFilterSpec {
        bandwidth: 1.0,
        center: CenterSchedule::Constant(1000.0),
        order: order(1.0),
        window,
        sample_rate: fs,
    };
    let got = alpha_filter(&x, &spec, Implementation::Fast).unwrap();

    let to_complex = |v: &[f64]| v.iter().map(|&r| Complex64::new(r, 0.0)).collect::<Vec<_>>();
    let h = naive_centered_dft(&to_complex(&gaussian_cosine_ir(1.0, 1000.0, len, fs)), 1.0);
    let hann: Vec<f64> = (0..len).map(|i| 0.5 - 0.5 * (2.0 * PI * i as f64 / len as f64).cos()).collect();
    let hop = len / 2;
    let mut acc = vec![0.0; x.len()];
    let mut weight = vec![0.0; x.len()];
    for start in (0..(x.len() - len).div_ceil(hop) + 1).map(|m| m * hop) {
        let frame: Vec<f64> = (0..len).map(|i| x.get(start + i).copied().unwrap_or(0.0)).collect();
        let spectrum = naive_centered_dft(&to_complex(&frame), 1.0);
        let product: Vec<Complex64> = spectrum.iter().zip(&h).map(|(a, b)| a * b).collect();
        let y = naive_centered_dft(&product, -1.0);
        for i in 0..len.min(x.len().saturating_sub(start)) {
            acc[start + i] += hann[i] * y[i].re;
            weight[start + i] += hann[i];
        }
    }
    let expected: Vec<f64> = acc.iter().zip(&weight).map(|(a, w)| a / w.max(0.1)).collect();
    let num: f64 = got.iter().zip(&expected).map(|(a, b)| (a - b).powi(2)).sum();
    let den: f64 = expected.iter().map(|b| b * b).sum();
    let err = (num / den).sqrt();
    outcome(err < 1e-6, format!("relative error vs DFT-multiply-IDFT {err:.2e} (tol 1e-6)"))
}

fn figure2_config(a: f64, projection: &str) -> frft_cli::config::RenderConfig {
    let name = format!("figure2_f11025_a{a}_{projection}");
    let (entry, config) = configs(Preset::Figure2, Path::new("unused"), ImplementationName::Fast)
        .into_iter()
        .find(|(entry, _)| entry.name == name)
        .expect("figure2 render present");
    assert_eq!(entry.parameters.samples, 524_288);
    config
}

fn mirrored_chirps() -> Outcome {
    let (fs, n, f0) = (44_100.0, 524_288usize, 11_025.0);
    let center_time = (n / 2) as f64 / fs;
    let (slope, intercept) = predicted_tone_ridge(f0, order(0.3), n, fs).unwrap();
    let region = |grid: &frft_core::analysis::SpectrogramGrid, peaks| RidgeRegion {
        t_min: 1.5,
        t_max: 10.4,
        f_min: 0.0,
        f_max: grid.freq_axis.last().copied().unwrap(),
        peaks_per_column: peaks,
        reference_time: center_time,
    };
    let spectrogram = frft_cli::config::SpectrogramConfig {
        window: 4096,
        hop: 2048,
        window_fn: frft_cli::config::WindowName::Hann,
    };

    let real = render(&figure2_config(0.3, "real")).unwrap();
    assert_eq!(real.samples.len(), n);
    let grid = real.spectrogram(spectrogram).unwrap();
    let lines = ridge_fit(&grid, &region(&grid, 2)).unwrap();
    let (s1, s2) = (lines[0].slope, lines.get(1).map_or(f64::NAN, |l| l.slope));
    let (i1, i2) = (lines[0].intercept, lines.get(1).map_or(f64::NAN, |l| l.intercept));
    let mirrored = lines.len() == 2 && (s1 + s2).abs() <= 0.15 * s1.abs().max(s2.abs()) && s1 * s2 < 0.0;
    let shared = (i1 - f0).abs() <= 0.15 * f0 && (i2 - f0).abs() <= 0.15 * f0 && (i1 - i2).abs() <= 0.15 * f0;

    let complex = render(&figure2_config(0.3, "complex")).unwrap();
    let grid = complex.spectrogram(spectrogram).unwrap();
    let single = ridge_fit(&grid, &region(&grid, 2)).unwrap();
    let sc = single[0].slope;
    let matches = single.len() == 1 && (sc - slope).abs() <= 0.10 * slope.abs();

    outcome(
        mirrored && shared && matches,
        format!(
            "real: slopes {s1:.1}/{s2:.1} Hz/s, intercepts {i1:.1}/{i2:.1} Hz at t={center_time:.3} s \
             (within 15% of {f0} Hz); complex: {} ridge(s), slope {sc:.1} vs predicted {slope:.1} Hz/s \
             through {intercept:.1} Hz (tol 10%)",
            single.len()
        ),
    )
}

fn check_preset_dir(dir: &Path, manifest: &Manifest, preset: Preset) -> Result<(), String> {
    if manifest.renders.len() != preset.render_count() {
        return Err(format!("{} renders, expected {}", manifest.renders.len(), preset.render_count()));
    }
    let on_disk: BTreeSet<String> = std::fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|name| name != MANIFEST_NAME)
        .collect();
    let listed: BTreeSet<String> =
        manifest.renders.iter().flat_map(|r| r.files.all().map(String::from)).collect();
    if on_disk != listed {
        return Err(format!("files on disk and in the manifest differ ({} vs {})", on_disk.len(), listed.len()));
    }
    let from_disk: Manifest =
        serde_json::from_str(&std::fs::read_to_string(dir.join(MANIFEST_NAME)).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    if &from_disk != manifest {
        return Err("manifest on disk differs from the plan".into());
    }
    for r in &manifest.renders {
        let reader = hound::WavReader::open(dir.join(&r.files.wav)).map_err(|e| e.to_string())?;
        if reader.duration() as usize != r.parameters.samples || reader.spec().sample_rate != manifest.sample_rate {
            return Err(format!("{}: {} frames, expected {}", r.files.wav, reader.duration(), r.parameters.samples));
        }
        let csv = std::fs::read_to_string(dir.join(&r.files.csv)).map_err(|e| e.to_string())?;
        let finite = csv.lines().skip(1).flat_map(|l| l.split(',')).all(|v| v.parse::<f64>().is_ok_and(f64::is_finite));
        if !finite {
            return Err(format!("{}: non-finite value", r.files.csv));
        }
        png::Decoder::new(std::fs::File::open(dir.join(&r.files.png)).map_err(|e| e.to_string())?)
            .read_info()
            .map_err(|e| format!("{}: {e}", r.files.png))?;
    }
    Ok(())
}

fn preset_completeness() -> Outcome {
    let root = tempfile::tempdir().unwrap();
    let started = Instant::now();
    let mut counts = Vec::new();
    let mut problems = Vec::new();
    for preset in Preset::ALL {
        match run_preset(preset, root.path(), ImplementationName::Fast) {
            Ok((dir, manifest)) => {
                if let Err(e) = check_preset_dir(&dir, &manifest, preset) {
                    problems.push(format!("{}: {e}", preset.name()));
                }
                counts.push(format!("{}={}", preset.name(), manifest.renders.len()));
            }
            Err(e) => problems.push(format!("{}: {e}", preset.name())),
        }
    }
    let elapsed = started.elapsed();
    let fast_enough = elapsed < Duration::from_secs(600);
    outcome(
        problems.is_empty() && fast_enough,
        format!(
            "{} renders; all durations exact, finite, manifests complete; {:.1} s (limit 600 s){}",
            counts.join(" "),
            elapsed.as_secs_f64(),
            if problems.is_empty() { String::new() } else { format!("; problems: {}", problems.join("; ")) }
        ),
    )
}

fn cola_neutrality() -> Outcome {
    let len = 2048;
    let w = WindowSpec::new(len, len / 2, WindowFn::Hann, WindowFn::Hann).unwrap();
    let x: Vec<f64> = (0..44_100)
        .map(|n| {
            let t = n as f64 / 44_100.0;
            (2.0 * PI * 220.0 * t).sin() + 0.5 * (2.0 * PI * 3137.0 * t + 1.0).cos() + 0.01 * ((n * 7919) % 101) as f64
        })
        .collect();
    let y = process_signal(&x, &w, OrderSchedule::Constant(0.0), Projection::Real, Implementation::Fast).unwrap();
    let worst = x[len..x.len() - len].iter().zip(&y[len..y.len() - len]).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    outcome(
        worst <= 1e-9 * scale.max(1.0) && y.len() == x.len(),
        format!("max steady-state deviation {worst:.2e} (tol 1e-9)"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("integer-order exactness", integer_orders),
        ("fast vs direct oracle equivalence", oracle_equivalence),
        ("unitarity", unitarity),
        ("index additivity", additivity),
        ("inverse round trip", inverse_round_trip),
        ("Gaussian eigenfunction", gaussian_eigenfunction),
        ("Wigner rotation", wigner_rotation),
        ("first-order alpha filter vs classical filtering", classical_filter_anchor),
        ("mirrored chirps of the 11025 Hz tone", mirrored_chirps),
        ("preset completeness", preset_completeness),
        ("overlap-add neutrality at order 0", cola_neutrality),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = std::panic::catch_unwind(run)
            .unwrap_or_else(|_| outcome(false, "panicked"));
        if !result.passed {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {name}: {} [{:.1} s]",
            if result.passed { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            started.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
