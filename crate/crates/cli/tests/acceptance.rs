//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any of them fails.

use std::f64::consts::FRAC_PI_3;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use singular_osc::cdhahn::{cdh_recurrence, cdh_sum, CdhParams};
use singular_osc::model::{
    collapse_threshold, energy, exponents, to_dimensionless, DimensionlessParams, PhysicalParams,
    QuantumNumbers, Regime,
};
use singular_osc::nonrel::{energy_limit_sweep, loglog_slope, nonrel_energy, wavefunction_limit_sweep, NonRelParams};
use singular_osc::planewave::euclidean_limit_check;
use singular_osc::verify::{grid, omega_equation_residual, orthonormality_matrix, radial_equation_residual, QuadratureSpec};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn dimless(omega0: f64, g0: f64) -> DimensionlessParams {
    DimensionlessParams::new(omega0, g0).expect("valid parameters")
}

/// (ω₀, g₀, n, l) over the stated sweep, keeping only real-regime points.
fn real_sweep() -> Vec<(DimensionlessParams, QuantumNumbers)> {
    let mut out = Vec::new();
    for omega0 in [1.0 / 16.0, 0.25, 1.0] {
        for g0 in [0.0, 0.25, 1.0] {
            for l in 0..=4 {
                if exponents(&dimless(omega0, g0), l).regime == Regime::Real {
                    out.extend((0..=5).map(|n| (dimless(omega0, g0), QuantumNumbers::new(n, l))));
                }
            }
        }
    }
    out
}

fn residual_grid() -> Vec<f64> {
    grid(0.1, 30.0, 200, true)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let rho = residual_grid();
    let sweep = real_sweep();
    let mut worst = 0.0f64;
    for (d, q) in &sweep {
        let r = radial_equation_residual(d, *q, &rho).map_err(|e| e.to_string())?;
        worst = worst.max(r.max_relative_residual);
    }
    let secs = start.elapsed().as_secs_f64();
    let msg = format!("{} states, max relative residual {worst:.3e}, {secs:.2} s", sweep.len());
    ensure(worst < 1e-8 && secs < 10.0, msg.clone())?;
    Ok(msg)
}

fn criterion_2() -> Check {
    let rho = residual_grid();
    let (mut worst, mut worst_ground) = (0.0f64, 0.0f64);
    for (d, q) in real_sweep() {
        let r = omega_equation_residual(&d, q, &rho).map_err(|e| e.to_string())?;
        worst = worst.max(r.max_relative_residual);
        if q.n == 0 {
            worst_ground = worst_ground.max(r.max_relative_residual);
        }
    }
    let msg = format!("max relative residual {worst:.3e}, n = 0 max {worst_ground:.3e}");
    ensure(worst < 1e-10 && worst_ground < 1e-13, msg.clone())?;
    Ok(msg)
}

fn criterion_3() -> Check {
    let mut parts = Vec::new();
    for (omega0, g0, l) in [(1.0, 0.0, 0), (0.25, 0.25, 2)] {
        // start coarse so the doubling history shows the approach to convergence
        let spec = QuadratureSpec {
            node_count: 64,
            ..QuadratureSpec::default()
        };
        let report = orthonormality_matrix(&dimless(omega0, g0), l, 4, &spec)
            .map_err(|e| e.to_string())?;
        let tag = format!("(ω₀={omega0}, g₀={g0}, l={l})");
        ensure(report.deviation < 1e-8, format!("{tag} deviation {:.3e}", report.deviation))?;
        ensure(report.max_imag < 1e-8, format!("{tag} imaginary part {:.3e}", report.max_imag))?;
        ensure(report.history.len() >= 2, format!("{tag} no panel doubling"))?;
        let steps: Vec<String> = report.history.iter().map(|(n, d)| format!("{n}:{d:.1e}")).collect();
        parts.push(format!("{tag} dev {:.2e} [nodes:dev {}]", report.deviation, steps.join(" ")));
    }
    Ok(parts.join("; "))
}

fn criterion_4() -> Check {
    let p = PhysicalParams::default();
    let d = to_dimensionless(&p).map_err(|e| e.to_string())?;
    let e00 = energy(&d, QuantumNumbers::new(0, 0), p.rest_energy()).energy;
    let oracle = 1.5 + 0.5 * 5f64.sqrt();
    ensure(e00.im == 0.0 && (e00.re - oracle).abs() < 1e-12, format!("E00 = {e00}, expected {oracle}"))?;

    // spacing across the residual sweep, with a few physical unit choices
    let mut worst_ulps = 0.0f64;
    for (m, w, hbar) in [(1.0, 1.0, 1.0), (2.0, 0.5, 1.0), (1.0, 3.0, 0.7)] {
        for (d, q) in real_sweep() {
            let c = (hbar * w / (m * d.omega0)).sqrt();
            let p = PhysicalParams {
                mass: m,
                omega: w,
                light_speed: c,
                coupling: d.g0 * hbar * hbar / m,
                hbar,
            };
            let dp = to_dimensionless(&p).map_err(|e| e.to_string())?;
            let lo = energy(&dp, q, p.rest_energy()).energy.re;
            let hi = energy(&dp, QuantumNumbers::new(q.n + 1, q.l), p.rest_energy()).energy.re;
            let ulp = f64::EPSILON * hi.abs();
            worst_ulps = worst_ulps.max(((hi - lo) - 2.0 * p.hbar_omega()).abs() / ulp);
        }
    }
    // exact up to the rounding of the two energies themselves
    ensure(worst_ulps <= 4.0, format!("spacing off by {worst_ulps} ulp"))?;
    Ok(format!("E00 = {:.16}, spacing within {worst_ulps} ulp of 2ħω", e00.re))
}

fn criterion_5() -> Check {
    let ground = nonrel_energy(&NonRelParams::default(), 0, 0).map_err(|e| e.to_string())?;
    ensure(ground == 1.5, format!("E_nonrel(0,0,0) = {ground}"))?;
    let mut parts = Vec::new();
    for (n, l, g) in [(0, 0, 0.0), (1, 2, 0.25)] {
        let template = PhysicalParams::natural(1.0, g);
        let pts = energy_limit_sweep(&template, QuantumNumbers::new(n, l), &[1e2, 1e3, 1e4])
            .map_err(|e| e.to_string())?;
        let gaps: Vec<f64> = pts.iter().map(|p| p.value).collect();
        let slope = loglog_slope(&pts);
        let tag = format!("(n={n}, l={l}, g={g})");
        ensure(gaps.windows(2).all(|w| w[1] < w[0]), format!("{tag} gaps not decreasing: {gaps:?}"))?;
        ensure((-1.3..=-0.7).contains(&slope), format!("{tag} slope {slope}"))?;
        parts.push(format!("{tag} slope {slope:.4}"));
    }
    Ok(format!("E_nonrel = 1.5; {}", parts.join(", ")))
}

fn criterion_6() -> Check {
    let xi = grid(0.05, 5.0, 200, false);
    let template = PhysicalParams::natural(1.0, 0.0);
    let mut worst_ratio = f64::INFINITY;
    for n in 0..=1 {
        for l in 0..=1 {
            let pts = wavefunction_limit_sweep(&template, QuantumNumbers::new(n, l), &[1e2, 1e4], &xi)
                .map_err(|e| e.to_string())?;
            let ratio = pts[0].value / pts[1].value;
            ensure(ratio >= 3.0, format!("(n={n}, l={l}) reduction only {ratio:.2}x"))?;
            worst_ratio = worst_ratio.min(ratio);
        }
    }
    Ok(format!("smallest reduction from μ=1e2 to 1e4 is {worst_ratio:.1}x"))
}

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_singosc"))
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn run_cli(args: &[&str], out: &PathBuf) -> Result<Vec<u8>, String> {
    let status = Command::new(bin())
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.code() == Some(0), format!("`singosc {}` exited with {status}", args.join(" ")))?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn criterion_7() -> Check {
    let base = dimless(1.0, 0.0);
    let g_crit = collapse_threshold(&base, 0);
    ensure((g_crit + 5.0 / 32.0).abs() < 1e-15, format!("threshold {g_crit}"))?;
    let above = energy(&dimless(1.0, g_crit + 1e-10), QuantumNumbers::new(0, 0), 1.0).is_real_regime;
    let below = energy(&dimless(1.0, g_crit - 1e-10), QuantumNumbers::new(0, 0), 1.0).is_real_regime;
    ensure(above && !below, "is_real_regime does not flip at the threshold")?;

    let csv = run_cli(&["figure1"], &scratch("figure1_acceptance.csv"))?;
    let text = String::from_utf8(csv).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    ensure(lines.next() == Some("c,l,g,E_re,E_im,E_minus_mc2_re,E_minus_mc2_im"), "unexpected header")?;
    let rows: Vec<Vec<f64>> = lines
        .map(|line| line.split(',').map(|v| v.parse::<f64>().unwrap_or(f64::NAN)).collect())
        .collect();

    let mut series = 0;
    for c in [1.0, 4.0, f64::INFINITY] {
        for l in 0..=2u32 {
            let sweep: Vec<&Vec<f64>> = rows.iter().filter(|r| r[0] == c && r[1] == l as f64).collect();
            ensure(sweep.len() == 401, format!("c={c} l={l}: {} rows", sweep.len()))?;
            let step = sweep[1][2] - sweep[0][2];
            let threshold = if c.is_finite() {
                collapse_threshold(&dimless(1.0 / (c * c), 0.0), l)
            } else {
                -((2 * l + 1) as f64).powi(2) / 8.0
            };
            // complex energies exactly below the threshold, within one grid step
            for r in &sweep {
                let complex = r[4] != 0.0;
                let expected = r[2] < threshold;
                if complex != expected && (r[2] - threshold).abs() > step {
                    return Err(format!("c={c} l={l}: onset mismatch at g={}", r[2]));
                }
            }
            // ground-state energy is non-decreasing in g wherever it is real
            let real: Vec<f64> = sweep.iter().filter(|r| r[4] == 0.0).map(|r| r[3]).collect();
            ensure(
                real.windows(2).all(|w| w[1] >= w[0] - 1e-12),
                format!("c={c} l={l}: E_re not monotone"),
            )?;
            if !c.is_finite() && l == 0 {
                let at_zero = sweep.iter().find(|r| r[2] == 0.0).ok_or("g = 0 missing")?;
                ensure(at_zero[3] == 1.5 && at_zero[4] == 0.0, "c=inf ground state is not 1.5")?;
            }
            series += 1;
        }
    }
    Ok(format!("g_crit = {g_crit}, flip at ±1e-10, {series} figure series with matching onsets"))
}

fn criterion_8() -> Check {
    let sets = [(1.0, 2.0, 0.5), (1.3, 45.0, 0.5), (2.618, 3.618, 0.5)];
    let rel = |a: num_complex::Complex64, b: num_complex::Complex64| (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE);
    let (mut worst_rec, mut worst_perm) = (0.0f64, 0.0f64);
    for (a, b, c) in sets {
        let perms = [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)];
        for n in 0..=12 {
            for k in 0..=80 {
                let x = 0.25 * k as f64;
                let x_sq = (x * x).into();
                let base = CdhParams::real(a, b, c);
                let s = cdh_sum(n, x_sq, &base);
                let r = cdh_recurrence(n, x_sq, &base).map_err(|e| e.to_string())?;
                worst_rec = worst_rec.max(rel(s, r));
                for (p, q, t) in perms {
                    worst_perm = worst_perm.max(rel(s, cdh_sum(n, x_sq, &CdhParams::real(p, q, t))));
                }
            }
        }
    }
    let msg = format!("sum vs recurrence {worst_rec:.2e}, permutations {worst_perm:.2e}");
    ensure(worst_rec < 1e-10 && worst_perm < 1e-10, msg.clone())?;
    Ok(msg)
}

fn criterion_9() -> Check {
    let template = PhysicalParams::default();
    let cs = [10.0, 100.0, 1000.0];
    let r_angle = [FRAC_PI_3.cos(), FRAC_PI_3.sin(), 0.0];
    let probes = [
        ("angle π/3", [1.0, 0.0, 0.0], r_angle),
        ("parallel", [0.0, 0.0, 1.0], [0.0, 0.0, 1.0]),
        ("perpendicular", [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
    ];
    let mut parts = Vec::new();
    for (name, p, r) in probes {
        let pts = euclidean_limit_check(p, r, &cs, &template).map_err(|e| e.to_string())?;
        let devs: Vec<f64> = pts.iter().map(|p| p.deviation).collect();
        ensure(devs.windows(2).all(|w| w[1] < w[0]), format!("{name}: not decreasing {devs:?}"))?;
        parts.push(format!("{name} {:.1e}→{:.1e}", devs[0], devs[2]));
    }
    let zero = euclidean_limit_check([0.0; 3], r_angle, &cs, &template).map_err(|e| e.to_string())?;
    ensure(zero.iter().all(|p| p.deviation == 0.0), "p = 0 deviation is not identically zero")?;
    Ok(format!("{}; p = 0 gives 0", parts.join(", ")))
}

fn criterion_10() -> Check {
    let commands: [&[&str]; 7] = [
        &["spectrum", "--n", "0..3", "--l", "0..2", "--g", "0.25"],
        &["wavefunction", "--n", "0..2", "--l", "0..1", "--omega", "0.25", "--log-grid"],
        &["verify", "--n", "0..2", "--l", "0..1"],
        &["ortho", "--n", "0..3", "--l", "0"],
        &["limits", "--n", "0..1", "--l", "0"],
        &["figure1", "--points", "101"],
        &["planewave", "--p", "0.3,-0.4,1.2"],
    ];
    for args in commands {
        let first = run_cli(args, &scratch(&format!("{}_a.csv", args[0])))?;
        let second = run_cli(args, &scratch(&format!("{}_b.csv", args[0])))?;
        ensure(!first.is_empty() && first == second, format!("`{}` output differs between runs", args[0]))?;
    }
    Ok(format!("{} commands byte-identical across two runs", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("exact-solution residual", criterion_1),
        ("omega-equation residual", criterion_2),
        ("orthonormality", criterion_3),
        ("spectrum values", criterion_4),
        ("non-relativistic energy limit", criterion_5),
        ("wavefunction limit", criterion_6),
        ("collapse boundary", criterion_7),
        ("polynomial cross-validation", criterion_8),
        ("plane-wave limit", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
