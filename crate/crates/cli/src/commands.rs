//! One function per subcommand. Each returns the resolved configuration
//! (echoed into the JSON summary) together with its outcome.

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use singular_osc::model::{
    collapse_threshold, energy, exponents, to_dimensionless, DimensionlessParams, PhysicalParams,
    QuantumNumbers, RadialState,
};
use singular_osc::nonrel::{
    energy_limit_sweep, loglog_slope, nonrel_energy_complex, nonrel_radial_xi, wavefunction_limit_sweep,
    NonRelParams,
};
use singular_osc::planewave::{euclidean_limit_check, xi_eval, MomentumPoint, Vec3};
use singular_osc::verify::{
    generalized_degree_identity_check, grid, omega_equation_residual, orthonormality_matrix,
    radial_equation_residual, QuadratureScheme, QuadratureSpec,
};

use crate::table::{Cell, Table};
use crate::{Common, CouplingGrid, Failure, LightSpeed, LimitArgs, Outcome, PlaneWaveArgs, QuadArgs};

type Run = (Value, Result<Outcome, Failure>);

#[derive(Debug, Clone, Copy)]
struct GridSpec {
    min: f64,
    max: f64,
    count: usize,
    log: bool,
}

impl GridSpec {
    fn resolve(common: &Common, min: f64, max: f64, count: usize) -> Self {
        Self {
            min: common.rho_min.unwrap_or(min),
            max: common.rho_max.unwrap_or(max),
            count: common.points.unwrap_or(count),
            log: common.log_grid,
        }
    }

    fn validate(&self) -> Result<(), Failure> {
        if self.count < 2 {
            return Err(Failure::Config(format!("grid needs at least 2 points, got {}", self.count)));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(Failure::Config(format!("grid needs min < max, got {}..{}", self.min, self.max)));
        }
        if self.log && self.min <= 0.0 {
            return Err(Failure::Config("logarithmic grid needs a positive minimum".into()));
        }
        Ok(())
    }

    fn points(&self) -> Vec<f64> {
        grid(self.min, self.max, self.count, self.log)
    }

    fn json(&self) -> Value {
        json!({ "min": self.min, "max": self.max, "count": self.count, "log": self.log })
    }
}

fn base_config(c: &Common) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("m".into(), json!(c.m));
    m.insert("omega".into(), json!(c.omega));
    m.insert("g".into(), json!(c.g));
    m.insert("c".into(), json!(c.c));
    m.insert("hbar".into(), json!(c.hbar));
    m.insert("n".into(), json!(c.n));
    m.insert("l".into(), json!(c.l));
    m.insert("tolerance".into(), json!(c.tolerance));
    m.insert("out".into(), json!(c.out.as_ref().map(|p| p.display().to_string())));
    m.insert("format".into(), json!(c.format));
    m
}

fn check_ranges(c: &Common) -> Result<(), Failure> {
    for (name, r) in [("n", c.n), ("l", c.l)] {
        if r.is_empty() {
            return Err(Failure::Config(format!("empty {name} range {r}")));
        }
    }
    Ok(())
}

fn physical(c: &Common, light_speed: f64) -> Result<PhysicalParams, Failure> {
    let p = PhysicalParams {
        mass: c.m,
        omega: c.omega,
        light_speed,
        coupling: c.g,
        hbar: c.hbar,
    };
    p.validate()?;
    Ok(p)
}

fn nonrel(c: &Common) -> Result<NonRelParams, Failure> {
    // validate the shared constants with a placeholder finite speed of light
    Ok(NonRelParams::from(&physical(c, 1.0)?))
}

fn finite_c(c: &Common, what: &str) -> Result<PhysicalParams, Failure> {
    match c.c {
        LightSpeed::Finite(v) => physical(c, v),
        LightSpeed::Infinite => Err(Failure::Config(format!("{what} needs a finite speed of light"))),
    }
}

fn pairs(c: &Common) -> impl Iterator<Item = QuantumNumbers> + '_ {
    c.l.iter().flat_map(move |l| c.n.iter().map(move |n| QuantumNumbers::new(n, l)))
}

fn with_config(config: Map<String, Value>, body: impl FnOnce() -> Result<Outcome, Failure>) -> Run {
    (Value::Object(config), body())
}

pub fn spectrum(c: &Common) -> Run {
    with_config(base_config(c), || {
        check_ranges(c)?;
        let mut table = Table::new(&[
            "n", "l", "alpha_re", "alpha_im", "nu_re", "nu_im", "E_re", "E_im", "real_regime", "regime",
        ]);
        match c.c {
            LightSpeed::Finite(v) => {
                let p = physical(c, v)?;
                let d = to_dimensionless(&p)?;
                for q in pairs(c) {
                    let e = energy(&d, q, p.rest_energy());
                    table.push(vec![
                        q.n.into(),
                        q.l.into(),
                        e.alpha.re.into(),
                        e.alpha.im.into(),
                        e.nu.re.into(),
                        e.nu.im.into(),
                        e.energy.re.into(),
                        e.energy.im.into(),
                        e.is_real_regime.into(),
                        e.regime.name().into(),
                    ]);
                }
            }
            LightSpeed::Infinite => {
                // α tends to 2s + 1 and ν grows without bound
                let np = nonrel(c)?;
                for q in pairs(c) {
                    let radicand = np.radicand(q.l);
                    let alpha = 0.5 + 0.5 * Complex64::new(radicand, 0.0).sqrt();
                    let e = nonrel_energy_complex(&np, q.n, q.l);
                    let real = radicand >= 0.0;
                    table.push(vec![
                        q.n.into(),
                        q.l.into(),
                        alpha.re.into(),
                        alpha.im.into(),
                        f64::INFINITY.into(),
                        0.0.into(),
                        e.re.into(),
                        e.im.into(),
                        real.into(),
                        if real { "nonrelativistic" } else { "collapse" }.into(),
                    ]);
                }
            }
        }
        Ok(Outcome {
            table,
            results: Map::new(),
            passed: true,
        })
    })
}

pub fn wavefunction(c: &Common) -> Run {
    let g = GridSpec::resolve(c, 0.1, 30.0, 200);
    let mut config = base_config(c);
    config.insert("grid".into(), g.json());
    with_config(config, || {
        check_ranges(c)?;
        g.validate()?;
        let points = g.points();
        match c.c {
            LightSpeed::Finite(_) => {
                let d = to_dimensionless(&finite_c(c, "wavefunction")?)?;
                let mut table = Table::new(&["n", "l", "rho", "R_re", "R_im", "abs_R_sq"]);
                for q in pairs(c) {
                    let state = RadialState::new(&d, q)?;
                    for &x in &points {
                        let v = state.eval(x.into())?;
                        table.push(vec![q.n.into(), q.l.into(), x.into(), v.re.into(), v.im.into(), v.norm_sqr().into()]);
                    }
                }
                Ok(Outcome {
                    table,
                    results: Map::new(),
                    passed: true,
                })
            }
            LightSpeed::Infinite => {
                let np = nonrel(c)?;
                let mut table = Table::new(&["n", "l", "xi", "R_re", "R_im", "abs_R_sq"]);
                for q in pairs(c) {
                    let s = np.s(q.l).map_err(|e| Failure::Regime(e.to_string()))?;
                    for &x in &points {
                        let v = nonrel_radial_xi(q.n, s, x)?;
                        table.push(vec![q.n.into(), q.l.into(), x.into(), v.into(), 0.0.into(), (v * v).into()]);
                    }
                }
                Ok(Outcome {
                    table,
                    results: Map::new(),
                    passed: true,
                })
            }
        }
    })
}

pub fn verify(c: &Common) -> Run {
    let g = GridSpec::resolve(c, 0.1, 30.0, 200);
    let mut config = base_config(c);
    config.insert("grid".into(), g.json());
    with_config(config, || {
        check_ranges(c)?;
        g.validate()?;
        if !(c.tolerance > 0.0) {
            return Err(Failure::Config(format!("tolerance must be positive, got {}", c.tolerance)));
        }
        let d = to_dimensionless(&finite_c(c, "verify")?)?;
        // refuse collapse-regime requests before doing any work
        for l in c.l.iter() {
            let regime = exponents(&d, l).regime;
            if !regime.is_normalizable() {
                return Err(Failure::Regime(format!("l = {l} is in the {} regime", regime.name())));
            }
        }
        let points = g.points();
        let mut table = Table::new(&["check", "n", "l", "rho", "re_residual", "im_residual", "rel_residual"]);
        let mut worst = [0.0f64; 3];
        let mut worst_abs = 0.0f64;
        let mut skipped = 0usize;
        let push = |table: &mut Table, name: &'static str, n: Cell, l: Cell, r: &singular_osc::verify::ResidualReport| {
            for ((x, v), rel) in r.grid.iter().zip(&r.residuals).zip(&r.relative) {
                table.push(vec![name.into(), n.clone(), l.clone(), (*x).into(), v.re.into(), v.im.into(), (*rel).into()]);
            }
        };
        for q in pairs(c) {
            let radial = radial_equation_residual(&d, q, &points)?;
            let omega = omega_equation_residual(&d, q, &points)?;
            worst[0] = worst[0].max(radial.max_relative_residual);
            worst[1] = worst[1].max(omega.max_relative_residual);
            worst_abs = worst_abs.max(radial.max_abs_residual).max(omega.max_abs_residual);
            skipped += radial.skipped.len();
            push(&mut table, "radial", q.n.into(), q.l.into(), &radial);
            push(&mut table, "omega", q.n.into(), q.l.into(), &omega);
        }
        let identity = generalized_degree_identity_check(&points)?;
        worst[2] = identity.max_relative_residual;
        worst_abs = worst_abs.max(identity.max_abs_residual);
        push(&mut table, "generalized_square", "".into(), "".into(), &identity);

        let max_rel = worst.iter().copied().fold(0.0, f64::max);
        let mut results = Map::new();
        results.insert("max_abs_residual".into(), json!(worst_abs));
        results.insert("max_rel_residual".into(), json!(max_rel));
        results.insert("radial_max_rel_residual".into(), json!(worst[0]));
        results.insert("omega_max_rel_residual".into(), json!(worst[1]));
        results.insert("generalized_square_max_rel_residual".into(), json!(worst[2]));
        results.insert("skipped_near_polynomial_zeros".into(), json!(skipped));
        Ok(Outcome {
            table,
            results,
            passed: max_rel < c.tolerance,
        })
    })
}

pub fn ortho(c: &Common, quad: &QuadArgs) -> Run {
    let spec = QuadratureSpec {
        rho_max: c.rho_max.unwrap_or(QuadratureSpec::default().rho_max),
        node_count: quad.nodes,
        scheme: if quad.fixed {
            QuadratureScheme::FixedComposite
        } else {
            QuadratureScheme::Adaptive
        },
    };
    let mut config = base_config(c);
    config.insert(
        "quadrature".into(),
        json!({ "rho_max": spec.rho_max, "nodes": spec.node_count, "fixed": quad.fixed }),
    );
    with_config(config, || {
        check_ranges(c)?;
        spec.validate()?;
        let d = to_dimensionless(&finite_c(c, "ortho")?)?;
        // the Gram matrix always starts at n = 0; the upper end of --n sets its size
        let n_max = c.n.end;
        let mut table = Table::new(&["l", "i", "j", "value"]);
        let mut deviation = 0.0f64;
        let mut per_l = Vec::new();
        for l in c.l.iter() {
            let report = orthonormality_matrix(&d, l, n_max, &spec)?;
            for (i, row) in report.matrix.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    table.push(vec![l.into(), i.into(), j.into(), (*v).into()]);
                }
            }
            deviation = deviation.max(report.deviation);
            per_l.push(json!({
                "l": l,
                "gram_deviation": report.deviation,
                "max_imag": report.max_imag,
                "rho_max": report.rho_max,
                "nodes": report.node_count,
                "history": report.history,
            }));
        }
        let mut results = Map::new();
        results.insert("gram_deviation".into(), json!(deviation));
        results.insert("per_l".into(), Value::Array(per_l));
        Ok(Outcome {
            table,
            results,
            passed: deviation < c.tolerance,
        })
    })
}

fn strictly_decreasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] < w[0])
}

pub fn limits(c: &Common, args: &LimitArgs) -> Run {
    let g = GridSpec::resolve(c, 0.05, 5.0, 100);
    let mut config = base_config(c);
    config.insert("mu".into(), json!(args.mu));
    config.insert("xi_grid".into(), g.json());
    with_config(config, || {
        check_ranges(c)?;
        g.validate()?;
        let mus = &args.mu.0;
        if mus.is_empty() || mus.iter().any(|m| !(*m > 0.0 && m.is_finite())) {
            return Err(Failure::Config("mu values must be positive and finite".into()));
        }
        // c is derived from each mu; any finite placeholder validates the other constants
        let template = physical(c, 1.0)?;
        let xi = g.points();
        let mut table = Table::new(&["n", "l", "mu", "gap", "sup_dev"]);
        let mut passed = true;
        let mut fits = Vec::new();
        for q in pairs(c) {
            let gaps = energy_limit_sweep(&template, q, mus)?;
            let devs = wavefunction_limit_sweep(&template, q, mus, &xi)?;
            for (gp, dv) in gaps.iter().zip(&devs) {
                table.push(vec![q.n.into(), q.l.into(), gp.mu.into(), gp.value.into(), dv.value.into()]);
            }
            let gap_values: Vec<f64> = gaps.iter().map(|p| p.value).collect();
            let dev_values: Vec<f64> = devs.iter().map(|p| p.value).collect();
            let slope = if gaps.len() >= 2 { loglog_slope(&gaps) } else { f64::NAN };
            let ok = strictly_decreasing(&gap_values) && strictly_decreasing(&dev_values);
            passed &= ok;
            fits.push(json!({ "n": q.n, "l": q.l, "gap_loglog_slope": slope, "decreasing": ok }));
        }
        let mut results = Map::new();
        results.insert("sweeps".into(), Value::Array(fits));
        Ok(Outcome { table, results, passed })
    })
}

pub fn figure1(c: &Common, cg: &CouplingGrid) -> Run {
    let count = c.points.unwrap_or(401);
    let mut config = base_config(c);
    config.insert("g_grid".into(), json!({ "min": cg.g_min, "max": cg.g_max, "count": count }));
    config.insert("c_values".into(), json!([1.0, 4.0, "inf"]));
    with_config(config, || {
        check_ranges(c)?;
        let template = physical(c, 1.0)?;
        if !template.is_natural() {
            return Err(Failure::Config("figure1 needs natural units (m = omega = hbar = 1)".into()));
        }
        let gs = GridSpec {
            min: cg.g_min,
            max: cg.g_max,
            count,
            log: false,
        };
        gs.validate()?;
        let gs = gs.points();
        let mut table = Table::new(&["c", "l", "g", "E_re", "E_im", "E_minus_mc2_re", "E_minus_mc2_im"]);
        let mut onsets = Vec::new();
        for light in [LightSpeed::Finite(1.0), LightSpeed::Finite(4.0), LightSpeed::Infinite] {
            for l in c.l.iter() {
                let q = QuantumNumbers::new(0, l);
                let mut last_complex: Option<f64> = None;
                for &g in &gs {
                    let (cval, e, e_shift) = match light {
                        LightSpeed::Finite(cv) => {
                            let p = PhysicalParams::natural(cv, g);
                            let s = energy(&to_dimensionless(&p)?, q, p.rest_energy());
                            (cv, s.energy, s.energy_minus_rest)
                        }
                        LightSpeed::Infinite => {
                            let np = NonRelParams {
                                coupling: g,
                                ..NonRelParams::default()
                            };
                            let e = nonrel_energy_complex(&np, 0, l);
                            (f64::INFINITY, e, e)
                        }
                    };
                    if e.im != 0.0 {
                        last_complex = Some(g);
                    }
                    table.push(vec![cval.into(), l.into(), g.into(), e.re.into(), e.im.into(), e_shift.re.into(), e_shift.im.into()]);
                }
                let threshold = match light {
                    LightSpeed::Finite(cv) => collapse_threshold(&DimensionlessParams::new(1.0 / (cv * cv), 0.0)?, l),
                    LightSpeed::Infinite => -((2 * l + 1) as f64).powi(2) / 8.0,
                };
                onsets.push(json!({
                    "c": light,
                    "l": l,
                    "collapse_threshold": threshold,
                    "last_g_with_complex_energy": last_complex,
                }));
            }
        }
        let mut results = Map::new();
        results.insert("onsets".into(), Value::Array(onsets));
        Ok(Outcome {
            table,
            results,
            passed: true,
        })
    })
}

fn vec3(list: &[f64], name: &str) -> Result<Vec3, Failure> {
    match list {
        [x, y, z] if list.iter().all(|v| v.is_finite()) => Ok([*x, *y, *z]),
        _ => Err(Failure::Config(format!("--{name} needs three finite components"))),
    }
}

pub fn planewave(c: &Common, args: &PlaneWaveArgs) -> Run {
    let mut config = base_config(c);
    config.insert("p".into(), json!(args.p));
    config.insert("r".into(), json!(args.r));
    config.insert("c_values".into(), json!(args.c_values));
    with_config(config, || {
        let p = vec3(&args.p.0, "p")?;
        let r = vec3(&args.r.0, "r")?;
        let template = physical(c, 1.0)?;
        let cs = &args.c_values.0;
        if cs.is_empty() || cs.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Failure::Config("c values must be positive and finite".into()));
        }
        let pts = euclidean_limit_check(p, r, cs, &template)?;
        let mut table = Table::new(&["c", "deviation", "xi_re", "xi_im"]);
        for pt in &pts {
            let params = PhysicalParams {
                light_speed: pt.light_speed,
                ..template
            };
            let mp = MomentumPoint::on_shell(p, params.mass, pt.light_speed);
            let xi = xi_eval(&mp, r, &params, Some([0.0, 0.0, 1.0]))?;
            table.push(vec![pt.light_speed.into(), pt.deviation.into(), xi.re.into(), xi.im.into()]);
        }
        let devs: Vec<f64> = pts.iter().map(|p| p.deviation).collect();
        let zero = devs.iter().all(|d| *d == 0.0);
        let passed = zero || strictly_decreasing(&devs);
        let mut results = Map::new();
        results.insert("monotone_decrease".into(), json!(strictly_decreasing(&devs)));
        results.insert("identically_zero".into(), json!(zero));
        Ok(Outcome { table, results, passed })
    })
}
