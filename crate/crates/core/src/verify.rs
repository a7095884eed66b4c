//! Numerical checks that the closed forms solve the finite-difference
//! equations and are orthonormal.
//!
//! Shift operators act exactly: `e^{±i∂ρ} f(ρ) = f(ρ ± i)` and
//! `cosh(i∂ρ) f(ρ) = [f(ρ+i) + f(ρ−i)]/2`, applied to the analytic
//! continuation of the wavefunction. No lattice discretization is involved.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cdhahn::cdh_sum;
use crate::error::{Error, Result};
use crate::model::{DimensionlessParams, QuantumNumbers, RadialState};
use crate::quadrature::{find_cutoff, pairwise_sum, tail_ratio, CompositeRule, PANEL_ORDER};
use crate::special::generalized_degree;

/// Half-width of the window used to detect polynomial zeros near a grid point.
const ZERO_WINDOW: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub grid: Vec<f64>,
    pub residuals: Vec<Complex64>,
    pub relative: Vec<f64>,
    pub max_abs_residual: f64,
    pub max_relative_residual: f64,
    /// Grid points dropped because the polynomial factor vanishes nearby.
    pub skipped: Vec<f64>,
}

impl ResidualReport {
    fn from_rows(rows: Vec<(f64, Complex64, f64)>, skipped: Vec<f64>) -> Self {
        let max_abs_residual = rows.iter().map(|r| r.1.norm()).fold(0.0, f64::max);
        let max_relative_residual = rows.iter().map(|r| r.2).fold(0.0, f64::max);
        let (grid, rest): (Vec<f64>, Vec<(Complex64, f64)>) =
            rows.into_iter().map(|(x, res, rel)| (x, (res, rel))).unzip();
        let (residuals, relative) = rest.into_iter().unzip();
        Self {
            grid,
            residuals,
            relative,
            max_abs_residual,
            max_relative_residual,
            skipped,
        }
    }
}

fn require_normalizable(state: &RadialState, what: &'static str) -> Result<()> {
    if state.regime.is_normalizable() {
        Ok(())
    } else {
        Err(Error::Regime {
            what,
            regime: state.regime.name(),
        })
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    match grid.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
        Some(x) => Err(Error::Domain(format!("residual grid points must be positive, got {x}"))),
        None => Ok(()),
    }
}

fn near_polynomial_zero(state: &RadialState, rho: f64) -> bool {
    if state.q.n == 0 {
        return false;
    }
    let lo = state.polynomial((rho - ZERO_WINDOW).into()).re;
    let hi = state.polynomial((rho + ZERO_WINDOW).into()).re;
    lo == 0.0 || hi == 0.0 || lo.signum() != hi.signum()
}

/// Residual of the dimensionless radial equation
///
/// ```text
/// ½[R(ρ+i) + R(ρ−i)] + ½ω₀² ρ^(2) R(ρ+i) + (2g₀ + l(l+1)) / (2ρ^(2)) R(ρ+i) − (E/mc²) R(ρ)
/// ```
///
/// relative to the largest left-hand term at each point.
pub fn radial_equation_residual(
    d: &DimensionlessParams,
    q: QuantumNumbers,
    grid: &[f64],
) -> Result<ResidualReport> {
    let state = RadialState::new(d, q)?;
    radial_residual_for_state(&state, grid)
}

pub fn radial_residual_for_state(state: &RadialState, grid: &[f64]) -> Result<ResidualReport> {
    require_normalizable(state, "radial equation residual")?;
    check_grid(grid)?;
    let i = Complex64::i();
    let w2 = state.omega0 * state.omega0;
    let coupling = state.centrifugal_coupling();

    let mut rows = Vec::with_capacity(grid.len());
    let mut skipped = Vec::new();
    for &x in grid {
        if near_polynomial_zero(state, x) {
            skipped.push(x);
            continue;
        }
        let rho = Complex64::new(x, 0.0);
        let up = state.eval(rho + i)?;
        let down = state.eval(rho - i)?;
        let here = state.eval(rho)?;
        let square = generalized_degree(rho, 2.0.into())?.to_complex();

        let terms = [
            0.5 * up,
            0.5 * down,
            0.5 * w2 * square * up,
            coupling / (2.0 * square) * up,
        ];
        let lhs: Complex64 = terms.iter().sum();
        let residual = lhs - state.energy_over_mc2 * here;
        let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        rows.push((x, residual, relative(residual, scale)));
    }
    Ok(ResidualReport::from_rows(rows, skipped))
}

fn relative(residual: Complex64, scale: f64) -> f64 {
    if scale > 0.0 {
        residual.norm() / scale
    } else {
        residual.norm()
    }
}

/// Residual of the polynomial difference equation
///
/// ```text
/// (α+iρ)(ν+iρ) Ω(ρ−i) − (α−iρ)(ν−iρ) Ω(ρ+i) = 2iρ (E/ħω) Ω(ρ)
/// ```
///
/// with `Ω(ρ) = S_n(ρ²; α, ν, 1/2)`.
pub fn omega_equation_residual(
    d: &DimensionlessParams,
    q: QuantumNumbers,
    grid: &[f64],
) -> Result<ResidualReport> {
    let state = RadialState::new(d, q)?;
    omega_residual_with_eigenvalue(&state, state.energy_over_hbar_omega(), grid)
}

/// Same as [`omega_equation_residual`] with an arbitrary eigenvalue `E/ħω`.
pub fn omega_residual_with_eigenvalue(
    state: &RadialState,
    eigenvalue: Complex64,
    grid: &[f64],
) -> Result<ResidualReport> {
    require_normalizable(state, "omega equation residual")?;
    check_grid(grid)?;
    let i = Complex64::i();
    let p = state.cdh_params();
    let (a, b) = (state.alpha, state.nu);
    let omega = |z: Complex64| cdh_sum(state.q.n, z * z, &p);

    let mut rows = Vec::with_capacity(grid.len());
    for &x in grid {
        let rho = Complex64::new(x, 0.0);
        let backward = (a + i * rho) * (b + i * rho) * omega(rho - i);
        let forward = (a - i * rho) * (b - i * rho) * omega(rho + i);
        let rhs = 2.0 * i * rho * eigenvalue * omega(rho);
        let residual = backward - forward - rhs;
        let scale = backward.norm().max(forward.norm()).max(rhs.norm());
        rows.push((x, residual, relative(residual, scale)));
    }
    Ok(ResidualReport::from_rows(rows, Vec::new()))
}

/// Residual `ρ^(2) − ρ(ρ+i)` of the generalized square.
pub fn generalized_degree_identity_check(grid: &[f64]) -> Result<ResidualReport> {
    if let Some(x) = grid.iter().find(|&&x| !(x >= 0.0 && x.is_finite())) {
        return Err(Error::Domain(format!("grid points must be non-negative, got {x}")));
    }
    let i = Complex64::i();
    let mut rows = Vec::with_capacity(grid.len());
    for &x in grid {
        let rho = Complex64::new(x, 0.0);
        let closed = rho * (rho + i);
        let residual = generalized_degree(rho, 2.0.into())?.to_complex() - closed;
        rows.push((x, residual, relative(residual, closed.norm())));
    }
    Ok(ResidualReport::from_rows(rows, Vec::new()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureScheme {
    /// Cutoff extended until the tail is negligible; panels doubled until converged.
    Adaptive,
    /// Exactly `node_count` nodes on `[0, rho_max]`.
    FixedComposite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rho_max: f64,
    pub node_count: usize,
    pub scheme: QuadratureScheme,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rho_max: 40.0,
            node_count: 1024,
            scheme: QuadratureScheme::Adaptive,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho_max > 0.0 && self.rho_max.is_finite()) {
            return Err(Error::Domain("rho_max must be positive".into()));
        }
        if self.node_count < 16 {
            return Err(Error::Domain("node_count must be at least 16".into()));
        }
        Ok(())
    }
}

/// Tail tolerance for the adaptive cutoff and the hard limit for fixed rules.
const ADAPTIVE_TAIL: f64 = 1e-12;
const FIXED_TAIL: f64 = 1e-10;
const DOUBLING_TOL: f64 = 1e-10;
const MAX_PANELS: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    /// `G[n][m] = ∫₀^∞ R_n conj(R_m) dρ` (real part)
    pub matrix: Vec<Vec<f64>>,
    /// Largest imaginary part seen in any entry.
    pub max_imag: f64,
    /// `max |G − I|`
    pub deviation: f64,
    pub rho_max: f64,
    pub node_count: usize,
    /// `(node_count, deviation)` for each refinement level.
    pub history: Vec<(usize, f64)>,
}

fn gram_on(states: &[RadialState], rule: &CompositeRule, rho_max: f64, panels: usize) -> Result<(Vec<Vec<Complex64>>, usize)> {
    let points = rule.points(0.0, rho_max, panels);
    let values: Vec<Vec<Complex64>> = states
        .iter()
        .map(|s| points.iter().map(|&(x, _)| s.eval(x.into())).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let size = states.len();
    let mut g = vec![vec![Complex64::new(0.0, 0.0); size]; size];
    for n in 0..size {
        for m in 0..size {
            let (re, im): (Vec<f64>, Vec<f64>) = points
                .iter()
                .enumerate()
                .map(|(k, &(_, w))| {
                    let v = w * values[n][k] * values[m][k].conj();
                    (v.re, v.im)
                })
                .unzip();
            g[n][m] = Complex64::new(pairwise_sum(&re), pairwise_sum(&im));
        }
    }
    Ok((g, points.len()))
}

fn identity_deviation(g: &[Vec<Complex64>]) -> f64 {
    let mut dev = 0.0f64;
    for (n, row) in g.iter().enumerate() {
        for (m, v) in row.iter().enumerate() {
            let target = if n == m { 1.0 } else { 0.0 };
            dev = dev.max((v - target).norm());
        }
    }
    dev
}

/// Gram matrix of `R_0l … R_{n_max,l}` by composite Gauss–Legendre quadrature.
pub fn orthonormality_matrix(
    d: &DimensionlessParams,
    l: u32,
    n_max: u32,
    spec: &QuadratureSpec,
) -> Result<GramReport> {
    spec.validate()?;
    let states: Vec<RadialState> = (0..=n_max)
        .map(|n| RadialState::new(d, QuantumNumbers::new(n, l)))
        .collect::<Result<_>>()?;
    for s in &states {
        require_normalizable(s, "orthonormality matrix")?;
    }
    let magnitude = |x: f64| {
        states
            .iter()
            .map(|s| s.eval(x.into()).map(|v| v.norm_sqr()).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    };
    let rule = CompositeRule::default();
    let start_panels = (spec.node_count / PANEL_ORDER).max(1);

    let finish = |g: Vec<Vec<Complex64>>, rho_max, node_count, history| {
        let max_imag = g.iter().flatten().map(|v| v.im.abs()).fold(0.0, f64::max);
        GramReport {
            deviation: identity_deviation(&g),
            matrix: g.iter().map(|row| row.iter().map(|v| v.re).collect()).collect(),
            max_imag,
            rho_max,
            node_count,
            history,
        }
    };

    match spec.scheme {
        QuadratureScheme::FixedComposite => {
            let ratio = tail_ratio(spec.rho_max, 400, magnitude);
            if ratio > FIXED_TAIL {
                return Err(Error::Cutoff {
                    rho_max: spec.rho_max,
                    ratio,
                });
            }
            let (g, nodes) = gram_on(&states, &rule, spec.rho_max, start_panels)?;
            let dev = identity_deviation(&g);
            Ok(finish(g, spec.rho_max, nodes, vec![(nodes, dev)]))
        }
        QuadratureScheme::Adaptive => {
            let rho_max = find_cutoff(spec.rho_max, ADAPTIVE_TAIL, magnitude);
            let mut panels = start_panels;
            let (mut g, mut nodes) = gram_on(&states, &rule, rho_max, panels)?;
            let mut history = vec![(nodes, identity_deviation(&g))];
            while panels < MAX_PANELS {
                panels *= 2;
                let (next, next_nodes) = gram_on(&states, &rule, rho_max, panels)?;
                history.push((next_nodes, identity_deviation(&next)));
                let change = g
                    .iter()
                    .flatten()
                    .zip(next.iter().flatten())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                g = next;
                nodes = next_nodes;
                if change < DOUBLING_TOL {
                    break;
                }
            }
            Ok(finish(g, rho_max, nodes, history))
        }
    }
}

/// `count` points from `lo` to `hi`, linear or logarithmic.
pub fn grid(lo: f64, hi: f64, count: usize, log: bool) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    (0..count)
        .map(|k| {
            let t = k as f64 / (count - 1) as f64;
            if log {
                (lo.ln() + t * (hi.ln() - lo.ln())).exp()
            } else {
                lo + t * (hi - lo)
            }
        })
        .collect()
}
