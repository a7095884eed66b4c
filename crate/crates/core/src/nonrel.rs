//! The non-relativistic singular oscillator and the sweeps that show the
//! relativistic model approaching it as `μ = mc²/ħω → ∞`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{exponents, to_dimensionless, PhysicalParams, QuantumNumbers, RadialState, Regime};
use crate::special::ln_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonRelParams {
    pub mass: f64,
    pub omega: f64,
    pub coupling: f64,
    pub hbar: f64,
}

impl Default for NonRelParams {
    fn default() -> Self {
        Self {
            mass: 1.0,
            omega: 1.0,
            coupling: 0.0,
            hbar: 1.0,
        }
    }
}

impl From<&PhysicalParams> for NonRelParams {
    fn from(p: &PhysicalParams) -> Self {
        Self {
            mass: p.mass,
            omega: p.omega,
            coupling: p.coupling,
            hbar: p.hbar,
        }
    }
}

impl NonRelParams {
    /// `(2l+1)² + 8mg/ħ²`
    pub fn radicand(&self, l: u32) -> f64 {
        let l = l as f64;
        (2.0 * l + 1.0).powi(2) + 8.0 * self.mass * self.coupling / (self.hbar * self.hbar)
    }

    /// `s` defined by `2s + 1 = 1/2 + (1/2)√((2l+1)² + 8mg/ħ²)`.
    pub fn s(&self, l: u32) -> Result<f64> {
        let r = self.radicand(l);
        if r < 0.0 {
            return Err(Error::Domain(format!(
                "negative radicand {r}: coupling is below the non-relativistic collapse point"
            )));
        }
        Ok((-1.0 + 0.5 + 0.5 * r.sqrt()) / 2.0)
    }

    fn length_scale_inv_sq(&self) -> f64 {
        self.mass * self.omega / self.hbar
    }
}

/// `E = ħω(2n + 1 + (1/2)√((2l+1)² + 8mg/ħ²))`
pub fn nonrel_energy(p: &NonRelParams, n: u32, l: u32) -> Result<f64> {
    let s = p.s(l)?;
    Ok(p.hbar * p.omega * (2.0 * n as f64 + 2.0 * s + 1.5))
}

/// [`nonrel_energy`] continued below the collapse point, where the square
/// root turns imaginary.
pub fn nonrel_energy_complex(p: &NonRelParams, n: u32, l: u32) -> Complex64 {
    let root = Complex64::new(p.radicand(l), 0.0).sqrt();
    p.hbar * p.omega * (2.0 * n as f64 + 1.0 + 0.5 * root)
}

/// Generalized Laguerre polynomial `L_n^α(x)` by upward recurrence.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Radial function in the dimensionless variable `ξ`, normalized so that
/// `∫₀^∞ R² dξ = 1`:
/// `R(ξ) = √(2 n!/Γ(n+2s+3/2)) ξ^{2s+1} e^{−ξ²/2} L_n^{2s+1/2}(ξ²)`.
pub fn nonrel_radial_xi(n: u32, s: f64, xi: f64) -> Result<f64> {
    if xi < 0.0 {
        return Err(Error::Domain(format!("xi must be non-negative, got {xi}")));
    }
    if xi == 0.0 {
        return Ok(0.0);
    }
    let ln_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    let ln_norm = 0.5 * (std::f64::consts::LN_2 + ln_fact - ln_gamma((n as f64 + 2.0 * s + 1.5).into())?.re);
    let ln_mag = ln_norm + (2.0 * s + 1.0) * xi.ln() - 0.5 * xi * xi;
    Ok(ln_mag.exp() * laguerre(n, 2.0 * s + 0.5, xi * xi))
}

/// Radial function in `r` with `ξ = √(mω/ħ) r`, normalized in `dr`.
pub fn nonrel_radial_wavefunction(p: &NonRelParams, n: u32, l: u32, r: f64) -> Result<f64> {
    if r < 0.0 {
        return Err(Error::Domain(format!("r must be non-negative, got {r}")));
    }
    let s = p.s(l)?;
    let beta = p.length_scale_inv_sq();
    Ok(beta.powf(0.25) * nonrel_radial_xi(n, s, beta.sqrt() * r)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitPoint {
    pub mu: f64,
    pub value: f64,
}

fn real_regime_params(template: &PhysicalParams, q: QuantumNumbers, mu: f64) -> Result<crate::model::DimensionlessParams> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!("mu must be positive, got {mu}")));
    }
    let d = to_dimensionless(&template.with_mu(mu))?;
    let regime = exponents(&d, q.l).regime;
    if regime != Regime::Real {
        return Err(Error::Regime {
            what: "limit sweep",
            regime: regime.name(),
        });
    }
    Ok(d)
}

/// `|E − mc² − E_nonrel|` for each `μ`, with `c` adjusted so that `mc²/ħω = μ`.
pub fn energy_limit_sweep(
    template: &PhysicalParams,
    q: QuantumNumbers,
    mu_values: &[f64],
) -> Result<Vec<LimitPoint>> {
    let reference = nonrel_energy(&NonRelParams::from(template), q.n, q.l)?;
    mu_values
        .iter()
        .map(|&mu| {
            let d = real_regime_params(template, q, mu)?;
            let ex = exponents(&d, q.l);
            let binding = template.hbar_omega() * (2.0 * q.n as f64 + ex.alpha.re + ex.nu_minus_mu.re);
            Ok(LimitPoint {
                mu,
                value: (binding - reference).abs(),
            })
        })
        .collect()
}

/// Sup-norm distance on `xi_grid` between `μ^{1/4} |R_rel(√μ ξ)|` and `|R_nonrel(ξ)|`.
///
/// `ρ = √μ ξ`, and the factor `μ^{1/4}` is the Jacobian that carries the
/// unit normalization in `dρ` over to `dξ`.
pub fn wavefunction_limit_sweep(
    template: &PhysicalParams,
    q: QuantumNumbers,
    mu_values: &[f64],
    xi_grid: &[f64],
) -> Result<Vec<LimitPoint>> {
    let s = NonRelParams::from(template).s(q.l)?;
    let reference: Vec<f64> = xi_grid
        .iter()
        .map(|&xi| nonrel_radial_xi(q.n, s, xi).map(f64::abs))
        .collect::<Result<_>>()?;
    mu_values
        .iter()
        .map(|&mu| {
            let d = real_regime_params(template, q, mu)?;
            let state = RadialState::new(&d, q)?;
            let jacobian = mu.powf(0.25);
            let mut worst = 0.0f64;
            for (&xi, &nr) in xi_grid.iter().zip(&reference) {
                let rel = jacobian * state.eval((mu.sqrt() * xi).into())?.norm();
                worst = worst.max((rel - nr).abs());
            }
            Ok(LimitPoint { mu, value: worst })
        })
        .collect()
}

/// Least-squares slope of `ln value` against `ln mu`.
pub fn loglog_slope(points: &[LimitPoint]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.mu.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.value.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
