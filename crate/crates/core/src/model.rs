//! The relativistic singular oscillator: parameters, the exponents `α_l` and
//! `ν_l`, the equidistant spectrum, normalization constants and the radial
//! wavefunctions
//!
//! ```text
//! R_nl(ρ) = C_nl (−ρ)^(α_l) M_{ν_l}(ρ) S_n(ρ²; α_l, ν_l, 1/2)
//! ```
//!
//! evaluated anywhere in the strip `|Im ρ| ≤ 2`, so the imaginary shifts
//! `ρ → ρ ± i` of the finite-difference Hamiltonian can be applied exactly.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cdhahn::{cdh_sum, CdhParams};
use crate::error::{Error, Result};
use crate::special::{ln_gamma, m_factor, neg_rho_degree, LogComplex};

/// Model constants. Natural units (`m = ω = ħ = 1`) are the default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub mass: f64,
    pub omega: f64,
    pub light_speed: f64,
    pub coupling: f64,
    pub hbar: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            mass: 1.0,
            omega: 1.0,
            light_speed: 1.0,
            coupling: 0.0,
            hbar: 1.0,
        }
    }
}

impl PhysicalParams {
    /// `m = ω = ħ = 1` with the given speed of light and coupling.
    pub fn natural(light_speed: f64, coupling: f64) -> Self {
        Self {
            light_speed,
            coupling,
            ..Self::default()
        }
    }

    pub fn is_natural(&self) -> bool {
        self.mass == 1.0 && self.omega == 1.0 && self.hbar == 1.0
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("mass", self.mass)?;
        positive("omega", self.omega)?;
        positive("hbar", self.hbar)?;
        positive("light speed", self.light_speed)?;
        if !self.coupling.is_finite() {
            return Err(Error::Domain("coupling must be finite".into()));
        }
        Ok(())
    }

    pub fn rest_energy(&self) -> f64 {
        self.mass * self.light_speed * self.light_speed
    }

    pub fn hbar_omega(&self) -> f64 {
        self.hbar * self.omega
    }

    /// Reduced Compton wavelength `ħ/mc`, the step of the shift operators.
    pub fn compton_wavelength(&self) -> f64 {
        self.hbar / (self.mass * self.light_speed)
    }

    /// Same constants with `c` chosen so that `mc²/ħω = mu`.
    pub fn with_mu(&self, mu: f64) -> Self {
        Self {
            light_speed: (mu * self.hbar * self.omega / self.mass).sqrt(),
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessParams {
    /// `ħω/mc²`
    pub omega0: f64,
    /// `mg/ħ²`
    pub g0: f64,
    /// `mc²/ħω`
    pub mu: f64,
}

impl DimensionlessParams {
    pub fn new(omega0: f64, g0: f64) -> Result<Self> {
        if !(omega0 > 0.0 && omega0.is_finite()) {
            return Err(Error::Domain(format!("omega0 must be positive, got {omega0}")));
        }
        if !g0.is_finite() {
            return Err(Error::Domain("g0 must be finite".into()));
        }
        Ok(Self {
            omega0,
            g0,
            mu: 1.0 / omega0,
        })
    }
}

pub fn to_dimensionless(p: &PhysicalParams) -> Result<DimensionlessParams> {
    p.validate()?;
    let mut d = DimensionlessParams::new(
        p.hbar_omega() / p.rest_energy(),
        p.mass * p.coupling / (p.hbar * p.hbar),
    )?;
    d.mu = p.rest_energy() / p.hbar_omega();
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Self {
        Self { n, l }
    }
}

/// Which branch structure the exponents are in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `α_l, ν_l` real and `≥ 1/2`.
    Real,
    /// `D < 0`: `α_l` and `ν_l` are complex conjugates, the energy stays real.
    ConjugatePair,
    /// Below the collapse point: `α_l` complex, `ν_l` real, complex energy.
    Collapse,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Real => "real",
            Regime::ConjugatePair => "conjugate-pair",
            Regime::Collapse => "collapse",
        }
    }

    pub fn is_normalizable(self) -> bool {
        !matches!(self, Regime::Collapse)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Exponents {
    pub alpha: Complex64,
    pub nu: Complex64,
    /// `ν_l − μ`, evaluated without cancellation.
    pub nu_minus_mu: Complex64,
    pub regime: Regime,
}

/// `D = 1 − 8g₀ω₀² − 4ω₀² l(l+1)`
pub fn discriminant(d: &DimensionlessParams, l: u32) -> f64 {
    let w2 = d.omega0 * d.omega0;
    1.0 - w2 * coupling_strength(d.g0, l)
}

/// `K = 8g₀ + 4l(l+1)`, so that `1 − D = ω₀² K`.
fn coupling_strength(g0: f64, l: u32) -> f64 {
    let l = l as f64;
    8.0 * g0 + 4.0 * l * (l + 1.0)
}

/// Both exponents on the principal branches of the nested square roots.
///
/// `1 − √D` is rewritten as `ω₀² K / (1 + √D)`, which keeps `α_l` accurate
/// when `ω₀ → 0`.
pub fn exponents(d: &DimensionlessParams, l: u32) -> Exponents {
    let w2 = d.omega0 * d.omega0;
    let k = coupling_strength(d.g0, l);
    let disc = discriminant(d, l);

    if disc >= 0.0 {
        let sq = disc.sqrt();
        let radicand_alpha = 1.0 + 2.0 * k / (1.0 + sq);
        let radicand_nu = 1.0 + 2.0 / w2 * (1.0 + sq);
        let root_nu = radicand_nu.sqrt();
        let nu = 0.5 + 0.5 * root_nu;
        // x_ν − 4μ² = 1 − 2K/(1 + √D)
        let nu_minus_mu = 0.5 + 0.5 * (1.0 - 2.0 * k / (1.0 + sq)) / (root_nu + 2.0 * d.mu);
        let (alpha, regime) = if radicand_alpha >= 0.0 {
            (Complex64::new(0.5 + 0.5 * radicand_alpha.sqrt(), 0.0), Regime::Real)
        } else {
            (Complex64::new(0.5, 0.5 * (-radicand_alpha).sqrt()), Regime::Collapse)
        };
        Exponents {
            alpha,
            nu: nu.into(),
            nu_minus_mu: nu_minus_mu.into(),
            regime,
        }
    } else {
        let sq = Complex64::new(disc, 0.0).sqrt();
        let radicand_alpha = 1.0 + 2.0 * k / (1.0 + sq);
        let alpha = 0.5 + 0.5 * radicand_alpha.sqrt();
        let nu = alpha.conj();
        Exponents {
            alpha,
            nu,
            nu_minus_mu: nu - d.mu,
            regime: Regime::ConjugatePair,
        }
    }
}

pub fn alpha_l(d: &DimensionlessParams, l: u32) -> Complex64 {
    exponents(d, l).alpha
}

pub fn nu_l(d: &DimensionlessParams, l: u32) -> Complex64 {
    exponents(d, l).nu
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub n: u32,
    pub l: u32,
    pub alpha: Complex64,
    pub nu: Complex64,
    /// `E_nl = ħω(2n + α_l + ν_l)`, rest energy included.
    pub energy: Complex64,
    /// `E_nl − mc²`
    pub energy_minus_rest: Complex64,
    pub is_real_regime: bool,
    pub regime: Regime,
}

/// Energy level for the given rest energy `mc²`; `ħω = mc² ω₀`.
pub fn energy(d: &DimensionlessParams, q: QuantumNumbers, mc2: f64) -> SpectrumEntry {
    let ex = exponents(d, q.l);
    let hbar_omega = mc2 * d.omega0;
    let two_n = 2.0 * q.n as f64;
    SpectrumEntry {
        n: q.n,
        l: q.l,
        alpha: ex.alpha,
        nu: ex.nu,
        energy: hbar_omega * (two_n + ex.alpha + ex.nu),
        energy_minus_rest: hbar_omega * (two_n + ex.alpha + ex.nu_minus_mu),
        is_real_regime: ex.regime == Regime::Real,
        regime: ex.regime,
    }
}

/// Dimensionless coupling below which the spectrum turns complex:
/// `g₀_crit = −1/8 − ω₀²/32 − l(l+1)/2`.
pub fn collapse_threshold(d: &DimensionlessParams, l: u32) -> f64 {
    let l = l as f64;
    -0.125 - d.omega0 * d.omega0 / 32.0 - 0.5 * l * (l + 1.0)
}

/// The collapse threshold in physical units, `g_crit = g₀_crit ħ²/m`.
pub fn collapse_threshold_physical(p: &PhysicalParams, l: u32) -> Result<f64> {
    let d = to_dimensionless(p)?;
    Ok(collapse_threshold(&d, l) * p.hbar * p.hbar / p.mass)
}

/// Dimensionless coupling above which `D < 0` and `α_l, ν_l` become a
/// conjugate pair: `g₀ = (1 − 4ω₀² l(l+1)) / (8ω₀²)`.
pub fn conjugate_pair_threshold(d: &DimensionlessParams, l: u32) -> f64 {
    let w2 = d.omega0 * d.omega0;
    let l = l as f64;
    (1.0 - 4.0 * w2 * l * (l + 1.0)) / (8.0 * w2)
}

fn ln_factorial(n: u32) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// `C_nl = √(2 / (n! Γ(n+α+ν) Γ(n+α+1/2) Γ(n+ν+1/2)))` in log space.
///
/// In the conjugate-pair regime the factor `e^{π Im α / 2}` is included so
/// that `|i^α|` from the principal branch does not spoil `∫|R|² dρ = 1`.
pub fn norm_constant(d: &DimensionlessParams, q: QuantumNumbers) -> Result<LogComplex> {
    let ex = exponents(d, q.l);
    norm_constant_for(q.n, ex.alpha, ex.nu, ex.regime)
}

fn norm_constant_for(n: u32, alpha: Complex64, nu: Complex64, regime: Regime) -> Result<LogComplex> {
    if !regime.is_normalizable() {
        return Err(Error::Regime {
            what: "normalization constant",
            regime: regime.name(),
        });
    }
    let nf = n as f64;
    let ln_inv = ln_factorial(n)
        + ln_gamma(nf + alpha + nu)?.re
        + ln_gamma(nf + alpha + 0.5)?.re
        + ln_gamma(nf + nu + 0.5)?.re;
    let ln_c = 0.5 * (std::f64::consts::LN_2 - ln_inv) + 0.5 * PI * alpha.im;
    Ok(LogComplex::new(ln_c, 0.0))
}

/// A radial eigenfunction with its exponents and normalization resolved once.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    pub omega0: f64,
    pub g0: f64,
    pub q: QuantumNumbers,
    pub alpha: Complex64,
    pub nu: Complex64,
    /// `E_nl / mc²`
    pub energy_over_mc2: Complex64,
    pub regime: Regime,
    norm: LogComplex,
}

impl RadialState {
    pub fn new(d: &DimensionlessParams, q: QuantumNumbers) -> Result<Self> {
        let ex = exponents(d, q.l);
        let e = energy(d, q, 1.0);
        Self::with_exponents(d, q, ex.alpha, ex.nu, e.energy, ex.regime)
    }

    /// A state built from explicitly supplied exponents and eigenvalue.
    ///
    /// Used to probe the verification layer with deliberately wrong inputs;
    /// no consistency between the arguments is enforced.
    pub fn with_exponents(
        d: &DimensionlessParams,
        q: QuantumNumbers,
        alpha: Complex64,
        nu: Complex64,
        energy_over_mc2: Complex64,
        regime: Regime,
    ) -> Result<Self> {
        let norm = norm_constant_for(q.n, alpha, nu, regime)?;
        Ok(Self {
            omega0: d.omega0,
            g0: d.g0,
            q,
            alpha,
            nu,
            energy_over_mc2,
            regime,
            norm,
        })
    }

    pub fn norm_constant(&self) -> LogComplex {
        self.norm
    }

    pub fn cdh_params(&self) -> CdhParams {
        CdhParams::new(self.alpha, self.nu, Complex64::new(0.5, 0.0))
    }

    /// `E_nl / ħω = 2n + α + ν`
    pub fn energy_over_hbar_omega(&self) -> Complex64 {
        self.energy_over_mc2 / self.omega0
    }

    /// `2g₀ + l(l+1)`, the coefficient of the inverse generalized square.
    pub fn centrifugal_coupling(&self) -> f64 {
        let l = self.q.l as f64;
        2.0 * self.g0 + l * (l + 1.0)
    }

    pub fn polynomial(&self, rho: Complex64) -> Complex64 {
        cdh_sum(self.q.n, rho * rho, &self.cdh_params())
    }

    pub fn eval_log(&self, rho: Complex64) -> Result<LogComplex> {
        if !(rho.im.abs() <= 2.0) || !rho.re.is_finite() {
            return Err(Error::Domain(format!(
                "wavefunction argument must satisfy |Im rho| <= 2, got {rho}"
            )));
        }
        let left = neg_rho_degree(rho, self.alpha)?;
        if left.is_zero() {
            return Ok(LogComplex::ZERO);
        }
        let gamma = m_factor(rho, self.nu, self.omega0)?;
        let poly = LogComplex::from_complex(self.polynomial(rho));
        Ok(self.norm * left * gamma * poly)
    }

    pub fn eval(&self, rho: Complex64) -> Result<Complex64> {
        self.eval_log(rho).map(LogComplex::to_complex)
    }
}

pub fn radial_wavefunction(
    d: &DimensionlessParams,
    q: QuantumNumbers,
    rho: Complex64,
) -> Result<Complex64> {
    RadialState::new(d, q)?.eval(rho)
}

/// Orthonormal spherical harmonic `Y_lm(θ, φ)` with the Condon–Shortley phase.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    if m.unsigned_abs() > l {
        return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    let am = m.unsigned_abs();
    let x = theta.cos();
    let sin_theta = (1.0 - x * x).max(0.0).sqrt();

    // P_m^m, then upward in l
    let mut pmm = 1.0;
    for k in 1..=am {
        pmm *= -((2 * k - 1) as f64) * sin_theta;
    }
    let plm = if l == am {
        pmm
    } else {
        let mut prev = pmm;
        let mut cur = x * (2 * am + 1) as f64 * pmm;
        for ll in (am + 2)..=l {
            let next = ((2 * ll - 1) as f64 * x * cur - (ll + am - 1) as f64 * prev) / (ll - am) as f64;
            prev = cur;
            cur = next;
        }
        cur
    };

    let ln_ratio = ln_factorial(l - am) - ln_factorial(l + am);
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * ln_ratio.exp()).sqrt();
    let y = Complex64::from_polar(norm * plm, am as f64 * phi);
    if m < 0 {
        let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * y.conj())
    } else {
        Ok(y)
    }
}
