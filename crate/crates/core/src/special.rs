//! Complex gamma machinery and the finite-difference analogues of powers.
//!
//! Everything that can overflow is carried as a [`LogComplex`]: the gamma
//! factors in the radial wavefunctions have arguments of order `mc²/ħω`,
//! which reaches 10⁶ in the non-relativistic sweeps.

use std::f64::consts::PI;
use std::ops::{Div, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// Lanczos coefficients, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Wraps an angle into `(-π, π]`.
pub fn wrap_phase(theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

/// A complex number stored as `(ln|z|, arg z)`.
///
/// Zero is represented by `log_mag = -∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogComplex {
    pub log_mag: f64,
    pub phase: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_mag: f64::NEG_INFINITY,
        phase: 0.0,
    };
    pub const ONE: LogComplex = LogComplex {
        log_mag: 0.0,
        phase: 0.0,
    };

    pub fn new(log_mag: f64, phase: f64) -> Self {
        Self {
            log_mag,
            phase: wrap_phase(phase),
        }
    }

    /// Builds from a complex logarithm `w`, i.e. the number `e^w`.
    pub fn from_ln(w: Complex64) -> Self {
        Self::new(w.re, w.im)
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        Self {
            log_mag: z.norm().ln(),
            phase: z.arg(),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_mag.exp(), self.phase)
    }

    /// The principal logarithm `ln|z| + i arg z`.
    pub fn ln(self) -> Complex64 {
        Complex64::new(self.log_mag, self.phase)
    }

    pub fn is_zero(self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn abs(self) -> f64 {
        self.log_mag.exp()
    }

    pub fn conj(self) -> Self {
        if self.is_zero() {
            return self;
        }
        Self::new(self.log_mag, -self.phase)
    }

    pub fn powf(self, p: f64) -> Self {
        if self.is_zero() {
            return if p == 0.0 { Self::ONE } else { Self::ZERO };
        }
        Self::new(self.log_mag * p, self.phase * p)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by zero in log space".into()));
        }
        Ok(self / rhs)
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_mag + rhs.log_mag, self.phase + rhs.phase)
    }
}

impl Div for LogComplex {
    type Output = LogComplex;

    /// Division by [`LogComplex::ZERO`] yields `+∞` magnitude; use
    /// [`LogComplex::checked_div`] when the divisor may vanish.
    fn div(self, rhs: Self) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_mag - rhs.log_mag, self.phase - rhs.phase)
    }
}

fn pole_index(z: Complex64) -> Option<u64> {
    if z.re > 0.5 {
        return None;
    }
    let k = z.re.round();
    if (z - Complex64::new(k, 0.0)).norm() <= 1e-300 && k <= 0.0 {
        Some((-k) as u64)
    } else {
        None
    }
}

/// `ln sin(πz)`, modulo 2πi, without overflow for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 10.0 {
        return (z * PI).sin().ln();
    }
    if z.im > 0.0 {
        let tail = (2.0 * PI * i * z).exp();
        -i * PI * z + Complex64::new(-std::f64::consts::LN_2, PI / 2.0) + (1.0 - tail).ln()
    } else {
        let tail = (-2.0 * PI * i * z).exp();
        i * PI * z + Complex64::new(-std::f64::consts::LN_2, -PI / 2.0) + (1.0 - tail).ln()
    }
}

fn ln_gamma_lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_P[0], 0.0);
    for (k, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        series += p / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + series.ln()
}

/// Complex `ln Γ(z)`; the imaginary part is correct modulo 2π.
pub(crate) fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite gamma argument {z}")));
    }
    if pole_index(z).is_some() {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_lanczos(1.0 - z))
    } else {
        Ok(ln_gamma_lanczos(z))
    }
}

/// `ln Γ(z)` with the phase reduced to its principal value.
pub fn log_gamma(z: ComplexScalar) -> Result<LogComplex> {
    ln_gamma(z).map(LogComplex::from_ln)
}

/// `Γ(num) / Γ(den)`, taking the limit when either argument sits on a pole.
pub fn gamma_ratio(num: Complex64, den: Complex64) -> Result<LogComplex> {
    match (pole_index(num), pole_index(den)) {
        (None, Some(_)) => Ok(LogComplex::ZERO),
        (Some(_), None) => Err(Error::Pole {
            re: num.re,
            im: num.im,
        }),
        (Some(j), Some(k)) => {
            // Γ(−j+ε)/Γ(−k+ε) → (−1)^{j+k} k!/j!
            let mut log_mag = 0.0;
            for m in 1..=k {
                log_mag += (m as f64).ln();
            }
            for m in 1..=j {
                log_mag -= (m as f64).ln();
            }
            let phase = if (j + k) % 2 == 0 { 0.0 } else { PI };
            Ok(LogComplex::new(log_mag, phase))
        }
        (None, None) => Ok(LogComplex::from_ln(ln_gamma(num)? - ln_gamma(den)?)),
    }
}

/// `i^δ` on the principal branch, `e^{iπδ/2}`.
pub fn i_pow(delta: Complex64) -> Result<LogComplex> {
    let log_mag = -PI * delta.im / 2.0;
    let phase = PI * delta.re / 2.0;
    if !(log_mag.is_finite() && phase.is_finite()) || log_mag.abs() > 700.0 {
        return Err(Error::Branch {
            re: delta.re,
            im: delta.im,
        });
    }
    Ok(LogComplex::new(log_mag, phase))
}

/// The generalized degree `ρ^(δ) = i^δ Γ(δ − iρ) / Γ(−iρ)`.
///
/// At the zeros of `1/Γ(−iρ)` (including `ρ = 0`) the limit value is returned.
pub fn generalized_degree(rho: ComplexScalar, delta: ComplexScalar) -> Result<LogComplex> {
    let i = Complex64::i();
    let ratio = gamma_ratio(delta - i * rho, -i * rho)?;
    Ok(i_pow(delta)? * ratio)
}

/// `(−ρ)^(α) = i^α Γ(α + iρ) / Γ(iρ)`, the small-ρ factor of the radial ansatz.
pub fn neg_rho_degree(rho: ComplexScalar, alpha: ComplexScalar) -> Result<LogComplex> {
    generalized_degree(-rho, alpha)
}

/// `M_ν(ρ) = ω₀^{iρ} Γ(ν + iρ)`.
pub fn m_factor(rho: ComplexScalar, nu: ComplexScalar, omega0: f64) -> Result<LogComplex> {
    if !(omega0 > 0.0 && omega0.is_finite()) {
        return Err(Error::Domain(format!("omega0 must be positive, got {omega0}")));
    }
    let i = Complex64::i();
    let gamma = ln_gamma(nu + i * rho)?;
    Ok(LogComplex::from_ln(gamma + i * rho * omega0.ln()))
}

/// Rising factorial `(a)_n`.
pub fn pochhammer(a: ComplexScalar, n: u32) -> ComplexScalar {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (a + k as f64))
}
