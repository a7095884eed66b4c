//! Continuous dual Hahn polynomials `S_n(x²; a, b, c)`.
//!
//! Conventional (non-monic) normalization:
//!
//! ```text
//! S_n(x²) = (a+b)_n (a+c)_n ₃F₂(−n, a+ix, a−ix; a+b, a+c; 1)
//! ```
//!
//! Two evaluation routes are provided, the terminating hypergeometric sum and
//! the three-term recurrence in `n`; each is used to check the other.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ddouble::{Cdd, DD};
use crate::special::ln_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdhParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl CdhParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self { a, b, c }
    }

    pub fn real(a: f64, b: f64, c: f64) -> Self {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn is_real(&self) -> bool {
        self.a.im == 0.0 && self.b.im == 0.0 && self.c.im == 0.0
    }

    fn real_parts(&self) -> Result<(f64, f64, f64)> {
        if !self.is_real() {
            return Err(Error::Domain(
                "continuous dual Hahn recurrence requires real parameters".into(),
            ));
        }
        Ok((self.a.re, self.b.re, self.c.re))
    }
}

fn pochhammer_dd(a: Cdd, n: u32) -> Cdd {
    let one = Cdd::from_c64(Complex64::new(1.0, 0.0));
    (0..n).fold(one, |acc, k| acc * a.add_f64(k as f64))
}

/// `S_n(x²; a, b, c)` from the terminating ₃F₂ sum.
///
/// Each term is kept in the form `(−n)_k/k! · (a+ix)_k (a−ix)_k · (a+b+k)_{n−k} (a+c+k)_{n−k}`,
/// so no division by `(a+b)_k` occurs. `(a+ix)_k (a−ix)_k = ∏ ((a+j)² + x²)` needs only `x²`.
/// The terms alternate in sign and can exceed the result by ~10⁶ at `n ≈ 12`, so
/// the sum is accumulated in double-double precision.
pub fn cdh_sum(n: u32, x_sq: Complex64, p: &CdhParams) -> Complex64 {
    let a = Cdd::from_c64(p.a);
    let ab = a + Cdd::from_c64(p.b);
    let ac = a + Cdd::from_c64(p.c);
    let x_sq = Cdd::from_c64(x_sq);

    let mut total = Cdd::ZERO;
    let mut head = Cdd::from_c64(Complex64::new(1.0, 0.0));
    for k in 0..=n {
        let kf = k as f64;
        let tail = pochhammer_dd(ab.add_f64(kf), n - k) * pochhammer_dd(ac.add_f64(kf), n - k);
        total = total + head * tail;
        if k < n {
            let shifted = a.add_f64(kf);
            head = (head * (shifted * shifted + x_sq))
                .scale(DD::from_f64(kf - n as f64))
                .div_f64(kf + 1.0);
        }
    }
    total.to_c64()
}

/// `S_n(x²; a, b, c)` from the recurrence
/// `S_{k+1} = (A_k + C_k − a² − x²) S_k − C_k A_{k−1} S_{k−1}` with
/// `A_k = (k+a+b)(k+a+c)` and `C_k = k(k+b+c−1)`.
pub fn cdh_recurrence(n: u32, x_sq: Complex64, p: &CdhParams) -> Result<Complex64> {
    let (a, b, c) = p.real_parts()?;
    let big_a = |k: f64| (k + a + b) * (k + a + c);
    let big_c = |k: f64| k * (k + b + c - 1.0);

    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let kf = k as f64;
        let next = (big_a(kf) + big_c(kf) - a * a - x_sq) * cur
            - if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                big_c(kf) * big_a(kf - 1.0) * prev
            };
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Orthogonality weight `|Γ(a+ix) Γ(b+ix) Γ(c+ix) / Γ(2ix)|²` for real positive parameters.
pub fn cdh_weight(x: f64, p: &CdhParams) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("weight needs x > 0, got {x}")));
    }
    let (a, b, c) = p.real_parts()?;
    if a <= 0.0 || b <= 0.0 || c <= 0.0 {
        return Err(Error::Domain("weight needs positive parameters".into()));
    }
    let ix = Complex64::new(0.0, x);
    let ln = ln_gamma(a + ix)?.re + ln_gamma(b + ix)?.re + ln_gamma(c + ix)?.re
        - ln_gamma(2.0 * ix)?.re;
    Ok((2.0 * ln).exp())
}

/// `ln h_n` where `h_n = n! Γ(n+a+b) Γ(n+a+c) Γ(n+b+c)` and
/// `(1/2π) ∫₀^∞ w(x) S_n S_m dx = h_n δ_nm`.
pub fn cdh_ln_squared_norm(n: u32, p: &CdhParams) -> Result<f64> {
    let (a, b, c) = p.real_parts()?;
    let nf = n as f64;
    let ln_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    Ok(ln_fact
        + ln_gamma((nf + a + b).into())?.re
        + ln_gamma((nf + a + c).into())?.re
        + ln_gamma((nf + b + c).into())?.re)
}
