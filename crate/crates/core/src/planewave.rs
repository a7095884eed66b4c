//! The relativistic plane wave `ξ(p, r) = ((p₀ − p·n)/mc)^{−1−ir/ƛ}` and its
//! approach to `e^{ip·r/ħ}` as `c → ∞`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PhysicalParams;

pub type Vec3 = [f64; 3];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// An on-shell momentum, `p₀ = √(p² + m²c²)` (in momentum units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumPoint {
    pub p: Vec3,
    pub p0: f64,
}

impl MomentumPoint {
    pub fn on_shell(p: Vec3, mass: f64, light_speed: f64) -> Self {
        let mc = mass * light_speed;
        Self {
            p,
            p0: mc.hypot(norm(p)),
        }
    }
}

/// `ln((p₀ − p·n)/mc)`, using `p₀ − mc = p²/(p₀ + mc)` to keep the
/// logarithm accurate when the base is close to one.
fn ln_base(mp: &MomentumPoint, direction: Vec3, mc: f64) -> f64 {
    let p_sq = dot(mp.p, mp.p);
    let excess = p_sq / (mp.p0 + mc) - dot(mp.p, direction);
    (excess / mc).ln_1p()
}

/// Evaluates `ξ(p, r)`. At `r = 0` the direction is undefined and must be
/// supplied through `direction`; it is ignored otherwise.
pub fn xi_eval(
    mp: &MomentumPoint,
    r_vec: Vec3,
    params: &PhysicalParams,
    direction: Option<Vec3>,
) -> Result<Complex64> {
    params.validate()?;
    let r = norm(r_vec);
    let n = if r > 0.0 {
        [r_vec[0] / r, r_vec[1] / r, r_vec[2] / r]
    } else {
        let d = direction.ok_or_else(|| {
            Error::Domain("plane wave at r = 0 needs an explicit direction".into())
        })?;
        let len = norm(d);
        if !(len > 0.0) {
            return Err(Error::Domain("direction must be a nonzero vector".into()));
        }
        [d[0] / len, d[1] / len, d[2] / len]
    };
    let mc = params.mass * params.light_speed;
    let lb = ln_base(mp, n, mc);
    let exponent = Complex64::new(-1.0, -r / params.compton_wavelength());
    Ok((exponent * lb).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveLimitPoint {
    pub light_speed: f64,
    pub deviation: f64,
}

/// `|ξ(p, r) − e^{ip·r/ħ}|` for each speed of light. Mass and `ħ` come from `template`.
pub fn euclidean_limit_check(
    p_vec: Vec3,
    r_vec: Vec3,
    c_values: &[f64],
    template: &PhysicalParams,
) -> Result<Vec<PlaneWaveLimitPoint>> {
    let euclid = Complex64::new(0.0, dot(p_vec, r_vec) / template.hbar).exp();
    c_values
        .iter()
        .map(|&c| {
            let params = PhysicalParams {
                light_speed: c,
                ..*template
            };
            let mp = MomentumPoint::on_shell(p_vec, params.mass, c);
            let xi = xi_eval(&mp, r_vec, &params, Some([0.0, 0.0, 1.0]))?;
            Ok(PlaneWaveLimitPoint {
                light_speed: c,
                deviation: (xi - euclid).norm(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rest_frame_is_identically_one() {
        let params = PhysicalParams::natural(3.0, 0.0);
        let mp = MomentumPoint::on_shell([0.0; 3], 1.0, 3.0);
        assert_eq!(mp.p0, 3.0);
        for r in [[0.0, 0.0, 1.0], [2.0, -1.0, 0.5]] {
            assert_eq!(xi_eval(&mp, r, &params, None).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn perpendicular_momentum_modulus() {
        let params = PhysicalParams::natural(2.0, 0.0);
        let mp = MomentumPoint::on_shell([1.5, 0.0, 0.0], 1.0, 2.0);
        let xi = xi_eval(&mp, [0.0, 0.0, 4.0], &params, None).unwrap();
        assert!((xi.norm() - 2.0 / mp.p0).abs() < 1e-15);
        assert!(xi.norm() < 1.0);
    }

    #[test]
    fn origin_needs_direction() {
        let params = PhysicalParams::natural(2.0, 0.0);
        let mp = MomentumPoint::on_shell([1.0, 0.0, 0.0], 1.0, 2.0);
        assert!(xi_eval(&mp, [0.0; 3], &params, None).is_err());
        let xi = xi_eval(&mp, [0.0; 3], &params, Some([1.0, 0.0, 0.0])).unwrap();
        // only the real power survives: mc/(p₀ − p)
        assert!((xi.re - 2.0 / (mp.p0 - 1.0)).abs() < 1e-14 && xi.im == 0.0);
    }

    #[test]
    fn rest_frame_limit_deviation_is_zero() {
        let pts = euclidean_limit_check([0.0; 3], [0.3, 0.2, 0.1], &[10.0, 100.0], &PhysicalParams::default())
            .unwrap();
        assert!(pts.iter().all(|p| p.deviation == 0.0));
    }
}
