//! Composite Gauss–Legendre quadrature on `[0, ρ_max]` for integrands that
//! decay exponentially, with a certified cutoff and panel doubling.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

/// Nodes per panel.
pub const PANEL_ORDER: usize = 16;

/// A fixed Gauss–Legendre rule reused across panels.
#[derive(Debug, Clone)]
pub struct CompositeRule {
    reference: Vec<(f64, f64)>,
}

impl Default for CompositeRule {
    fn default() -> Self {
        Self::new(PANEL_ORDER)
    }
}

impl CompositeRule {
    pub fn new(order: usize) -> Self {
        let degree = NonZeroUsize::new(order.max(1)).expect("nonzero order");
        let mut reference = GaussLegendre::new(degree).as_node_weight_pairs().to_vec();
        reference.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self { reference }
    }

    pub fn order(&self) -> usize {
        self.reference.len()
    }

    /// Mapped `(node, weight)` pairs for `panels` equal panels over `[a, b]`.
    pub fn points(&self, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
        let h = (b - a) / panels as f64;
        let mut out = Vec::with_capacity(panels * self.order());
        for p in 0..panels {
            let lo = a + p as f64 * h;
            for &(x, w) in &self.reference {
                out.push((lo + 0.5 * h * (x + 1.0), 0.5 * h * w));
            }
        }
        out
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, panels: usize, mut f: F) -> f64 {
        let terms: Vec<f64> = self
            .points(a, b, panels)
            .into_iter()
            .map(|(x, w)| w * f(x))
            .collect();
        pairwise_sum(&terms)
    }
}

/// Order-independent-of-threading pairwise summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Ratio of the integrand magnitude near `rho_max` to its sampled peak on
/// `[0, rho_max]`. The tail value is the maximum over the last 2% of the range.
pub fn tail_ratio<F: FnMut(f64) -> f64>(rho_max: f64, samples: usize, mut magnitude: F) -> f64 {
    let samples = samples.max(50);
    let mut peak = 0.0f64;
    let mut tail = 0.0f64;
    for k in 1..=samples {
        let x = rho_max * k as f64 / samples as f64;
        let v = magnitude(x).abs();
        peak = peak.max(v);
        if k * 50 >= samples * 49 {
            tail = tail.max(v);
        }
    }
    if peak == 0.0 {
        0.0
    } else {
        tail / peak
    }
}

/// Grows `start` by factors of 1.5 until the tail ratio is below `ratio`.
pub fn find_cutoff<F: FnMut(f64) -> f64>(start: f64, ratio: f64, mut magnitude: F) -> f64 {
    let mut rho_max = start;
    for _ in 0..60 {
        if tail_ratio(rho_max, 400, &mut magnitude) < ratio {
            return rho_max;
        }
        rho_max *= 1.5;
    }
    rho_max
}

/// Integrates a decaying function over `[0, ∞)`: the cutoff is extended until
/// the tail is below `1e-12` of the peak, then panels are doubled until two
/// successive results agree to `tol` (relative to `max(1, |I|)`).
pub fn integrate_decaying<F: FnMut(f64) -> f64>(start: f64, tol: f64, mut f: F) -> f64 {
    let rule = CompositeRule::default();
    let rho_max = find_cutoff(start, 1e-12, &mut f);
    let mut panels = 16;
    let mut prev = rule.integrate(0.0, rho_max, panels, &mut f);
    loop {
        panels *= 2;
        let cur = rule.integrate(0.0, rho_max, panels, &mut f);
        if (cur - prev).abs() <= tol * cur.abs().max(1.0) || panels >= 1 << 14 {
            return cur;
        }
        prev = cur;
    }
}
