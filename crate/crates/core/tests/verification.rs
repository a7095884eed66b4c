use num_complex::Complex64;
use singular_osc::model::{exponents, DimensionlessParams, QuantumNumbers, RadialState, Regime};
use singular_osc::verify::{
    generalized_degree_identity_check, grid, omega_equation_residual, omega_residual_with_eigenvalue,
    orthonormality_matrix, radial_equation_residual, radial_residual_for_state, QuadratureScheme,
    QuadratureSpec,
};
use singular_osc::Error;

fn d(omega0: f64, g0: f64) -> DimensionlessParams {
    DimensionlessParams::new(omega0, g0).unwrap()
}

fn real_sweep() -> Vec<(DimensionlessParams, QuantumNumbers)> {
    let mut out = Vec::new();
    for omega0 in [1.0 / 16.0, 0.25, 1.0] {
        for g0 in [0.0, 0.25, 1.0] {
            for l in 0..=4 {
                if exponents(&d(omega0, g0), l).regime != Regime::Real {
                    continue;
                }
                for n in 0..=5 {
                    out.push((d(omega0, g0), QuantumNumbers::new(n, l)));
                }
            }
        }
    }
    out
}

#[test]
fn radial_residual_over_the_real_sweep() {
    let rho = grid(0.1, 30.0, 200, true);
    let sweep = real_sweep();
    assert!(!sweep.is_empty());
    for (dd, q) in sweep {
        let report = radial_equation_residual(&dd, q, &rho).unwrap();
        assert!(report.max_relative_residual < 1e-8, "{dd:?} {q:?}: {}", report.max_relative_residual);
        assert!(report.skipped.len() < 10);
    }
}

#[test]
fn omega_residual_over_the_real_sweep() {
    let rho = grid(0.1, 30.0, 200, true);
    for (dd, q) in real_sweep() {
        let report = omega_equation_residual(&dd, q, &rho).unwrap();
        let bound = if q.n == 0 { 1e-13 } else { 1e-10 };
        assert!(report.max_relative_residual < bound, "{dd:?} {q:?}: {}", report.max_relative_residual);
    }
}

#[test]
fn conjugate_pair_states_also_solve_the_equation() {
    let rho = grid(0.1, 20.0, 100, true);
    for (omega0, g0, n, l) in [(0.25, 0.25, 2, 2), (0.5, 0.25, 3, 2), (1.0, 0.0, 1, 1)] {
        let dd = d(omega0, g0);
        assert_eq!(exponents(&dd, l).regime, Regime::ConjugatePair);
        let report = radial_equation_residual(&dd, QuantumNumbers::new(n, l), &rho).unwrap();
        assert!(report.max_relative_residual < 1e-8, "{omega0} {g0} {n} {l}");
    }
}

#[test]
fn perturbed_parameters_break_the_equation() {
    let rho = grid(0.1, 30.0, 200, true);
    for (omega0, g0, n, l) in [(1.0, 0.0, 0, 0), (0.25, 1.0, 2, 1), (1.0 / 16.0, 0.25, 3, 3)] {
        let dd = d(omega0, g0);
        let q = QuantumNumbers::new(n, l);
        let exact = radial_equation_residual(&dd, q, &rho).unwrap().max_relative_residual;
        let base = RadialState::new(&dd, q).unwrap();
        let perturbed = [
            (base.alpha * 1.01, base.nu, base.energy_over_mc2),
            (base.alpha, base.nu * 1.01, base.energy_over_mc2),
            (base.alpha, base.nu, base.energy_over_mc2 * 1.01),
        ];
        for (alpha, nu, e) in perturbed {
            let s = RadialState::with_exponents(&dd, q, alpha, nu, e, Regime::Real).unwrap();
            let broken = radial_residual_for_state(&s, &rho).unwrap().max_relative_residual;
            assert!(broken > 1e3 * exact.max(1e-16), "{omega0} {g0} {q:?}: {broken} vs {exact}");
        }
        let wrong = omega_residual_with_eigenvalue(&base, base.energy_over_hbar_omega() * 1.01, &rho)
            .unwrap()
            .max_relative_residual;
        assert!(wrong > 1e-6);
    }
}

#[test]
fn generalized_square_identity() {
    let report = generalized_degree_identity_check(&grid(0.0, 50.0, 501, false)).unwrap();
    assert!(report.max_relative_residual < 1e-12);
    assert!(generalized_degree_identity_check(&[-1.0]).is_err());
}

#[test]
fn collapse_regime_is_refused() {
    let dd = d(1.0, -1.0);
    let q = QuantumNumbers::new(0, 0);
    assert!(matches!(radial_equation_residual(&dd, q, &[1.0]), Err(Error::Regime { .. })));
    assert!(matches!(omega_equation_residual(&dd, q, &[1.0]), Err(Error::Regime { .. })));
    assert!(matches!(
        orthonormality_matrix(&dd, 0, 2, &QuadratureSpec::default()),
        Err(Error::Regime { .. })
    ));
}

#[test]
fn gram_matrices_for_both_reference_cases() {
    for (omega0, g0, l) in [(1.0, 0.0, 0), (0.25, 0.25, 2)] {
        let report = orthonormality_matrix(&d(omega0, g0), l, 4, &QuadratureSpec::default()).unwrap();
        assert!(report.deviation < 1e-8, "{omega0} {g0} {l}: {}", report.deviation);
        assert!(report.max_imag < 1e-8);
        assert!(report.history.len() >= 2, "no panel doubling recorded");
        let (_, last) = *report.history.last().unwrap();
        assert!(last < 1e-8);
        // the matrix is symmetric up to quadrature rounding
        for i in 0..5 {
            for j in 0..5 {
                assert!((report.matrix[i][j] - report.matrix[j][i]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn gram_convergence_is_monotone_beyond_256_nodes() {
    let dd = d(0.25, 1.0);
    let mut last = f64::INFINITY;
    for nodes in [256usize, 512, 1024, 2048] {
        let spec = QuadratureSpec {
            rho_max: 60.0,
            node_count: nodes,
            scheme: QuadratureScheme::FixedComposite,
        };
        let dev = orthonormality_matrix(&dd, 1, 3, &spec).unwrap().deviation;
        // once at the rounding floor the deviation may jitter by a few ulps
        assert!(dev <= last || dev < 1e-13, "{nodes}: {dev} after {last}");
        last = dev;
    }
    assert!(last < 1e-10);
}

#[test]
fn fixed_cutoff_that_clips_the_tail_is_reported() {
    let spec = QuadratureSpec {
        rho_max: 5.0,
        node_count: 256,
        scheme: QuadratureScheme::FixedComposite,
    };
    assert!(matches!(
        orthonormality_matrix(&d(0.25, 0.0), 0, 2, &spec),
        Err(Error::Cutoff { .. })
    ));
    let bad = QuadratureSpec {
        node_count: 4,
        ..QuadratureSpec::default()
    };
    assert!(orthonormality_matrix(&d(1.0, 0.0), 0, 1, &bad).is_err());
}

#[test]
fn residual_is_zero_where_the_wavefunction_is() {
    let state = RadialState::new(&d(0.25, 0.0), QuantumNumbers::new(0, 0)).unwrap();
    assert_eq!(state.eval(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
}
