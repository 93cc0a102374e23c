use anharmonic::contfrac::{
    b_sequence, convergent_closed_form, omega_iterate, omega_sequence, p_sequence, q_scaled,
    q_sequence, ConvergentState,
};
use anharmonic::scalar::{DoubleDouble, Scalar};
use anharmonic::slicing::build_grid;
use anharmonic::{Error, ModelParams};
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Continued-fraction constants for `c = 1` at spacing `delta`.
fn state(b: f64, delta: f64) -> ConvergentState {
    let p = ModelParams::new(0.1, b, 1.0, delta * 10.0).unwrap();
    ConvergentState::from_grid(&build_grid(p, 10).unwrap()).unwrap()
}

#[test]
fn roots_solve_characteristic_equation() {
    for b in [-0.5, 0.0, 0.5, 1.0, 5.0] {
        for delta in [1e-3, 0.05, 0.3] {
            let st = state(b, delta);
            let a2 = Complex64::new(st.a * st.a, 0.0);
            for r in [st.rho1, st.rho2] {
                assert!((r * r - r + a2).norm() < 1e-13, "b={b} Δ={delta}");
            }
        }
    }
}

#[test]
fn complex_roots_only_for_negative_b() {
    assert!(state(-0.5, 0.1).rho1.im != 0.0);
    assert_eq!(state(0.5, 0.1).rho1.im, 0.0);
    assert!(state(0.0, 0.1).degenerate);
}

#[test]
fn initial_values() {
    for (b, a) in [(0.1, 0.4), (-0.2, 0.6), (0.0, 0.5)] {
        let st = ConvergentState::new(b, a).unwrap();
        assert!((st.p(0) - (1.0 + 2.0 * b)).abs() < 1e-14);
        assert!((st.q(0) - 2.0).abs() < 1e-14);
        assert!((st.q(1) - (1.0 + 2.0 * b)).abs() < 1e-14);
    }
}

#[test]
fn p_equals_shifted_q() {
    for b in [-0.5, 0.0, 0.5, 1.0, 5.0] {
        let st = state(b, 0.01);
        for n in 0..=200 {
            assert!(rel(st.p(n), st.q(n + 1)) < 1e-12, "b={b} n={n}");
        }
    }
}

#[test]
fn closed_form_matches_recurrence() {
    for b in [-0.5, 0.0, 0.5, 1.0, 5.0, 1e-4] {
        let st = state(b, 0.005);
        let q = q_sequence(st.b, st.a, 200);
        for (n, qn) in q.iter().enumerate() {
            assert!(rel(st.q(n), *qn) < 1e-12, "b={b} n={n}");
        }
    }
}

#[test]
fn iteration_matches_closed_form() {
    for b in [-0.5, 0.0, 0.5, 1.0, 5.0, 1e-4] {
        let st = state(b, 0.005);
        let omegas = omega_sequence(0.5 + st.b, st.a, 200).unwrap();
        for (n, w) in omegas.iter().enumerate() {
            let (p, q, cf) = convergent_closed_form(st.b, st.a, n).unwrap();
            assert!(rel(cf, *w) < 1e-12, "b={b} n={n}");
            assert!(rel(p / q, *w) < 1e-12, "b={b} n={n}");
        }
    }
}

#[test]
fn free_fixed_point() {
    for n in [0, 1, 7, 500] {
        assert_eq!(omega_iterate(0.5, 0.5, n).unwrap(), 0.5);
        let st = ConvergentState::new(0.0, 0.5).unwrap();
        assert!(st.degenerate);
        assert!(rel(st.q(n), 2.0 * 0.5f64.powi(n as i32)) < 1e-14);
        assert!((st.omega(n).unwrap() - 0.5).abs() < 1e-15);
        assert!((q_scaled(&st, n) - 2.0).abs() < 1e-15);
    }
}

#[test]
fn omega_tends_to_larger_root() {
    for b in [0.5, 1.0, 5.0] {
        let st = state(b, 0.3);
        let w = omega_iterate(0.5 + st.b, st.a, 5000).unwrap();
        assert!((w - st.rho1.re).abs() < 1e-12, "b={b}");
        assert!(st.rho1.re > st.rho2.re);
    }
}

#[test]
fn degenerate_form_is_generic_limit() {
    let a = ((1.0 - 1e-12) / 4.0f64).sqrt();
    for b in [0.0, 0.1, 0.7] {
        let generic = ConvergentState::with_degeneracy_threshold(b, a, 0.0).unwrap();
        let double = ConvergentState::with_degeneracy_threshold(b, a, 1.0).unwrap();
        assert!(!generic.degenerate && double.degenerate);
        for n in [0, 1, 5, 50, 200] {
            assert!(rel(generic.q_scaled(n), double.q_scaled(n)) < 1e-6, "B={b} n={n}");
            assert!(rel(generic.p(n), double.p(n)) < 1e-6, "B={b} n={n}");
        }
    }
}

#[test]
fn blow_up_reports_index() {
    match omega_iterate(0.25, 0.5, 4) {
        Err(Error::OmegaBlowUp { index }) => assert_eq!(index, 1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn zero_denominator_reported() {
    // q_1 = 1 + 2B vanishes at B = −1/2
    let st = ConvergentState::new(-0.5, 0.3).unwrap();
    assert!(matches!(st.omega(1), Err(Error::ZeroDenominator { n: 1 })));
    assert!(convergent_closed_form(-0.5, 0.3, 1).is_err());
}

#[test]
fn rejects_bad_constants() {
    assert!(ConvergentState::new(0.1, 0.0).is_err());
    assert!(ConvergentState::new(f64::NAN, 0.3).is_err());
}

#[test]
fn complex_branch_gives_real_values() {
    let st = state(-0.5, 0.2);
    assert!(st.rho1.im.abs() > 0.0);
    for n in 0..60 {
        let n = n as i32;
        let v = st.w1 * (st.rho1 / st.a).powi(n) + st.w2 * (st.rho2 / st.a).powi(n);
        assert!(v.im.abs() < 1e-12 * v.re.abs().max(1.0), "n={n}");
    }
}

#[test]
fn ratio_identity() {
    for b in [-0.5, 0.5, 1.0, 5.0] {
        let st = state(b, 0.005);
        let w = omega_sequence(0.5 + st.b, st.a, 200).unwrap();
        for k in 1..=200 {
            let lhs = st.a * st.a / (w[k - 1] * w[k - 1]);
            let rhs = (st.q_scaled(k - 1) / st.q_scaled(k)).powi(2);
            assert!(rel(lhs, rhs) < 1e-12, "b={b} k={k}");
        }
    }
}

#[test]
fn scaled_q_continuum_limit() {
    let gamma = 2.0f64.sqrt();
    let exact = 2.0 * (gamma * 0.7).cosh();
    let err = |delta: f64| {
        let st = state(1.0, delta);
        (st.q_scaled((0.7 / delta).round() as usize) - exact).abs()
    };
    let (e1, e2, e3) = (err(1e-3), err(5e-4), err(2.5e-4));
    assert!(e1 < 1e-2);
    assert!((e1 / e2 - 2.0).abs() < 0.2 && (e2 / e3 - 2.0).abs() < 0.2, "{e1} {e2} {e3}");
}

#[test]
fn b_sequence_small_cases() {
    let st = state(1.0, 0.05);
    let lambda = 12;
    let last = b_sequence(&st, lambda - 1, lambda).unwrap();
    assert!(rel(last, 1.0 / (st.q_scaled(lambda) * st.q_scaled(lambda - 1))) < 1e-15);
    assert!(b_sequence(&st, lambda, lambda).is_err());

    let free = ConvergentState::new(0.0, 0.5).unwrap();
    for j in 0..20 {
        assert!(rel(b_sequence(&free, j, 20).unwrap(), (20 - j) as f64 / 4.0) < 1e-14);
    }
}

#[test]
fn b_sequence_continuum_factor() {
    // Δγ·b_j tends to (tanh γτ − tanh γx)/4
    let (gamma, tau, x) = (2.0f64.sqrt(), 1.0, 0.3);
    let target = (gamma * tau).tanh() - (gamma * x).tanh();
    let factor = |delta: f64| {
        let st = state(1.0, delta);
        let lambda = (tau / delta).round() as usize;
        let j = (x / delta).round() as usize;
        delta * gamma * b_sequence(&st, j, lambda).unwrap() / target
    };
    let (f1, f2, f3) = (factor(1e-2), factor(5e-3), factor(2.5e-3));
    assert!((f3 - 0.25).abs() < 1e-3, "{f1} {f2} {f3}");
    assert!((f2 - 0.25).abs() < (f1 - 0.25).abs());
    assert!((f3 - 0.25).abs() < (f2 - 0.25).abs());
}

#[test]
fn exact_rational_identities() {
    let b = BigRational::ratio(1, 10);
    let a = BigRational::ratio(2, 5);
    let q = q_sequence(b.clone(), a.clone(), 31);
    let p = p_sequence(b.clone(), a.clone(), 30);
    let half = BigRational::ratio(1, 2);
    let w = omega_sequence(half + b, a, 30).unwrap();
    for n in 0..=30 {
        assert_eq!(p[n], q[n + 1], "n={n}");
        assert_eq!(w[n].clone() * q[n].clone(), q[n + 1], "n={n}");
    }
    // the initial value 1 + 2B − A² does not continue the sequence
    let typo = BigRational::ratio(6, 5) - BigRational::ratio(4, 25);
    assert_ne!(typo, q[2]);
}

#[test]
fn double_double_iteration_tracks_exact() {
    let exact = omega_sequence(BigRational::ratio(3, 5), BigRational::ratio(2, 5), 40).unwrap();
    let dd = omega_sequence(DoubleDouble::ratio(3, 5), DoubleDouble::ratio(2, 5), 40).unwrap();
    for (e, d) in exact.iter().zip(&dd) {
        let diff = (e.clone() - BigRational::from_f64(d.hi()) - BigRational::from_f64(d.lo())).to_f64();
        assert!(diff.abs() < 1e-29 * e.to_f64().abs(), "{diff}");
    }
}

proptest! {
    #[test]
    fn closed_form_omega_matches_iteration(b in -0.4f64..5.0, n in 0usize..150) {
        let st = state(b, 0.004);
        let it = omega_iterate(0.5 + st.b, st.a, n).unwrap();
        prop_assert!(rel(st.omega(n).unwrap(), it) < 1e-12);
    }

    #[test]
    fn shifted_q_identity(bb in -0.3f64..3.0, a in 0.05f64..0.9, n in 0usize..60) {
        let st = ConvergentState::new(bb, a).unwrap();
        let scale = st.q(n + 1).abs().max(st.q(n).abs() * a * a).max(1e-300);
        prop_assert!((st.p(n) - st.q(n + 1)).abs() < 1e-11 * scale);
    }
}
