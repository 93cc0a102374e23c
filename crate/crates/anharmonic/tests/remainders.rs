use anharmonic::remainders::{
    bound_difference_piece, bound_poincare_piece, bound_tail_piece, budget, certify_decay, log_k0_rule,
    log_log_slope, worst_budget, F0_SAFETY,
};
use anharmonic::slicing::{build_grid, ln_single_index_term, principal_sum_epsilon};
use anharmonic::specfun::{pcf_scaled, temme_exponent, temme_remainder_bound};
use anharmonic::{Error, ModelParams, SliceGrid};
use proptest::prelude::*;

fn grid(a: f64, b: f64, c: f64, n: usize) -> SliceGrid {
    build_grid(ModelParams::new(a, b, c, 1.0).unwrap(), n).unwrap()
}

/// Poincaré partial sum of `𝒟_{−m−1/2}(z)` with the terms `j < J`.
fn poincare_partial(m: f64, z: f64, j_order: usize) -> f64 {
    let x = 2.0 * z * z;
    let (mut term, mut sum) = (1.0, 0.0);
    for j in 0..j_order {
        sum += term;
        let jf = j as f64;
        term *= -(m + 0.5 + 2.0 * jf) * (m + 1.5 + 2.0 * jf) / ((jf + 1.0) * x);
    }
    sum
}

/// Head-relative error of the `k ≤ K0` sum when the right-hand scaled
/// function is replaced by its Poincaré partial sum.
fn direct_poincare_error(g: &SliceGrid, k0: usize, j: usize, kp: usize, kn: usize) -> f64 {
    let head: f64 = (0..=k0)
        .map(|k| ln_single_index_term(k, kp, kn, g.xi, g.z).unwrap().exp())
        .sum();
    (0..=k0)
        .map(|k| {
            let m = (k + kn) as f64;
            let d = pcf_scaled(m, g.z).unwrap();
            let rel = (d - poincare_partial(m, g.z, j)).abs() / d;
            ln_single_index_term(k, kp, kn, g.xi, g.z).unwrap().exp() * rel
        })
        .sum::<f64>()
        / head
}

fn tail_ratio(g: &SliceGrid, k0: usize, kp: usize, kn: usize) -> f64 {
    let k = (k0 + 1) as f64;
    let f1 = (k + kp as f64 + 0.5) / (2.0 * k + 1.0);
    let f2 = (k + kn as f64 + 0.5) / (2.0 * k + 2.0);
    g.xi * g.xi * f1.max(0.5) * f2.max(0.5)
}

#[test]
fn poincare_piece_shrinks_like_inverse_powers_of_two_z_squared() {
    let g = grid(0.1, 1.0, 1.0, 16);
    let k0 = 2;
    let x = 2.0 * g.z * g.z;
    let mut prev = bound_poincare_piece(&g, k0, 1, 0, 0).unwrap();
    for j in 2..=5 {
        let b = bound_poincare_piece(&g, k0, j, 0, 0).unwrap();
        let ratio = b / prev;
        // the step is (m+2J−3/2)(m+2J−1/2)/((J−1)·2z²) up to the ₁F₂ factor
        let top = (2 * k0 + 2 * j) as f64;
        assert!(ratio < top * top / x && ratio > 0.1 / x, "J={j}: {ratio}");
        prev = b;
    }
}

#[test]
fn poincare_piece_decays_with_slices() {
    let ns = [16.0, 32.0, 64.0, 128.0];
    for j in 1..=3 {
        let ys: Vec<f64> = ns
            .iter()
            .map(|&n| bound_poincare_piece(&grid(0.1, 1.0, 1.0, n as usize), 2, j, 0, 0).unwrap())
            .collect();
        let slope = log_log_slope(&ns, &ys);
        assert!((slope + 3.0 * j as f64).abs() < 0.3, "J={j}: {slope}");
    }
}

#[test]
fn k0_zero_keeps_only_the_first_term() {
    let g = grid(0.1, 1.0, 1.0, 16);
    for j in 1..=3 {
        let b = bound_poincare_piece(&g, 0, j, 0, 0).unwrap();
        let expect = temme_remainder_bound(0.0, g.z, j as u32) / pcf_scaled(0.0, g.z).unwrap();
        assert!((b - expect).abs() < 1e-12 * expect, "J={j}: {b} {expect}");
    }
    let b = bound_poincare_piece(&g, 0, 0, 0, 1).unwrap();
    assert!((b - 1.0 / pcf_scaled(1.0, g.z).unwrap()).abs() < 1e-12);
}

#[test]
fn poincare_piece_needs_the_validity_region() {
    // z ≈ 3.4 at N = 2, a = 1
    let g = grid(1.0, 0.0, 1.0, 2);
    assert!(2.0 * 8f64.sqrt() > g.z);
    assert!(matches!(bound_poincare_piece(&g, 4, 2, 0, 0), Err(Error::Domain { .. })));
    assert!(bound_poincare_piece(&g, 4, 0, 0, 0).is_ok());
}

#[test]
fn zero_coupling_has_no_remainder_to_bound() {
    let g = grid(0.0, 1.0, 1.0, 16);
    assert!(matches!(bound_poincare_piece(&g, 2, 2, 0, 0), Err(Error::Domain { .. })));
    assert!(matches!(bound_tail_piece(&g, 2, 0, 0), Err(Error::Domain { .. })));
    assert!(matches!(bound_difference_piece(&g, 2, 2, 2, 0, 0), Err(Error::Domain { .. })));
}

#[test]
fn tail_needs_a_small_ratio() {
    // ξ² ≈ 1.17 at b = −0.3, N = 2; the K0 = 0 ratio is about 0.61
    let g = grid(0.1, -0.3, 1.0, 2);
    match bound_tail_piece(&g, 0, 1, 1) {
        Err(Error::RatioTooLarge { ratio }) => assert!(ratio >= 0.5),
        other => panic!("{other:?}"),
    }
}

#[test]
fn tail_bound_is_at_least_the_first_neglected_term() {
    for (a, b, n) in [(0.1, 1.0, 8), (0.01, 0.0, 16), (1.0, 5.0, 4), (0.1, -0.2, 32)] {
        let g = grid(a, b, 1.0, n);
        for (kp, kn) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            for k0 in [1, 3, 6] {
                let head: f64 = (0..=k0)
                    .map(|k| ln_single_index_term(k, kp, kn, g.xi, g.z).unwrap().exp())
                    .sum();
                let first = ln_single_index_term(k0 + 1, kp, kn, g.xi, g.z).unwrap().exp() / head;
                let r = tail_ratio(&g, k0, kp, kn);
                let t = bound_tail_piece(&g, k0, kp, kn).unwrap();
                assert!(t * (1.0 - r) >= first, "a={a} K0={k0}: {t} {first}");
            }
        }
    }
}

#[test]
fn doubling_k0_collapses_the_tail() {
    for (a, b, n) in [(0.1, 1.0, 8), (0.01, 0.0, 16), (1.0, 5.0, 4)] {
        let g = grid(a, b, 1.0, n);
        for k0 in [2, 4, 8] {
            let r = tail_ratio(&g, k0, 1, 1);
            let t1 = bound_tail_piece(&g, k0, 1, 1).unwrap();
            let t2 = bound_tail_piece(&g, 2 * k0, 1, 1).unwrap();
            assert!(t2 <= t1 * r.powi(k0 as i32), "K0={k0}: {t1} {t2} r={r}");
        }
    }
}

#[test]
fn difference_piece_follows_its_power_of_z() {
    for (j, n) in [(1, 3), (2, 2), (3, 2), (3, 3), (2, 0)] {
        let expect = -2.0 * j.min(n) as f64;
        let mut zs = Vec::new();
        let mut ys = Vec::new();
        for a in [1e-5, 1e-6, 1e-7, 1e-8] {
            let g = grid(a, 1.0, 1.0, 8);
            zs.push(g.z);
            ys.push(bound_difference_piece(&g, 2, j, n, 0, 0).unwrap());
        }
        let slope = log_log_slope(&zs, &ys);
        assert!((slope - expect).abs() < 0.2, "J={j} n={n}: {slope}");
    }
}

#[test]
fn difference_piece_outpaces_the_target_decay() {
    let ns = [8.0, 16.0, 32.0, 64.0];
    for j in 1..=3 {
        let ys: Vec<f64> = ns
            .iter()
            .map(|&n| bound_difference_piece(&grid(0.1, 1.0, 1.0, n as usize), 2, j, j, 0, 0).unwrap())
            .collect();
        assert!(log_log_slope(&ns, &ys) < -1.0, "J={j}");
    }
}

#[test]
fn budget_is_the_sum_of_its_pieces() {
    let g = grid(0.1, 1.0, 1.0, 16);
    let b = budget(&g, 3, 2, 2, 1, 0).unwrap();
    assert!(b.poincare_piece > 0.0 && b.tail_piece > 0.0 && b.difference_piece > 0.0);
    assert_eq!(b.total, b.poincare_piece + b.tail_piece + b.difference_piece);
    assert_eq!((b.n_slices, b.k0, b.j_order, b.n_temme, b.theta_fit), (16, 3, 2, 2, None));
    let w = worst_budget(&g, 3, 2, 2).unwrap();
    for (kp, kn) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        assert!(budget(&g, 3, 2, 2, kp, kn).unwrap().total <= w.total);
    }
}

#[test]
fn budget_total_does_not_grow_with_truncation_orders() {
    for (a, n) in [(0.1, 32), (0.01, 16), (1e-3, 64)] {
        let g = grid(a, 1.0, 1.0, n);
        for k0 in 2..8 {
            let lo = worst_budget(&g, k0, 2, 2).unwrap().total;
            let hi = worst_budget(&g, k0 + 1, 2, 2).unwrap().total;
            assert!(hi <= lo, "a={a} N={n} K0={k0}: {lo} {hi}");
        }
        for j in 1..4 {
            let lo = worst_budget(&g, 4, j, 4).unwrap().total;
            let hi = worst_budget(&g, 4, j + 1, 4).unwrap().total;
            assert!(hi <= lo, "a={a} N={n} J={j}: {lo} {hi}");
        }
        for nt in 0..4 {
            let lo = worst_budget(&g, 4, 3, nt).unwrap().total;
            let hi = worst_budget(&g, 4, 3, nt + 1).unwrap().total;
            assert!(hi <= lo, "a={a} N={n} n={nt}: {lo} {hi}");
        }
    }
}

#[test]
fn k0_rule() {
    let rule = log_k0_rule(3.0);
    assert_eq!(rule(1), 1);
    assert_eq!(rule(8), 7);
    assert_eq!(rule(64), 13);
}

#[test]
fn decay_is_certified_at_second_order() {
    let p = ModelParams::new(0.1, 1.0, 1.0, 1.0).unwrap();
    let ns = [8, 16, 32, 64];
    let cert = certify_decay(&p, &ns, log_k0_rule(3.0), 2, 2).unwrap();
    assert!(cert.theta > 0.0, "θ = {}", cert.theta);
    assert!(cert.certified());
    assert!(cert.require_monotone().is_ok());
    for (b, &n) in cert.budgets.iter().zip(&ns) {
        assert!(b.total > 0.0);
        assert_eq!(b.n_slices, n);
        assert_eq!(b.theta_fit, Some(cert.theta));
    }
}

#[test]
fn zeroth_order_is_not_certified() {
    let p = ModelParams::new(0.1, 1.0, 1.0, 1.0).unwrap();
    let cert = certify_decay(&p, &[8, 16, 32, 64], log_k0_rule(3.0), 0, 2).unwrap();
    assert!(cert.theta <= 0.0, "θ = {}", cert.theta);
    assert!(!cert.certified());
    assert!(cert.budgets.iter().all(|b| b.total > 0.0));
}

#[test]
fn certification_needs_three_slice_counts() {
    let p = ModelParams::new(0.1, 1.0, 1.0, 1.0).unwrap();
    assert!(matches!(certify_decay(&p, &[8, 16], log_k0_rule(3.0), 2, 2), Err(Error::Domain { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn poincare_piece_dominates_direct_remainder(
        a in 0.01f64..1.0, b in 0.0f64..5.0, c in 0.5f64..2.0, n in 4usize..64,
        k0 in 1usize..6, j in 1usize..5, kp in 0usize..2, kn in 0usize..2,
    ) {
        let g = grid(a, b, c, n);
        match bound_poincare_piece(&g, k0, j, kp, kn) {
            Ok(bound) => {
                let direct = direct_poincare_error(&g, k0, j, kp, kn);
                prop_assert!(direct <= bound, "{direct} {bound}");
            }
            Err(Error::Domain { .. }) => prop_assume!(false),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn tail_piece_dominates_direct_tail(
        a in 0.01f64..1.0, b in -0.2f64..5.0, c in 0.5f64..2.0, n in 2usize..64,
        k0 in 1usize..10, kp in 0usize..2, kn in 0usize..2,
    ) {
        let g = grid(a, b, c, n);
        match bound_tail_piece(&g, k0, kp, kn) {
            Ok(bound) => {
                let direct = principal_sum_epsilon(&g, k0, kp, kn).unwrap();
                prop_assert!(direct <= bound, "{direct} {bound}");
            }
            Err(Error::RatioTooLarge { .. }) => prop_assume!(false),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn leading_uniform_magnitude_with_safety_dominates(m in 0u32..60, z in 0.5f64..200.0) {
        let m = m as f64;
        let (lambda, _, big_a) = temme_exponent(m, z).unwrap();
        let f0 = (-big_a * z * z).exp() * (1.0 + 4.0 * lambda).powf(-0.25);
        prop_assert!(pcf_scaled(m, z).unwrap() <= (F0_SAFETY * f0).min(1.0) * (1.0 + 1e-12));
    }

    #[test]
    fn j0_piece_is_the_head_with_unit_remainder(a in 0.01f64..1.0, n in 4usize..64, k0 in 0usize..6) {
        let g = grid(a, 1.0, 1.0, n);
        let b = bound_poincare_piece(&g, k0, 0, 0, 0).unwrap();
        let head: f64 = (0..=k0).map(|k| ln_single_index_term(k, 0, 0, g.xi, g.z).unwrap().exp()).sum();
        let full: f64 = (0..=k0)
            .map(|k| (ln_single_index_term(k, 0, 0, g.xi, g.z).unwrap() - pcf_scaled(k as f64, g.z).unwrap().ln()).exp())
            .sum();
        prop_assert!((b - full / head).abs() <= 1e-12 * b);
        prop_assert!(b >= 1.0);
    }
}
