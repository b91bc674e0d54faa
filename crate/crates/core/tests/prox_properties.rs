mod common;

use common::oracle::{cauchy_prox_oracle, cubic_residual, reduced_objective};
use ict_core::prox::{
    cauchy_shrink, cauchy_shrink_gamma_zero, hard_threshold, shrink_vector, soft_threshold, solve_prox_cubic,
    CauchyPenalty, Penalty, RootPolicy,
};
use ndarray::Array1;
use proptest::prelude::*;

fn lambdas() -> impl Strategy<Value = f64> {
    prop::sample::select(vec![1e-3, 0.1, 1.0, 10.0])
}

fn gammas() -> impl Strategy<Value = f64> {
    prop::sample::select(vec![1e-3, 0.1, 1.0])
}

fn policies() -> impl Strategy<Value = RootPolicy> {
    prop::sample::select(vec![RootPolicy::ObjectiveMin, RootPolicy::PaperLargestAbs])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn cubic_roots_have_small_residuals(x in -100.0f64..100.0, lambda in lambdas(), gamma in gammas()) {
        let p = CauchyPenalty::new(lambda, gamma).unwrap();
        let roots = solve_prox_cubic(x, &p).unwrap();
        prop_assert!(!roots.is_empty());
        for &r in roots.roots() {
            let bound = 1e-9 * x.abs().powi(3).max(1.0);
            prop_assert!(cubic_residual(r, x, lambda, gamma).abs() <= bound, "x={x} root={r}");
        }
    }

    #[test]
    fn shrink_is_odd_and_contracting(x in -100.0f64..100.0, lambda in lambdas(), gamma in gammas(), policy in policies()) {
        let p = CauchyPenalty::new(lambda, gamma).unwrap();
        let z = cauchy_shrink(x, &p, policy).unwrap();
        prop_assert_eq!(cauchy_shrink(-x, &p, policy).unwrap(), -z);
        prop_assert!(z.abs() <= x.abs());
        prop_assert!(z == 0.0 || z.signum() == x.signum());
    }

    #[test]
    fn objective_min_beats_every_root(x in -100.0f64..100.0, lambda in lambdas(), gamma in gammas()) {
        let p = CauchyPenalty::new(lambda, gamma).unwrap();
        let z = cauchy_shrink(x, &p, RootPolicy::ObjectiveMin).unwrap();
        let best = reduced_objective(z, x, lambda, gamma);
        for &r in solve_prox_cubic(x, &p).unwrap().roots() {
            let r = r.clamp(x.min(0.0), x.max(0.0));
            let v = reduced_objective(r, x, lambda, gamma);
            prop_assert!(best <= v + 1e-12 * v.abs().max(1.0));
        }
    }

    #[test]
    fn objective_min_matches_oracle(x in -30.0f64..30.0, lambda in lambdas(), gamma in gammas()) {
        let p = CauchyPenalty::new(lambda, gamma).unwrap();
        let z = cauchy_shrink(x, &p, RootPolicy::ObjectiveMin).unwrap();
        prop_assert!((z - cauchy_prox_oracle(x, lambda, gamma)).abs() <= 1e-4, "x={x}");
    }

    #[test]
    fn soft_and_hard_bounds(x in -50.0f64..50.0, tau in 0.0f64..10.0) {
        let s = soft_threshold(x, tau);
        let h = hard_threshold(x, tau);
        prop_assert!(s.abs() <= x.abs() && h.abs() <= x.abs());
        prop_assert!((x - s).abs() <= tau + 1e-12);
        prop_assert!(h == 0.0 || h == x);
    }

    #[test]
    fn zero_lambda_is_identity(x in -1e6f64..1e6, gamma in 0.0f64..10.0) {
        let p = CauchyPenalty::new(0.0, gamma).unwrap();
        prop_assert_eq!(cauchy_shrink(x, &p, RootPolicy::ObjectiveMin).unwrap(), x);
        prop_assert_eq!(cauchy_shrink(x, &p, RootPolicy::PaperLargestAbs).unwrap(), x);
    }
}

#[test]
fn vector_shrink_matches_scalar() {
    let v: Array1<f64> = (0..50).map(|k| -5.0 + 0.2 * k as f64).collect();
    let pen = Penalty::cauchy(1.0, 0.1, RootPolicy::PaperLargestAbs).unwrap();
    let out = shrink_vector(v.view(), &pen).unwrap();
    let p = CauchyPenalty::new(1.0, 0.1).unwrap();
    for (a, &x) in out.iter().zip(v.iter()) {
        assert_eq!(*a, cauchy_shrink(x, &p, RootPolicy::PaperLargestAbs).unwrap());
    }
}

#[test]
fn gamma_zero_penalty_uses_closed_form() {
    let p = CauchyPenalty::new(1.0, 0.0).unwrap();
    for k in 0..40 {
        let x = -10.0 + 0.5 * k as f64;
        assert_eq!(cauchy_shrink(x, &p, RootPolicy::ObjectiveMin).unwrap(), cauchy_shrink_gamma_zero(x, 1.0));
    }
}

#[test]
fn largest_abs_approaches_gamma_zero_away_from_threshold() {
    for k in 0..20 {
        let x = 2.1 + 0.4 * k as f64;
        let limit = cauchy_shrink_gamma_zero(x, 1.0);
        let errs: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&g| {
                let p = CauchyPenalty::new(1.0, g).unwrap();
                (cauchy_shrink(x, &p, RootPolicy::PaperLargestAbs).unwrap() - limit).abs()
            })
            .collect();
        assert!(errs[0] >= errs[1] && errs[1] >= errs[2], "x={x} {errs:?}");
        assert!(errs[2] < 1e-6);
    }
}
