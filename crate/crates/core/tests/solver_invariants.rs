use ict_core::dictionary::{build_overcomplete_dct, Dictionary};
use ict_core::prox::{Penalty, RootPolicy};
use ict_core::solver::{cost, gradient_step, objective, sparse_code, sparse_code_batch, ShrinkScaling, SolverConfig};
use ndarray::{Array1, Array2, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_dictionary(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Dictionary {
    Dictionary::from_atoms(Array2::from_shape_fn((m, n), |_| rng.random_range(-1.0..1.0))).unwrap()
}

fn random_signal(rng: &mut ChaCha8Rng, m: usize) -> Array1<f64> {
    (0..m).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn config(eta: f64, iterations: usize, scaling: ShrinkScaling) -> SolverConfig {
    SolverConfig { step_size: eta, max_iterations: iterations, shrink_scaling: scaling, ..SolverConfig::default() }
}

#[test]
fn soft_threshold_descends_monotonically() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..50 {
        let dict = random_dictionary(&mut rng, 16, 24);
        let y = random_signal(&mut rng, 16);
        let eta = 0.9 / (2.0 * dict.spectral_norm_sq());
        let pen = Penalty::soft(rng.random_range(0.01..0.5)).unwrap();
        let cfg = SolverConfig { record_trace: true, ..config(eta, 60, ShrinkScaling::StepScaled) };
        let res = sparse_code(y.view(), &dict, &pen, &cfg).unwrap();
        let mut prev = cost(Array1::zeros(24).view(), y.view(), &dict, &pen).unwrap();
        for p in res.trace.unwrap() {
            assert!(p.cost <= prev + 1e-12 * prev.abs().max(1.0), "trial {trial}: {} > {prev}", p.cost);
            prev = p.cost;
        }
    }
}

/// At the default step on the 8x8 DCT dictionary, hard and Cauchy coding
/// should end no higher than they start on nearly every random patch.
#[test]
fn final_cost_not_above_initial_for_most_trials() {
    let dict = build_overcomplete_dct(8, 12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for scaling in [ShrinkScaling::Literal, ShrinkScaling::StepScaled] {
        let cfg = config(0.005, 200, scaling);
        for make in [
            (|l: f64| Penalty::hard(l).unwrap()) as fn(f64) -> Penalty,
            |l: f64| Penalty::cauchy(l, 0.1, RootPolicy::ObjectiveMin).unwrap(),
        ] {
            let mut ok = 0;
            for _ in 0..100 {
                let y: Array1<f64> = (0..64).map(|_| rng.random_range(0.0..1.0)).collect();
                let pen = make(10f64.powf(rng.random_range(-4.0..0.0)));
                let start = objective(Array1::zeros(144).view(), y.view(), &dict, &pen, &cfg).unwrap();
                let x = sparse_code(y.view(), &dict, &pen, &cfg).unwrap().coefficients;
                let end = objective(x.view(), y.view(), &dict, &pen, &cfg).unwrap();
                ok += usize::from(end <= start);
            }
            assert!(ok >= 95, "{scaling:?} {ok}/100");
        }
    }
}

#[test]
fn exact_sparse_representation_is_a_fixed_point_of_hard_thresholding() {
    let dict = build_overcomplete_dct(8, 12).unwrap();
    let mut x = Array1::zeros(144);
    x[0] = 3.0;
    let y = dict.apply(x.view()).unwrap();
    let step = gradient_step(x.view(), &dict, y.view(), 0.005).unwrap();
    assert!(step.iter().zip(x.iter()).all(|(a, b)| (a - b).abs() < 1e-12));
    let pen = Penalty::hard(0.5).unwrap();
    let cfg = SolverConfig { max_iterations: 1, ..config(0.005, 1, ShrinkScaling::Literal) };
    // One step from the exact code keeps the support.
    let batch = sparse_code_batch(y.view().insert_axis(Axis(1)), &dict, &pen, &cfg).unwrap();
    assert_eq!(batch.iterations_run, 1);
}

#[test]
fn batch_matches_single_signal_coding_and_is_repeatable() {
    let dict = build_overcomplete_dct(8, 12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let signals = Array2::from_shape_fn((64, 7), |_| rng.random_range(0.0..1.0));
    let cfg = config(0.005, 50, ShrinkScaling::Literal);
    for pen in [
        Penalty::hard(0.01).unwrap(),
        Penalty::soft(0.005).unwrap(),
        Penalty::cauchy(0.01, 0.1, RootPolicy::ObjectiveMin).unwrap(),
    ] {
        let a = sparse_code_batch(signals.view(), &dict, &pen, &cfg).unwrap();
        let b = sparse_code_batch(signals.view(), &dict, &pen, &cfg).unwrap();
        assert_eq!(a, b);
        for (t, col) in signals.axis_iter(Axis(1)).enumerate() {
            let single = sparse_code(col, &dict, &pen, &cfg).unwrap().coefficients;
            let diff = (&single - &a.coefficients.column(t)).mapv(f64::abs).fold(0.0, |m: f64, v| m.max(*v));
            assert!(diff < 1e-12, "{pen:?} column {t}: {diff}");
        }
    }
}

#[test]
fn oversized_step_reports_divergence() {
    let dict = build_overcomplete_dct(8, 12).unwrap();
    let y = Array1::from_elem(64, 0.5);
    let pen = Penalty::soft(1e-4).unwrap();
    let err = sparse_code(y.view(), &dict, &pen, &config(50.0, 2000, ShrinkScaling::Literal)).unwrap_err();
    assert!(err.to_string().contains("diverged"));
}
