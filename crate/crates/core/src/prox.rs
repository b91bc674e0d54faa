//! Scalar shrinkage operators: hard, soft and Cauchy thresholding.
//!
//! The Cauchy operator is the proximal map of the negative log Cauchy density
//! (location 0, scale `gamma`) weighted by `lambda`:
//!
//! ```text
//! prox(x) = argmin_z (z - x)^2 - lambda * ln(gamma / (pi * (gamma^2 + z^2)))
//! ```
//!
//! Its stationary points are the real roots of
//! `z^3 - x z^2 + (gamma^2 + lambda) z - gamma^2 x = 0`, which are found in
//! closed form (Cardano for one real root, Viete's trigonometric form for
//! three) and then polished with a Newton step on the original cubic.

use std::f64::consts::PI;

use ndarray::{Array1, ArrayView1};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProxError {
    #[error("input {0} is not finite")]
    NonFinite(f64),
    #[error("{name} must be finite and non-negative, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("the Cauchy objective is singular at gamma = 0; use the closed-form gamma = 0 operator")]
    GammaZero,
    #[error("entry {index}: {source}")]
    AtIndex {
        index: usize,
        #[source]
        source: Box<ProxError>,
    },
}

fn check_param(name: &'static str, value: f64) -> Result<f64, ProxError> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(ProxError::InvalidParameter { name, value })
    }
}

/// Parameters of the Cauchy penalty `-ln p(z)` with location fixed at zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCauchy")]
pub struct CauchyPenalty {
    lambda: f64,
    gamma: f64,
}

#[derive(Deserialize)]
struct RawCauchy {
    lambda: f64,
    gamma: f64,
}

impl TryFrom<RawCauchy> for CauchyPenalty {
    type Error = ProxError;

    fn try_from(raw: RawCauchy) -> Result<Self, Self::Error> {
        CauchyPenalty::new(raw.lambda, raw.gamma)
    }
}

impl CauchyPenalty {
    pub fn new(lambda: f64, gamma: f64) -> Result<Self, ProxError> {
        Ok(Self {
            lambda: check_param("lambda", lambda)?,
            gamma: check_param("gamma", gamma)?,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Location of the density. Always zero.
    pub fn delta(&self) -> f64 {
        0.0
    }

    /// Same scale, regularization weight multiplied by `factor`.
    pub fn with_lambda_scaled(&self, factor: f64) -> Result<Self, ProxError> {
        Self::new(self.lambda * factor, self.gamma)
    }

    /// `-ln(gamma / (pi (gamma^2 + z^2)))`, the unweighted penalty.
    pub fn neg_log_density(&self, z: f64) -> Result<f64, ProxError> {
        if self.gamma == 0.0 {
            return Err(ProxError::GammaZero);
        }
        let g2 = self.gamma * self.gamma;
        Ok((PI * (g2 + z * z) / self.gamma).ln())
    }
}

/// Which real root of the stationarity cubic the Cauchy operator returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootPolicy {
    /// The root of largest magnitude.
    PaperLargestAbs,
    /// The root with the smallest proximal objective.
    #[default]
    ObjectiveMin,
}

/// Real roots of the Cauchy stationarity cubic, ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRealRoots {
    roots: [f64; 3],
    len: usize,
    discriminant: f64,
}

impl CubicRealRoots {
    pub fn roots(&self) -> &[f64] {
        &self.roots[..self.len]
    }

    /// Discriminant of the depressed cubic, `q^2/4 + p^3/27`. Values inside
    /// the degeneracy band are reported as exactly zero.
    pub fn discriminant(&self) -> f64 {
        self.discriminant
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Iterative hard thresholding operator.
#[inline]
pub fn hard_threshold(x: f64, tau: f64) -> f64 {
    if x.abs() > tau {
        x
    } else {
        0.0
    }
}

/// Iterative soft thresholding operator.
#[inline]
pub fn soft_threshold(x: f64, tau: f64) -> f64 {
    if x > tau {
        x - tau
    } else if x < -tau {
        x + tau
    } else {
        0.0
    }
}

/// Relative width of the band around `discriminant == 0` treated as a double root.
const DEGENERATE_DISCRIMINANT: f64 = 1e-14;

#[inline]
fn cubic_value(z: f64, x: f64, c1: f64, c0: f64) -> f64 {
    ((z - x) * z + c1) * z - c0
}

#[inline]
fn newton_polish(z: f64, x: f64, c1: f64, c0: f64) -> f64 {
    let f = cubic_value(z, x, c1, c0);
    if f == 0.0 {
        return z;
    }
    let df = (3.0 * z - 2.0 * x) * z + c1;
    if df == 0.0 || !df.is_finite() {
        return z;
    }
    let step = f / df;
    let next = z - step;
    // A near-zero derivative (double root) can throw the iterate onto another
    // root; only keep small steps that reduce the residual.
    if step.abs() <= 1e-3 * z.abs().max(1.0) && cubic_value(next, x, c1, c0).abs() <= f.abs() {
        next
    } else {
        z
    }
}

/// Roots of `z^3 - x z^2 + c1 z - c0` with `c1 = gamma^2 + lambda`,
/// `c0 = gamma^2 x`. Assumes finite inputs.
fn cubic_roots(x: f64, lambda: f64, gamma: f64) -> CubicRealRoots {
    let g2 = gamma * gamma;
    let c1 = g2 + lambda;
    let c0 = g2 * x;
    let shift = x / 3.0;
    let p = c1 - x * x / 3.0;
    let q = -2.0 / 27.0 * x * x * x + (lambda - 2.0 * g2) * x / 3.0;
    let mut disc = q * q / 4.0 + p * p * p / 27.0;
    let scale = (q * q).max(p.abs().powi(3)).max(1.0);
    if p < 0.0 && disc.abs() <= DEGENERATE_DISCRIMINANT * scale {
        disc = 0.0;
    }

    let mut roots = [0.0; 3];
    let len;
    if p == 0.0 && q == 0.0 {
        roots = [shift; 3];
        len = 3;
    } else if p >= 0.0 || disc > 0.0 {
        // Cardano with the cancellation-free sign choice: u^3 = -q/2 - sign(q) sqrt(disc).
        let s = disc.max(0.0).sqrt();
        let u = if q >= 0.0 { (-0.5 * q - s).cbrt() } else { (-0.5 * q + s).cbrt() };
        let t = if u == 0.0 { 0.0 } else { u - p / (3.0 * u) };
        roots[0] = newton_polish(shift + t, x, c1, c0);
        len = 1;
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (1.5 * q / p * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        for (k, root) in roots.iter_mut().enumerate() {
            let t = m * (theta - 2.0 * PI * k as f64 / 3.0).cos();
            *root = newton_polish(shift + t, x, c1, c0);
        }
        roots.sort_by(f64::total_cmp);
        len = 3;
    }
    CubicRealRoots { roots, len, discriminant: disc }
}

/// All real roots of the Cauchy proximal stationarity cubic at `x`.
pub fn solve_prox_cubic(x: f64, penalty: &CauchyPenalty) -> Result<CubicRealRoots, ProxError> {
    if !x.is_finite() {
        return Err(ProxError::NonFinite(x));
    }
    Ok(cubic_roots(x, penalty.lambda, penalty.gamma))
}

/// The proximal objective `(z - x)^2 - lambda ln(gamma / (pi (gamma^2 + z^2)))`.
pub fn prox_objective(z: f64, x: f64, penalty: &CauchyPenalty) -> Result<f64, ProxError> {
    let penalty_term = penalty.neg_log_density(z)?;
    let d = z - x;
    Ok(d * d + penalty.lambda * penalty_term)
}

/// Result of evaluating both root policies at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootChoice {
    pub objective_min: f64,
    pub largest_abs: f64,
}

impl RootChoice {
    pub fn pick(&self, policy: RootPolicy) -> f64 {
        match policy {
            RootPolicy::ObjectiveMin => self.objective_min,
            RootPolicy::PaperLargestAbs => self.largest_abs,
        }
    }

    pub fn disagree(&self) -> bool {
        self.objective_min != self.largest_abs
    }
}

/// Both root choices for `x >= 0`, with `lambda > 0` and `gamma > 0`.
/// Constant terms of the objective are dropped since only the ordering matters.
#[inline]
fn choose_roots_nonneg(ax: f64, lambda: f64, gamma: f64) -> RootChoice {
    let found = cubic_roots(ax, lambda, gamma);
    let roots = found.roots();
    // Every real root lies in [0, ax] for ax >= 0; clamp rounding excursions.
    let largest = roots[found.len - 1].clamp(0.0, ax);
    if found.len == 1 {
        return RootChoice { objective_min: largest, largest_abs: largest };
    }
    let g2 = gamma * gamma;
    let reduced = |z: f64| {
        let d = z - ax;
        d * d + lambda * (g2 + z * z).ln()
    };
    // Scan from the largest root so exact ties resolve to the larger magnitude.
    let mut best = largest;
    let mut best_val = reduced(largest);
    for &r in roots[..found.len - 1].iter().rev() {
        let r = r.clamp(0.0, ax);
        let v = reduced(r);
        if v < best_val {
            best = r;
            best_val = v;
        }
    }
    RootChoice { objective_min: best, largest_abs: largest }
}

/// Evaluates both root policies without validating the input.
/// `x` must be finite and the penalty must have `lambda > 0`, `gamma > 0`.
#[inline]
pub(crate) fn cauchy_choices_unchecked(x: f64, lambda: f64, gamma: f64) -> RootChoice {
    let c = choose_roots_nonneg(x.abs(), lambda, gamma);
    if x < 0.0 {
        RootChoice { objective_min: -c.objective_min, largest_abs: -c.largest_abs }
    } else {
        c
    }
}

/// The Cauchy proximal (shrinkage) operator.
///
/// `lambda == 0` is the identity and `gamma == 0` dispatches to
/// [`cauchy_shrink_gamma_zero`]. Odd symmetry is exact: the cubic is solved
/// for `|x|` and the sign reapplied.
pub fn cauchy_shrink(x: f64, penalty: &CauchyPenalty, policy: RootPolicy) -> Result<f64, ProxError> {
    if !x.is_finite() {
        return Err(ProxError::NonFinite(x));
    }
    if penalty.lambda == 0.0 {
        return Ok(x);
    }
    if penalty.gamma == 0.0 {
        return Ok(cauchy_shrink_gamma_zero(x, penalty.lambda));
    }
    Ok(cauchy_choices_unchecked(x, penalty.lambda, penalty.gamma).pick(policy))
}

/// Closed-form operator for `gamma = 0`: the larger-magnitude root of
/// `z^2 - x z + lambda = 0` outside the dead zone, zero inside it.
///
/// The dead zone is `|x| < 2 lambda`, widened to `|x| < 2 sqrt(lambda)` when
/// `lambda < 1` so the square root stays real.
pub fn cauchy_shrink_gamma_zero(x: f64, lambda: f64) -> f64 {
    let threshold = (2.0 * lambda).max(2.0 * lambda.sqrt());
    if x.abs() < threshold || x.is_nan() {
        return 0.0;
    }
    let r = (x * x - 4.0 * lambda).max(0.0).sqrt();
    if x > 0.0 {
        0.5 * x + 0.5 * r
    } else {
        0.5 * x - 0.5 * r
    }
}

/// Tagged choice of sparsity penalty and its shrinkage parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Penalty {
    /// l0 penalty, operator [`hard_threshold`].
    Hard { tau: f64 },
    /// l1 penalty, operator [`soft_threshold`].
    Soft { tau: f64 },
    /// Negative log Cauchy density, operator [`cauchy_shrink`].
    Cauchy {
        #[serde(flatten)]
        penalty: CauchyPenalty,
        #[serde(default)]
        policy: RootPolicy,
    },
}

impl Penalty {
    pub fn hard(tau: f64) -> Result<Self, ProxError> {
        Ok(Penalty::Hard { tau: check_param("tau", tau)? })
    }

    pub fn soft(tau: f64) -> Result<Self, ProxError> {
        Ok(Penalty::Soft { tau: check_param("tau", tau)? })
    }

    pub fn cauchy(lambda: f64, gamma: f64, policy: RootPolicy) -> Result<Self, ProxError> {
        Ok(Penalty::Cauchy { penalty: CauchyPenalty::new(lambda, gamma)?, policy })
    }

    pub fn validate(&self) -> Result<(), ProxError> {
        match *self {
            Penalty::Hard { tau } | Penalty::Soft { tau } => check_param("tau", tau).map(|_| ()),
            Penalty::Cauchy { penalty, .. } => {
                CauchyPenalty::new(penalty.lambda, penalty.gamma).map(|_| ())
            }
        }
    }

    /// Weight of the penalty in the `(z - x)^2 + weight * phi(z)` proximal form:
    /// `tau^2` for l0, `2 tau` for l1, `lambda` for Cauchy.
    pub fn weight(&self) -> f64 {
        match *self {
            Penalty::Hard { tau } => tau * tau,
            Penalty::Soft { tau } => 2.0 * tau,
            Penalty::Cauchy { penalty, .. } => penalty.lambda,
        }
    }

    /// The same penalty with its proximal weight multiplied by `factor`.
    pub fn with_weight_scaled(&self, factor: f64) -> Result<Self, ProxError> {
        check_param("factor", factor)?;
        match *self {
            Penalty::Hard { tau } => Penalty::hard(tau * factor.sqrt()),
            Penalty::Soft { tau } => Penalty::soft(tau * factor),
            Penalty::Cauchy { penalty, policy } => {
                Ok(Penalty::Cauchy { penalty: penalty.with_lambda_scaled(factor)?, policy })
            }
        }
    }

    /// Unweighted penalty `phi(x)` summed over entries: `||x||_0`, `||x||_1`
    /// or `sum -ln p(x_i)`.
    pub fn phi(&self, x: ArrayView1<f64>) -> Result<f64, ProxError> {
        match *self {
            Penalty::Hard { .. } => Ok(x.iter().filter(|v| **v != 0.0).count() as f64),
            Penalty::Soft { .. } => Ok(x.iter().map(|v| v.abs()).sum()),
            Penalty::Cauchy { penalty, .. } => {
                x.iter().try_fold(0.0, |acc, &v| Ok(acc + penalty.neg_log_density(v)?))
            }
        }
    }

    /// Applies the scalar operator to one value.
    pub fn shrink(&self, x: f64) -> Result<f64, ProxError> {
        if !x.is_finite() {
            return Err(ProxError::NonFinite(x));
        }
        Ok(match *self {
            Penalty::Hard { tau } => hard_threshold(x, tau),
            Penalty::Soft { tau } => soft_threshold(x, tau),
            Penalty::Cauchy { penalty, policy } => cauchy_shrink(x, &penalty, policy)?,
        })
    }

    /// Shrinks every entry in place. Entries must be finite. Returns the
    /// number of entries where the two Cauchy root policies disagree.
    pub(crate) fn shrink_slice_unchecked(&self, values: &mut [f64]) -> u64 {
        match *self {
            Penalty::Hard { tau } => {
                values.iter_mut().for_each(|v| *v = hard_threshold(*v, tau));
                0
            }
            Penalty::Soft { tau } => {
                values.iter_mut().for_each(|v| *v = soft_threshold(*v, tau));
                0
            }
            Penalty::Cauchy { penalty, policy } => {
                let (lambda, gamma) = (penalty.lambda, penalty.gamma);
                if lambda == 0.0 {
                    return 0;
                }
                if gamma == 0.0 {
                    values.iter_mut().for_each(|v| *v = cauchy_shrink_gamma_zero(*v, lambda));
                    return 0;
                }
                let mut disagreements = 0;
                for v in values.iter_mut() {
                    let choice = cauchy_choices_unchecked(*v, lambda, gamma);
                    disagreements += choice.disagree() as u64;
                    *v = choice.pick(policy);
                }
                disagreements
            }
        }
    }
}

/// Applies the penalty's scalar operator entry-wise.
pub fn shrink_vector(v: ArrayView1<f64>, penalty: &Penalty) -> Result<Array1<f64>, ProxError> {
    penalty.validate()?;
    v.iter()
        .enumerate()
        .map(|(index, &x)| {
            penalty
                .shrink(x)
                .map_err(|e| ProxError::AtIndex { index, source: Box::new(e) })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Array1::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn residual(r: f64, x: f64, p: &CauchyPenalty) -> f64 {
        let g2 = p.gamma() * p.gamma();
        r * r * r - x * r * r + (g2 + p.lambda()) * r - g2 * x
    }

    #[test]
    fn hard_threshold_cases() {
        assert_eq!(hard_threshold(0.5, 1.0), 0.0);
        assert_eq!(hard_threshold(3.0, 1.0), 3.0);
        assert_eq!(hard_threshold(-1.0, 1.0), 0.0);
        assert_eq!(hard_threshold(-1.5, 1.0), -1.5);
    }

    #[test]
    fn soft_threshold_cases() {
        assert_eq!(soft_threshold(3.0, 1.0), 2.0);
        assert_eq!(soft_threshold(-3.0, 1.0), -2.0);
        assert_eq!(soft_threshold(0.5, 1.0), 0.0);
        assert_eq!(soft_threshold(1.0, 1.0), 0.0);
    }

    #[test]
    fn cubic_at_zero_has_zero_root() {
        for &(l, g) in &[(1.0, 0.1), (0.0, 1.0), (10.0, 1e-3), (0.0, 0.0)] {
            let p = CauchyPenalty::new(l, g).unwrap();
            let r = solve_prox_cubic(0.0, &p).unwrap();
            assert!(r.roots().iter().any(|&z| z == 0.0), "{l} {g}: {:?}", r.roots());
        }
    }

    #[test]
    fn cubic_one_root_when_discriminant_positive() {
        let p = CauchyPenalty::new(1.0, 1.0).unwrap();
        let r = solve_prox_cubic(0.5, &p).unwrap();
        assert!(r.discriminant() > 0.0);
        assert_eq!(r.len(), 1);
        assert!(residual(r.roots()[0], 0.5, &p).abs() < 1e-12);
    }

    #[test]
    fn cubic_three_roots_sorted() {
        let p = CauchyPenalty::new(1.0, 0.1).unwrap();
        let r = solve_prox_cubic(3.0, &p).unwrap();
        assert!(r.discriminant() <= 0.0);
        assert_eq!(r.len(), 3);
        let z = r.roots();
        assert!(z[0] <= z[1] && z[1] <= z[2]);
        for &root in z {
            assert!(residual(root, 3.0, &p).abs() < 1e-12, "{root}");
        }
    }

    #[test]
    fn cubic_rejects_non_finite() {
        let p = CauchyPenalty::new(1.0, 0.1).unwrap();
        assert!(matches!(solve_prox_cubic(f64::NAN, &p), Err(ProxError::NonFinite(_))));
        assert!(solve_prox_cubic(f64::INFINITY, &p).is_err());
    }

    #[test]
    fn penalty_rejects_negative_parameters() {
        assert!(CauchyPenalty::new(-1.0, 0.1).is_err());
        assert!(CauchyPenalty::new(1.0, -0.1).is_err());
        assert!(CauchyPenalty::new(f64::NAN, 0.1).is_err());
        assert!(Penalty::soft(-1.0).is_err());
        assert!(Penalty::hard(f64::INFINITY).is_err());
    }

    #[test]
    fn objective_lambda_zero_is_data_term() {
        let p = CauchyPenalty::new(0.0, 1.0).unwrap();
        assert_eq!(prox_objective(0.0, 0.0, &p).unwrap(), 0.0);
        for z in [-3.0, 0.2, 7.5] {
            let p = CauchyPenalty::new(0.0, 0.3).unwrap();
            assert_eq!(prox_objective(z, z, &p).unwrap(), 0.0);
        }
    }

    #[test]
    fn objective_rejects_gamma_zero() {
        let p = CauchyPenalty::new(1.0, 0.0).unwrap();
        assert_eq!(prox_objective(1.0, 2.0, &p), Err(ProxError::GammaZero));
    }

    #[test]
    fn objective_matches_extended_precision_value() {
        // 1 - ln(0.4 / pi), evaluated with 50-digit arithmetic.
        let p = CauchyPenalty::new(1.0, 0.5).unwrap();
        let v = prox_objective(1.0, 2.0, &p).unwrap();
        assert!((v - 3.061_020_617_723_555_2).abs() < 1e-14, "{v}");
    }

    #[test]
    fn shrink_special_cases() {
        let p = CauchyPenalty::new(1.0, 0.1).unwrap();
        for policy in [RootPolicy::ObjectiveMin, RootPolicy::PaperLargestAbs] {
            assert_eq!(cauchy_shrink(0.0, &p, policy).unwrap(), 0.0);
        }
        let no_shrink = CauchyPenalty::new(0.0, 1.0).unwrap();
        assert_eq!(cauchy_shrink(5.0, &no_shrink, RootPolicy::ObjectiveMin).unwrap(), 5.0);
        assert_eq!(cauchy_shrink(-2.25, &no_shrink, RootPolicy::PaperLargestAbs).unwrap(), -2.25);
        let g0 = CauchyPenalty::new(1.0, 0.0).unwrap();
        assert_eq!(
            cauchy_shrink(3.0, &g0, RootPolicy::ObjectiveMin).unwrap(),
            cauchy_shrink_gamma_zero(3.0, 1.0)
        );
        assert!(cauchy_shrink(f64::NAN, &p, RootPolicy::ObjectiveMin).is_err());
    }

    #[test]
    fn shrink_objective_min_matches_grid_oracle() {
        // Minimizer of (z-2)^2 - ln(0.1 / (pi (0.01 + z^2))) found by a
        // 1e-5 grid scan of [-4, 4] followed by golden-section refinement.
        let p = CauchyPenalty::new(1.0, 0.1).unwrap();
        let z = cauchy_shrink(2.0, &p, RootPolicy::ObjectiveMin).unwrap();
        assert!((z - 0.020_636_582_799_715_219).abs() < 1e-6, "{z}");
    }

    #[test]
    fn gamma_zero_closed_form() {
        let expected = 1.5 + 5f64.sqrt() / 2.0;
        assert!((cauchy_shrink_gamma_zero(3.0, 1.0) - expected).abs() < 1e-15);
        assert!((cauchy_shrink_gamma_zero(3.0, 1.0) - 2.618_033_988_749_895).abs() < 1e-12);
        assert_eq!(cauchy_shrink_gamma_zero(1.0, 1.0), 0.0);
        assert_eq!(cauchy_shrink_gamma_zero(-3.0, 1.0), -expected);
        assert_eq!(cauchy_shrink_gamma_zero(2.0, 1.0), 1.0);
    }

    #[test]
    fn gamma_zero_small_lambda_stays_real() {
        // 2 lambda = 0.5 < |x| < 2 sqrt(lambda) = 1: no real stationary point.
        assert_eq!(cauchy_shrink_gamma_zero(0.6, 0.25), 0.0);
        let z = cauchy_shrink_gamma_zero(1.2, 0.25);
        assert!(z.is_finite() && z > 0.0 && z < 1.2);
        assert!((z * z - 1.2 * z + 0.25).abs() < 1e-14);
    }

    #[test]
    fn shrink_vector_cases() {
        let soft = Penalty::soft(1.0).unwrap();
        let out = shrink_vector(array![3.0, 0.5, -3.0].view(), &soft).unwrap();
        assert_eq!(out, array![2.0, 0.0, -2.0]);

        let cauchy = Penalty::cauchy(1.0, 0.1, RootPolicy::ObjectiveMin).unwrap();
        let zeros = Array1::<f64>::zeros(7);
        for pen in [soft, cauchy, Penalty::hard(0.3).unwrap()] {
            assert_eq!(shrink_vector(zeros.view(), &pen).unwrap(), zeros);
        }
    }

    #[test]
    fn shrink_vector_reports_offending_index() {
        let soft = Penalty::soft(1.0).unwrap();
        let err = shrink_vector(array![1.0, 2.0, f64::INFINITY].view(), &soft).unwrap_err();
        match err {
            ProxError::AtIndex { index, .. } => assert_eq!(index, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn weight_scaling_moves_thresholds() {
        let hard = Penalty::hard(2.0).unwrap().with_weight_scaled(0.25).unwrap();
        assert_eq!(hard, Penalty::Hard { tau: 1.0 });
        let soft = Penalty::soft(2.0).unwrap().with_weight_scaled(0.25).unwrap();
        assert_eq!(soft, Penalty::Soft { tau: 0.5 });
        let c = Penalty::cauchy(2.0, 0.1, RootPolicy::ObjectiveMin).unwrap();
        assert!((c.with_weight_scaled(0.25).unwrap().weight() - 0.5).abs() < 1e-15);
    }
}
