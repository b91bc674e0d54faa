//! Brute-force reference for the Cauchy proximal map: dense grid search over
//! `[0, |x|]` followed by golden-section refinement of every grid-local minimum.

/// `(z - x)^2 + lambda * ln(gamma^2 + z^2)`; the dropped constant does not move the minimizer.
pub fn reduced_objective(z: f64, x: f64, lambda: f64, gamma: f64) -> f64 {
    (z - x) * (z - x) + lambda * (gamma * gamma + z * z).ln()
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-14 * b.abs().max(1.0) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Grid points: uniform over `[0, |x|]` plus a fine geometric cluster near
/// zero, where the penalty's dip has width of order `gamma`.
fn grid(ax: f64, gamma: f64) -> Vec<f64> {
    let mut pts: Vec<f64> = (0..=4000).map(|k| ax * k as f64 / 4000.0).collect();
    let mut v = gamma * 1e-3;
    while v < ax.min(50.0 * gamma) {
        pts.push(v);
        v *= 1.02;
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Global minimizer of the proximal objective, odd in `x`.
pub fn cauchy_prox_oracle(x: f64, lambda: f64, gamma: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ax = x.abs();
    let f = |z: f64| reduced_objective(z, ax, lambda, gamma);
    let pts = grid(ax, gamma);
    let vals: Vec<f64> = pts.iter().map(|&z| f(z)).collect();
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..pts.len() {
        let left_ok = i == 0 || vals[i] <= vals[i - 1];
        let right_ok = i + 1 == pts.len() || vals[i] <= vals[i + 1];
        if !(left_ok && right_ok) {
            continue;
        }
        let lo = pts[i.saturating_sub(1)];
        let hi = pts[(i + 1).min(pts.len() - 1)];
        let z = golden_section(f, lo, hi);
        let v = f(z);
        if v < best.0 {
            best = (v, z);
        }
    }
    best.1.copysign(x)
}

/// Value of the stationarity cubic `z^3 - x z^2 + (gamma^2 + lambda) z - gamma^2 x`.
pub fn cubic_residual(z: f64, x: f64, lambda: f64, gamma: f64) -> f64 {
    let g2 = gamma * gamma;
    z * z * z - x * z * z + (g2 + lambda) * z - g2 * x
}

/// The grid used by the equivalence and residual checks.
pub fn sweep_grid() -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for &lambda in &[1e-3, 0.1, 1.0, 10.0] {
        for &gamma in &[1e-3, 0.1, 1.0] {
            for k in 0..=400 {
                out.push((-100.0 + 0.5 * k as f64, lambda, gamma));
            }
        }
    }
    out
}
