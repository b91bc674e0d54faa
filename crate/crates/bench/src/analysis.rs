//! Comparing sparsity-versus-PSNR curves of two algorithms.

/// Points sorted by abscissa; among equal abscissae only the largest ordinate is kept.
pub fn normalize_curve(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.iter().copied().filter(|(x, y)| x.is_finite() && y.is_finite()).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
    pts.dedup_by(|later, earlier| later.0 == earlier.0);
    pts
}

/// Piecewise-linear value of a normalized curve at `x`, or `None` outside its span.
pub fn interpolate(curve: &[(f64, f64)], x: f64) -> Option<f64> {
    let first = curve.first()?;
    let last = curve.last()?;
    if x < first.0 || x > last.0 {
        return None;
    }
    let i = curve.partition_point(|p| p.0 < x);
    if curve[i].0 == x {
        return Some(curve[i].1);
    }
    let (a, b) = (curve[i - 1], curve[i]);
    Some(a.1 + (b.1 - a.1) * (x - a.0) / (b.0 - a.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    /// Sparsity levels at which both curves were evaluated.
    pub levels: Vec<f64>,
    /// `(level, upper, lower)` wherever `upper < lower`.
    pub violations: Vec<(f64, f64, f64)>,
}

impl DominanceReport {
    pub fn holds(&self) -> bool {
        !self.levels.is_empty() && self.violations.is_empty()
    }
}

/// Checks `upper(x) >= lower(x)` at every sample abscissa of either curve that
/// lies inside both spans and below `below`.
pub fn dominates(upper: &[(f64, f64)], lower: &[(f64, f64)], below: f64) -> DominanceReport {
    let (u, l) = (normalize_curve(upper), normalize_curve(lower));
    let mut levels: Vec<f64> = u.iter().chain(l.iter()).map(|p| p.0).filter(|&x| x < below).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut kept = Vec::new();
    let mut violations = Vec::new();
    for x in levels {
        if let (Some(a), Some(b)) = (interpolate(&u, x), interpolate(&l, x)) {
            kept.push(x);
            if a < b {
                violations.push((x, a, b));
            }
        }
    }
    DominanceReport { levels: kept, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation() {
        let c = normalize_curve(&[(2.0, 20.0), (0.0, 10.0), (0.0, 5.0)]);
        assert_eq!(c, vec![(0.0, 10.0), (2.0, 20.0)]);
        assert_eq!(interpolate(&c, 1.0), Some(15.0));
        assert_eq!(interpolate(&c, 2.0), Some(20.0));
        assert_eq!(interpolate(&c, 2.5), None);
        assert_eq!(interpolate(&[], 0.0), None);
    }

    #[test]
    fn dominance() {
        let hi = [(0.0, 10.0), (10.0, 30.0), (60.0, 50.0)];
        let lo = [(5.0, 5.0), (20.0, 25.0), (70.0, 60.0)];
        let r = dominates(&hi, &lo, 50.0);
        assert_eq!(r.levels, vec![5.0, 10.0, 20.0]);
        assert!(r.holds());
        let r = dominates(&lo, &hi, 50.0);
        assert_eq!(r.violations.len(), 3);
        assert!(!dominates(&hi, &[(80.0, 1.0), (90.0, 2.0)], 50.0).holds());
    }
}
