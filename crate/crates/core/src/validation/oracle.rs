//! Brute-force evaluation of the defining supremum over a sampled boundary.
//!
//! Nothing here consults a closed form: the boundary is sampled, the best
//! discrete local minima of the p-mean of distances are refined by a
//! golden-section search on the local boundary parameter, and the ratio is
//! taken at the best point found.

use std::f64::consts::TAU;

use crate::barrlund::PExponent;
use crate::error::{Error, Result};
use crate::geometry::{BoundaryWindow, ComplexPoint, Domain, Ring};
use crate::metrics::{Method, MetricResult};

/// Window for sampling an unbounded boundary: centred at the midpoint with
/// radius `8(1 + |z1| + |z2| + |z1 − z2|)`.
pub fn standard_window(z1: ComplexPoint, z2: ComplexPoint) -> BoundaryWindow {
    let radius = 8.0 * (1.0 + z1.norm() + z2.norm() + (z1 - z2).norm());
    BoundaryWindow::new((z1 + z2) / 2.0, radius).expect("finite inputs give a valid window")
}

/// `|z1 − z2| / mean_p(|z1 − w|, |z2 − w|)`.
pub fn ratio_at(p: PExponent, z1: ComplexPoint, z2: ComplexPoint, w: ComplexPoint) -> f64 {
    (z1 - z2).norm() / p.combine((z1 - w).norm(), (z2 - w).norm())
}

/// Largest ratio over an explicit point set, with its argmax.
pub fn sup_over_points(p: PExponent, z1: ComplexPoint, z2: ComplexPoint, pts: &[ComplexPoint]) -> (f64, Option<ComplexPoint>) {
    let mut best = (0.0, None);
    for &w in pts {
        let r = ratio_at(p, z1, z2, w);
        if r > best.0 {
            best = (r, Some(w));
        }
    }
    best
}

const REFINE_TOL: f64 = 1e-13;
const REFINE_ITERS: usize = 200;
const REFINE_COUNT: usize = 16;

fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = 0.618_033_988_749_894_9;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..REFINE_ITERS {
        if hi - lo <= REFINE_TOL * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// A sampled boundary curve with a local parameter.
enum Curve<'a> {
    Circle,
    Line { lo: f64, hi: f64 },
    Ring(&'a Ring),
}

impl Curve<'_> {
    fn point(&self, t: f64) -> ComplexPoint {
        match self {
            Curve::Circle => ComplexPoint::from_polar(1.0, t),
            Curve::Line { .. } => ComplexPoint::new(t, 0.0),
            Curve::Ring(r) => r.point_at(t),
        }
    }

    fn closed(&self) -> bool {
        !matches!(self, Curve::Line { .. })
    }

    fn clip(&self, t: f64) -> f64 {
        match self {
            Curve::Line { lo, hi } => t.clamp(*lo, *hi),
            _ => t,
        }
    }
}

struct Sampled<'a> {
    curve: Curve<'a>,
    /// Local parameters, increasing.
    params: Vec<f64>,
    step: f64,
}

fn sample_curves<'a>(d: &'a Domain, n: usize, z1: ComplexPoint, z2: ComplexPoint) -> Result<Vec<Sampled<'a>>> {
    Ok(match d {
        Domain::UnitDisk | Domain::ExteriorUnitDisk => {
            let pts = d.sample_boundary(n, None)?;
            let step = TAU / n as f64;
            debug_assert_eq!(pts.len(), n);
            vec![Sampled { curve: Curve::Circle, params: (0..n).map(|k| step * k as f64).collect(), step }]
        }
        Domain::UpperHalfPlane => {
            let w = standard_window(z1, z2);
            let pts = d.sample_boundary(n, Some(w))?;
            let (lo, hi) = (w.anchor().re - w.radius(), w.anchor().re + w.radius());
            let step = (hi - lo) / (n - 1) as f64;
            vec![Sampled { curve: Curve::Line { lo, hi }, params: pts.iter().map(|z| z.re).collect(), step }]
        }
        Domain::PolygonWithHoles(poly) => {
            let pts = d.sample_boundary(n, None)?;
            let step = poly.perimeter() / n as f64;
            // Recover the ring and arc-length position of each sample.
            let mut out = Vec::new();
            let mut k = 0usize;
            let mut offset = 0.0;
            for ring in poly.rings() {
                let len = ring.perimeter();
                let mut params = Vec::new();
                while k < pts.len() && step * k as f64 - offset < len {
                    params.push(step * k as f64 - offset);
                    k += 1;
                }
                offset += len;
                if !params.is_empty() {
                    out.push(Sampled { curve: Curve::Ring(ring), params, step });
                }
            }
            out
        }
        Domain::PuncturedPlane { .. } => Vec::new(),
    })
}

/// The defining supremum of `b_{G,p}` by boundary sampling with local
/// refinement. `residual` is the relative improvement of the refinement over
/// the best raw sample.
pub fn oracle_b(d: &Domain, p: PExponent, z1: ComplexPoint, z2: ComplexPoint, samples: usize) -> Result<MetricResult> {
    d.require(z1)?;
    d.require(z2)?;
    if samples < 64 {
        return Err(Error::OutOfRange(format!("oracle needs at least 64 samples, got {samples}")));
    }
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::Scan));
    }
    if let Domain::PuncturedPlane { .. } = d {
        let pts = d.sample_boundary(samples, None)?;
        let (value, w) = sup_over_points(p, z1, z2, &pts);
        return Ok(MetricResult { value, extremal_point: w, method: Method::Scan, residual: 0.0 });
    }

    let mean = |w: ComplexPoint| p.combine((z1 - w).norm(), (z2 - w).norm());
    let curves = sample_curves(d, samples, z1, z2)?;

    let mut raw_best = f64::INFINITY;
    // (value, curve index, sample index)
    let mut minima: Vec<(f64, usize, usize)> = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        let vals: Vec<f64> = c.params.iter().map(|&t| mean(c.curve.point(t))).collect();
        let n = vals.len();
        for k in 0..n {
            raw_best = raw_best.min(vals[k]);
            let prev = if k > 0 { Some(vals[k - 1]) } else if c.curve.closed() { Some(vals[n - 1]) } else { None };
            let next = if k + 1 < n { Some(vals[k + 1]) } else if c.curve.closed() { Some(vals[0]) } else { None };
            if prev.is_none_or(|v| vals[k] <= v) && next.is_none_or(|v| vals[k] <= v) {
                minima.push((vals[k], ci, k));
            }
        }
    }
    minima.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    minima.truncate(REFINE_COUNT);

    let mut best = (f64::INFINITY, ComplexPoint::new(0.0, 0.0));
    for &(v, ci, k) in &minima {
        let c = &curves[ci];
        let t = c.params[k];
        if v < best.0 {
            best = (v, c.curve.point(t));
        }
        let lo = c.curve.clip(t - c.step);
        let hi = c.curve.clip(t + c.step);
        let (tm, fm) = golden_min(|s| mean(c.curve.point(s)), lo, hi);
        if fm < best.0 {
            best = (fm, c.curve.point(tm));
        }
    }
    let value = (z1 - z2).norm() / best.0;
    Ok(MetricResult {
        value: value.min(p.ceiling()),
        extremal_point: Some(best.1),
        method: Method::Scan,
        residual: ((raw_best - best.0) / best.0).max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PolygonWithHoles;
    use approx::assert_relative_eq;
    use std::f64::consts::SQRT_2;

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn oracle_examples() {
        let r = oracle_b(&Domain::UnitDisk, PExponent::Finite(2.0), c(0.3, 0.0), c(0.5, 0.0), 8192).unwrap();
        // |z1 − z2| / √(2 + |z1|² + |z2|² − 2|z1 + z2|)
        let exact = 0.2 / (2.0f64 + 0.09 + 0.25 - 1.6).sqrt();
        assert_relative_eq!(r.value, exact, max_relative = 1e-7);
        assert_eq!(r.method, Method::Scan);

        let r = oracle_b(&Domain::UpperHalfPlane, PExponent::Infinity, c(0.0, 1.0), c(2.0, 1.0), 8192).unwrap();
        assert_relative_eq!(r.value, SQRT_2, max_relative = 1e-6);

        let pc = Domain::PuncturedPlane { center: c(0.0, 0.0) };
        for p in [PExponent::Finite(1.0), PExponent::Finite(3.0), PExponent::Infinity] {
            let r = oracle_b(&pc, p, c(0.4, 0.2), c(-0.4, -0.2), 64).unwrap();
            assert_relative_eq!(r.value, p.ceiling(), max_relative = 1e-15);
        }
    }

    #[test]
    fn oracle_on_square_annulus() {
        let s41 = Domain::PolygonWithHoles(PolygonWithHoles::square_annulus(4.0, 1.0).unwrap());
        let r = oracle_b(&s41, PExponent::Finite(2.0), c(3.0, 0.0), c(-3.0, 0.0), 8192).unwrap();
        assert_relative_eq!(r.value, 6.0 / 20f64.sqrt(), max_relative = 1e-9);
    }

    #[test]
    fn oracle_preconditions() {
        assert!(oracle_b(&Domain::UnitDisk, PExponent::Finite(2.0), c(0.3, 0.0), c(0.5, 0.0), 63).is_err());
        assert!(oracle_b(&Domain::UnitDisk, PExponent::Finite(2.0), c(1.3, 0.0), c(0.5, 0.0), 64).is_err());
        let z = oracle_b(&Domain::UnitDisk, PExponent::Finite(2.0), c(0.3, 0.0), c(0.3, 0.0), 64).unwrap();
        assert_eq!(z.value, 0.0);
    }

    #[test]
    fn window_contains_the_minimiser() {
        let (z1, z2) = (c(-9.0, 0.01), c(9.5, 8.0));
        let w = standard_window(z1, z2);
        assert!(w.anchor().re - w.radius() < z1.re.min(z2.re));
        assert!(w.anchor().re + w.radius() > z1.re.max(z2.re));
    }
}
