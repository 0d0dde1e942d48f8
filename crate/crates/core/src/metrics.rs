//! Hyperbolic distances, the triangular ratio metric, the point-pair function
//! and the disk majorant `m_D`.

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{ComplexPoint, Domain};
use crate::numerics::{bisect_root, minimize_circle, solve_quartic, Bracket, QuarticCoefficients};

/// How a [`MetricResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    QuarticSolve,
    RootSolve,
    Scan,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::QuarticSolve => "quartic-solve",
            Method::RootSolve => "root-solve",
            Method::Scan => "scan",
        }
    }
}

/// A distance value with the boundary point realising it.
///
/// `residual` is a method-specific optimality diagnostic, zero for closed
/// forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricResult {
    pub value: f64,
    pub extremal_point: Option<ComplexPoint>,
    pub method: Method,
    pub residual: f64,
}

impl MetricResult {
    pub(crate) fn closed(value: f64, extremal_point: Option<ComplexPoint>) -> Self {
        Self { value, extremal_point, method: Method::ClosedForm, residual: 0.0 }
    }

    pub(crate) fn zero(method: Method) -> Self {
        Self { value: 0.0, extremal_point: None, method, residual: 0.0 }
    }
}

fn require_pair(d: &Domain, z1: ComplexPoint, z2: ComplexPoint) -> Result<()> {
    d.require(z1)?;
    d.require(z2)
}

/// Hyperbolic distance in the unit disk.
pub fn hyperbolic_disk(z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    require_pair(&Domain::UnitDisk, z1, z2)?;
    if z1 == z2 {
        return Ok(0.0);
    }
    let d2 = (z1 - z2).norm_sqr();
    let t = (d2 / (d2 + (1.0 - z1.norm_sqr()) * (1.0 - z2.norm_sqr()))).sqrt();
    Ok(2.0 * t.atanh())
}

/// Hyperbolic distance in the upper half-plane.
pub fn hyperbolic_halfplane(z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    require_pair(&Domain::UpperHalfPlane, z1, z2)?;
    if z1 == z2 {
        return Ok(0.0);
    }
    let d2 = (z1 - z2).norm_sqr();
    // |z1 − conj z2|² = |z1 − z2|² + 4 Im z1 Im z2
    let t = (d2 / (d2 + 4.0 * z1.im * z2.im)).sqrt();
    Ok(2.0 * t.atanh())
}

/// Triangular ratio metric of the upper half-plane. The extremal point is
/// where the segment `[z1, conj z2]` crosses the real axis.
pub fn s_halfplane(z1: ComplexPoint, z2: ComplexPoint) -> Result<MetricResult> {
    require_pair(&Domain::UpperHalfPlane, z1, z2)?;
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::ClosedForm));
    }
    let value = (z1 - z2).norm() / (z1 - z2.conj()).norm();
    let alpha = z1.im / (z1.im + z2.im);
    let x = z1.re + alpha * (z2.re - z1.re);
    Ok(MetricResult::closed(value, Some(ComplexPoint::new(x, 0.0))))
}

/// Roots of the reflection quartic for foci `z1`, `z2`.
pub fn alhazen_quartic(z1: ComplexPoint, z2: ComplexPoint) -> QuarticCoefficients {
    QuarticCoefficients {
        c4: z1.conj() * z2.conj(),
        c3: -(z1.conj() + z2.conj()),
        c2: ComplexPoint::new(0.0, 0.0),
        c1: z1 + z2,
        c0: -(z1 * z2),
    }
}

/// Derivative of `θ ↦ |e^{iθ} − z1| + |e^{iθ} − z2|` at `u = e^{iθ}`; it
/// vanishes exactly when the radius at `u` bisects the angle `z1 u z2`.
pub fn reflection_residual(z1: ComplexPoint, z2: ComplexPoint, u: ComplexPoint) -> f64 {
    let w = (u - z1) / (u - z1).norm() + (u - z2) / (u - z2).norm();
    (u * w.conj()).im.abs()
}

/// Signed derivative of `θ ↦ |e^{iθ} − z1| + |e^{iθ} − z2|`.
fn reflection_slope(z1: ComplexPoint, z2: ComplexPoint, theta: f64) -> f64 {
    let u = ComplexPoint::from_polar(1.0, theta);
    let w = (u - z1) / (u - z1).norm() + (u - z2) / (u - z2).norm();
    -(u * w.conj()).im
}

/// Root of the slope in a small bracket about `theta`, if the slope changes
/// sign there from negative to positive.
fn polish_reflection(z1: ComplexPoint, z2: ComplexPoint, theta: f64) -> Option<ComplexPoint> {
    let g = |t: f64| reflection_slope(z1, z2, t);
    let mut h = 1e-9;
    while h < 1e-2 {
        let (lo, hi) = (theta - h, theta + h);
        if g(lo) <= 0.0 && g(hi) >= 0.0 {
            let t = bisect_root(g, Bracket::new(lo, hi).ok()?, 1e-16).ok()?;
            return Some(ComplexPoint::from_polar(1.0, t));
        }
        h *= 10.0;
    }
    None
}

const ON_CIRCLE_TOL: f64 = 1e-8;
const POLISH_ABOVE: f64 = 1e-12;
const S_DISK_SCAN: usize = 4096;

/// Triangular ratio metric of the unit disk.
///
/// Candidate extremal points are the quartic roots within `1e-8` of the unit
/// circle, projected onto it, together with a 4096-point scan minimum; the
/// best of them under `|z1 − u| + |z2 − u|` wins.
pub fn s_disk(z1: ComplexPoint, z2: ComplexPoint) -> Result<MetricResult> {
    require_pair(&Domain::UnitDisk, z1, z2)?;
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::QuarticSolve));
    }
    // Both foci lie in D, so the squared distances cannot overflow.
    let f = |u: ComplexPoint| (z1 - u).norm_sqr().sqrt() + (z2 - u).norm_sqr().sqrt();

    let mut candidates: Vec<ComplexPoint> = solve_quartic(&alhazen_quartic(z1, z2))
        .map(|roots| {
            roots
                .into_iter()
                .filter(|u| (u.norm() - 1.0).abs() <= ON_CIRCLE_TOL)
                .map(|u| u / u.norm())
                .collect()
        })
        .unwrap_or_default();
    let (theta, _) = minimize_circle(f, S_DISK_SCAN);
    candidates.push(ComplexPoint::from_polar(1.0, theta));

    let mut best = candidates[0];
    let mut best_f = f(best);
    for &u in &candidates[1..] {
        let fu = f(u);
        if fu < best_f {
            best = u;
            best_f = fu;
        }
    }
    let polish = reflection_residual(z1, z2, best) > POLISH_ABOVE;
    if let Some(u) = polish.then(|| polish_reflection(z1, z2, best.arg())).flatten() {
        // Value comparisons cannot resolve the angle below √ε; the root of the
        // derivative can. Accept it when the value is equal to rounding.
        let fu = f(u);
        if fu <= best_f * (1.0 + 4.0 * f64::EPSILON) && reflection_residual(z1, z2, u) < reflection_residual(z1, z2, best) {
            best = u;
            best_f = fu.min(best_f);
        }
    }
    Ok(MetricResult {
        value: (z1 - z2).norm() / best_f,
        extremal_point: Some(best),
        method: Method::QuarticSolve,
        residual: reflection_residual(z1, z2, best),
    })
}

/// Point-pair function `|z1−z2| / √(|z1−z2|² + 4 d(z1) d(z2))`.
pub fn point_pair(d: &Domain, z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    require_pair(d, z1, z2)?;
    if z1 == z2 {
        return Ok(0.0);
    }
    let d2 = (z1 - z2).norm_sqr();
    Ok((d2 / (d2 + 4.0 * d.boundary_distance(z1) * d.boundary_distance(z2))).sqrt())
}

/// `|z1−z2| / (2 − |z1+z2|)`, an upper bound for `s_D` that is not a metric.
pub fn m_disk(z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    require_pair(&Domain::UnitDisk, z1, z2)?;
    if z1 == z2 {
        return Ok(0.0);
    }
    Ok((z1 - z2).norm() / (2.0 - (z1 + z2).norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::mobius_qc::{cayley, mobius_disk};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    fn scan_s_disk(z1: ComplexPoint, z2: ComplexPoint, n: usize) -> (f64, ComplexPoint) {
        let mut best = (f64::INFINITY, c(1.0, 0.0));
        for k in 0..n {
            let u = ComplexPoint::from_polar(1.0, TAU * k as f64 / n as f64);
            let f = (z1 - u).norm() + (z2 - u).norm();
            if f < best.0 {
                best = (f, u);
            }
        }
        ((z1 - z2).norm() / best.0, best.1)
    }

    #[test]
    fn hyperbolic_examples() {
        assert_eq!(hyperbolic_disk(c(0.0, 0.0), c(0.0, 0.0)).unwrap(), 0.0);
        let r: f64 = 0.6;
        assert_relative_eq!(hyperbolic_disk(c(0.0, 0.0), c(r, 0.0)).unwrap(), ((1.0 + r) / (1.0 - r)).ln(), max_relative = 1e-14);
        let (z1, z2) = (c(0.3, 0.0), c(0.5, 0.0));
        let moved = mobius_disk(z1, z2).unwrap();
        assert_relative_eq!(
            hyperbolic_disk(z1, z2).unwrap(),
            hyperbolic_disk(c(0.0, 0.0), moved).unwrap(),
            max_relative = 1e-13
        );
        let t = (0.2f64 / (0.04f64 + 0.91 * 0.75).sqrt()).atanh() * 2.0;
        assert_relative_eq!(hyperbolic_disk(z1, z2).unwrap(), t, max_relative = 1e-14);

        assert_eq!(hyperbolic_halfplane(c(0.0, 1.0), c(0.0, 1.0)).unwrap(), 0.0);
        let rho = hyperbolic_halfplane(c(0.0, 1.0), c(2.0, 1.0)).unwrap();
        assert_relative_eq!((rho / 2.0).tanh(), FRAC_1_SQRT_2, max_relative = 1e-14);

        assert!(matches!(hyperbolic_disk(c(1.0, 0.0), c(0.0, 0.0)), Err(Error::OutOfDomain { .. })));
        assert!(matches!(hyperbolic_halfplane(c(1.0, -1.0), c(0.0, 1.0)), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn s_halfplane_examples() {
        let r = s_halfplane(c(0.0, 1.0), c(2.0, 1.0)).unwrap();
        assert_relative_eq!(r.value, FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_eq!(r.extremal_point, Some(c(1.0, 0.0)));
        assert_eq!(s_halfplane(c(0.0, 1.0), c(0.0, 1.0)).unwrap().value, 0.0);
    }

    #[test]
    fn s_disk_examples() {
        let r = s_disk(c(0.3, 0.0), c(0.5, 0.0)).unwrap();
        assert_relative_eq!(r.value, 1.0 / 6.0, max_relative = 1e-14);
        assert!((r.extremal_point.unwrap() - c(1.0, 0.0)).norm() < 1e-10);
        assert_eq!(r.method, Method::QuarticSolve);

        let r = s_disk(c(0.0, 0.5), c(0.5, 0.0)).unwrap();
        assert!((r.extremal_point.unwrap() - ComplexPoint::from_polar(1.0, PI / 4.0)).norm() < 1e-10);
        let (oracle, _) = scan_s_disk(c(0.0, 0.5), c(0.5, 0.0), 1_000_000);
        assert_relative_eq!(r.value, oracle, max_relative = 1e-10);
        let at_quarter = 0.5f64.sqrt() / (2.0 * (1.25 - 0.5f64.sqrt()).sqrt());
        assert_relative_eq!(r.value, at_quarter, max_relative = 1e-14);
        assert_abs_diff_eq!(r.value, 0.479841, epsilon = 1e-6);

        for t in [0.1, 0.5, 0.9] {
            assert_relative_eq!(s_disk(c(t, 0.0), c(-t, 0.0)).unwrap().value, t, max_relative = 1e-12);
        }
        let z = s_disk(c(0.2, 0.1), c(0.2, 0.1)).unwrap();
        assert_eq!(z.value, 0.0);
        assert_eq!(z.extremal_point, None);
    }

    #[test]
    fn point_pair_and_m_examples() {
        assert_eq!(point_pair(&Domain::UnitDisk, c(0.0, 0.0), c(0.0, 0.0)).unwrap(), 0.0);
        assert_relative_eq!(point_pair(&Domain::UnitDisk, c(0.3, 0.0), c(0.5, 0.0)).unwrap(), 1.0 / 6.0, max_relative = 1e-14);
        assert_relative_eq!(m_disk(c(0.3, 0.0), c(0.5, 0.0)).unwrap(), 1.0 / 6.0, max_relative = 1e-14);
        assert_eq!(m_disk(c(0.0, 0.0), c(0.0, 0.0)).unwrap(), 0.0);
        for (r, t) in [(0.1, 0.2), (0.4, 0.9), (0.05, 0.7)] {
            assert_relative_eq!(
                point_pair(&Domain::UnitDisk, c(r, 0.0), c(t, 0.0)).unwrap(),
                m_disk(c(r, 0.0), c(t, 0.0)).unwrap(),
                max_relative = 1e-14
            );
        }
        // The triangle inequality fails for m_D at t = 0.9.
        let t = 0.9;
        let lhs = m_disk(c(t, 0.0), c(0.0, t)).unwrap();
        let rhs = m_disk(c(t, 0.0), c(0.0, 0.0)).unwrap() + m_disk(c(0.0, 0.0), c(0.0, t)).unwrap();
        assert!(lhs > rhs, "{lhs} {rhs}");
    }

    #[test]
    fn collinear_addition_formula() {
        let (r, s, t) = (0.1, 0.4, 0.7);
        let a = |x: f64, y: f64| s_disk(c(x, 0.0), c(y, 0.0)).unwrap().value.atanh();
        assert_abs_diff_eq!(a(r, t), a(r, s) + a(s, t), epsilon = 1e-12);
        assert_abs_diff_eq!(a(r, s), 0.5 * ((1.0 - r) / (1.0 - s)).ln(), epsilon = 1e-12);
    }

    fn in_disk() -> impl Strategy<Value = ComplexPoint> {
        (0.0f64..0.999, 0.0f64..TAU).prop_map(|(r, t)| ComplexPoint::from_polar(r, t))
    }

    fn in_halfplane() -> impl Strategy<Value = ComplexPoint> {
        (-10.0f64..10.0, 0.001f64..10.0).prop_map(|(x, y)| c(x, y))
    }

    proptest! {
        #[test]
        fn s_disk_bounds(z1 in in_disk(), z2 in in_disk()) {
            prop_assume!(z1 != z2);
            let s = s_disk(z1, z2).unwrap();
            let m = m_disk(z1, z2).unwrap();
            let pp = point_pair(&Domain::UnitDisk, z1, z2).unwrap();
            let rho = hyperbolic_disk(z1, z2).unwrap();
            prop_assert!(s.value <= m + 1e-12);
            prop_assert!(s.value <= pp + 1e-12);
            prop_assert!((rho / 4.0).tanh() <= s.value + 1e-12);
            prop_assert!(s.value <= (rho / 2.0).tanh() + 1e-12);
            prop_assert!(s.residual <= 1e-8, "residual {}", s.residual);
        }

        #[test]
        fn s_disk_matches_scan(z1 in in_disk(), z2 in in_disk()) {
            prop_assume!((z1 - z2).norm() > 1e-3);
            let s = s_disk(z1, z2).unwrap().value;
            let (scan, _) = scan_s_disk(z1, z2, 20_000);
            prop_assert!(s >= scan * (1.0 - 1e-12));
            prop_assert!(s <= scan * (1.0 + 1e-3));
        }

        #[test]
        fn halfplane_identities(z1 in in_halfplane(), z2 in in_halfplane()) {
            let s = s_halfplane(z1, z2).unwrap().value;
            let rho = hyperbolic_halfplane(z1, z2).unwrap();
            let pp = point_pair(&Domain::UpperHalfPlane, z1, z2).unwrap();
            prop_assert!((s - (rho / 2.0).tanh()).abs() <= 1e-12);
            prop_assert!((s - pp).abs() <= 1e-12);
        }

        #[test]
        fn cayley_transports_hyperbolic_distance(z1 in in_halfplane(), z2 in in_halfplane()) {
            let w1 = cayley(z1, false).unwrap();
            let w2 = cayley(z2, false).unwrap();
            prop_assume!(w1.norm() < 1.0 - 1e-9 && w2.norm() < 1.0 - 1e-9);
            let rh = hyperbolic_halfplane(z1, z2).unwrap();
            let rd = hyperbolic_disk(w1, w2).unwrap();
            prop_assert!((rh - rd).abs() <= 1e-10 * rh.max(1.0) * (1.0 + rh), "{rh} {rd}");
        }
    }
}
