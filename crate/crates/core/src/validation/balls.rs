//! Inclusions between Euclidean disks and `b_{D,p}`-balls centred on the
//! positive real axis, checked on densely sampled circles.

use std::f64::consts::TAU;

use crate::barrlund::{b, PExponent};
use crate::error::{Error, Result};
use crate::geometry::{ComplexPoint, Domain};
use crate::numerics::{bisect_root, Bracket};

use super::report::{Tracker, VerificationReport};

const SHRINK: f64 = 1.0 - 1e-6;
const GROW: f64 = 1.0 + 1e-6;
const TOL: f64 = 1e-9;

/// Radius `R` with `b_{D,2}(a, a − R) = b_{D,2}(a, a + r)`, from the
/// two-branch solution of the squared equation.
pub fn outer_radius(a: f64, r: f64) -> f64 {
    if 2.0 * a * (1.0 - a) - r * (1.0 + a) >= 0.0 {
        r * (1.0 - a) / (1.0 - a - r)
    } else {
        r * (1.0 + a) / (1.0 - a)
    }
}

fn b_at(p: PExponent, a: f64, z: ComplexPoint) -> f64 {
    b(&Domain::UnitDisk, p, ComplexPoint::new(a, 0.0), z).map_or(f64::NAN, |m| m.value)
}

/// With `c = b_{D,p}(a, a + r)`: the circle `|z − a| = r(1 − 1e-6)` lies in
/// the ball `{b_{D,p}(a, ·) < c}`; for `p = 2` the circles `|z| = (a + r)(1 + 1e-6)`
/// and `|z − a| = R(1 + 1e-6)` lie outside it (within `D`).
///
/// Margins are `c − b` inside and `b − c` outside. The witness is
/// `[a, r, p, θ, circle]` with circles numbered 0, 1, 2 in the order above
/// and 3 for the defining identity of `R`.
pub fn check_ball_inclusions(a: f64, r: f64, p: PExponent, circle_samples: usize) -> Result<VerificationReport> {
    if !(0.0 < a && 0.0 < r && a + r < 1.0) {
        return Err(Error::BadConfiguration(format!("need 0 < a < a + r < 1, got a = {a}, r = {r}")));
    }
    let PExponent::Finite(pv) = p else {
        return Err(Error::BadConfiguration("ball inclusions need a finite exponent".into()));
    };
    if circle_samples < 1 {
        return Err(Error::BadConfiguration("need at least one circle sample".into()));
    }
    let c = b_at(p, a, ComplexPoint::new(a + r, 0.0));
    let centre = ComplexPoint::new(a, 0.0);
    let mut t = Tracker::new("ball-inclusions", TOL, circle_samples, 0);
    let n = circle_samples;
    let theta = |k: usize| TAU * k as f64 / n as f64;

    for k in 0..n {
        let z = centre + ComplexPoint::from_polar(r * SHRINK, theta(k));
        t.observe(c - b_at(p, a, z), &[a, r, pv, theta(k), 0.0]);
    }
    if pv == 2.0 {
        for k in 0..n {
            let z = ComplexPoint::from_polar((a + r) * GROW, theta(k));
            if z.norm() < 1.0 {
                t.observe(b_at(p, a, z) - c, &[a, r, pv, theta(k), 1.0]);
            }
        }
        let big_r = outer_radius(a, r);
        if a - big_r > -1.0 {
            let at = b_at(p, a, ComplexPoint::new(a - big_r, 0.0));
            t.observe(-(at - c).abs(), &[a, r, pv, std::f64::consts::PI, 3.0]);
        }
        for k in 0..n {
            let z = centre + ComplexPoint::from_polar(big_r * GROW, theta(k));
            if z.norm() < 1.0 {
                t.observe(b_at(p, a, z) - c, &[a, r, pv, theta(k), 2.0]);
            }
        }
    }
    Ok(t.finish())
}

/// Point where the ray from `a` at angle `phi` meets the level set
/// `b_{D,2}(a, ·) = 1`.
pub fn level_one_point(a: f64, phi: f64) -> Result<ComplexPoint> {
    let dir = ComplexPoint::from_polar(1.0, phi);
    // Distance from a to the unit circle along the ray.
    let reach = -a * phi.cos() + (1.0 - a * a * phi.sin().powi(2)).sqrt();
    let f = |rho: f64| b_at(PExponent::Finite(2.0), a, ComplexPoint::new(a, 0.0) + dir * rho) - 1.0;
    let hi = reach * (1.0 - 1e-12);
    let rho = bisect_root(f, Bracket::new(0.0, hi)?, 1e-15)?;
    Ok(ComplexPoint::new(a, 0.0) + dir * rho)
}

/// The level-one ball about `a` is the ellipse `x² + y²/(1 − a²) = 1`.
/// Margin is minus the ellipse residual at each of `angles` rays, which are
/// offset by half a step from the real axis where the ellipse touches `∂D`.
pub fn check_level_one_ellipse(a: f64, angles: usize) -> Result<VerificationReport> {
    if !(a.abs() < 1.0) || angles < 1 {
        return Err(Error::BadConfiguration(format!("need |a| < 1 and at least one angle, got a = {a}")));
    }
    let mut t = Tracker::new("level-one-ellipse", 1e-6, angles, 0);
    for k in 0..angles {
        let phi = TAU * (k as f64 + 0.5) / angles as f64;
        match level_one_point(a, phi) {
            Ok(z) => t.observe(-(z.re * z.re + z.im * z.im / (1.0 - a * a) - 1.0).abs(), &[a, phi]),
            Err(_) => t.fail(&[a, phi]),
        }
    }
    Ok(t.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusions_hold() {
        for (a, r) in [(0.5, 0.25), (0.3, 0.1), (0.1, 0.8), (0.7, 0.29)] {
            for p in [1.5, 2.0, 3.0] {
                let rep = check_ball_inclusions(a, r, PExponent::Finite(p), 2000).unwrap();
                assert!(rep.passed, "a={a} r={r} p={p}: {rep:?}");
            }
        }
    }

    #[test]
    fn outer_radius_solves_the_equation() {
        for (a, r) in [(0.5, 0.25), (0.3, 0.1), (0.1, 0.5)] {
            let big_r = outer_radius(a, r);
            let lhs = b_at(PExponent::Finite(2.0), a, ComplexPoint::new(a + r, 0.0));
            let rhs = b_at(PExponent::Finite(2.0), a, ComplexPoint::new(a - big_r, 0.0));
            if a - big_r > -1.0 {
                assert!((lhs - rhs).abs() < 1e-12, "a={a} r={r}");
            }
        }
    }

    #[test]
    fn tiny_radius_is_trivial() {
        let rep = check_ball_inclusions(0.4, 1e-7, PExponent::Finite(2.0), 100).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn bad_configurations() {
        assert!(check_ball_inclusions(0.5, 0.6, PExponent::Finite(2.0), 10).is_err());
        assert!(check_ball_inclusions(0.0, 0.1, PExponent::Finite(2.0), 10).is_err());
        assert!(check_ball_inclusions(0.5, 0.1, PExponent::Infinity, 10).is_err());
    }

    #[test]
    fn ellipse() {
        let rep = check_level_one_ellipse(0.3, 360).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}
