//! The Barrlund distance
//!
//! ```text
//! b_{G,p}(z1, z2) = sup_{z ∈ ∂G} |z1 − z2| / (|z1 − z|^p + |z − z2|^p)^{1/p}
//! ```
//!
//! with the max of the two distances in place of the p-norm when `p = ∞`.
//! Every value lies in `[0, 2^{1−1/p}]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{ComplexPoint, Domain};
use crate::metrics::{s_disk, s_halfplane, Method, MetricResult};
use crate::numerics::{bisect_root, minimize_circle, Bracket};
use crate::validation::oracle::oracle_b;

/// The exponent `p ∈ [1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PExponent {
    Finite(f64),
    Infinity,
}

impl PExponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p >= 1.0 && p.is_finite() {
            Ok(PExponent::Finite(p))
        } else {
            Err(Error::InvalidExponent(format!("{p} is not a finite number ≥ 1")))
        }
    }

    /// `1/p`, zero for `p = ∞`.
    pub fn reciprocal(self) -> f64 {
        match self {
            PExponent::Finite(p) => 1.0 / p,
            PExponent::Infinity => 0.0,
        }
    }

    /// The supremum `2^{1−1/p}` of `b_{G,p}` over all domains.
    pub fn ceiling(self) -> f64 {
        2f64.powf(1.0 - self.reciprocal())
    }

    pub fn is_finite(self) -> bool {
        matches!(self, PExponent::Finite(_))
    }

    /// `(a^p + b^p)^{1/p}` for nonnegative `a`, `b`, or `max(a, b)` when
    /// `p = ∞`. Scaled so that large `p` does not overflow.
    pub fn combine(self, a: f64, b: f64) -> f64 {
        let m = a.max(b);
        match self {
            PExponent::Infinity => m,
            PExponent::Finite(_) if m == 0.0 => 0.0,
            PExponent::Finite(p) => m * ((a / m).powf(p) + (b / m).powf(p)).powf(1.0 / p),
        }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Finite(p) => write!(f, "{p}"),
            PExponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for PExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(PExponent::Infinity);
        }
        let p: f64 = t.parse().map_err(|_| Error::InvalidExponent(format!("cannot parse {s:?}")))?;
        PExponent::finite(p)
    }
}

/// Which set the supremum ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryMode {
    /// The boundary `∂G`.
    #[default]
    Boundary,
    /// The whole complement of `G`.
    Complement,
}

fn require_pair(d: &Domain, z1: ComplexPoint, z2: ComplexPoint) -> Result<()> {
    d.require(z1)?;
    d.require(z2)
}

fn clamp(mut r: MetricResult, p: PExponent) -> MetricResult {
    r.value = r.value.clamp(0.0, p.ceiling());
    r
}

/// `b_{G,p}(z1, z2)`, dispatched to the sharpest available evaluator.
pub fn b(d: &Domain, p: PExponent, z1: ComplexPoint, z2: ComplexPoint) -> Result<MetricResult> {
    require_pair(d, z1, z2)?;
    let r = match (d, p) {
        (Domain::UnitDisk, PExponent::Finite(q)) if q == 1.0 => s_disk(z1, z2)?,
        (Domain::UpperHalfPlane, PExponent::Finite(q)) if q == 1.0 => s_halfplane(z1, z2)?,
        (_, PExponent::Finite(q)) if q == 2.0 => b_p2_midpoint(d, z1, z2)?,
        (Domain::UpperHalfPlane, PExponent::Finite(q)) => b_halfplane_p(q, z1, z2)?,
        (Domain::UnitDisk, PExponent::Finite(q)) => b_circle_p(false, q, z1, z2)?,
        (Domain::ExteriorUnitDisk, PExponent::Finite(q)) => b_circle_p(true, q, z1, z2)?,
        (Domain::UpperHalfPlane, PExponent::Infinity) => b_halfplane_inf(z1, z2)?,
        (Domain::UnitDisk, PExponent::Infinity) => b_disk_inf(z1, z2)?,
        (Domain::PuncturedPlane { center }, PExponent::Finite(q)) => b_punctured(*center, q, z1, z2)?,
        _ => oracle_b(d, p, z1, z2, FALLBACK_SAMPLES)?,
    };
    Ok(clamp(r, p))
}

const FALLBACK_SAMPLES: usize = 8192;

/// As [`b`], with the supremum optionally taken over the whole complement.
///
/// The p-mean of the two distances is smallest at the midpoint (anywhere on
/// the segment for `p = 1`), where the ratio equals `2^{1−1/p}`. When that
/// set meets the complement the complement variant attains the ceiling;
/// otherwise its sublevel sets reach the complement through `∂G` and both
/// variants agree.
pub fn b_with_mode(
    d: &Domain,
    p: PExponent,
    z1: ComplexPoint,
    z2: ComplexPoint,
    mode: BoundaryMode,
) -> Result<MetricResult> {
    if mode == BoundaryMode::Boundary {
        return b(d, p, z1, z2);
    }
    require_pair(d, z1, z2)?;
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::ClosedForm));
    }
    let mid = (z1 + z2) / 2.0;
    let leaves = match p {
        PExponent::Finite(q) if q == 1.0 => d.segment_leaves(z1, z2),
        _ => !d.contains(mid),
    };
    if leaves {
        return Ok(MetricResult::closed(p.ceiling(), Some(mid)));
    }
    b(d, p, z1, z2)
}

/// `b_{G,2}` from the distance of the midpoint to `∂G`, valid for every
/// proper subdomain, including when the midpoint lies outside `G`.
pub fn b_p2_midpoint(d: &Domain, z1: ComplexPoint, z2: ComplexPoint) -> Result<MetricResult> {
    require_pair(d, z1, z2)?;
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::ClosedForm));
    }
    let mid = (z1 + z2) / 2.0;
    let dm = d.boundary_distance(mid);
    let diff = (z1 - z2).norm();
    let value = diff / (2.0 * dm * dm + 0.5 * diff * diff).sqrt();
    Ok(MetricResult::closed(value, Some(d.nearest_boundary_point(mid))))
}

/// `b_{D,2}` in closed form.
pub fn b_disk_p2_closed(z1: ComplexPoint, z2: ComplexPoint) -> Result<MetricResult> {
    require_pair(&Domain::UnitDisk, z1, z2)?;
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::ClosedForm));
    }
    let sum = z1 + z2;
    let value = (z1 - z2).norm() / (2.0 + z1.norm_sqr() + z2.norm_sqr() - 2.0 * sum.norm()).sqrt();
    let u = if sum.norm() > 0.0 { sum / sum.norm() } else { ComplexPoint::new(1.0, 0.0) };
    Ok(MetricResult::closed(value, Some(u)))
}

/// `b_{H,2}` in closed form; the extremal point is `Re(z1 + z2)/2`.
pub fn b_halfplane_p2_closed(z1: ComplexPoint, z2: ComplexPoint) -> Result<MetricResult> {
    require_pair(&Domain::UpperHalfPlane, z1, z2)?;
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::ClosedForm));
    }
    let diff2 = (z1 - z2).norm_sqr();
    let h = z1.im + z2.im;
    let value = (2.0 * diff2 / (diff2 + h * h)).sqrt();
    Ok(MetricResult::closed(value, Some(ComplexPoint::new((z1.re + z2.re) / 2.0, 0.0))))
}

const HALFPLANE_TOL: f64 = 1e-13;

/// Derivative of `S_p(t) = |t − z1|^p + |t − z2|^p`.
pub fn halfplane_objective_slope(p: f64, z1: ComplexPoint, z2: ComplexPoint, t: f64) -> f64 {
    let x = ComplexPoint::new(t, 0.0);
    p * [z1, z2]
        .iter()
        .map(|z| (t - z.re) * (x - z).norm().powf(p - 2.0))
        .sum::<f64>()
}

/// `b_{H,p}` for finite `p` by locating the unique critical point of `S_p`
/// between the real parts.
pub fn b_halfplane_p(p: f64, z1: ComplexPoint, z2: ComplexPoint) -> Result<MetricResult> {
    let pe = PExponent::finite(p)?;
    require_pair(&Domain::UpperHalfPlane, z1, z2)?;
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::RootSolve));
    }
    if z1.re == z2.re {
        let value = (z1.im - z2.im).abs() / pe.combine(z1.im, z2.im);
        return Ok(MetricResult::closed(value, Some(ComplexPoint::new(z1.re, 0.0))));
    }
    let slope = |t: f64| halfplane_objective_slope(p, z1, z2, t);
    let br = Bracket::new(z1.re.min(z2.re), z1.re.max(z2.re))?;
    let t0 = bisect_root(slope, br, HALFPLANE_TOL)?;
    let u = ComplexPoint::new(t0, 0.0);
    Ok(MetricResult {
        value: (z1 - z2).norm() / pe.combine((u - z1).norm(), (u - z2).norm()),
        extremal_point: Some(u),
        method: Method::RootSolve,
        residual: slope(t0).abs(),
    })
}

const CIRCLE_GRID: usize = 512;

/// Magnitude of the critical-point expression for the circle objective at
/// `u`, principal branch of the complex power.
pub fn circle_critical_residual(p: f64, z1: ComplexPoint, z2: ComplexPoint, u: ComplexPoint) -> f64 {
    let term = |z: ComplexPoint| {
        let a = (z.norm_sqr() + 1.0) * u - z.conj() * u * u - z;
        a.powf(p / 2.0 - 1.0) * (z.conj() * u * u - z)
    };
    (term(z1) + term(z2)).norm()
}

/// `b_{G,p}` for finite `p` when `∂G` is the unit circle: the disk
/// (`exterior = false`) or the exterior of the closed disk.
pub fn b_circle_p(exterior: bool, p: f64, z1: ComplexPoint, z2: ComplexPoint) -> Result<MetricResult> {
    let pe = PExponent::finite(p)?;
    let d = if exterior { Domain::ExteriorUnitDisk } else { Domain::UnitDisk };
    require_pair(&d, z1, z2)?;
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::Scan));
    }
    let g = |u: ComplexPoint| (z1 - u).norm().powf(p) + (z2 - u).norm().powf(p);
    let (theta, _) = minimize_circle(g, CIRCLE_GRID);
    let u = ComplexPoint::from_polar(1.0, theta);
    Ok(MetricResult {
        value: (z1 - z2).norm() / pe.combine((z1 - u).norm(), (z2 - u).norm()),
        extremal_point: Some(u),
        method: Method::Scan,
        residual: circle_critical_residual(p, z1, z2, u),
    })
}

/// `b_{H,∞}` in closed form.
pub fn b_halfplane_inf(z1: ComplexPoint, z2: ComplexPoint) -> Result<MetricResult> {
    require_pair(&Domain::UpperHalfPlane, z1, z2)?;
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::ClosedForm));
    }
    if z1.re != z2.re {
        // Foot of the perpendicular bisector on the real axis.
        let x = (z1.norm_sqr() - z2.norm_sqr()) / (2.0 * (z1.re - z2.re));
        if x > z1.re.min(z2.re) && x < z1.re.max(z2.re) {
            let value = 2.0 * (z1.re - z2.re).abs() / (z1 - z2.conj()).norm();
            return Ok(MetricResult::closed(value, Some(ComplexPoint::new(x, 0.0))));
        }
    }
    let top = if z1.im >= z2.im { z1 } else { z2 };
    Ok(MetricResult::closed((z1 - z2).norm() / top.im, Some(ComplexPoint::new(top.re, 0.0))))
}

/// `b_{D,∞}` in closed form.
pub fn b_disk_inf(z1: ComplexPoint, z2: ComplexPoint) -> Result<MetricResult> {
    require_pair(&Domain::UnitDisk, z1, z2)?;
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::ClosedForm));
    }
    let zero = ComplexPoint::new(0.0, 0.0);
    let diff = (z1 - z2).norm();
    if z1 == zero || z2 == zero {
        let other = if z1 == zero { z2 } else { z1 };
        return Ok(MetricResult::closed(diff, Some(other / other.norm())));
    }
    let (n1, n2) = (z1.norm(), z2.norm());
    let u1 = z1 / n1;
    let u2 = z2 / n2;
    if n1 <= 1.0 - (z2 - u1).norm() {
        return Ok(MetricResult::closed(diff / (1.0 - n1), Some(u1)));
    }
    if n2 <= 1.0 - (z1 - u2).norm() {
        return Ok(MetricResult::closed(diff / (1.0 - n2), Some(u2)));
    }
    let e = (z1 - z2) / diff;
    let q = ((z1.norm_sqr() - z2.norm_sqr()) / (2.0 * diff)).clamp(-1.0, 1.0);
    let h = (1.0 - q * q).sqrt();
    let z_plus = e * ComplexPoint::new(q, h);
    let z_minus = e * ComplexPoint::new(q, -h);
    let (d_plus, d_minus) = ((z_plus - z1).norm(), (z_minus - z1).norm());
    let m = d_plus.min(d_minus);
    let cross = (z1.conj() * z2).im;
    let u = if cross != 0.0 {
        e * ComplexPoint::new(q, cross.signum() * h)
    } else if d_plus <= d_minus {
        z_plus
    } else {
        z_minus
    };
    Ok(MetricResult::closed(diff / m, Some(u)))
}

/// `b_{G,p}` on the plane punctured at `center`.
pub fn b_punctured(center: ComplexPoint, p: f64, z1: ComplexPoint, z2: ComplexPoint) -> Result<MetricResult> {
    let pe = PExponent::finite(p)?;
    require_pair(&Domain::PuncturedPlane { center }, z1, z2)?;
    if z1 == z2 {
        return Ok(MetricResult::zero(Method::ClosedForm));
    }
    let value = (z1 - z2).norm() / pe.combine((z1 - center).norm(), (z2 - center).norm());
    Ok(MetricResult::closed(value, Some(center)))
}
