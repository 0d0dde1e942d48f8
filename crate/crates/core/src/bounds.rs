//! Explicit lower bounds `T_p` and `U_p` for `b_{H,p}`.
//!
//! For `z1, z2 ∈ H`:
//!
//! ```text
//! s_H ≤ T_p ≤ b_{H,p},   U_p ≤ b_{H,p},   T_p ≤ U_p  (p ≥ 2)
//! ```

use crate::barrlund::PExponent;
use crate::error::Result;
use crate::geometry::{ComplexPoint, Domain};

/// Auxiliary quantities shared by both bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfplaneBoundInputs {
    /// `Im z1 / (Im z1 + Im z2)`.
    pub alpha: f64,
    /// Half the horizontal separation.
    pub c: f64,
    /// `√(Im z1² + c²)`.
    pub leg_a: f64,
    /// `√(Im z2² + c²)`.
    pub leg_b: f64,
}

impl HalfplaneBoundInputs {
    pub fn new(z1: ComplexPoint, z2: ComplexPoint) -> Result<Self> {
        Domain::UpperHalfPlane.require(z1)?;
        Domain::UpperHalfPlane.require(z2)?;
        let c = (z1.re - z2.re).abs() / 2.0;
        Ok(Self {
            alpha: z1.im / (z1.im + z2.im),
            c,
            leg_a: z1.im.hypot(c),
            leg_b: z2.im.hypot(c),
        })
    }
}

/// `T_p = |z1 − z2| / (|z1 − conj z2| · (α^p + (1 − α)^p)^{1/p})`.
pub fn t_bound(p: f64, z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    let pe = PExponent::finite(p)?;
    let inp = HalfplaneBoundInputs::new(z1, z2)?;
    if z1 == z2 {
        return Ok(0.0);
    }
    Ok((z1 - z2).norm() / ((z1 - z2.conj()).norm() * pe.combine(inp.alpha, 1.0 - inp.alpha)))
}

/// `U_p = |z1 − z2| / (legA^p + legB^p)^{1/p}`.
pub fn u_bound(p: f64, z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    let pe = PExponent::finite(p)?;
    let inp = HalfplaneBoundInputs::new(z1, z2)?;
    if z1 == z2 {
        return Ok(0.0);
    }
    Ok((z1 - z2).norm() / pe.combine(inp.leg_a, inp.leg_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barrlund::{b_halfplane_p, b_halfplane_p2_closed};
    use crate::metrics::s_halfplane;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn particular_values() {
        assert_relative_eq!(t_bound(2.0, c(1.0, 6.0), c(-2.0, 3.0)).unwrap(), 0.6, max_relative = 1e-12);
        assert_relative_eq!(t_bound(2.0, c(-4.0, 4.0), c(4.0, 12.0)).unwrap(), 0.8, max_relative = 1e-12);
        for t in [0.5, 1.0, 2.0] {
            assert_relative_eq!(t_bound(2.0, c(-t, t), c(1.0, 1.0)).unwrap(), 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn diagonal_family_is_one_only_at_p2() {
        // T_p(−t+it, 1+i) = √(1+t²) / (1+t^p)^{1/p}.
        for p in [1.0, 3.0, 10.0] {
            for t in [0.5, 1.0, 2.0] {
                let exact = f64::sqrt(1.0 + t * t) / f64::powf(1.0 + f64::powf(t, p), 1.0 / p);
                let got = t_bound(p, c(-t, t), c(1.0, 1.0)).unwrap();
                assert_relative_eq!(got, exact, max_relative = 1e-12);
                assert!((got - 1.0).abs() > 1e-3);
            }
        }
    }

    #[test]
    fn u_bound_values() {
        assert_relative_eq!(u_bound(2.0, c(0.0, 1.0), c(2.0, 1.0)).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            u_bound(2.0, c(0.0, 1.0), c(2.0, 1.0)).unwrap(),
            b_halfplane_p2_closed(c(0.0, 1.0), c(2.0, 1.0)).unwrap().value,
            max_relative = 1e-15
        );
        for p in [1.0, 2.5, 7.0] {
            let (z1, z2) = (c(1.5, 0.5), c(1.5, 4.0));
            let exact = (4.0 - 0.5) / (0.5f64.powf(p) + 4f64.powf(p)).powf(1.0 / p);
            assert_relative_eq!(u_bound(p, z1, z2).unwrap(), exact, max_relative = 1e-14);
            assert_relative_eq!(b_halfplane_p(p, z1, z2).unwrap().value, exact, max_relative = 1e-14);
        }
    }

    #[test]
    fn rejects_points_off_the_halfplane() {
        assert!(t_bound(2.0, c(0.0, 0.0), c(1.0, 1.0)).is_err());
        assert!(u_bound(0.5, c(0.0, 1.0), c(1.0, 1.0)).is_err());
        assert_eq!(t_bound(3.0, c(0.0, 1.0), c(0.0, 1.0)).unwrap(), 0.0);
    }

    fn in_halfplane() -> impl Strategy<Value = ComplexPoint> {
        (-10.0f64..10.0, 0.001f64..10.0).prop_map(|(x, y)| c(x, y))
    }

    proptest! {
        #[test]
        fn bound_chain(z1 in in_halfplane(), z2 in in_halfplane(), p in 1.0f64..10.0) {
            let s = s_halfplane(z1, z2).unwrap().value;
            let t = t_bound(p, z1, z2).unwrap();
            let u = u_bound(p, z1, z2).unwrap();
            let bv = b_halfplane_p(p, z1, z2).unwrap().value;
            prop_assert!(s <= t * (1.0 + 1e-12));
            prop_assert!(t <= bv * (1.0 + 1e-12));
            prop_assert!(u <= bv * (1.0 + 1e-12));
            if p >= 2.0 {
                prop_assert!(t <= u * (1.0 + 1e-12));
            }
        }

        #[test]
        fn t1_is_s_halfplane(z1 in in_halfplane(), z2 in in_halfplane()) {
            let s = s_halfplane(z1, z2).unwrap().value;
            prop_assert!((t_bound(1.0, z1, z2).unwrap() - s).abs() <= 1e-14 * s.max(1e-300));
        }

        #[test]
        fn t_equality_cases(x in -10.0f64..10.0, y1 in 0.01f64..10.0, y2 in 0.01f64..10.0, dx in 0.01f64..10.0, p in 1.1f64..10.0) {
            let same_re = (c(x, y1), c(x, y2));
            let same_im = (c(x, y1), c(x + dx, y1));
            for (z1, z2) in [same_re, same_im] {
                if z1 == z2 { continue; }
                let t = t_bound(p, z1, z2).unwrap();
                let bv = b_halfplane_p(p, z1, z2).unwrap().value;
                prop_assert!((t - bv).abs() <= 1e-10 * bv);
            }
        }
    }
}
