//! Möbius maps, Lipschitz experiments for `b_{D,p}` under disk
//! automorphisms, and the Grötzsch-modulus distortion function.

use std::f64::consts::PI;

use serde::Serialize;

use crate::barrlund::{b, PExponent};
use crate::error::{Error, Result};
use crate::geometry::{ensure_finite, ComplexPoint, Domain};
use crate::numerics::{agm, bisect_root, Bracket};
use crate::validation::sampling::{sample_disk, trial_rng};

/// The disk automorphism `T_a(z) = (z − a)/(1 − conj(a) z)`.
pub fn mobius_disk(a: ComplexPoint, z: ComplexPoint) -> Result<ComplexPoint> {
    Domain::UnitDisk.require(a)?;
    Domain::UnitDisk.require(z)?;
    if a == ComplexPoint::new(0.0, 0.0) {
        return Ok(z);
    }
    Ok((z - a) / (1.0 - a.conj() * z))
}

/// A real Möbius map `z ↦ (az + b)/(cz + d)` with `ad − bc > 0`, an
/// automorphism of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfplaneMobius {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl HalfplaneMobius {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0 && det.is_finite()) {
            return Err(Error::BadConfiguration(format!("determinant {det} must be positive")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn apply(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        Domain::UpperHalfPlane.require(z)?;
        Ok((z * self.a + self.b) / (z * self.c + self.d))
    }
}

/// Cayley map `H → D`, `(z − i)/(z + i)`, or its inverse `i(1 + w)/(1 − w)`.
pub fn cayley(z: ComplexPoint, inverse: bool) -> Result<ComplexPoint> {
    let i = ComplexPoint::new(0.0, 1.0);
    if inverse {
        Domain::UnitDisk.require(z)?;
        Ok(i * (1.0 + z) / (1.0 - z))
    } else {
        Domain::UpperHalfPlane.require(z)?;
        Ok((z - i) / (z + i))
    }
}

/// `|z|^{1/K − 1} z`, a K-quasiconformal self-map of `H` that keeps
/// arguments.
pub fn radial_stretch(k: f64, z: ComplexPoint) -> Result<ComplexPoint> {
    check_k(k)?;
    ensure_finite(z)?;
    if z == ComplexPoint::new(0.0, 0.0) {
        return Err(Error::ZeroInput);
    }
    if k == 1.0 {
        return Ok(z);
    }
    Ok(z * z.norm().powf(1.0 / k - 1.0))
}

/// `z / |z|²`, an anticonformal self-map of `H`.
pub fn inversion(z: ComplexPoint) -> Result<ComplexPoint> {
    ensure_finite(z)?;
    if z == ComplexPoint::new(0.0, 0.0) {
        return Err(Error::ZeroInput);
    }
    Ok(z / z.norm_sqr())
}

fn check_k(k: f64) -> Result<()> {
    if k >= 1.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("dilatation {k} must be a finite number ≥ 1")))
    }
}

/// Outcome of a seeded search for the Lipschitz constant of `T_a`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzExperiment {
    #[serde(serialize_with = "serialize_exponent")]
    pub p: PExponent,
    pub a: [f64; 2],
    pub trials: usize,
    pub seed: u64,
    pub observed_sup: f64,
    pub witness: [[f64; 2]; 2],
}

fn serialize_exponent<S: serde::Serializer>(p: &PExponent, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// `b_{D,p}(T_a z1, T_a z2) / b_{D,p}(z1, z2)`.
pub fn lipschitz_ratio(p: PExponent, a: ComplexPoint, z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    let before = b(&Domain::UnitDisk, p, z1, z2)?.value;
    let after = b(&Domain::UnitDisk, p, mobius_disk(a, z1)?, mobius_disk(a, z2)?)?.value;
    Ok(after / before)
}

/// Pairs `r e^{i arg(−a)}, s e^{i arg(−a)}` with `r < s → 0`, along which
/// the ratio tends to `1 + |a|`.
pub fn radial_family(a: ComplexPoint) -> Vec<(ComplexPoint, ComplexPoint)> {
    let dir = if a == ComplexPoint::new(0.0, 0.0) {
        ComplexPoint::new(1.0, 0.0)
    } else {
        -a / a.norm()
    };
    (1..=12)
        .flat_map(|k| {
            let s = 10f64.powf(-(k as f64) / 2.0);
            [(0.0, s), (s / 2.0, s)]
        })
        .map(|(r, s)| (dir * r, dir * s))
        .collect()
}

/// Largest observed ratio over `trials` seeded random pairs plus the radial
/// family. Trial `k` draws from stream `k` of `seed`.
pub fn lipschitz_sup_estimate(p: PExponent, a: ComplexPoint, trials: usize, seed: u64) -> Result<LipschitzExperiment> {
    Domain::UnitDisk.require(a)?;
    let mut best = (f64::NEG_INFINITY, (ComplexPoint::new(0.0, 0.0), ComplexPoint::new(0.0, 0.0)));
    let mut consider = |z1: ComplexPoint, z2: ComplexPoint| -> Result<()> {
        if z1 == z2 {
            return Ok(());
        }
        let ratio = lipschitz_ratio(p, a, z1, z2)?;
        if ratio > best.0 {
            best = (ratio, (z1, z2));
        }
        Ok(())
    };
    for (z1, z2) in radial_family(a) {
        consider(z1, z2)?;
    }
    for k in 0..trials {
        let mut rng = trial_rng(seed, k as u64);
        let z1 = sample_disk(&mut rng);
        let z2 = sample_disk(&mut rng);
        consider(z1, z2)?;
    }
    let (w1, w2) = best.1;
    Ok(LipschitzExperiment {
        p,
        a: [a.re, a.im],
        trials,
        seed,
        observed_sup: best.0,
        witness: [[w1.re, w1.im], [w2.re, w2.im]],
    })
}

/// Upper envelope for `T_a`: `(1 + |a|)/(1 − |a|)`.
pub fn bilipschitz_constant(a: ComplexPoint) -> f64 {
    (1.0 + a.norm()) / (1.0 - a.norm())
}

const MU_LO: f64 = 1e-8;
const MU_HI: f64 = 1.0 - 1e-8;

/// Modulus of the Grötzsch ring, `μ(r) = (π/2)·agm(1, r′)/agm(1, r)` with
/// `r′ = √(1 − r²)`.
pub fn grotzsch_mu(r: f64) -> Result<f64> {
    if !(MU_LO..=MU_HI).contains(&r) {
        return Err(Error::OutOfRange(format!("μ is evaluated only on [1e-8, 1 − 1e-8], got {r}")));
    }
    let rp = ((1.0 - r) * (1.0 + r)).sqrt();
    Ok(PI / 2.0 * agm(1.0, rp)? / agm(1.0, r)?)
}

/// Input of the distortion function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionQuery {
    k: f64,
    r: f64,
}

impl DistortionQuery {
    pub fn new(k: f64, r: f64) -> Result<Self> {
        check_k(k)?;
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::OutOfRange(format!("r = {r} must lie in (0, 1)")));
        }
        Ok(Self { k, r })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> Result<f64> {
        phi_k(self.k, self.r)
    }

    pub fn schwarz_bound(&self) -> f64 {
        schwarz_bound(self.k, self.r)
    }
}

/// `φ_K(r) = μ⁻¹(μ(r)/K)`.
pub fn phi_k(k: f64, r: f64) -> Result<f64> {
    DistortionQuery::new(k, r)?;
    if k == 1.0 {
        return Ok(r);
    }
    let target = grotzsch_mu(r)? / k;
    let f = |x: f64| grotzsch_mu(x).map_or(f64::NAN, |m| m - target);
    bisect_root(f, Bracket::new(MU_LO, MU_HI)?, 1e-15)
        .map_err(|_| Error::OutOfRange(format!("φ_{k}({r}) lies outside [1e-8, 1 − 1e-8]")))
}

/// `4^{1 − 1/K} r^{1/K}`, an upper bound for `φ_K(r)`.
pub fn schwarz_bound(k: f64, r: f64) -> f64 {
    4f64.powf(1.0 - 1.0 / k) * r.powf(1.0 / k)
}

/// Right-hand side of the distortion bound for K-quasiconformal self-maps
/// of `H`: `2^{1−1/p} 4^{1−1/K} b^{1/K}`.
pub fn qc_distortion_bound(p: PExponent, k: f64, b_value: f64) -> f64 {
    p.ceiling() * 4f64.powf(1.0 - 1.0 / k) * b_value.powf(1.0 / k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::hyperbolic_disk;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, TAU};

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn mobius_examples() {
        let z = c(0.3, -0.4);
        assert_eq!(mobius_disk(c(0.0, 0.0), z).unwrap(), z);
        assert_eq!(mobius_disk(z, z).unwrap(), c(0.0, 0.0));
        assert!(mobius_disk(c(1.0, 0.0), z).is_err());
        assert_eq!(cayley(c(0.0, 1.0), false).unwrap(), c(0.0, 0.0));
        assert!(cayley(c(0.0, -1.0), false).is_err());
        assert!(HalfplaneMobius::new(1.0, 0.0, 0.0, -1.0).is_err());
        let m = HalfplaneMobius::new(0.0, -1.0, 1.0, 0.0).unwrap();
        assert!((m.apply(c(0.0, 2.0)).unwrap() - c(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn stretch_examples() {
        let z = c(1.5, 0.7);
        assert_eq!(radial_stretch(1.0, z).unwrap(), z);
        for k in [1.5, 2.0, 4.0] {
            let w = radial_stretch(k, z).unwrap();
            assert!((w.arg() - z.arg()).abs() < 1e-15);
            assert_relative_eq!(w.norm(), z.norm().powf(1.0 / k), max_relative = 1e-15);
        }
        assert_eq!(radial_stretch(2.0, c(0.0, 0.0)), Err(Error::ZeroInput));
        assert_eq!(inversion(c(0.0, 0.0)), Err(Error::ZeroInput));
        assert!(radial_stretch(0.5, z).is_err());
        assert_eq!(inversion(c(0.0, 2.0)).unwrap(), c(0.0, 0.5));
    }

    #[test]
    fn grotzsch_values() {
        assert_relative_eq!(grotzsch_mu(FRAC_1_SQRT_2).unwrap(), PI / 2.0, max_relative = 1e-12);
        let r: f64 = 0.6;
        let prod = grotzsch_mu(r).unwrap() * grotzsch_mu((1.0 - r * r).sqrt()).unwrap();
        assert_relative_eq!(prod, PI * PI / 4.0, max_relative = 1e-12);
        assert!(grotzsch_mu(0.3).unwrap() > grotzsch_mu(0.7).unwrap());
        assert!(grotzsch_mu(0.0).is_err());
        assert!(grotzsch_mu(1.0).is_err());
        assert!(grotzsch_mu(1e-8).is_ok());
    }

    #[test]
    fn distortion_values() {
        for r in [0.1, 0.37, 0.9] {
            assert_eq!(phi_k(1.0, r).unwrap(), r);
        }
        for k in [1.5, 2.0, 4.0] {
            for j in 1..=9 {
                let r = j as f64 / 10.0;
                let phi = phi_k(k, r).unwrap();
                assert!(phi >= r);
                assert!(phi <= schwarz_bound(k, r), "K={k} r={r}");
                let residual = grotzsch_mu(phi).unwrap() - grotzsch_mu(r).unwrap() / k;
                assert!(residual.abs() <= 1e-10);
            }
        }
        assert!(phi_k(0.5, 0.5).is_err());
        assert!(phi_k(2.0, 1.0).is_err());
        let q = DistortionQuery::new(2.0, 0.5).unwrap();
        assert_eq!(q.phi().unwrap(), phi_k(2.0, 0.5).unwrap());
    }

    #[test]
    fn lipschitz_experiments() {
        let e = lipschitz_sup_estimate(PExponent::Finite(2.0), c(0.0, 0.0), 200, 1).unwrap();
        assert_eq!(e.observed_sup, 1.0);
        for p in [PExponent::Finite(1.0), PExponent::Finite(2.0), PExponent::Infinity] {
            let a = c(0.0, 0.5);
            let e = lipschitz_sup_estimate(p, a, 500, 3).unwrap();
            assert!(e.observed_sup >= 1.5 - 1e-3, "{p}: {}", e.observed_sup);
            assert!(e.observed_sup <= bilipschitz_constant(a) + 1e-9);
            assert_eq!(e, lipschitz_sup_estimate(p, a, 500, 3).unwrap());
        }
    }

    fn in_disk() -> impl Strategy<Value = ComplexPoint> {
        (0.0f64..0.999, 0.0f64..TAU).prop_map(|(r, t)| ComplexPoint::from_polar(r, t))
    }

    proptest! {
        #[test]
        fn mobius_is_hyperbolic_isometry(a in in_disk(), z1 in in_disk(), z2 in in_disk()) {
            prop_assume!(a.norm() < 0.99);
            let w1 = mobius_disk(a, z1).unwrap();
            let w2 = mobius_disk(a, z2).unwrap();
            prop_assert!(w1.norm() < 1.0 && w2.norm() < 1.0);
            let before = hyperbolic_disk(z1, z2).unwrap();
            let after = hyperbolic_disk(w1, w2).unwrap();
            prop_assert!((before - after).abs() <= 1e-8 * (1.0 + before));
        }

        #[test]
        fn cayley_round_trip(x in -10.0f64..10.0, y in 0.001f64..10.0) {
            let z = c(x, y);
            let w = cayley(z, false).unwrap();
            prop_assert!(w.norm() < 1.0);
            let back = cayley(w, true).unwrap();
            prop_assert!((back - z).norm() <= 1e-14 * (1.0 + z.norm()) * (1.0 + 1.0 / y));
        }
    }
}
