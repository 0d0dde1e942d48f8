//! Seeded property suites. Each suite draws trial `k` from stream `k` of the
//! seed and reports the smallest slack of its inequality over all trials.

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::barrlund::{b, PExponent};
use crate::bounds::{t_bound, u_bound};
use crate::error::Result;
use crate::geometry::{ComplexPoint, Domain, PolygonWithHoles};
use crate::metrics::{hyperbolic_disk, m_disk, point_pair, s_disk, s_halfplane, MetricResult};
use crate::mobius_qc::{
    bilipschitz_constant, cayley, inversion, mobius_disk, qc_distortion_bound, radial_stretch, HalfplaneMobius,
};
use crate::validation::balls::{check_ball_inclusions, check_level_one_ellipse};
use crate::validation::conjecture::{search_artanh_triangle, search_mobius_conjecture};
use crate::validation::oracle::oracle_b;
use crate::validation::report::{Tracker, VerificationReport};
use crate::validation::sampling::{sample_disk, sample_halfplane, trial_rng};

/// Tolerance for suites built from closed forms and guarded solvers.
pub const CLOSED_FORM_TOL: f64 = 1e-9;
/// Tolerance for suites in which the sampling oracle participates.
pub const ORACLE_TOL: f64 = 1e-6;
/// Boundary samples used by the oracle in the suites.
pub const ORACLE_SAMPLES: usize = 8192;

const P_SET: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 10.0];

type Sampler = fn(&mut ChaCha8Rng) -> ComplexPoint;

fn fin(p: f64) -> PExponent {
    PExponent::Finite(p)
}

fn p_code(p: PExponent) -> f64 {
    match p {
        PExponent::Finite(v) => v,
        PExponent::Infinity => f64::INFINITY,
    }
}

fn val(r: Result<MetricResult>) -> f64 {
    r.map_or(f64::NAN, |m| m.value)
}

fn bv(d: &Domain, p: PExponent, z1: ComplexPoint, z2: ComplexPoint) -> f64 {
    val(b(d, p, z1, z2))
}

fn flat(head: &[f64], pts: &[ComplexPoint]) -> Vec<f64> {
    head.iter().copied().chain(pts.iter().flat_map(|z| [z.re, z.im])).collect()
}

fn domains() -> [(f64, Domain, Sampler); 2] {
    [
        (0.0, Domain::UnitDisk, sample_disk as Sampler),
        (1.0, Domain::UpperHalfPlane, sample_halfplane as Sampler),
    ]
}

fn run_trials<F>(name: &'static str, tol: f64, trials: usize, seed: u64, mut body: F) -> VerificationReport
where
    F: FnMut(&mut ChaCha8Rng, &mut Tracker),
{
    let mut t = Tracker::new(name, tol, trials, seed);
    for k in 0..trials {
        let mut rng = trial_rng(seed, k as u64);
        body(&mut rng, &mut t);
    }
    t.finish()
}

/// `s_G ≤ b_{G,p} ≤ 2^{1−1/p} s_G` on `D` and `H`.
pub fn sandwich(trials: usize, seed: u64) -> VerificationReport {
    run_trials("sandwich", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        for (g, d, sample) in domains() {
            let (z1, z2) = (sample(rng), sample(rng));
            let s = bv(&d, fin(1.0), z1, z2);
            for p in P_SET {
                let v = bv(&d, fin(p), z1, z2);
                let m = (v - s).min(fin(p).ceiling() * s - v);
                t.observe(m, &flat(&[g, p], &[z1, z2]));
            }
        }
    })
}

/// `b_{G,r} ≤ b_{G,p} ≤ 2^{1/r − 1/p} b_{G,r}` for `r < p`.
pub fn p_monotonicity(trials: usize, seed: u64) -> VerificationReport {
    run_trials("p-monotonicity", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        for (g, d, sample) in domains() {
            let (z1, z2) = (sample(rng), sample(rng));
            let vals: Vec<f64> = P_SET.iter().map(|&p| bv(&d, fin(p), z1, z2)).collect();
            for i in 0..P_SET.len() {
                for j in (i + 1)..P_SET.len() {
                    let (r, p) = (P_SET[i], P_SET[j]);
                    let factor = 2f64.powf(1.0 / r - 1.0 / p);
                    let m = (vals[j] - vals[i]).min(factor * vals[i] - vals[j]);
                    t.observe(m, &flat(&[g, r, p], &[z1, z2]));
                }
            }
        }
    })
}

/// `b_{G,p} ≤ b_{G,∞} ≤ 2^{1/p} b_{G,p}`.
pub fn inf_bracketing(trials: usize, seed: u64) -> VerificationReport {
    run_trials("inf-bracketing", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        for (g, d, sample) in domains() {
            let (z1, z2) = (sample(rng), sample(rng));
            let vi = bv(&d, PExponent::Infinity, z1, z2);
            for p in P_SET {
                let v = bv(&d, fin(p), z1, z2);
                let m = (vi - v).min(2f64.powf(1.0 / p) * v - vi);
                t.observe(m, &flat(&[g, p], &[z1, z2]));
            }
        }
    })
}

fn collinear_pair(rng: &mut ChaCha8Rng) -> (ComplexPoint, ComplexPoint) {
    let dir = ComplexPoint::from_polar(1.0, TAU * rng.gen::<f64>());
    let x1 = 0.999 * (2.0 * rng.gen::<f64>() - 1.0);
    let x2 = 0.999 * (2.0 * rng.gen::<f64>() - 1.0);
    (dir * x1, dir * x2)
}

/// `s_D ≤ m_D`, with equality for pairs collinear with the origin.
pub fn s_vs_m(trials: usize, seed: u64) -> VerificationReport {
    run_trials("s-vs-m", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let (z1, z2) = (sample_disk(rng), sample_disk(rng));
        let s = val(s_disk(z1, z2));
        let m = m_disk(z1, z2).unwrap_or(f64::NAN);
        t.observe(m - s, &flat(&[0.0], &[z1, z2]));
        let (w1, w2) = collinear_pair(rng);
        let s = val(s_disk(w1, w2));
        let m = m_disk(w1, w2).unwrap_or(f64::NAN);
        t.observe(-(m - s).abs(), &flat(&[1.0], &[w1, w2]));
    })
}

/// `tanh(ρ_D/4) ≤ s_D ≤ tanh(ρ_D/2)`.
pub fn hyperbolic_bound(trials: usize, seed: u64) -> VerificationReport {
    run_trials("hyperbolic-bound", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let (z1, z2) = (sample_disk(rng), sample_disk(rng));
        let s = val(s_disk(z1, z2));
        let rho = hyperbolic_disk(z1, z2).unwrap_or(f64::NAN);
        t.observe((s - (rho / 4.0).tanh()).min((rho / 2.0).tanh() - s), &flat(&[], &[z1, z2]));
    })
}

/// `s_G ≤ p_G` on the convex domains `D` and `H`.
pub fn point_pair_bound(trials: usize, seed: u64) -> VerificationReport {
    run_trials("point-pair-bound", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        for (g, d, sample) in domains() {
            let (z1, z2) = (sample(rng), sample(rng));
            let s = bv(&d, fin(1.0), z1, z2);
            let pp = point_pair(&d, z1, z2).unwrap_or(f64::NAN);
            t.observe(pp - s, &flat(&[g], &[z1, z2]));
        }
    })
}

/// `artanh s_D` is additive along a radius: for `0 < r < s < t < 1` on one
/// ray, `A(r,t) = A(r,s) + A(s,t)` and `A(r,s) = ½ log((1−r)/(1−s))`.
pub fn addition_formula(trials: usize, seed: u64) -> VerificationReport {
    run_trials("addition-formula", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let dir = ComplexPoint::from_polar(1.0, TAU * rng.gen::<f64>());
        let mut x = [0.999 * rng.gen::<f64>(), 0.999 * rng.gen::<f64>(), 0.999 * rng.gen::<f64>()];
        x.sort_by(f64::total_cmp);
        let [r, s, u] = x;
        let a = |p: f64, q: f64| val(s_disk(dir * p, dir * q)).atanh();
        let w = [r, s, u, dir.re, dir.im];
        t.observe(-(a(r, u) - a(r, s) - a(s, u)).abs(), &w);
        t.observe(-(a(r, s) - 0.5 * ((1.0 - r) / (1.0 - s)).ln()).abs(), &w);
    })
}

const BOUND_P: [f64; 6] = [1.0, 1.5, 2.0, 3.0, 5.0, 10.0];

/// `s_H ≤ T_p ≤ b_{H,p}` and `U_p ≤ b_{H,p}`.
pub fn halfplane_lower_bounds(trials: usize, seed: u64) -> VerificationReport {
    run_trials("halfplane-lower-bounds", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let (z1, z2) = (sample_halfplane(rng), sample_halfplane(rng));
        let s = val(s_halfplane(z1, z2));
        for p in BOUND_P {
            let v = bv(&Domain::UpperHalfPlane, fin(p), z1, z2);
            let tb = t_bound(p, z1, z2).unwrap_or(f64::NAN);
            let ub = u_bound(p, z1, z2).unwrap_or(f64::NAN);
            t.observe((tb - s).min(v - tb).min(v - ub), &flat(&[p], &[z1, z2]));
        }
    })
}

/// `T_p ≤ U_p` for `p ≥ 2`.
pub fn u_dominates_t(trials: usize, seed: u64) -> VerificationReport {
    run_trials("u-dominates-t", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let (z1, z2) = (sample_halfplane(rng), sample_halfplane(rng));
        for p in [2.0, 3.0, 5.0] {
            let tb = t_bound(p, z1, z2).unwrap_or(f64::NAN);
            let ub = u_bound(p, z1, z2).unwrap_or(f64::NAN);
            t.observe(ub - tb, &flat(&[p], &[z1, z2]));
        }
    })
}

/// `T_p = b_{H,p}` for pairs with equal real parts or equal imaginary parts.
pub fn t_equality(trials: usize, seed: u64) -> VerificationReport {
    run_trials("t-equality", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let z = sample_halfplane(rng);
        let other = sample_halfplane(rng);
        for (kind, w) in [(0.0, ComplexPoint::new(z.re, other.im)), (1.0, ComplexPoint::new(other.re, z.im))] {
            if w == z {
                continue;
            }
            for p in [1.5, 2.0, 3.0, 5.0] {
                let v = bv(&Domain::UpperHalfPlane, fin(p), z, w);
                let tb = t_bound(p, z, w).unwrap_or(f64::NAN);
                t.observe(-(v - tb).abs(), &flat(&[kind, p], &[z, w]));
            }
        }
    })
}

/// `b_{H,p} ≤ |z1 − z2| / max(Im z1, Im z2)`.
pub fn halfplane_upper_bound(trials: usize, seed: u64) -> VerificationReport {
    run_trials("halfplane-upper-bound", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let (z1, z2) = (sample_halfplane(rng), sample_halfplane(rng));
        let bound = (z1 - z2).norm() / z1.im.max(z2.im);
        for p in P_SET.map(fin).into_iter().chain([PExponent::Infinity]) {
            let v = bv(&Domain::UpperHalfPlane, p, z1, z2);
            t.observe(bound - v, &flat(&[p_code(p)], &[z1, z2]));
        }
    })
}

/// `b_{D,p}(z1, z2) ≤ b_{ext,p}(1/z1, 1/z2)`; strictness is checked by the
/// unit tests.
pub fn inversion_comparison(trials: usize, seed: u64) -> VerificationReport {
    run_trials("inversion-comparison", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let (z1, z2) = (sample_disk(rng), sample_disk(rng));
        for p in P_SET {
            let inner = bv(&Domain::UnitDisk, fin(p), z1, z2);
            let outer = bv(&Domain::ExteriorUnitDisk, fin(p), z1.inv(), z2.inv());
            t.observe(outer - inner, &flat(&[p], &[z1, z2]));
        }
    })
}

/// Nonnegativity, identity of indiscernibles, symmetry and the triangle
/// inequality for `b` on `D` and `H` with `p ∈ {1, 1.5, 2, 3, ∞}`.
pub fn metric_axioms(trials: usize, seed: u64) -> VerificationReport {
    let ps = [fin(1.0), fin(1.5), fin(2.0), fin(3.0), PExponent::Infinity];
    run_trials("metric-axioms", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        for (g, d, sample) in domains() {
            let (x, y, z) = (sample(rng), sample(rng), sample(rng));
            for p in ps {
                let w = flat(&[g, p_code(p)], &[x, y, z]);
                let xy = bv(&d, p, x, y);
                let yx = bv(&d, p, y, x);
                let yz = bv(&d, p, y, z);
                let xz = bv(&d, p, x, z);
                let xx = bv(&d, p, x, x);
                t.observe(xy, &w);
                t.observe(-xx.abs(), &w);
                t.observe(if x != y && xy <= 0.0 { -1.0 } else { 0.0 }, &w);
                t.observe(-(xy - yx).abs(), &w);
                t.observe(xy + yz - xz, &w);
            }
        }
    })
}

/// Pairs `½ + ½e^{±2iα}` at depth `sin α` below the boundary point 1.
pub fn supremum_family(alpha: f64) -> (ComplexPoint, ComplexPoint) {
    let u = ComplexPoint::new(0.5, 0.0) + ComplexPoint::from_polar(0.5, 2.0 * alpha);
    (u, u.conj())
}

/// `b_{H,p} = 2^{1−1/p} s_H` for equal heights, and `sup b_{D,p}` is
/// approached within `1e-3` along a family collapsing onto a boundary point.
pub fn equality_attainment(trials: usize, seed: u64) -> VerificationReport {
    let ps = [1.0, 2.0, 5.0];
    let mut report = run_trials("equality-attainment", 1e-10, trials, seed, |rng, t| {
        let z1 = sample_halfplane(rng);
        let z2 = ComplexPoint::new(sample_halfplane(rng).re, z1.im);
        if z1 == z2 {
            return;
        }
        let s = val(s_halfplane(z1, z2));
        for p in ps {
            let v = bv(&Domain::UpperHalfPlane, fin(p), z1, z2);
            t.observe(-(v - fin(p).ceiling() * s).abs(), &flat(&[0.0, p], &[z1, z2]));
        }
    });
    let mut t = Tracker::new("equality-attainment", 1e-10, trials, seed);
    t.observe(report.worst_margin, &report.witness);
    for p in ps {
        let best = (1..=4)
            .map(|k| {
                let (u, v) = supremum_family(10f64.powi(-k));
                bv(&Domain::UnitDisk, fin(p), u, v)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        t.observe(best - (fin(p).ceiling() - 1e-3), &[1.0, p, best]);
    }
    let runtime = report.runtime_ms;
    report = t.finish();
    report.runtime_ms += runtime;
    report
}

/// The disk is midpoint convex inside `G = {Im z > −1}`, so
/// `b_{D,p} ≥ b_{G,p}` on `D`; `G` is a translate of `H`.
pub fn domain_monotonicity(trials: usize, seed: u64) -> VerificationReport {
    let shift = ComplexPoint::new(0.0, 1.0);
    run_trials("domain-monotonicity", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let (x, y) = (sample_disk(rng), sample_disk(rng));
        for p in P_SET.map(fin).into_iter().chain([PExponent::Infinity]) {
            let inner = bv(&Domain::UnitDisk, p, x, y);
            let outer = bv(&Domain::UpperHalfPlane, p, x + shift, y + shift);
            t.observe(inner - outer, &flat(&[p_code(p)], &[x, y]));
        }
    })
}

/// The square annuli `S₄∖S̄₂ ⊂ S₄∖S̄₁` reverse domain monotonicity:
/// `b_2(3, −3)` is `6/√26` in the smaller and `6/√20` in the larger domain.
pub fn square_annulus(trials: usize, seed: u64) -> VerificationReport {
    let mut t = Tracker::new("square-annulus", 1e-12, trials, seed);
    let (z1, z2) = (ComplexPoint::new(3.0, 0.0), ComplexPoint::new(-3.0, 0.0));
    let small = PolygonWithHoles::square_annulus(4.0, 2.0).map(Domain::PolygonWithHoles);
    let large = PolygonWithHoles::square_annulus(4.0, 1.0).map(Domain::PolygonWithHoles);
    match (small, large) {
        (Ok(small), Ok(large)) => {
            let vs = bv(&small, fin(2.0), z1, z2);
            let vl = bv(&large, fin(2.0), z1, z2);
            t.observe(-(vs - 6.0 / 26f64.sqrt()).abs(), &[2.0, vs]);
            t.observe(-(vl - 6.0 / 20f64.sqrt()).abs(), &[1.0, vl]);
            t.observe(vl - vs, &[vs, vl]);
        }
        _ => t.fail(&[]),
    }
    t.finish()
}

fn phi(x: f64) -> f64 {
    x / (1.0 + x * x)
}

/// Lipschitz bound for disk automorphisms,
/// `b_{D,p}(T_a z1, T_a z2) ≤ 2^{2−1/p} φ(min(b, 1))` with `φ(t) = t/(1+t²)`
/// and `b = b_{D,p}(z1, z2)`.
///
/// The argument via `s_D` only controls `φ(s_D)`, and `φ` is increasing on
/// `[0, 1]` alone, so for `b > 1` the bound degrades to the ceiling
/// `2^{1−1/p}`. Without the `min` the bound is false: at `a = 0`, `p = 2`, any
/// pair with `b > √(2^{3/2} − 1)` violates it.
pub fn mobius_lipschitz(trials: usize, seed: u64) -> VerificationReport {
    run_trials("mobius-lipschitz", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let (a, z1, z2) = (sample_disk(rng), sample_disk(rng), sample_disk(rng));
        for p in [1.0, 2.0, 3.0] {
            let w = flat(&[p], &[a, z1, z2]);
            let (Ok(w1), Ok(w2)) = (mobius_disk(a, z1), mobius_disk(a, z2)) else {
                t.fail(&w);
                continue;
            };
            let before = bv(&Domain::UnitDisk, fin(p), z1, z2);
            let after = bv(&Domain::UnitDisk, fin(p), w1, w2);
            let bound = 2f64.powf(2.0 - 1.0 / p) * phi(before.min(1.0));
            t.observe(bound - after, &w);
        }
    })
}

/// `T_a` is `(1+|a|)/(1−|a|)`-bilipschitz for `b_{D,p}`, `p ∈ {1, 2, ∞}`.
pub fn mobius_bilipschitz(trials: usize, seed: u64) -> VerificationReport {
    run_trials("mobius-bilipschitz", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let (a, z1, z2) = (sample_disk(rng), sample_disk(rng), sample_disk(rng));
        let l = bilipschitz_constant(a);
        for p in [fin(1.0), fin(2.0), PExponent::Infinity] {
            let w = flat(&[p_code(p)], &[a, z1, z2]);
            let (Ok(w1), Ok(w2)) = (mobius_disk(a, z1), mobius_disk(a, z2)) else {
                t.fail(&w);
                continue;
            };
            let before = bv(&Domain::UnitDisk, p, z1, z2);
            let after = bv(&Domain::UnitDisk, p, w1, w2);
            t.observe((l * before - after).min(after - before / l), &w);
        }
    })
}

/// Möbius maps between `D` and `H`: `D → H` is `2^{2−1/p}`-Lipschitz and
/// `H → D` is `2^{1−1/p}`-Lipschitz.
pub fn cayley_lipschitz(trials: usize, seed: u64) -> VerificationReport {
    run_trials("cayley-lipschitz", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let (z1, z2) = (sample_disk(rng), sample_disk(rng));
        let (w1, w2) = (sample_halfplane(rng), sample_halfplane(rng));
        for p in [fin(1.0), fin(2.0), fin(3.0), PExponent::Infinity] {
            let c = p_code(p);
            let wd = flat(&[0.0, c], &[z1, z2]);
            match (cayley(z1, true), cayley(z2, true)) {
                (Ok(h1), Ok(h2)) => {
                    let lhs = bv(&Domain::UpperHalfPlane, p, h1, h2);
                    let rhs = 2.0 * p.ceiling() * bv(&Domain::UnitDisk, p, z1, z2);
                    t.observe(rhs - lhs, &wd);
                }
                _ => t.fail(&wd),
            }
            let wh = flat(&[1.0, c], &[w1, w2]);
            match (cayley(w1, false), cayley(w2, false)) {
                (Ok(d1), Ok(d2)) => {
                    let lhs = bv(&Domain::UnitDisk, p, d1, d2);
                    let rhs = p.ceiling() * bv(&Domain::UpperHalfPlane, p, w1, w2);
                    t.observe(rhs - lhs, &wh);
                }
                _ => t.fail(&wh),
            }
        }
    })
}

/// Self-maps of `H` with their maximal dilatation.
pub fn qc_zoo() -> Vec<(&'static str, f64, Box<dyn Fn(ComplexPoint) -> Result<ComplexPoint>>)> {
    let mob = |a, b, c, d| HalfplaneMobius::new(a, b, c, d).expect("positive determinant");
    let m1 = mob(0.0, -1.0, 1.0, 0.0);
    let m2 = mob(2.0, 3.0, 0.0, 1.0);
    let m3 = mob(2.0, 1.0, 1.0, 1.0);
    vec![
        ("identity", 1.0, Box::new(Ok)),
        ("mobius -1/z", 1.0, Box::new(move |z| m1.apply(z))),
        ("mobius 2z+3", 1.0, Box::new(move |z| m2.apply(z))),
        ("mobius (2z+1)/(z+1)", 1.0, Box::new(move |z| m3.apply(z))),
        ("inversion", 1.0, Box::new(inversion)),
        ("radial K=1.5", 1.5, Box::new(|z| radial_stretch(1.5, z))),
        ("radial K=2", 2.0, Box::new(|z| radial_stretch(2.0, z))),
        ("radial K=4", 4.0, Box::new(|z| radial_stretch(4.0, z))),
    ]
}

/// `b_{H,p}(f z1, f z2) ≤ 2^{1−1/p} 4^{1−1/K} b_{H,p}(z1, z2)^{1/K}` over the
/// map zoo.
pub fn qc_distortion(trials: usize, seed: u64) -> VerificationReport {
    let zoo = qc_zoo();
    run_trials("qc-distortion", CLOSED_FORM_TOL, trials, seed, |rng, t| {
        let (z1, z2) = (sample_halfplane(rng), sample_halfplane(rng));
        for (i, (_, k, f)) in zoo.iter().enumerate() {
            for p in [fin(1.0), fin(2.0), fin(3.0)] {
                let w = flat(&[i as f64, *k, p_code(p)], &[z1, z2]);
                let (Ok(f1), Ok(f2)) = (f(z1), f(z2)) else {
                    t.fail(&w);
                    continue;
                };
                let lhs = bv(&Domain::UpperHalfPlane, p, f1, f2);
                let rhs = qc_distortion_bound(p, *k, bv(&Domain::UpperHalfPlane, p, z1, z2));
                t.observe(rhs - lhs, &w);
            }
        }
    })
}

/// `m_D` violates the triangle inequality on `(t, 0, it)` at `t = 0.9`; the
/// margin is the size of the violation.
pub fn m_disk_not_metric(trials: usize, seed: u64) -> VerificationReport {
    let mut t = Tracker::new("m-disk-not-metric", CLOSED_FORM_TOL, trials, seed);
    let s = 0.9;
    let (x, o, y) = (ComplexPoint::new(s, 0.0), ComplexPoint::new(0.0, 0.0), ComplexPoint::new(0.0, s));
    let m = |a, b| m_disk(a, b).unwrap_or(f64::NAN);
    t.observe(m(x, y) - m(x, o) - m(o, y), &[s]);
    t.finish()
}

const BALL_CONFIGS: [(f64, f64); 5] = [(0.5, 0.25), (0.3, 0.1), (0.1, 0.8), (0.7, 0.29), (0.5, 0.05)];

/// Disk/ball inclusions for `p ∈ {1.5, 2, 3}` and the level-one ellipse at
/// `a = 0.3`; `trials` is the number of samples per circle.
pub fn ball_inclusions(trials: usize, seed: u64) -> VerificationReport {
    let mut t = Tracker::new("ball-inclusions", CLOSED_FORM_TOL, trials, seed);
    for (a, r) in BALL_CONFIGS {
        for p in [1.5, 2.0, 3.0] {
            match check_ball_inclusions(a, r, fin(p), trials.max(1)) {
                Ok(rep) => t.observe(rep.worst_margin, &rep.witness),
                Err(_) => t.fail(&[a, r, p]),
            }
        }
    }
    // The ellipse check carries its own tolerance; rescale onto this one.
    match check_level_one_ellipse(0.3, 360) {
        Ok(rep) => t.observe(if rep.passed { 0.0 } else { rep.worst_margin }, &rep.witness),
        Err(_) => t.fail(&[0.3]),
    }
    t.finish()
}

/// Where `z2` lies in the disk of radius `1 − |z1|` about `z1/|z1|`, the
/// oracle places the `p = ∞` extremal point at `z1/|z1|`.
pub fn disk_inf_tangency(trials: usize, seed: u64) -> VerificationReport {
    run_trials("disk-inf-tangency", ORACLE_TOL, trials, seed, |rng, t| {
        let z1 = sample_disk(rng);
        let u1 = z1 / z1.norm();
        let rad = 1.0 - z1.norm();
        // Rejection sampling inside D, bounded so the run stays deterministic.
        let z2 = (0..64).find_map(|_| {
            let w = u1 + ComplexPoint::from_polar(rad * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>());
            (w.norm() < 1.0 && w != z1).then_some(w)
        });
        let Some(z2) = z2 else { return };
        let wit = flat(&[], &[z1, z2]);
        match oracle_b(&Domain::UnitDisk, PExponent::Infinity, z1, z2, ORACLE_SAMPLES) {
            Ok(r) => t.observe(-r.extremal_point.map_or(f64::NAN, |u| (u - u1).norm()), &wit),
            Err(_) => t.fail(&wit),
        }
    })
}

/// Cases compared against the oracle: `(label, domain, p, evaluator)`.
type Case = (&'static str, Domain, PExponent, fn(&Domain, PExponent, ComplexPoint, ComplexPoint) -> Result<MetricResult>);

fn oracle_cases() -> Vec<(Case, Sampler)> {
    use crate::barrlund::{
        b_circle_p, b_disk_inf, b_disk_p2_closed, b_halfplane_inf, b_halfplane_p, b_halfplane_p2_closed, b_p2_midpoint,
        b_punctured,
    };
    fn fp(p: PExponent) -> f64 {
        p_code(p)
    }
    let annulus = Domain::PolygonWithHoles(PolygonWithHoles::square_annulus(4.0, 1.0).expect("valid annulus"));
    vec![
        (("s_D", Domain::UnitDisk, fin(1.0), |_, _, a, b| s_disk(a, b)), sample_disk as Sampler),
        (("s_H", Domain::UpperHalfPlane, fin(1.0), |_, _, a, b| s_halfplane(a, b)), sample_halfplane),
        (("b_D2", Domain::UnitDisk, fin(2.0), |_, _, a, b| b_disk_p2_closed(a, b)), sample_disk),
        (("b_H2", Domain::UpperHalfPlane, fin(2.0), |_, _, a, b| b_halfplane_p2_closed(a, b)), sample_halfplane),
        (("b_Hp1.5", Domain::UpperHalfPlane, fin(1.5), |_, p, a, b| b_halfplane_p(fp(p), a, b)), sample_halfplane),
        (("b_Hp3", Domain::UpperHalfPlane, fin(3.0), |_, p, a, b| b_halfplane_p(fp(p), a, b)), sample_halfplane),
        (("b_Hinf", Domain::UpperHalfPlane, PExponent::Infinity, |_, _, a, b| b_halfplane_inf(a, b)), sample_halfplane),
        (("b_Dinf", Domain::UnitDisk, PExponent::Infinity, |_, _, a, b| b_disk_inf(a, b)), sample_disk),
        (("b_Dp3", Domain::UnitDisk, fin(3.0), |_, p, a, b| b_circle_p(false, fp(p), a, b)), sample_disk),
        (
            ("b_punctured3", Domain::PuncturedPlane { center: ComplexPoint::new(0.25, -0.5) }, fin(3.0), |d, p, a, b| {
                let Domain::PuncturedPlane { center } = d else { unreachable!() };
                b_punctured(*center, fp(p), a, b)
            }),
            sample_disk,
        ),
        (("b_annulus2", annulus, fin(2.0), |d, _, a, b| b_p2_midpoint(d, a, b)), sample_annulus),
    ]
}

fn sample_annulus(rng: &mut ChaCha8Rng) -> ComplexPoint {
    loop {
        let z = ComplexPoint::new(8.0 * rng.gen::<f64>() - 4.0, 8.0 * rng.gen::<f64>() - 4.0);
        if z.re.abs().max(z.im.abs()) > 1.0 && z.re.abs() < 4.0 && z.im.abs() < 4.0 {
            return z;
        }
    }
}

/// Every closed form against the sampling oracle, relative error at most
/// `1e-6`; `trials` pairs per case.
pub fn run_oracle_suite(trials: usize, seed: u64) -> VerificationReport {
    let cases = oracle_cases();
    run_trials("oracle-agreement", ORACLE_TOL, trials, seed, |rng, t| {
        for (ci, ((_, d, p, eval), sample)) in cases.iter().enumerate() {
            let (z1, z2) = (sample(rng), sample(rng));
            let w = flat(&[ci as f64, p_code(*p)], &[z1, z2]);
            let got = val(eval(d, *p, z1, z2));
            let want = val(oracle_b(d, *p, z1, z2, ORACLE_SAMPLES));
            t.observe(-(got - want).abs() / want.abs().max(f64::MIN_POSITIVE), &w);
        }
    })
}

pub type SuiteFn = fn(usize, u64) -> VerificationReport;

/// The inequality suites in reporting order.
pub const INEQUALITY_SUITES: &[(&str, SuiteFn)] = &[
    ("sandwich", sandwich),
    ("p-monotonicity", p_monotonicity),
    ("inf-bracketing", inf_bracketing),
    ("s-vs-m", s_vs_m),
    ("hyperbolic-bound", hyperbolic_bound),
    ("point-pair-bound", point_pair_bound),
    ("addition-formula", addition_formula),
    ("halfplane-lower-bounds", halfplane_lower_bounds),
    ("u-dominates-t", u_dominates_t),
    ("t-equality", t_equality),
    ("halfplane-upper-bound", halfplane_upper_bound),
    ("inversion-comparison", inversion_comparison),
    ("metric-axioms", metric_axioms),
    ("equality-attainment", equality_attainment),
    ("domain-monotonicity", domain_monotonicity),
    ("square-annulus", square_annulus),
    ("mobius-lipschitz", mobius_lipschitz),
    ("mobius-bilipschitz", mobius_bilipschitz),
    ("cayley-lipschitz", cayley_lipschitz),
    ("qc-distortion", qc_distortion),
    ("m-disk-not-metric", m_disk_not_metric),
    ("ball-inclusions", ball_inclusions),
    ("disk-inf-tangency", disk_inf_tangency),
];

/// Suites beyond the inequality list, in reporting order.
pub const OTHER_SUITES: &[(&str, SuiteFn)] = &[
    ("oracle-agreement", run_oracle_suite),
    ("conjecture-artanh", search_artanh_triangle),
    ("conjecture-mobius", search_mobius_conjecture),
];

/// One report per inequality suite.
pub fn run_inequality_suite(trials: usize, seed: u64) -> Vec<VerificationReport> {
    INEQUALITY_SUITES.iter().map(|(_, f)| f(trials, seed)).collect()
}

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    INEQUALITY_SUITES.iter().chain(OTHER_SUITES).map(|(n, _)| *n)
}

/// Runs the named suite, or every suite for `"all"`.
pub fn run_named(name: &str, trials: usize, seed: u64) -> Option<Vec<VerificationReport>> {
    if name == "all" {
        return Some(INEQUALITY_SUITES.iter().chain(OTHER_SUITES).map(|(_, f)| f(trials, seed)).collect());
    }
    INEQUALITY_SUITES
        .iter()
        .chain(OTHER_SUITES)
        .find(|(n, _)| *n == name)
        .map(|(_, f)| vec![f(trials, seed)])
}
