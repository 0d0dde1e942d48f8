//! Randomized searches for counterexamples to two open inequalities. Reports
//! carry `conjecture: true`; a pass is evidence only.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use rand::Rng;

use crate::barrlund::PExponent;
use crate::geometry::ComplexPoint;
use crate::metrics::s_disk;
use crate::mobius_qc::{lipschitz_ratio, radial_family};
use crate::validation::report::{Tracker, VerificationReport};
use crate::validation::sampling::{sample_disk, trial_rng};

const TOL: f64 = 1e-9;

fn artanh_s(x: ComplexPoint, y: ComplexPoint) -> f64 {
    s_disk(x, y).map_or(f64::NAN, |m| m.value.atanh())
}

/// Slack of `artanh s_D(x,z) ≤ artanh s_D(x,y) + artanh s_D(y,z)`.
pub fn artanh_slack(x: ComplexPoint, y: ComplexPoint, z: ComplexPoint) -> f64 {
    artanh_s(x, y) + artanh_s(y, z) - artanh_s(x, z)
}

/// Seeded search over random triples in `D` for a violation of the triangle
/// inequality for `artanh s_D`. Every trial also checks additivity along a
/// random radius, where the slack must vanish.
pub fn search_artanh_triangle(trials: usize, seed: u64) -> VerificationReport {
    let mut t = Tracker::new("conjecture-artanh", TOL, trials, seed).conjecture();
    for k in 0..trials {
        let mut rng = trial_rng(seed, k as u64);
        let (x, y, z) = (sample_disk(&mut rng), sample_disk(&mut rng), sample_disk(&mut rng));
        t.observe(artanh_slack(x, y, z), &[0.0, x.re, x.im, y.re, y.im, z.re, z.im]);

        let dir = ComplexPoint::from_polar(1.0, std::f64::consts::TAU * rng.gen::<f64>());
        let mut r = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()].map(|u| 0.999 * u);
        r.sort_by(f64::total_cmp);
        let (a, b, c) = (dir * r[0], dir * r[1], dir * r[2]);
        if r[0] < r[1] && r[1] < r[2] {
            t.observe(-artanh_slack(a, b, c).abs(), &[1.0, a.re, a.im, b.re, b.im, c.re, c.im]);
        }
    }
    t.finish()
}

/// Centres used by the Möbius search: moduli `0.1, …, 0.9` at four angles.
pub fn mobius_grid() -> Vec<ComplexPoint> {
    let angles = [0.0, FRAC_PI_3, FRAC_PI_2, 1.25 * PI];
    (1..=9)
        .flat_map(|m| angles.map(|phi| ComplexPoint::from_polar(m as f64 / 10.0, phi)))
        .collect()
}

/// Seeded search for `b_{D,p}(T_a z1, T_a z2) > (1 + |a|) b_{D,p}(z1, z2)`
/// with `p ∈ {1, 2}`. Trial `k` uses centre `k mod 36` of [`mobius_grid`]
/// and one random pair; the near-extremal radial pairs of every centre are
/// added once. Margins are `(1 + |a|) − ratio`.
pub fn search_mobius_conjecture(trials: usize, seed: u64) -> VerificationReport {
    let mut t = Tracker::new("conjecture-mobius", TOL, trials, seed).conjecture();
    let grid = mobius_grid();
    let ps = [PExponent::Finite(1.0), PExponent::Finite(2.0)];
    let check = |t: &mut Tracker, p: PExponent, a: ComplexPoint, z1: ComplexPoint, z2: ComplexPoint| {
        if z1 == z2 {
            return;
        }
        let pv = if let PExponent::Finite(v) = p { v } else { f64::INFINITY };
        let w = [pv, a.re, a.im, z1.re, z1.im, z2.re, z2.im];
        match lipschitz_ratio(p, a, z1, z2) {
            Ok(ratio) => t.observe(1.0 + a.norm() - ratio, &w),
            Err(_) => t.fail(&w),
        }
    };
    for &a in &grid {
        for (z1, z2) in radial_family(a) {
            for p in ps {
                check(&mut t, p, a, z1, z2);
            }
        }
    }
    for k in 0..trials {
        let mut rng = trial_rng(seed, k as u64);
        let a = grid[k % grid.len()];
        let (z1, z2) = (sample_disk(&mut rng), sample_disk(&mut rng));
        for p in ps {
            check(&mut t, p, a, z1, z2);
        }
    }
    t.finish()
}
