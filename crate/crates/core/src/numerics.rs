//! Scalar kernels: quartic roots, periodic minimization, bisection and the
//! arithmetic-geometric mean.

use std::f64::consts::{PI, TAU};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients of `c4·u⁴ + c3·u³ + c2·u² + c1·u + c0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticCoefficients {
    pub c4: Complex64,
    pub c3: Complex64,
    pub c2: Complex64,
    pub c1: Complex64,
    pub c0: Complex64,
}

impl QuarticCoefficients {
    /// Ascending order: `[c0, c1, c2, c3, c4]`.
    pub fn ascending(&self) -> [Complex64; 5] {
        [self.c0, self.c1, self.c2, self.c3, self.c4]
    }

    pub fn eval(&self, u: Complex64) -> Complex64 {
        horner(&self.ascending(), u)
    }

    /// `Σ |c_k|·|u|^k`, the natural magnitude against which `|poly(u)|` is
    /// judged.
    pub fn scale_at(&self, u: Complex64) -> f64 {
        let r = u.norm();
        self.ascending().iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }
}

/// A real interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo < hi && lo.is_finite() && hi.is_finite() {
            Ok(Self { lo, hi })
        } else {
            Err(Error::BadBracket { lo, hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

fn horner(asc: &[Complex64], u: Complex64) -> Complex64 {
    asc.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c)
}

fn derivative(asc: &[Complex64]) -> Vec<Complex64> {
    asc.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect()
}

const ABERTH_MAX_ITER: usize = 500;

/// All roots of a polynomial of degree at most four, with multiplicity.
///
/// Exact zero roots are split off first; the rest are found by Aberth
/// iteration and given one Newton step, kept only when it lowers `|poly|`.
pub fn solve_quartic(q: &QuarticCoefficients) -> Result<Vec<Complex64>> {
    let mut asc: Vec<Complex64> = q.ascending().to_vec();
    if asc.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::NonFinite);
    }
    while asc.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
        asc.pop();
    }
    if asc.len() < 2 {
        return Err(Error::DegenerateInput("polynomial has no roots"));
    }
    let mut roots = Vec::with_capacity(4);
    while asc[0] == Complex64::new(0.0, 0.0) {
        roots.push(Complex64::new(0.0, 0.0));
        asc.remove(0);
    }
    let n = asc.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let lead = asc[n];
    let monic: Vec<Complex64> = asc.iter().map(|&c| c / lead).collect();
    if n == 1 {
        roots.push(-monic[0]);
        return Ok(roots);
    }
    let dmonic = derivative(&monic);

    let radius = monic[0].norm().powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.25))
        .collect();
    // A root is frozen once its correction is at rounding level.
    let mut done = vec![false; n];
    for _ in 0..ABERTH_MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let pv = horner(&monic, z[i]);
            if pv == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = pv / horner(&dmonic, z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == Complex64::new(0.0, 0.0) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() > 0.0 && ratio.is_finite() { ratio / denom } else { ratio };
            if !step.is_finite() {
                // Critical point of p: nudge off it deterministically.
                let nudge = 1e-8 * (1.0 + z[i].norm());
                z[i] += Complex64::new(nudge, 0.0);
                max_step = f64::INFINITY;
                continue;
            }
            z[i] -= step;
            let rel = step.norm() / (1.0 + z[i].norm());
            done[i] = rel <= 4.0 * f64::EPSILON;
            max_step = max_step.max(rel);
        }
        if max_step < 1e-16 || done.iter().all(|&d| d) {
            break;
        }
    }
    for zi in &mut z {
        let pv = horner(&monic, *zi);
        let dv = horner(&dmonic, *zi);
        if dv.norm() > 0.0 {
            let cand = *zi - pv / dv;
            if cand.is_finite() && horner(&monic, cand).norm() < pv.norm() {
                *zi = cand;
            }
        }
    }
    roots.extend(z);
    Ok(roots)
}

const GOLDEN_TOL: f64 = 1e-12;
const GOLDEN_MAX_ITER: usize = 200;
const REFINE_BASINS: usize = 16;

/// Golden-section search for a minimum of `f` on `[a, b]`; returns
/// `(x, f(x))` for the best point evaluated.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64, max_iter: usize) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iter = 0;
    while (b - a).abs() > tol && iter < max_iter {
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
        iter += 1;
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Maps an angle to `(-π, π]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t > PI {
        t - TAU
    } else {
        t
    }
}

/// Global minimum of a continuous 2π-periodic function.
///
/// Scans `grid_n` equispaced angles, refines every discrete local minimum of
/// the scan (the lowest few by value) by golden section on its two adjacent
/// cells, then takes two guarded Newton steps on central differences. The
/// returned value never exceeds the grid minimum and the angle lies in
/// `(-π, π]`.
pub fn minimize_periodic<F: Fn(f64) -> f64>(f: F, grid_n: usize) -> (f64, f64) {
    let n = grid_n.max(8);
    let h = TAU / n as f64;
    let vals: Vec<f64> = (0..n).map(|k| f(h * k as f64)).collect();
    refine_periodic(&f, &vals)
}

/// [`minimize_periodic`] for a function of a point on the unit circle; the
/// grid of unit roots is computed once per size.
pub fn minimize_circle<F: Fn(Complex64) -> f64>(f: F, grid_n: usize) -> (f64, f64) {
    let roots = unit_roots(grid_n.max(8));
    let vals: Vec<f64> = roots.iter().map(|&u| f(u)).collect();
    refine_periodic(&|t: f64| f(Complex64::from_polar(1.0, t)), &vals)
}

fn unit_roots(n: usize) -> Arc<[Complex64]> {
    static CACHE: OnceLock<Mutex<Vec<Arc<[Complex64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = guard.iter().find(|t| t.len() == n) {
        return Arc::clone(t);
    }
    let h = TAU / n as f64;
    let table: Arc<[Complex64]> = (0..n).map(|k| Complex64::from_polar(1.0, h * k as f64)).collect();
    guard.push(Arc::clone(&table));
    table
}

/// Refines grid values `vals[k] = f(2πk/n)` to a global minimum.
fn refine_periodic(f: &dyn Fn(f64) -> f64, vals: &[f64]) -> (f64, f64) {
    let n = vals.len();
    let h = TAU / n as f64;

    let mut best_k = 0;
    for k in 1..n {
        if vals[k] < vals[best_k] {
            best_k = k;
        }
    }
    let mut best = (h * best_k as f64, vals[best_k]);

    let mut basins: Vec<usize> = (0..n)
        .filter(|&k| {
            let prev = vals[(k + n - 1) % n];
            let next = vals[(k + 1) % n];
            vals[k] < prev && vals[k] <= next
        })
        .collect();
    if !basins.contains(&best_k) {
        basins.push(best_k);
    }
    basins.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]).then(i.cmp(&j)));
    basins.truncate(REFINE_BASINS);

    for k in basins {
        let centre = h * k as f64;
        let (x, fx) = golden_section(f, centre - h, centre + h, GOLDEN_TOL, GOLDEN_MAX_ITER);
        if fx < best.1 {
            best = (x, fx);
        }
    }

    let dh = 1e-4;
    for _ in 0..2 {
        let (x, fx) = best;
        let fp = f(x + dh);
        let fm = f(x - dh);
        let d1 = (fp - fm) / (2.0 * dh);
        let d2 = (fp - 2.0 * fx + fm) / (dh * dh);
        if !(d2 > 0.0) || !d1.is_finite() {
            break;
        }
        let step = d1 / d2;
        if step.abs() > h {
            break;
        }
        let cand = x - step;
        let fc = f(cand);
        if fc <= fx {
            best = (cand, fc);
        } else {
            break;
        }
    }
    (normalize_angle(best.0), best.1)
}

const BISECT_MAX_ITER: usize = 400;

/// Root of `f` in a sign-changing bracket, to interval width `tol`.
///
/// Returns the evaluated point with the smallest `|f|`, so shrinking `tol`
/// never increases the reported residual.
pub fn bisect_root<F: Fn(f64) -> f64>(f: F, b: Bracket, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (b.lo, b.hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if !(flo * fhi <= 0.0) {
        return Err(Error::BadBracket { lo, hi });
    }
    let (mut best, mut best_f) = if flo.abs() <= fhi.abs() { (lo, flo.abs()) } else { (hi, fhi.abs()) };
    let mut iter = 0;
    while hi - lo > tol && iter < BISECT_MAX_ITER && best_f > 0.0 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm.abs() < best_f {
            best = mid;
            best_f = fm.abs();
        }
        if (fm <= 0.0) == (flo <= 0.0) && fm != 0.0 {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        iter += 1;
    }
    Ok(best)
}

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::OutOfRange(format!("agm arguments must be positive, got {a}, {b}")));
    }
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    Ok(0.5 * (a + b))
}
