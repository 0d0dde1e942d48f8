//! Acceptance criteria, one `[PASS]`/`[FAIL]` line each. Exits nonzero if any
//! criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use barrlund::bounds::t_bound;
use barrlund::levelset::{distance_to_level, level_sets, LevelMetric, LevelSetRequest};
use barrlund::mobius_qc::{grotzsch_mu, lipschitz_sup_estimate, phi_k, qc_distortion_bound, radial_stretch, schwarz_bound};
use barrlund::validation::balls::{check_ball_inclusions, check_level_one_ellipse};
use barrlund::validation::sampling::{sample_halfplane, trial_rng};
use barrlund::validation::suites::{self, INEQUALITY_SUITES};
use barrlund::validation::{run_oracle_suite, search_artanh_triangle, search_mobius_conjecture};
use barrlund::{b, ComplexPoint, Domain, PExponent, PolygonWithHoles, VerificationReport};

fn c(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::new(re, im)
}

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Self { ok: true, detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.ok = false;
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(&what());
        }
    }

    fn report(&mut self, r: &VerificationReport) {
        self.check(r.passed, || format!("{} worst margin {:e} at {:?}", r.suite, r.worst_margin, r.witness));
    }

    fn budget(&mut self, elapsed: Duration, limit: Duration) {
        self.check(elapsed < limit, || format!("took {elapsed:?}, budget {limit:?}"));
    }
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    for (z1, z2, want) in [(c(1.0, 6.0), c(-2.0, 3.0), 0.6), (c(-4.0, 4.0), c(4.0, 12.0), 0.8)] {
        let got = t_bound(2.0, z1, z2).unwrap_or(f64::NAN);
        o.check((got - want).abs() <= 1e-12, || format!("T_2({z1}, {z2}) = {got}, want {want}"));
    }
    for p in [1.0, 2.0, 3.0, 10.0] {
        for t in [0.5, 1.0, 2.0] {
            let got = t_bound(p, c(-t, t), c(1.0, 1.0)).unwrap_or(f64::NAN);
            o.check((got - 1.0).abs() <= 1e-12, || format!("T_{p}(-{t}+{t}i, 1+i) = {got}, want 1"));
        }
    }
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let small = Domain::PolygonWithHoles(PolygonWithHoles::square_annulus(4.0, 2.0).expect("valid annulus"));
    let large = Domain::PolygonWithHoles(PolygonWithHoles::square_annulus(4.0, 1.0).expect("valid annulus"));
    let p2 = PExponent::Finite(2.0);
    let vs = b(&small, p2, c(3.0, 0.0), c(-3.0, 0.0)).map_or(f64::NAN, |m| m.value);
    let vl = b(&large, p2, c(3.0, 0.0), c(-3.0, 0.0)).map_or(f64::NAN, |m| m.value);
    let elapsed = start.elapsed();
    o.check((vs - 6.0 / 26f64.sqrt()).abs() <= 1e-12, || format!("S4\\S2: {vs}"));
    o.check((vl - 6.0 / 20f64.sqrt()).abs() <= 1e-12, || format!("S4\\S1: {vl}"));
    o.budget(elapsed, Duration::from_millis(1));
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let r = run_oracle_suite(1000, 3);
    o.budget(start.elapsed(), Duration::from_secs(30));
    o.report(&r);
    o
}

const CRITERION_4: [&str; 11] = [
    "sandwich",
    "p-monotonicity",
    "inf-bracketing",
    "s-vs-m",
    "hyperbolic-bound",
    "point-pair-bound",
    "halfplane-lower-bounds",
    "u-dominates-t",
    "halfplane-upper-bound",
    "inversion-comparison",
    "metric-axioms",
];

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    for name in CRITERION_4 {
        let (_, f) = INEQUALITY_SUITES.iter().find(|(n, _)| *n == name).expect("registered suite");
        let r = f(10_000, 4);
        o.check(r.trials == 10_000, || format!("{name} ran {} trials", r.trials));
        o.check((r.worst_margin >= -1e-9) == r.passed, || format!("{name} tolerance is not 1e-9"));
        o.report(&r);
    }
    o.budget(start.elapsed(), Duration::from_secs(60));
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    o.report(&suites::equality_attainment(10_000, 5));
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    match check_level_one_ellipse(0.3, 360) {
        Ok(r) => o.report(&r),
        Err(e) => o.check(false, || format!("ellipse: {e}")),
    }
    for (a, r) in [(0.5, 0.25), (0.3, 0.1), (0.1, 0.8), (0.7, 0.29)] {
        for p in [1.5, 2.0, 3.0] {
            match check_ball_inclusions(a, r, PExponent::Finite(p), 10_000) {
                Ok(rep) => o.report(&rep),
                Err(e) => o.check(false, || format!("balls a={a} r={r} p={p}: {e}")),
            }
        }
    }
    let req = LevelSetRequest::new(
        Domain::UnitDisk,
        LevelMetric::Barrlund,
        PExponent::Finite(2.0),
        c(0.3, 0.0),
        vec![0.4, 0.6, 0.8, 1.0],
        200,
    )
    .expect("valid request");
    let lines = level_sets(&req);
    let pitch = req.pitch().0.max(req.pitch().1);
    for x in [-1.0, 1.0] {
        let d = distance_to_level(&lines, 1.0, c(x, 0.0));
        o.check(d <= 2.0 * pitch, || format!("level 1 misses ({x}, 0) by {d}"));
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    for r in [0.1, 0.25, 0.5, 0.75, 0.9] {
        o.check(phi_k(1.0, r).ok() == Some(r), || format!("φ_1({r}) != {r}"));
    }
    for k in [1.5, 2.0, 4.0] {
        for m in 1..=9 {
            let r = m as f64 / 10.0;
            let phi = phi_k(k, r).unwrap_or(f64::NAN);
            o.check(schwarz_bound(k, r) - phi >= 0.0, || format!("φ_{k}({r}) = {phi} exceeds the bound"));
        }
    }
    let mu = grotzsch_mu(FRAC_1_SQRT_2).unwrap_or(f64::NAN);
    o.check((mu - PI / 2.0).abs() <= 1e-12, || format!("μ(1/√2) = {mu}"));

    let h = Domain::UpperHalfPlane;
    let mut worst = f64::INFINITY;
    for k in 0..10_000u64 {
        let mut rng = trial_rng(7, k);
        let (z1, z2) = (sample_halfplane(&mut rng), sample_halfplane(&mut rng));
        for p in [PExponent::Finite(1.0), PExponent::Finite(2.0)] {
            let lhs = match (radial_stretch(2.0, z1), radial_stretch(2.0, z2)) {
                (Ok(w1), Ok(w2)) => b(&h, p, w1, w2).map_or(f64::NAN, |m| m.value),
                _ => f64::NAN,
            };
            let rhs = qc_distortion_bound(p, 2.0, b(&h, p, z1, z2).map_or(f64::NAN, |m| m.value));
            let m = rhs - lhs;
            worst = if m.is_nan() { f64::NEG_INFINITY } else { worst.min(m) };
        }
    }
    o.check(worst >= -1e-9, || format!("radial K=2 distortion margin {worst:e}"));
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    for p in [PExponent::Finite(1.0), PExponent::Finite(2.0), PExponent::Infinity] {
        match lipschitz_sup_estimate(p, c(0.0, 0.0), 10_000, 8) {
            Ok(e) => o.check((e.observed_sup - 1.0).abs() <= 1e-9, || format!("R({p}, 0) observed {}", e.observed_sup)),
            Err(e) => o.check(false, || format!("R({p}, 0): {e}")),
        }
        for m in [0.2, 0.5, 0.8] {
            let a = c(m, 0.0);
            match lipschitz_sup_estimate(p, a, 10_000, 8) {
                Ok(e) => {
                    let upper = (1.0 + m) / (1.0 - m) + 1e-9;
                    o.check(e.observed_sup >= 1.0 + m - 1e-3, || format!("p={p} a={m}: sup {} too small", e.observed_sup));
                    o.check(e.observed_sup <= upper, || format!("p={p} a={m}: sup {} above {upper}", e.observed_sup));
                }
                Err(e) => o.check(false, || format!("p={p} a={m}: {e}")),
            }
        }
    }
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    for r in [search_artanh_triangle(100_000, 1), search_mobius_conjecture(100_000, 1)] {
        o.check(r.conjecture, || format!("{} not flagged as a conjecture", r.suite));
        o.check(r.trials == 100_000, || format!("{} ran {} trials", r.suite, r.trials));
        o.report(&r);
    }
    o.budget(start.elapsed(), Duration::from_secs(60));
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 lower-bound particular values", criterion_1),
        ("2 square-annulus counterexample", criterion_2),
        ("3 oracle equivalence", criterion_3),
        ("4 inequality suites", criterion_4),
        ("5 equality attainment", criterion_5),
        ("6 ball geometry and level sets", criterion_6),
        ("7 distortion", criterion_7),
        ("8 mobius experiments", criterion_8),
        ("9 conjecture searches", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        if o.ok {
            println!("[PASS] criterion {name} ({secs:.2} s)");
        } else {
            failed += 1;
            println!("[FAIL] criterion {name} ({secs:.2} s): {}", o.detail);
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
