//! Level curves of `z ↦ metric(center, z)` by marching squares.
//!
//! Grid vertices outside the domain carry the value `+∞`. A crossing on an
//! edge with an infinite end is placed at the finite end, so contours stay on
//! vertices inside the domain and never cross its boundary.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::barrlund::{b, PExponent};
use crate::error::{Error, Result};
use crate::geometry::{ComplexPoint, Domain};
use crate::metrics::{hyperbolic_disk, hyperbolic_halfplane, m_disk, point_pair};

/// Metric whose level sets are traced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelMetric {
    /// `b_{G,p}` with the request's exponent.
    Barrlund,
    /// `s_G`, i.e. `b_{G,1}`.
    TriangularRatio,
    /// Hyperbolic distance on `D` or `H`.
    Hyperbolic,
    /// Point-pair function.
    PointPair,
    /// `m_D`, disk only.
    MDisk,
}

impl LevelMetric {
    pub fn id(self) -> &'static str {
        match self {
            LevelMetric::Barrlund => "b",
            LevelMetric::TriangularRatio => "s",
            LevelMetric::Hyperbolic => "rho",
            LevelMetric::PointPair => "pp",
            LevelMetric::MDisk => "m",
        }
    }

    fn supports(self, d: &Domain) -> bool {
        match self {
            LevelMetric::Hyperbolic => matches!(d, Domain::UnitDisk | Domain::UpperHalfPlane),
            LevelMetric::MDisk => matches!(d, Domain::UnitDisk),
            _ => true,
        }
    }
}

impl fmt::Display for LevelMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for LevelMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "b" => LevelMetric::Barrlund,
            "s" => LevelMetric::TriangularRatio,
            "rho" => LevelMetric::Hyperbolic,
            "pp" => LevelMetric::PointPair,
            "m" => LevelMetric::MDisk,
            other => return Err(Error::OutOfRange(format!("unknown metric `{other}`; expected b, s, rho, pp or m"))),
        })
    }
}

/// Validated level-set request.
#[derive(Debug, Clone)]
pub struct LevelSetRequest {
    domain: Domain,
    metric: LevelMetric,
    p: PExponent,
    center: ComplexPoint,
    levels: Vec<f64>,
    grid: usize,
}

pub const MIN_GRID: usize = 16;

impl LevelSetRequest {
    /// `grid` is the number of cells per axis.
    pub fn new(
        domain: Domain,
        metric: LevelMetric,
        p: PExponent,
        center: ComplexPoint,
        levels: Vec<f64>,
        grid: usize,
    ) -> Result<Self> {
        domain.require(center)?;
        if grid < MIN_GRID {
            return Err(Error::OutOfRange(format!("grid must be at least {MIN_GRID}, got {grid}")));
        }
        if levels.is_empty() {
            return Err(Error::OutOfRange("at least one level is required".into()));
        }
        if levels.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
            return Err(Error::OutOfRange("levels must be positive and finite".into()));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OutOfRange("levels must be strictly increasing".into()));
        }
        if !metric.supports(&domain) {
            return Err(Error::UnsupportedMetric { metric: metric.id(), domain: domain.name() });
        }
        Ok(Self { domain, metric, p, center, levels, grid })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    /// Metric from the center to `z`; `+∞` outside the domain or on error.
    pub fn value_at(&self, z: ComplexPoint) -> f64 {
        if !self.domain.contains(z) {
            return f64::INFINITY;
        }
        let (d, c) = (&self.domain, self.center);
        let v = match self.metric {
            LevelMetric::Barrlund => b(d, self.p, c, z).map(|m| m.value),
            LevelMetric::TriangularRatio => b(d, PExponent::Finite(1.0), c, z).map(|m| m.value),
            LevelMetric::Hyperbolic => match d {
                Domain::UnitDisk => hyperbolic_disk(c, z),
                _ => hyperbolic_halfplane(c, z),
            },
            LevelMetric::PointPair => point_pair(d, c, z),
            LevelMetric::MDisk => m_disk(c, z),
        };
        match v {
            Ok(v) if !v.is_nan() => v,
            _ => f64::INFINITY,
        }
    }

    /// Lower-left and upper-right corners of the sampled box.
    pub fn bounding_box(&self) -> (ComplexPoint, ComplexPoint) {
        let c = self.center;
        match &self.domain {
            Domain::UnitDisk => (ComplexPoint::new(-1.0, -1.0), ComplexPoint::new(1.0, 1.0)),
            Domain::UpperHalfPlane => {
                let h = 4.0 * c.im;
                (ComplexPoint::new(c.re - h, 0.0), ComplexPoint::new(c.re + h, 2.0 * h))
            }
            Domain::ExteriorUnitDisk => {
                let r = 2.0 * c.norm() + 1.0;
                (ComplexPoint::new(-r, -r), ComplexPoint::new(r, r))
            }
            Domain::PuncturedPlane { center } => {
                let r = 2.0 * (c - center).norm();
                (center - ComplexPoint::new(r, r), center + ComplexPoint::new(r, r))
            }
            Domain::PolygonWithHoles(poly) => poly.bounding_box(),
        }
    }

    /// Grid spacing along x and y.
    pub fn pitch(&self) -> (f64, f64) {
        let (lo, hi) = self.bounding_box();
        ((hi.re - lo.re) / self.grid as f64, (hi.im - lo.im) / self.grid as f64)
    }
}

/// A traced contour; closed curves repeat their first point at the end.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub level: f64,
    pub points: Vec<ComplexPoint>,
}

impl Polyline {
    pub fn is_closed(&self) -> bool {
        self.points.len() > 2 && self.points.first() == self.points.last()
    }
}

/// Grid edge: horizontal from vertex `(i, j)` to `(i+1, j)` or vertical from
/// `(i, j)` to `(i, j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

struct Grid {
    n: usize,
    lo: ComplexPoint,
    step: (f64, f64),
    /// Row-major by `j`, `(n+1)²` values.
    vals: Vec<f64>,
}

impl Grid {
    fn vertex(&self, i: usize, j: usize) -> ComplexPoint {
        self.lo + ComplexPoint::new(self.step.0 * i as f64, self.step.1 * j as f64)
    }

    fn val(&self, i: usize, j: usize) -> f64 {
        self.vals[j * (self.n + 1) + i]
    }

    fn crossing(&self, e: Edge, level: f64) -> ComplexPoint {
        let ((i0, j0), (i1, j1)) = match e {
            Edge::H(i, j) => ((i, j), (i + 1, j)),
            Edge::V(i, j) => ((i, j), (i, j + 1)),
        };
        let (v0, v1) = (self.val(i0, j0), self.val(i1, j1));
        let (p0, p1) = (self.vertex(i0, j0), self.vertex(i1, j1));
        if !v1.is_finite() {
            return p0;
        }
        if !v0.is_finite() {
            return p1;
        }
        let t = ((level - v0) / (v1 - v0)).clamp(0.0, 1.0);
        p0 + (p1 - p0) * t
    }
}

/// Segment pairs for one cell with corner values listed counter-clockwise
/// from the lower left. Edges are numbered bottom, right, top, left.
fn cell_segments(v: [f64; 4], level: f64) -> Vec<(usize, usize)> {
    let above = |x: f64| x >= level;
    let case = v.iter().enumerate().fold(0u8, |acc, (k, &x)| acc | ((above(x) as u8) << k));
    match case {
        0 | 15 => vec![],
        1 | 14 => vec![(3, 0)],
        2 | 13 => vec![(0, 1)],
        3 | 12 => vec![(3, 1)],
        4 | 11 => vec![(1, 2)],
        6 | 9 => vec![(0, 2)],
        7 | 8 => vec![(2, 3)],
        5 | 10 => {
            // Saddle: the centre value decides whether the above corners connect.
            let centre = v.iter().sum::<f64>() / 4.0;
            let centre_above = above(centre);
            // Corners 0 and 2 above in case 5.
            if (case == 5) == centre_above {
                vec![(0, 1), (2, 3)]
            } else {
                vec![(3, 0), (1, 2)]
            }
        }
        _ => unreachable!("four corner bits"),
    }
}

fn cell_edge(i: usize, j: usize, k: usize) -> Edge {
    match k {
        0 => Edge::H(i, j),
        1 => Edge::V(i + 1, j),
        2 => Edge::H(i, j + 1),
        _ => Edge::V(i, j),
    }
}

fn trace_level(g: &Grid, level: f64) -> Vec<Polyline> {
    let mut segs: Vec<(Edge, Edge)> = Vec::new();
    for j in 0..g.n {
        for i in 0..g.n {
            let v = [g.val(i, j), g.val(i + 1, j), g.val(i + 1, j + 1), g.val(i, j + 1)];
            if v.iter().all(|x| x.is_infinite()) {
                continue;
            }
            for (a, b) in cell_segments(v, level) {
                segs.push((cell_edge(i, j, a), cell_edge(i, j, b)));
            }
        }
    }
    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in segs.iter().enumerate() {
        by_edge.entry(*a).or_default().push(k);
        by_edge.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segs.len()];
    let next_from = |used: &mut Vec<bool>, e: Edge| -> Option<Edge> {
        let k = *by_edge.get(&e)?.iter().find(|&&k| !used[k])?;
        used[k] = true;
        let (a, b) = segs[k];
        Some(if a == e { b } else { a })
    };

    let mut out = Vec::new();
    for k in 0..segs.len() {
        if used[k] {
            continue;
        }
        used[k] = true;
        let (a, b) = segs[k];
        let mut forward = vec![a, b];
        let mut cur = b;
        while let Some(e) = next_from(&mut used, cur) {
            forward.push(e);
            cur = e;
        }
        let mut backward = Vec::new();
        let mut cur = a;
        while let Some(e) = next_from(&mut used, cur) {
            backward.push(e);
            cur = e;
        }
        backward.reverse();
        backward.extend(forward);
        let mut points: Vec<ComplexPoint> = backward.into_iter().map(|e| g.crossing(e, level)).collect();
        points.dedup();
        out.push(Polyline { level, points });
    }
    out
}

/// Contours for every requested level, in level order.
pub fn level_sets(req: &LevelSetRequest) -> Vec<Polyline> {
    let n = req.grid;
    let (lo, _) = req.bounding_box();
    let step = req.pitch();
    let mut g = Grid { n, lo, step, vals: Vec::with_capacity((n + 1) * (n + 1)) };
    for j in 0..=n {
        for i in 0..=n {
            let z = g.vertex(i, j);
            g.vals.push(req.value_at(z));
        }
    }
    req.levels.iter().flat_map(|&l| trace_level(&g, l)).collect()
}

/// CSV with header `level,x,y`, one blank line between polylines.
pub fn to_csv(lines: &[Polyline]) -> String {
    let mut s = String::from("level,x,y\n");
    for (k, line) in lines.iter().enumerate() {
        if k > 0 {
            s.push('\n');
        }
        for z in &line.points {
            let _ = writeln!(s, "{},{},{}", line.level, z.re, z.im);
        }
    }
    s
}

/// Distance from `z` to the nearest vertex of the polylines at `level`.
pub fn distance_to_level(lines: &[Polyline], level: f64, z: ComplexPoint) -> f64 {
    lines
        .iter()
        .filter(|l| l.level == level)
        .flat_map(|l| l.points.iter())
        .map(|w| (w - z).norm())
        .fold(f64::INFINITY, f64::min)
}
