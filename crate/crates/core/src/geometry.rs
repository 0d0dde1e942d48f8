//! Planar domains: membership, distance to the boundary and boundary sampling.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the plane, `re + i·im`.
pub type ComplexPoint = Complex64;

pub(crate) fn ensure_finite(z: ComplexPoint) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// `scale·z + shift`, the orientation-preserving similarity of the plane.
pub fn similarity_apply(scale: f64, shift: ComplexPoint, z: ComplexPoint) -> ComplexPoint {
    z * scale + shift
}

/// Finite window used to sample an unbounded boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryWindow {
    anchor: ComplexPoint,
    radius: f64,
}

impl BoundaryWindow {
    pub fn new(anchor: ComplexPoint, radius: f64) -> Result<Self> {
        ensure_finite(anchor)?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::OutOfRange(format!("window radius {radius} must be positive")));
        }
        Ok(Self { anchor, radius })
    }

    pub fn anchor(&self) -> ComplexPoint {
        self.anchor
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

fn cross(a: ComplexPoint, b: ComplexPoint) -> f64 {
    a.re * b.im - a.im * b.re
}

fn orientation(a: ComplexPoint, b: ComplexPoint, c: ComplexPoint) -> f64 {
    cross(b - a, c - a)
}

fn on_segment(a: ComplexPoint, b: ComplexPoint, p: ComplexPoint) -> bool {
    p.re >= a.re.min(b.re) && p.re <= a.re.max(b.re) && p.im >= a.im.min(b.im) && p.im <= a.im.max(b.im)
}

/// Closed segments `[a, b]` and `[c, d]` share at least one point.
pub(crate) fn segments_intersect(a: ComplexPoint, b: ComplexPoint, c: ComplexPoint, d: ComplexPoint) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0)) && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0)) {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

/// Nearest point of the segment `[a, b]` to `z`.
pub(crate) fn nearest_on_segment(a: ComplexPoint, b: ComplexPoint, z: ComplexPoint) -> ComplexPoint {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return a;
    }
    let t = ((z - a).re * ab.re + (z - a).im * ab.im) / len2;
    a + ab * t.clamp(0.0, 1.0)
}

/// A closed polygonal curve given by its vertices; the closing edge is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring {
    vertices: Vec<ComplexPoint>,
}

impl Ring {
    /// Validates a simple ring with at least three vertices.
    pub fn new(vertices: Vec<ComplexPoint>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!("ring has {} vertices, need at least 3", vertices.len())));
        }
        for &v in &vertices {
            ensure_finite(v).map_err(|_| Error::InvalidPolygon("non-finite vertex".into()))?;
        }
        let ring = Self { vertices };
        if ring.signed_area() == 0.0 {
            return Err(Error::InvalidPolygon("ring has zero area".into()));
        }
        if !ring.is_simple() {
            return Err(Error::InvalidPolygon("ring is not simple".into()));
        }
        Ok(ring)
    }

    pub fn vertices(&self) -> &[ComplexPoint] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (ComplexPoint, ComplexPoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace area, positive for counterclockwise rings.
    pub fn signed_area(&self) -> f64 {
        self.edges().map(|(a, b)| cross(a, b)).sum::<f64>() / 2.0
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| (b - a).norm()).sum()
    }

    fn is_simple(&self) -> bool {
        let n = self.vertices.len();
        let edges: Vec<_> = self.edges().collect();
        if edges.iter().any(|(a, b)| a == b) {
            return false;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // Adjacent edges may only share their common vertex.
                    let (a, b) = edges[i];
                    let (c, d) = edges[j];
                    let (shared, other_i, other_j) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                    if orientation(other_i, shared, other_j) == 0.0
                        && ((other_j - shared).re * (other_i - shared).re + (other_j - shared).im * (other_i - shared).im)
                            > 0.0
                    {
                        return false;
                    }
                    continue;
                }
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if segments_intersect(a, b, c, d) {
                    return false;
                }
            }
        }
        true
    }

    fn reversed(mut self) -> Self {
        self.vertices.reverse();
        self
    }

    /// Even-odd test; the result is unspecified for points on the ring.
    pub fn encloses(&self, z: ComplexPoint) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.im > z.im) != (b.im > z.im) {
                let x = a.re + (z.im - a.im) * (b.re - a.re) / (b.im - a.im);
                if z.re < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn distance(&self, z: ComplexPoint) -> f64 {
        self.edges()
            .map(|(a, b)| (z - nearest_on_segment(a, b, z)).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn nearest_point(&self, z: ComplexPoint) -> ComplexPoint {
        let mut best = self.vertices[0];
        let mut best_d = f64::INFINITY;
        for (a, b) in self.edges() {
            let q = nearest_on_segment(a, b, z);
            let d = (z - q).norm();
            if d < best_d {
                best_d = d;
                best = q;
            }
        }
        best
    }

    /// Point at arc length `s` from the first vertex, wrapping around the ring.
    pub fn point_at(&self, s: f64) -> ComplexPoint {
        let total = self.perimeter();
        let mut s = s.rem_euclid(total);
        for (a, b) in self.edges() {
            let len = (b - a).norm();
            if s <= len {
                return a + (b - a) * (s / len);
            }
            s -= len;
        }
        self.vertices[0]
    }
}

/// A polygon with polygonal holes. The outer ring is stored counterclockwise
/// and every hole clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonWithHoles {
    outer: Ring,
    holes: Vec<Ring>,
}

#[derive(Serialize, Deserialize)]
struct PolygonDoc {
    outer: Vec<[f64; 2]>,
    #[serde(default)]
    holes: Vec<Vec<[f64; 2]>>,
}

fn to_points(raw: &[[f64; 2]]) -> Vec<ComplexPoint> {
    raw.iter().map(|&[x, y]| ComplexPoint::new(x, y)).collect()
}

fn to_pairs(ring: &Ring) -> Vec<[f64; 2]> {
    ring.vertices().iter().map(|z| [z.re, z.im]).collect()
}

impl PolygonWithHoles {
    pub fn new(outer: Ring, holes: Vec<Ring>) -> Result<Self> {
        let outer = if outer.signed_area() < 0.0 { outer.reversed() } else { outer };
        let holes: Vec<Ring> = holes
            .into_iter()
            .map(|h| if h.signed_area() > 0.0 { h.reversed() } else { h })
            .collect();

        for (k, hole) in holes.iter().enumerate() {
            if hole.vertices().iter().any(|&v| !outer.encloses(v) || outer.distance(v) == 0.0) {
                return Err(Error::InvalidPolygon(format!("hole {k} is not strictly inside the outer ring")));
            }
            if rings_touch(hole, &outer) {
                return Err(Error::InvalidPolygon(format!("hole {k} touches the outer ring")));
            }
            for (j, other) in holes.iter().enumerate().skip(k + 1) {
                if rings_touch(hole, other)
                    || hole.vertices().iter().any(|&v| other.encloses(v))
                    || other.vertices().iter().any(|&v| hole.encloses(v))
                {
                    return Err(Error::InvalidPolygon(format!("holes {k} and {j} overlap")));
                }
            }
        }
        Ok(Self { outer, holes })
    }

    /// The square `(-a, a)²` with the closed square `[-b, b]²` removed.
    pub fn square_annulus(outer_half: f64, inner_half: f64) -> Result<Self> {
        let square = |h: f64| {
            Ring::new(vec![
                ComplexPoint::new(-h, -h),
                ComplexPoint::new(h, -h),
                ComplexPoint::new(h, h),
                ComplexPoint::new(-h, h),
            ])
        };
        if !(0.0 < inner_half && inner_half < outer_half) {
            return Err(Error::InvalidPolygon("need 0 < inner < outer".into()));
        }
        Self::new(square(outer_half)?, vec![square(inner_half)?])
    }

    /// Parses `{"outer": [[x,y],...], "holes": [[[x,y],...],...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PolygonDoc = serde_json::from_str(text)?;
        let outer = Ring::new(to_points(&doc.outer))?;
        let holes = doc.holes.iter().map(|h| Ring::new(to_points(h))).collect::<Result<Vec<_>>>()?;
        Self::new(outer, holes)
    }

    pub fn to_json(&self) -> String {
        let doc = PolygonDoc {
            outer: to_pairs(&self.outer),
            holes: self.holes.iter().map(to_pairs).collect(),
        };
        serde_json::to_string(&doc).expect("polygon document serializes")
    }

    pub fn outer(&self) -> &Ring {
        &self.outer
    }

    pub fn holes(&self) -> &[Ring] {
        &self.holes
    }

    pub fn rings(&self) -> impl Iterator<Item = &Ring> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }

    pub fn perimeter(&self) -> f64 {
        self.rings().map(Ring::perimeter).sum()
    }

    pub fn boundary_distance(&self, z: ComplexPoint) -> f64 {
        self.rings().map(|r| r.distance(z)).fold(f64::INFINITY, f64::min)
    }

    pub fn nearest_boundary_point(&self, z: ComplexPoint) -> ComplexPoint {
        let mut best = self.outer.nearest_point(z);
        let mut best_d = (best - z).norm();
        for hole in &self.holes {
            let q = hole.nearest_point(z);
            let d = (q - z).norm();
            if d < best_d {
                best = q;
                best_d = d;
            }
        }
        best
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        self.outer.encloses(z) && self.holes.iter().all(|h| !h.encloses(z)) && self.boundary_distance(z) > 0.0
    }

    /// Axis-aligned bounding box `(min, max)` of the outer ring.
    pub fn bounding_box(&self) -> (ComplexPoint, ComplexPoint) {
        let v = self.outer.vertices();
        let (mut lo, mut hi) = (v[0], v[0]);
        for z in v {
            lo.re = lo.re.min(z.re);
            lo.im = lo.im.min(z.im);
            hi.re = hi.re.max(z.re);
            hi.im = hi.im.max(z.im);
        }
        (lo, hi)
    }

    fn map_similarity(&self, scale: f64, shift: ComplexPoint) -> Self {
        let map = |r: &Ring| Ring {
            vertices: r.vertices().iter().map(|&z| similarity_apply(scale, shift, z)).collect(),
        };
        Self {
            outer: map(&self.outer),
            holes: self.holes.iter().map(map).collect(),
        }
    }
}

fn rings_touch(a: &Ring, b: &Ring) -> bool {
    a.edges().any(|(p, q)| b.edges().any(|(r, s)| segments_intersect(p, q, r, s)))
}

/// The supported proper subdomains of the plane.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// `|z| < 1`.
    UnitDisk,
    /// `Im z > 0`.
    UpperHalfPlane,
    /// `|z| > 1`.
    ExteriorUnitDisk,
    /// The plane with one point removed.
    PuncturedPlane { center: ComplexPoint },
    PolygonWithHoles(PolygonWithHoles),
}

impl Domain {
    pub fn name(&self) -> &'static str {
        match self {
            Domain::UnitDisk => "unit disk",
            Domain::UpperHalfPlane => "upper half-plane",
            Domain::ExteriorUnitDisk => "exterior of the unit disk",
            Domain::PuncturedPlane { .. } => "punctured plane",
            Domain::PolygonWithHoles(_) => "polygon",
        }
    }

    /// Membership in the open set; boundary points are not contained.
    pub fn contains(&self, z: ComplexPoint) -> bool {
        if ensure_finite(z).is_err() {
            return false;
        }
        match self {
            Domain::UnitDisk => z.norm_sqr() < 1.0,
            Domain::UpperHalfPlane => z.im > 0.0,
            Domain::ExteriorUnitDisk => z.norm_sqr() > 1.0,
            Domain::PuncturedPlane { center } => z != *center,
            Domain::PolygonWithHoles(poly) => poly.contains(z),
        }
    }

    pub(crate) fn require(&self, z: ComplexPoint) -> Result<()> {
        ensure_finite(z)?;
        if self.contains(z) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { domain: self.name(), point: z })
        }
    }

    /// Euclidean distance from `z` to the boundary; `z` may lie anywhere.
    pub fn boundary_distance(&self, z: ComplexPoint) -> f64 {
        match self {
            Domain::UnitDisk | Domain::ExteriorUnitDisk => (1.0 - z.norm()).abs(),
            Domain::UpperHalfPlane => z.im.abs(),
            Domain::PuncturedPlane { center } => (z - center).norm(),
            Domain::PolygonWithHoles(poly) => poly.boundary_distance(z),
        }
    }

    /// A boundary point realising [`Domain::boundary_distance`]. Ties are
    /// broken deterministically (the origin of the disk maps to `1`).
    pub fn nearest_boundary_point(&self, z: ComplexPoint) -> ComplexPoint {
        match self {
            Domain::UnitDisk | Domain::ExteriorUnitDisk => {
                if z == ComplexPoint::new(0.0, 0.0) {
                    ComplexPoint::new(1.0, 0.0)
                } else {
                    z / z.norm()
                }
            }
            Domain::UpperHalfPlane => ComplexPoint::new(z.re, 0.0),
            Domain::PuncturedPlane { center } => *center,
            Domain::PolygonWithHoles(poly) => poly.nearest_boundary_point(z),
        }
    }

    pub fn has_bounded_boundary(&self) -> bool {
        !matches!(self, Domain::UpperHalfPlane)
    }

    /// Boundary points for the sampling oracle. Circles and rings are sampled
    /// equispaced by arc length; the real axis is sampled on the window
    /// segment `[anchor.re - radius, anchor.re + radius]`; the punctured plane
    /// has the single boundary point `center`.
    pub fn sample_boundary(&self, n: usize, window: Option<BoundaryWindow>) -> Result<Vec<ComplexPoint>> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("boundary sample count {n} must be at least 2")));
        }
        Ok(match self {
            Domain::UnitDisk | Domain::ExteriorUnitDisk => {
                (0..n).map(|k| ComplexPoint::from_polar(1.0, TAU * k as f64 / n as f64)).collect()
            }
            Domain::UpperHalfPlane => {
                let w = window.ok_or(Error::MissingWindow)?;
                let lo = w.anchor.re - w.radius;
                let step = 2.0 * w.radius / (n - 1) as f64;
                (0..n).map(|k| ComplexPoint::new(lo + step * k as f64, 0.0)).collect()
            }
            Domain::PuncturedPlane { center } => vec![*center],
            Domain::PolygonWithHoles(poly) => {
                let step = poly.perimeter() / n as f64;
                let mut out = Vec::with_capacity(n);
                let mut offset = 0.0;
                let mut k = 0usize;
                for ring in poly.rings() {
                    let len = ring.perimeter();
                    while k < n && step * k as f64 - offset < len {
                        out.push(ring.point_at(step * k as f64 - offset));
                        k += 1;
                    }
                    offset += len;
                }
                out
            }
        })
    }

    /// Image of the domain under `z ↦ scale·z + shift` when it is again one of
    /// the supported domains.
    pub fn similarity_image(&self, scale: f64, shift: ComplexPoint) -> Option<Domain> {
        match self {
            Domain::UpperHalfPlane if shift.im == 0.0 => Some(Domain::UpperHalfPlane),
            Domain::PuncturedPlane { center } => Some(Domain::PuncturedPlane {
                center: similarity_apply(scale, shift, *center),
            }),
            Domain::PolygonWithHoles(poly) => Some(Domain::PolygonWithHoles(poly.map_similarity(scale, shift))),
            Domain::UnitDisk if scale == 1.0 && shift == ComplexPoint::new(0.0, 0.0) => Some(Domain::UnitDisk),
            _ => None,
        }
    }

    /// Whether the closed segment `[z1, z2]` between two points of the domain
    /// meets the complement.
    pub fn segment_leaves(&self, z1: ComplexPoint, z2: ComplexPoint) -> bool {
        match self {
            Domain::UnitDisk | Domain::UpperHalfPlane => false,
            Domain::ExteriorUnitDisk => nearest_on_segment(z1, z2, ComplexPoint::new(0.0, 0.0)).norm() <= 1.0,
            Domain::PuncturedPlane { center } => nearest_on_segment(z1, z2, *center) == *center,
            Domain::PolygonWithHoles(poly) => poly
                .rings()
                .any(|r| r.edges().any(|(a, b)| segments_intersect(z1, z2, a, b))),
        }
    }
}
