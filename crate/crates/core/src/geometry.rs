//! Planar convex hulls and polygon areas.
//!
//! Hulls are built with Andrew's monotone chain: sort lexicographically by
//! `(t, y)`, then sweep the lower and upper chains. Turns use a strict
//! cross-product test, so collinear points never enter the vertex ring.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::curves::SampledCurve;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub t: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(t: f64, y: f64) -> Self {
        Self { t, y }
    }
}

#[inline]
fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.t - o.t) * (b.y - o.y) - (a.y - o.y) * (b.t - o.t)
}

#[inline]
fn lex(a: &Point, b: &Point) -> Ordering {
    a.t.total_cmp(&b.t).then(a.y.total_cmp(&b.y))
}

/// A bag of planar points; duplicates allowed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlanarPointSet {
    points: Vec<Point>,
}

impl PlanarPointSet {
    pub fn new(points: Vec<Point>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn extend(&mut self, other: &PlanarPointSet) {
        self.points.extend_from_slice(&other.points);
    }
}

impl FromIterator<Point> for PlanarPointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// Convex hull as a counter-clockwise ring of extreme points.
///
/// A hull with fewer than three vertices is degenerate (a point or a segment)
/// and has area exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct HullPolygon {
    vertices: Vec<Point>,
}

impl HullPolygon {
    /// CCW vertices starting at the lexicographically smallest point.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn area(&self) -> f64 {
        ring_area(&self.vertices)
    }

    /// True when `p` is inside or on the boundary, with an absolute slack on
    /// the edge test.
    pub fn contains(&self, p: Point, slack: f64) -> bool {
        let v = &self.vertices;
        match v.len() {
            0 => false,
            1 => (v[0].t - p.t).abs() <= slack && (v[0].y - p.y).abs() <= slack,
            2 => {
                let len = libm::hypot(v[1].t - v[0].t, v[1].y - v[0].y);
                let off = cross(v[0], v[1], p).abs() / len;
                let within =
                    |a: f64, b: f64, x: f64| x >= a.min(b) - slack && x <= a.max(b) + slack;
                off <= slack && within(v[0].t, v[1].t, p.t) && within(v[0].y, v[1].y, p.y)
            }
            n => (0..n).all(|i| {
                let (a, b) = (v[i], v[(i + 1) % n]);
                let len = libm::hypot(b.t - a.t, b.y - a.y);
                cross(a, b, p) / len >= -slack
            }),
        }
    }
}

/// Shoelace area of a CCW ring; zero for fewer than three vertices.
fn ring_area(ring: &[Point]) -> f64 {
    if ring.len() < 3 {
        return 0.0;
    }
    // translate to the first vertex to limit cancellation
    let o = ring[0];
    let mut twice = 0.0;
    for w in ring[1..].windows(2) {
        twice += cross(o, w[0], w[1]);
    }
    0.5 * twice
}

/// Monotone chain over `pts`, which is sorted in place. The ring is written to
/// `out` (cleared first).
fn monotone_chain(pts: &mut [Point], out: &mut Vec<Point>) {
    out.clear();
    pts.sort_unstable_by(lex);
    let n = pts.len();
    if n == 0 {
        return;
    }
    // lower chain
    for &p in pts.iter() {
        while out.len() >= 2 && cross(out[out.len() - 2], out[out.len() - 1], p) <= 0.0 {
            out.pop();
        }
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    // upper chain
    let lower_len = out.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while out.len() >= lower_len && cross(out[out.len() - 2], out[out.len() - 1], p) <= 0.0 {
            out.pop();
        }
        out.push(p);
    }
    // closing point repeats the first one
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
}

/// Exact convex hull of a point set in `O(m log m)`.
pub fn convex_hull(pts: &PlanarPointSet) -> Result<HullPolygon> {
    if pts.is_empty() {
        return Err(Error::Empty("point set"));
    }
    let mut scratch = pts.points.clone();
    let mut vertices = Vec::with_capacity(scratch.len().min(64));
    monotone_chain(&mut scratch, &mut vertices);
    Ok(HullPolygon { vertices })
}

pub fn hull_area(hull: &HullPolygon) -> f64 {
    hull.area()
}

/// Area of the convex hull of the union of the curves' graphs.
pub fn joint_hull_area<'a, I>(curves: I) -> f64
where
    I: IntoIterator<Item = &'a SampledCurve>,
{
    let mut pts = Vec::new();
    for c in curves {
        pts.extend(
            c.times()
                .iter()
                .zip(c.values())
                .map(|(&t, &y)| Point::new(t, y)),
        );
    }
    let mut ring = Vec::new();
    monotone_chain(&mut pts, &mut ring);
    ring_area(&ring)
}

/// Reusable buffers for repeated hull-area queries over small point sets.
#[derive(Debug, Default, Clone)]
pub struct HullScratch {
    pts: Vec<Point>,
    ring: Vec<Point>,
}

impl HullScratch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Hull area of the union of several vertex rings.
    pub fn union_area<'a, I>(&mut self, rings: I) -> f64
    where
        I: IntoIterator<Item = &'a [Point]>,
    {
        self.pts.clear();
        for r in rings {
            self.pts.extend_from_slice(r);
        }
        monotone_chain(&mut self.pts, &mut self.ring);
        ring_area(&self.ring)
    }
}
