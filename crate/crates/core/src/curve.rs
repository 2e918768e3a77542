//! Sampled closed Jordan curves.
//!
//! A [`CurveSample`] is a closed polyline `z_0, ..., z_{N-1}` (with
//! `z_N = z_0`) oriented counterclockwise, together with its cumulative
//! arc-length table. Every integral over the curve in this crate is a sum over
//! the polyline's segments, so the sample count `N` is the single resolution
//! knob.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible sample count.
pub const MIN_SAMPLES: usize = 16;
/// Highest supported Koch prefractal level.
pub const MAX_KOCH_LEVEL: u32 = 7;

/// Which named family a curve was built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilyTag {
    /// `r e^{iθ}` sampled at uniform `θ_k = 2πk/N`.
    Circle {
        r: f64,
    },
    /// `e^{iθ} + c e^{2iθ}` sampled at uniform `θ_k = 2πk/N`.
    Polynomial {
        c: f64,
    },
    Polygon,
    Koch {
        level: u32,
    },
    Polyline,
}

impl FamilyTag {
    pub fn label(&self) -> String {
        match self {
            FamilyTag::Circle { r } => format!("circle(r={r})"),
            FamilyTag::Polynomial { c } => format!("polynomial(c={c})"),
            FamilyTag::Polygon => "polygon".into(),
            FamilyTag::Koch { level } => format!("koch({level})"),
            FamilyTag::Polyline => "polyline".into(),
        }
    }
}

/// A named curve family to build samples from.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedCurve {
    Circle { r: f64 },
    Polynomial { c: f64 },
    Polygon { vertices: Vec<C64> },
    Koch { level: u32 },
}

/// A closed polyline with its arc-length table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    points: Vec<C64>,
    cum_len: Vec<f64>,
    family: Option<FamilyTag>,
}

/// Which side of the curve a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Interior,
    Exterior,
}

/// A point off the curve, classified by side, with its distance to the curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbePoint {
    pub w: C64,
    pub side: Side,
    pub dist: f64,
}

impl CurveSample {
    /// Validates and wraps a closed polyline. The point list must not repeat
    /// `z_0` at the end. Clockwise input is reversed (keeping `z_0` first).
    pub fn from_points(points: Vec<C64>, family: Option<FamilyTag>) -> Result<Self> {
        let n = points.len();
        if n < MIN_SAMPLES {
            return Err(Error::TooFewSamples {
                min: MIN_SAMPLES,
                got: n,
            });
        }
        if points
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidCurve("non-finite sample".into()));
        }
        let mut points = points;
        if signed_area(&points) < 0.0 {
            points[1..].reverse();
        }
        let mut cum_len = Vec::with_capacity(n + 1);
        cum_len.push(0.0);
        let mut s = 0.0;
        for k in 0..n {
            let seg = (points[(k + 1) % n] - points[k]).norm();
            if seg == 0.0 {
                return Err(Error::DegenerateSegment(k, (k + 1) % n));
            }
            s += seg;
            cum_len.push(s);
        }
        let curve = Self {
            points,
            cum_len,
            family,
        };
        if let Some((i, j)) = curve.find_intersection() {
            return Err(Error::SelfIntersecting(i, j));
        }
        Ok(curve)
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    /// Cumulative arc length, `N + 1` entries from `0` to `L`.
    pub fn cum_len(&self) -> &[f64] {
        &self.cum_len
    }

    pub fn family(&self) -> Option<&FamilyTag> {
        self.family.as_ref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, k: usize) -> C64 {
        self.points[k % self.points.len()]
    }

    /// Segment `k` as `(z_k, z_{k+1})`, wrapping at the end.
    pub fn segment(&self, k: usize) -> (C64, C64) {
        let n = self.points.len();
        (self.points[k % n], self.points[(k + 1) % n])
    }

    pub fn segment_len(&self, k: usize) -> f64 {
        self.cum_len[k + 1] - self.cum_len[k]
    }

    pub fn max_segment(&self) -> f64 {
        self.cum_len
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    /// Trapezoid weight of node `k`: half of each adjacent segment.
    pub fn node_weight(&self, k: usize) -> f64 {
        let n = self.len();
        0.5 * (self.segment_len(k) + self.segment_len((k + n - 1) % n))
    }

    pub fn centroid(&self) -> C64 {
        self.points.iter().sum::<C64>() / self.points.len() as f64
    }

    /// Point at arc-length position `s` (taken modulo the length).
    pub fn point_at(&self, s: f64) -> C64 {
        let l = self.length();
        let s = s.rem_euclid(l);
        let k = match self
            .cum_len
            .binary_search_by(|v| v.partial_cmp(&s).unwrap())
        {
            Ok(k) => return self.point(k),
            Err(k) => k - 1,
        };
        let (a, b) = self.segment(k);
        let t = (s - self.cum_len[k]) / self.segment_len(k);
        a + (b - a) * t
    }

    /// Image under `z ↦ scale·z + shift`. The family tag is dropped unless the
    /// map is the identity.
    pub fn similarity(&self, scale: C64, shift: C64) -> Result<Self> {
        if scale.norm() == 0.0 {
            return Err(Error::Precondition(
                "similarity scale must be nonzero".into(),
            ));
        }
        let points = self.points.iter().map(|z| scale * z + shift).collect();
        let family = if scale == C64::new(1.0, 0.0) && shift == C64::new(0.0, 0.0) {
            self.family.clone()
        } else {
            None
        };
        Self::from_points(points, family)
    }

    /// Same geometry, different starting sample.
    pub fn rotate_start(&self, k: usize) -> Result<Self> {
        let n = self.len();
        let points = (0..n).map(|j| self.points[(j + k) % n]).collect();
        Self::from_points(points, None)
    }

    /// Sample `k` in the form expected by boundary functions.
    pub fn boundary_point(&self, k: usize) -> BoundaryPoint {
        let k = k % self.len();
        BoundaryPoint {
            z: self.points[k],
            s: self.cum_len[k],
        }
    }

    fn find_intersection(&self) -> Option<(usize, usize)> {
        let n = self.len();
        let (lo, hi) = bounding_box(&self.points);
        let span = (hi - lo).re.max((hi - lo).im).max(f64::MIN_POSITIVE);
        let cells = (n as f64).sqrt().ceil().max(1.0);
        let cell = span / cells;
        let key = |x: f64, y: f64| -> (i64, i64) {
            (
                ((x - lo.re) / cell).floor() as i64,
                ((y - lo.im) / cell).floor() as i64,
            )
        };
        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for k in 0..n {
            let (a, b) = self.segment(k);
            let (i0, j0) = key(a.re.min(b.re), a.im.min(b.im));
            let (i1, j1) = key(a.re.max(b.re), a.im.max(b.im));
            for i in i0..=i1 {
                for j in j0..=j1 {
                    grid.entry((i, j)).or_default().push(k);
                }
            }
        }
        let mut cells: Vec<_> = grid.into_iter().collect();
        cells.sort_by_key(|(k, _)| *k);
        for (_, segs) in cells {
            for (x, &i) in segs.iter().enumerate() {
                for &j in &segs[x + 1..] {
                    let gap = (i as isize - j as isize).unsigned_abs();
                    if gap <= 1 || gap == n - 1 {
                        continue;
                    }
                    let (a, b) = self.segment(i);
                    let (c, d) = self.segment(j);
                    if segments_intersect(a, b, c, d) {
                        return Some((i.min(j), i.max(j)));
                    }
                }
            }
        }
        None
    }
}

/// A location on a curve: the point and its arc-length position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub z: C64,
    pub s: f64,
}

fn signed_area(points: &[C64]) -> f64 {
    let n = points.len();
    0.5 * (0..n)
        .map(|k| {
            let a = points[k];
            let b = points[(k + 1) % n];
            a.re * b.im - b.re * a.im
        })
        .sum::<f64>()
}

fn bounding_box(points: &[C64]) -> (C64, C64) {
    let mut lo = C64::new(f64::INFINITY, f64::INFINITY);
    let mut hi = C64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for z in points {
        lo.re = lo.re.min(z.re);
        lo.im = lo.im.min(z.im);
        hi.re = hi.re.max(z.re);
        hi.im = hi.im.max(z.im);
    }
    (lo, hi)
}

fn cross(a: C64, b: C64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn on_segment(a: C64, b: C64, p: C64) -> bool {
    p.re >= a.re.min(b.re)
        && p.re <= a.re.max(b.re)
        && p.im >= a.im.min(b.im)
        && p.im <= a.im.max(b.im)
}

/// Closed-segment intersection test, touching included.
fn segments_intersect(a: C64, b: C64, c: C64, d: C64) -> bool {
    let d1 = cross(d - c, a - c);
    let d2 = cross(d - c, b - c);
    let d3 = cross(b - a, c - a);
    let d4 = cross(b - a, d - a);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// Builds a counterclockwise sample of a named family.
///
/// Circles and polynomial curves get exactly `n_samples` points at uniform
/// disk angles. Polygons are resampled along their edges with every vertex
/// kept. Koch prefractals subdivide each generator edge uniformly, so the
/// returned resolution is the first multiple of `3·4^level` that is
/// at least `n_samples`.
pub fn make_named_curve(family: &NamedCurve, n_samples: usize) -> Result<CurveSample> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: n_samples,
        });
    }
    let n = n_samples;
    match family {
        NamedCurve::Circle { r } => {
            if !(*r > 0.0) || !r.is_finite() {
                return Err(Error::InvalidCurve(format!("circle radius {r}")));
            }
            let pts = (0..n)
                .map(|k| C64::from_polar(*r, TAU * k as f64 / n as f64))
                .collect();
            CurveSample::from_points(pts, Some(FamilyTag::Circle { r: *r }))
        }
        NamedCurve::Polynomial { c } => {
            if !c.is_finite() || c.abs() >= 0.5 {
                return Err(Error::NotUnivalent(c.abs()));
            }
            let pts = (0..n)
                .map(|k| {
                    let z = C64::from_polar(1.0, TAU * k as f64 / n as f64);
                    z + *c * z * z
                })
                .collect();
            CurveSample::from_points(pts, Some(FamilyTag::Polynomial { c: *c }))
        }
        NamedCurve::Polygon { vertices } => {
            let pts = resample_polygon(vertices, n)?;
            CurveSample::from_points(pts, Some(FamilyTag::Polygon))
        }
        NamedCurve::Koch { level } => {
            if *level > MAX_KOCH_LEVEL {
                return Err(Error::KochLevelTooHigh(*level));
            }
            let verts = koch_vertices(*level);
            let per_edge = n.div_ceil(verts.len());
            let mut pts = Vec::with_capacity(verts.len() * per_edge);
            for k in 0..verts.len() {
                let a = verts[k];
                let b = verts[(k + 1) % verts.len()];
                for j in 0..per_edge {
                    pts.push(a + (b - a) * (j as f64 / per_edge as f64));
                }
            }
            CurveSample::from_points(pts, Some(FamilyTag::Koch { level: *level }))
        }
    }
}

/// Vertices of the level-`level` Koch prefractal on the unit-side equilateral
/// triangle centred at the origin, counterclockwise, first vertex on top.
pub fn koch_vertices(level: u32) -> Vec<C64> {
    let r = 1.0 / 3f64.sqrt();
    let mut verts: Vec<C64> = (0..3)
        .map(|k| C64::from_polar(r, PI / 2.0 + TAU * k as f64 / 3.0))
        .collect();
    let bump = C64::new(0.0, -(3f64.sqrt()) / 6.0);
    for _ in 0..level {
        let m = verts.len();
        let mut next = Vec::with_capacity(4 * m);
        for k in 0..m {
            let a = verts[k];
            let d = verts[(k + 1) % m] - a;
            next.push(a);
            next.push(a + d / 3.0);
            // outward is to the right of travel on a counterclockwise curve
            next.push(a + d * 0.5 + d * bump);
            next.push(a + d * (2.0 / 3.0));
        }
        verts = next;
    }
    verts
}

fn resample_polygon(vertices: &[C64], n: usize) -> Result<Vec<C64>> {
    let m = vertices.len();
    if m < 3 {
        return Err(Error::InvalidCurve(
            "polygon needs at least 3 vertices".into(),
        ));
    }
    if n < m {
        return Err(Error::TooFewSamples { min: m, got: n });
    }
    // Reject self-intersecting vertex lists before resampling.
    let probe = CurveSample {
        points: vertices.to_vec(),
        cum_len: Vec::new(),
        family: None,
    };
    for k in 0..m {
        if vertices[k] == vertices[(k + 1) % m] {
            return Err(Error::DegenerateSegment(k, (k + 1) % m));
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let gap = j - i;
            if gap <= 1 || gap == m - 1 {
                continue;
            }
            let (a, b) = probe.segment(i);
            let (c, d) = probe.segment(j);
            if segments_intersect(a, b, c, d) {
                return Err(Error::SelfIntersecting(i, j));
            }
        }
    }
    let lens: Vec<f64> = (0..m)
        .map(|k| (vertices[(k + 1) % m] - vertices[k]).norm())
        .collect();
    let total: f64 = lens.iter().sum();
    let mut counts: Vec<usize> = lens
        .iter()
        .map(|l| ((l / total * n as f64).round() as usize).max(1))
        .collect();
    // Fix the total by adjusting the edges with the largest/smallest spacing.
    loop {
        let sum: usize = counts.iter().sum();
        if sum == n {
            break;
        }
        if sum < n {
            let k = (0..m)
                .max_by(|&a, &b| {
                    (lens[a] / counts[a] as f64)
                        .partial_cmp(&(lens[b] / counts[b] as f64))
                        .unwrap()
                })
                .unwrap();
            counts[k] += 1;
        } else {
            let k = (0..m)
                .filter(|&k| counts[k] > 1)
                .min_by(|&a, &b| {
                    (lens[a] / counts[a] as f64)
                        .partial_cmp(&(lens[b] / counts[b] as f64))
                        .unwrap()
                })
                .unwrap();
            counts[k] -= 1;
        }
    }
    let mut pts = Vec::with_capacity(n);
    for k in 0..m {
        let a = vertices[k];
        let b = vertices[(k + 1) % m];
        for j in 0..counts[k] {
            pts.push(a + (b - a) * (j as f64 / counts[k] as f64));
        }
    }
    Ok(pts)
}

/// Resamples to equal chord spacing (hence uniform arc-length spacing of the
/// new polyline) and rescales.
///
/// The new samples lie on the old polyline, the first one at `z_0`, with
/// consecutive chords all equal. Without `target_length` the result is
/// scaled back to the input length.
pub fn reparametrize_arclength(
    curve: &CurveSample,
    target_length: Option<f64>,
) -> Result<CurveSample> {
    if let Some(t) = target_length {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Precondition(format!(
                "target length {t} must be positive"
            )));
        }
    }
    let n = curve.len();
    let l = curve.length();
    let walk = |h: f64| equal_chord_walk(curve, n, h);
    let mut hi = l / n as f64;
    let mut lo = 0.5 * hi;
    let mut tries = 0;
    while walk(lo).1 >= l {
        lo *= 0.5;
        tries += 1;
        if tries > 60 {
            return Err(Error::InvalidCurve(
                "equal-chord resampling failed to bracket".into(),
            ));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if walk(mid).1 >= l {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (pts, _) = walk(hi);
    let new_len: f64 = (0..n).map(|k| (pts[(k + 1) % n] - pts[k]).norm()).sum();
    let scale = target_length.unwrap_or(l) / new_len;
    let scaled = pts.iter().map(|z| z * scale).collect();
    let family = match curve.family() {
        Some(FamilyTag::Circle { r }) if curve.is_uniform(1e-12) => {
            Some(FamilyTag::Circle { r: r * scale })
        }
        _ => None,
    };
    CurveSample::from_points(scaled, family)
}

impl CurveSample {
    /// True when all segments have the same length to relative `tol`.
    pub fn is_uniform(&self, tol: f64) -> bool {
        let mean = self.length() / self.len() as f64;
        (0..self.len()).all(|k| (self.segment_len(k) - mean).abs() <= tol * mean)
    }
}

/// Walks `n` steps of chord `h` from `z_0`, always taking the first exit from
/// the ball of radius `h`. Returns the points and the arc position reached
/// after `n` steps.
fn equal_chord_walk(curve: &CurveSample, n: usize, h: f64) -> (Vec<C64>, f64) {
    let m = curve.len();
    let l = curve.length();
    let mut pts = Vec::with_capacity(n);
    let mut seg = 0usize; // unrolled segment index
    let mut t = 0.0;
    let mut p = curve.point(0);
    let mut pos = 0.0;
    for _ in 0..n {
        pts.push(p);
        loop {
            let (a, b) = curve.segment(seg % m);
            let d = b - a;
            let ap = a - p;
            let dd = d.norm_sqr();
            let beta = (ap * d.conj()).re;
            let gamma = ap.norm_sqr() - h * h;
            let disc = (beta * beta - dd * gamma).max(0.0);
            // a vertex already at chord distance h is the crossing itself
            let root = if t == 0.0 && gamma >= 0.0 {
                0.0
            } else {
                (-beta + disc.sqrt()) / dd
            };
            if root >= t && root <= 1.0 + 1e-12 {
                t = root.min(1.0);
                p = a + d * t;
                let lap = (seg / m) as f64 * l;
                pos = lap + curve.cum_len[seg % m] + t * curve.segment_len(seg % m);
                break;
            }
            seg += 1;
            t = 0.0;
            if seg > 3 * m {
                return (pts, f64::INFINITY);
            }
        }
    }
    (pts, pos)
}

impl CurveSample {
    pub fn length(&self) -> f64 {
        *self.cum_len.last().unwrap()
    }

    /// Largest pairwise distance between samples.
    pub fn diameter(&self) -> f64 {
        let pts = &self.points;
        pts.par_iter()
            .enumerate()
            .map(|(j, a)| {
                pts[j + 1..]
                    .iter()
                    .map(|b| (a - b).norm())
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Euclidean distance from `w` to the polyline.
    pub fn distance_to(&self, w: C64) -> f64 {
        (0..self.len())
            .map(|k| {
                let (a, b) = self.segment(k);
                point_segment_distance(w, a, b)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Winding number of the polyline about `w`.
    pub fn winding_number(&self, w: C64) -> i64 {
        let total: f64 = (0..self.len())
            .map(|k| {
                let (a, b) = self.segment(k);
                ((b - w) / (a - w)).arg()
            })
            .sum();
        (total / TAU).round() as i64
    }

    /// Whether `w` lies in the interior domain.
    pub fn contains_interior(&self, w: C64) -> Result<bool> {
        let dist = self.distance_to(w);
        if dist <= 1e-10 * self.length() {
            return Err(Error::AmbiguousLocation { w, dist });
        }
        Ok(self.winding_number(w).abs() == 1)
    }

    /// Classifies `w` as a probe point.
    pub fn probe(&self, w: C64) -> Result<ProbePoint> {
        let inside = self.contains_interior(w)?;
        Ok(ProbePoint {
            w,
            side: if inside {
                Side::Interior
            } else {
                Side::Exterior
            },
            dist: self.distance_to(w),
        })
    }

    /// Grid supremum of `min(arc, L - arc) / chord` over sample pairs.
    ///
    /// This is a lower bound for the chord-arc constant of the polyline and
    /// grows under refinement.
    pub fn chord_arc_constant(&self) -> Result<f64> {
        let n = self.len();
        let l = self.length();
        let s = &self.cum_len;
        let pts = &self.points;
        let floor = 1e-14 * l;
        let best = (0..n)
            .into_par_iter()
            .map(|j| {
                let mut best = f64::NEG_INFINITY;
                for k in j + 1..n {
                    let chord = (pts[k] - pts[j]).norm();
                    if chord <= floor {
                        continue;
                    }
                    let arc = s[k] - s[j];
                    let ratio = arc.min(l - arc) / chord;
                    if ratio > best {
                        best = ratio;
                    }
                }
                best
            })
            .reduce(|| f64::NEG_INFINITY, f64::max);
        if !best.is_finite() {
            return Err(Error::InvalidCurve(
                "all sample pairs are degenerate".into(),
            ));
        }
        Ok(best)
    }

    /// Exact value of `∫_Γ |dz| / |z - w|²` over the polyline.
    pub fn inverse_square_integral(&self, w: C64) -> f64 {
        (0..self.len())
            .map(|k| {
                let (a, b) = self.segment(k);
                inverse_square_segment_integral(a, b, w)
            })
            .sum()
    }
}

pub fn curve_length(curve: &CurveSample) -> f64 {
    curve.length()
}

pub fn curve_diameter(curve: &CurveSample) -> f64 {
    curve.diameter()
}

pub fn distance_to_curve(curve: &CurveSample, w: C64) -> f64 {
    curve.distance_to(w)
}

pub fn contains_interior(curve: &CurveSample, w: C64) -> Result<bool> {
    curve.contains_interior(w)
}

pub fn chord_arc_constant(curve: &CurveSample) -> Result<f64> {
    curve.chord_arc_constant()
}

pub fn point_segment_distance(w: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let t = ((w - a) * d.conj()).re / d.norm_sqr();
    let t = t.clamp(0.0, 1.0);
    (a + d * t - w).norm()
}

/// `∫ |dz| / |z - w|²` along the segment `[a, b]`, in closed form.
pub fn inverse_square_segment_integral(a: C64, b: C64, w: C64) -> f64 {
    let d = b - a;
    let len = d.norm();
    let u = d / len;
    // coordinates of w relative to the segment line
    let rel = (w - a) * u.conj();
    let t0 = rel.re;
    let h = rel.im.abs();
    let (x0, x1) = (-t0, len - t0);
    if h > 1e-300 {
        ((x1 / h).atan() - (x0 / h).atan()) / h
    } else if x0 > 0.0 || x1 < 0.0 {
        (1.0 / x0 - 1.0 / x1).abs()
    } else {
        f64::INFINITY
    }
}

/// Length of the part of `[a, b]` inside the open disk `B(c, r)`.
pub fn segment_length_in_disk(a: C64, b: C64, c: C64, r: f64) -> f64 {
    let d = b - a;
    let dd = d.norm_sqr();
    let ac = a - c;
    let beta = (ac * d.conj()).re;
    let gamma = ac.norm_sqr() - r * r;
    let disc = beta * beta - dd * gamma;
    if disc <= 0.0 {
        return 0.0;
    }
    let sq = disc.sqrt();
    let t0 = ((-beta - sq) / dd).max(0.0);
    let t1 = ((-beta + sq) / dd).min(1.0);
    if t1 <= t0 {
        0.0
    } else {
        (t1 - t0) * dd.sqrt()
    }
}

/// On-disk description of a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum CurveSpec {
    Circle {
        params: CircleParams,
        n_samples: usize,
    },
    Polynomial {
        params: PolynomialParams,
        n_samples: usize,
    },
    Polygon {
        params: PolygonParams,
        n_samples: usize,
    },
    Koch {
        params: KochParams,
        n_samples: usize,
    },
    Polyline {
        points: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleParams {
    #[serde(default = "one")]
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialParams {
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonParams {
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KochParams {
    pub level: u32,
}

fn one() -> f64 {
    1.0
}

impl CurveSpec {
    pub fn circle(r: f64, n_samples: usize) -> Self {
        CurveSpec::Circle {
            params: CircleParams { r },
            n_samples,
        }
    }

    pub fn polynomial(c: f64, n_samples: usize) -> Self {
        CurveSpec::Polynomial {
            params: PolynomialParams { c },
            n_samples,
        }
    }

    pub fn koch(level: u32, n_samples: usize) -> Self {
        CurveSpec::Koch {
            params: KochParams { level },
            n_samples,
        }
    }

    pub fn polygon(vertices: &[C64], n_samples: usize) -> Self {
        CurveSpec::Polygon {
            params: PolygonParams {
                vertices: vertices.iter().map(|z| [z.re, z.im]).collect(),
            },
            n_samples,
        }
    }

    pub fn build(&self) -> Result<CurveSample> {
        let to_c = |v: &[[f64; 2]]| v.iter().map(|p| C64::new(p[0], p[1])).collect::<Vec<_>>();
        match self {
            CurveSpec::Circle { params, n_samples } => {
                make_named_curve(&NamedCurve::Circle { r: params.r }, *n_samples)
            }
            CurveSpec::Polynomial { params, n_samples } => {
                make_named_curve(&NamedCurve::Polynomial { c: params.c }, *n_samples)
            }
            CurveSpec::Polygon { params, n_samples } => make_named_curve(
                &NamedCurve::Polygon {
                    vertices: to_c(&params.vertices),
                },
                *n_samples,
            ),
            CurveSpec::Koch { params, n_samples } => make_named_curve(
                &NamedCurve::Koch {
                    level: params.level,
                },
                *n_samples,
            ),
            CurveSpec::Polyline { points } => {
                CurveSample::from_points(to_c(points), Some(FamilyTag::Polyline))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            CurveSpec::Circle { params, .. } => format!("circle(r={})", params.r),
            CurveSpec::Polynomial { params, .. } => format!("polynomial(c={})", params.c),
            CurveSpec::Polygon { params, .. } => {
                format!("polygon({} vertices)", params.vertices.len())
            }
            CurveSpec::Koch { params, .. } => format!("koch({})", params.level),
            CurveSpec::Polyline { points } => format!("polyline({} points)", points.len()),
        }
    }

    pub fn n_samples(&self) -> usize {
        match self {
            CurveSpec::Circle { n_samples, .. }
            | CurveSpec::Polynomial { n_samples, .. }
            | CurveSpec::Polygon { n_samples, .. }
            | CurveSpec::Koch { n_samples, .. } => *n_samples,
            CurveSpec::Polyline { points } => points.len(),
        }
    }

    pub fn with_samples(&self, n: usize) -> Self {
        let mut out = self.clone();
        match &mut out {
            CurveSpec::Circle { n_samples, .. }
            | CurveSpec::Polynomial { n_samples, .. }
            | CurveSpec::Polygon { n_samples, .. }
            | CurveSpec::Koch { n_samples, .. } => *n_samples = n,
            CurveSpec::Polyline { .. } => {}
        }
        out
    }
}

/// The axis-aligned square of side `side` centred at `center`, counterclockwise
/// from its lower-left corner.
pub fn square(side: f64, center: C64) -> Vec<C64> {
    let h = side / 2.0;
    vec![
        center + C64::new(-h, -h),
        center + C64::new(h, -h),
        center + C64::new(h, h),
        center + C64::new(-h, h),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_square(n: usize) -> CurveSample {
        make_named_curve(
            &NamedCurve::Polygon {
                vertices: square(1.0, C64::new(0.0, 0.0)),
            },
            n,
        )
        .unwrap()
    }

    #[test]
    fn circle_samples_hit_axis_points() {
        let c = make_named_curve(&NamedCurve::Circle { r: 1.0 }, 16).unwrap();
        let expect = [
            C64::new(1.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(-1.0, 0.0),
            C64::new(0.0, -1.0),
        ];
        for (q, e) in expect.iter().enumerate() {
            assert!((c.point(4 * q) - e).norm() < 1e-15);
        }
        // inscribed 16-gon length
        assert_relative_eq!(c.length(), 32.0 * (PI / 16.0).sin(), epsilon = 1e-13);
    }

    #[test]
    fn rejects_small_resolution() {
        assert!(matches!(
            make_named_curve(&NamedCurve::Circle { r: 1.0 }, 4),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn polynomial_zero_is_circle() {
        let a = make_named_curve(&NamedCurve::Polynomial { c: 0.0 }, 64).unwrap();
        let b = make_named_curve(&NamedCurve::Circle { r: 1.0 }, 64).unwrap();
        for (x, y) in a.points().iter().zip(b.points()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn polynomial_rejects_half() {
        assert!(matches!(
            make_named_curve(&NamedCurve::Polynomial { c: 0.5 }, 64),
            Err(Error::NotUnivalent(_))
        ));
        assert!(make_named_curve(&NamedCurve::Polynomial { c: 0.49 }, 1024).is_ok());
    }

    #[test]
    fn koch_level_one_construction() {
        let v = koch_vertices(1);
        assert_eq!(v.len(), 12);
        for k in 0..12 {
            let seg = (v[(k + 1) % 12] - v[k]).norm();
            assert_relative_eq!(seg, 1.0 / 3.0, epsilon = 1e-14);
        }
        let c = make_named_curve(&NamedCurve::Koch { level: 1 }, 16).unwrap();
        assert_eq!(c.len(), 24);
        assert_relative_eq!(c.length(), 4.0, epsilon = 1e-13);
        let c0 = make_named_curve(&NamedCurve::Koch { level: 0 }, 16).unwrap();
        assert_relative_eq!(c.length(), 4.0 / 3.0 * c0.length(), epsilon = 1e-13);
        assert!(matches!(
            make_named_curve(&NamedCurve::Koch { level: 8 }, 16),
            Err(Error::KochLevelTooHigh(8))
        ));
    }

    #[test]
    fn koch_is_outward_and_simple() {
        for level in 0..=4 {
            let c = make_named_curve(&NamedCurve::Koch { level }, 16).unwrap();
            assert!(c.contains_interior(C64::new(0.0, 0.0)).unwrap());
        }
        // outward bumps increase the enclosed area
        let a0 = signed_area(&koch_vertices(0));
        let a1 = signed_area(&koch_vertices(1));
        assert!(a1 > a0);
        assert_relative_eq!(a1 / a0, 4.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn self_intersecting_polygon_rejected() {
        let bowtie = vec![
            C64::new(0.0, 0.0),
            C64::new(1.0, 1.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 1.0),
        ];
        assert!(matches!(
            make_named_curve(&NamedCurve::Polygon { vertices: bowtie }, 32),
            Err(Error::SelfIntersecting(_, _))
        ));
        let mut pts: Vec<C64> = (0..32)
            .map(|k| C64::from_polar(1.0, TAU * k as f64 / 32.0))
            .collect();
        pts.swap(3, 17);
        assert!(matches!(
            CurveSample::from_points(pts, None),
            Err(Error::SelfIntersecting(_, _))
        ));
    }

    #[test]
    fn clockwise_input_is_reoriented() {
        let pts: Vec<C64> = (0..32)
            .map(|k| C64::from_polar(1.0, -TAU * k as f64 / 32.0))
            .collect();
        let c = CurveSample::from_points(pts, None).unwrap();
        assert!(signed_area(c.points()) > 0.0);
        assert_eq!(c.point(0), C64::new(1.0, 0.0));
    }

    #[test]
    fn length_and_diameter() {
        let sq = unit_square(64);
        assert_relative_eq!(sq.length(), 4.0, epsilon = 1e-14);
        assert_relative_eq!(sq.diameter(), 2f64.sqrt(), epsilon = 1e-14);
        let c = make_named_curve(&NamedCurve::Circle { r: 1.0 }, 4096).unwrap();
        assert!((c.length() - TAU).abs() < 1e-5);
        assert_relative_eq!(c.diameter(), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn polynomial_length_against_dense_oracle() {
        let coarse = make_named_curve(&NamedCurve::Polynomial { c: 0.3 }, 1024).unwrap();
        // oracle: 8x denser polyline of the same closed-form boundary
        let m = 8 * 1024;
        let dense: f64 = (0..m)
            .map(|k| {
                let f = |t: f64| {
                    let z = C64::from_polar(1.0, t);
                    z + 0.3 * z * z
                };
                (f(TAU * (k + 1) as f64 / m as f64) - f(TAU * k as f64 / m as f64)).norm()
            })
            .sum();
        assert!((coarse.length() - dense).abs() / dense < 1e-3);
    }

    #[test]
    fn distance_examples() {
        let c = make_named_curve(&NamedCurve::Circle { r: 1.0 }, 1024).unwrap();
        assert!((c.distance_to(C64::new(0.0, 0.0)) - 1.0).abs() < 1e-5);
        assert!((c.distance_to(C64::new(2.0, 0.0)) - 1.0).abs() < 1e-12);
        let sq = make_named_curve(
            &NamedCurve::Polygon {
                vertices: square(2.0, C64::new(0.0, 0.0)),
            },
            64,
        )
        .unwrap();
        // brute-force oracle over a dense resampling of the sides
        let dense = (0..4000)
            .map(|k| sq.point_at(sq.length() * k as f64 / 4000.0).norm())
            .fold(f64::INFINITY, f64::min);
        assert_relative_eq!(sq.distance_to(C64::new(0.0, 0.0)), 1.0, epsilon = 1e-14);
        assert_relative_eq!(dense, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn interior_classification() {
        let c = make_named_curve(&NamedCurve::Circle { r: 1.0 }, 256).unwrap();
        assert!(c.contains_interior(C64::new(0.0, 0.0)).unwrap());
        assert!(!c.contains_interior(C64::new(3.0, 0.0)).unwrap());
        assert!(matches!(
            c.contains_interior(c.point(5)),
            Err(Error::AmbiguousLocation { .. })
        ));
        let k = make_named_curve(&NamedCurve::Koch { level: 3 }, 16).unwrap();
        let centroid = k.centroid();
        // independent oracle: the snowflake is star-shaped about its centre,
        // so a horizontal ray from there crosses the boundary an odd number of times
        let crossings = (0..k.len())
            .filter(|&j| {
                let (a, b) = k.segment(j);
                (a.im > centroid.im) != (b.im > centroid.im)
                    && centroid.re < a.re + (centroid.im - a.im) / (b.im - a.im) * (b.re - a.re)
            })
            .count();
        assert_eq!(crossings % 2, 1);
        assert!(k.contains_interior(centroid).unwrap());
    }

    #[test]
    fn chord_arc_examples() {
        let c = make_named_curve(&NamedCurve::Circle { r: 1.0 }, 2048).unwrap();
        assert!((c.chord_arc_constant().unwrap() - PI / 2.0).abs() < 1e-3);
        let sq = unit_square(1024);
        assert!((sq.chord_arc_constant().unwrap() - 2.0).abs() < 1e-3);
    }

    #[test]
    fn chord_arc_grows_along_polynomial_family() {
        let mut last = 0.0;
        for c in [0.0, 0.1, 0.2, 0.3, 0.4, 0.45, 0.49] {
            let k = make_named_curve(&NamedCurve::Polynomial { c }, 512)
                .unwrap()
                .chord_arc_constant()
                .unwrap();
            assert!(k > last, "c={c}: {k} <= {last}");
            last = k;
        }
    }

    #[test]
    fn reparametrize_square() {
        let sq = unit_square(64);
        let r = reparametrize_arclength(&sq, Some(TAU)).unwrap();
        assert_relative_eq!(r.length(), TAU, epsilon = 1e-12);
        assert!(r.is_uniform(1e-9));
        let side = PI / 2.0;
        assert_relative_eq!(r.diameter(), side * 2f64.sqrt(), epsilon = 1e-9);
        for k in 0..=64 {
            assert_relative_eq!(r.cum_len()[k], TAU * k as f64 / 64.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn reparametrize_generic_curve_is_uniform() {
        let c = make_named_curve(&NamedCurve::Polynomial { c: 0.3 }, 256).unwrap();
        let r = reparametrize_arclength(&c, None).unwrap();
        assert_relative_eq!(r.length(), c.length(), epsilon = 1e-12);
        assert!(r.is_uniform(1e-9));
        // new samples stay near the old polyline; the rescale to length L is O(h²)
        for z in r.points() {
            assert!(c.distance_to(*z) < 1e-4);
        }
    }

    #[test]
    fn reparametrize_keeps_sharp_corners() {
        // uniform Koch samples already have equal chords; the 60° tips must survive
        for level in 1..=4 {
            let c = make_named_curve(&NamedCurve::Koch { level }, 1024).unwrap();
            let r = reparametrize_arclength(&c, None).unwrap();
            assert!(r.is_uniform(1e-9));
            for (a, b) in c.points().iter().zip(r.points()) {
                assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn segment_integral_matches_quadrature() {
        let a = C64::new(-0.3, 0.2);
        let b = C64::new(0.8, -0.1);
        let w = C64::new(0.1, 0.5);
        let exact = inverse_square_segment_integral(a, b, w);
        let m = 200_000;
        let len = (b - a).norm();
        let mid: f64 = (0..m)
            .map(|k| {
                let z = a + (b - a) * ((k as f64 + 0.5) / m as f64);
                len / m as f64 / (z - w).norm_sqr()
            })
            .sum();
        assert_relative_eq!(exact, mid, max_relative = 1e-9);
    }

    #[test]
    fn disk_clipping() {
        let a = C64::new(-2.0, 0.0);
        let b = C64::new(2.0, 0.0);
        assert_relative_eq!(segment_length_in_disk(a, b, C64::new(0.0, 0.0), 1.0), 2.0);
        assert_eq!(segment_length_in_disk(a, b, C64::new(0.0, 2.0), 1.0), 0.0);
        assert_relative_eq!(
            segment_length_in_disk(C64::new(0.0, 0.0), b, C64::new(0.0, 0.0), 1.0),
            1.0
        );
    }

    #[test]
    fn curve_spec_json() {
        let spec: CurveSpec = serde_json::from_str(
            r#"{ "family": "polynomial", "params": {"c": 0.3}, "n_samples": 128 }"#,
        )
        .unwrap();
        assert_eq!(spec, CurveSpec::polynomial(0.3, 128));
        let pts: Vec<[f64; 2]> = (0..20)
            .map(|k| {
                let t = TAU * k as f64 / 20.0;
                [t.cos(), t.sin()]
            })
            .collect();
        let text = serde_json::to_string(&CurveSpec::Polyline { points: pts }).unwrap();
        assert!(text.contains(r#""family":"polyline""#));
        let back: CurveSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build().unwrap().len(), 20);
        assert!(
            serde_json::from_str::<CurveSpec>(r#"{"family":"spiral","n_samples":32}"#).is_err()
        );
    }
}
