//! Ahlfors regularity estimated from balls and from the dual integral
//! `d(w, Γ) ∫_Γ |dz| / |z - w|²`, and slack in the sine comparison for
//! curves of length `2π`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{segment_length_in_disk, CurveSample, Side};
use crate::error::{Error, Result};

/// Centres and radii for the ball estimator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallGrid {
    pub centers: Vec<C64>,
    pub radii: Vec<f64>,
}

impl BallGrid {
    /// Up to `n_centers` curve samples (evenly strided) plus the centroid,
    /// and `n_radii` radii spaced geometrically from just above the
    /// resolution floor up to the diameter.
    pub fn for_curve(curve: &CurveSample, n_centers: usize, n_radii: usize) -> Self {
        let n = curve.len();
        let stride = n.div_ceil(n_centers.max(1)).max(1);
        let mut centers: Vec<C64> = (0..n).step_by(stride).map(|k| curve.point(k)).collect();
        centers.push(curve.centroid());
        let lo = 4.0 * curve.max_segment() * (1.0 + 1e-9);
        let hi = curve.diameter();
        let radii = if n_radii <= 1 || hi <= lo {
            vec![hi]
        } else {
            (0..n_radii)
                .map(|j| lo * (hi / lo).powf(j as f64 / (n_radii - 1) as f64))
                .collect()
        };
        Self { centers, radii }
    }
}

/// Ball estimate `M̂ = max length(Γ ∩ B(z, r)) / r` and where it is attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallEstimate {
    pub m_hat: f64,
    pub center: C64,
    pub radius: f64,
}

pub fn ball_regularity(curve: &CurveSample, grid: &BallGrid) -> Result<BallEstimate> {
    let floor = 4.0 * curve.max_segment();
    let diam = curve.diameter();
    if grid.centers.is_empty() || grid.radii.is_empty() {
        return Err(Error::InvalidGrid("empty ball grid".into()));
    }
    if let Some(r) = grid
        .radii
        .iter()
        .find(|&&r| !(r > floor && r <= diam * (1.0 + 1e-12)))
    {
        return Err(Error::InvalidGrid(format!(
            "radius {r} outside ({floor}, {diam}]"
        )));
    }
    let rows: Vec<BallEstimate> = grid
        .centers
        .par_iter()
        .map(|&c| {
            let mut best = BallEstimate {
                m_hat: 0.0,
                center: c,
                radius: grid.radii[0],
            };
            for &r in &grid.radii {
                let len: f64 = (0..curve.len())
                    .map(|k| {
                        let (a, b) = curve.segment(k);
                        segment_length_in_disk(a, b, c, r)
                    })
                    .sum();
                if len / r > best.m_hat {
                    best = BallEstimate {
                        m_hat: len / r,
                        center: c,
                        radius: r,
                    };
                }
            }
            best
        })
        .collect();
    Ok(rows
        .into_iter()
        .fold(None::<BallEstimate>, |acc, e| match acc {
            Some(a) if a.m_hat >= e.m_hat => Some(a),
            _ => Some(e),
        })
        .unwrap())
}

/// Probe placement for the dual estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProbeSpec {
    /// Offsets `2^{-k} diam` for `k = 2..=k_max` along the discrete normal.
    pub k_max: u32,
    /// Number of boundary samples that receive normal probes.
    pub normal_sites: usize,
    /// Rings and rays of the coarse polar grid around the centroid.
    pub coarse_rings: usize,
    pub coarse_rays: usize,
    /// Compass-search halvings spent improving each of the best probes.
    pub refine_steps: u32,
}

impl Default for ProbeSpec {
    fn default() -> Self {
        Self {
            k_max: 10,
            normal_sites: 256,
            coarse_rings: 8,
            coarse_rays: 16,
            refine_steps: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub w: C64,
    pub side: Side,
    pub dist: f64,
    pub integral: f64,
}

impl Probe {
    pub fn product(&self) -> f64 {
        self.dist * self.integral
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualEstimate {
    pub c_hat: f64,
    pub argmax: C64,
    pub probes: Vec<Probe>,
    /// Candidate points dropped for being within resolution of the curve.
    pub excluded: usize,
}

/// Candidate probe points before filtering.
pub fn probe_candidates(curve: &CurveSample, spec: &ProbeSpec) -> Vec<C64> {
    let n = curve.len();
    let diam = curve.diameter();
    let centroid = curve.centroid();
    let mut out = Vec::new();
    let stride = n.div_ceil(spec.normal_sites.max(1)).max(1);
    for k in (0..n).step_by(stride) {
        let t = curve.point(k + 1) - curve.point(k + n - 1);
        let normal = C64::i() * t / t.norm();
        for j in 2..=spec.k_max {
            let off = diam * 0.5f64.powi(j as i32);
            out.push(curve.point(k) + normal * off);
            out.push(curve.point(k) - normal * off);
        }
    }
    out.push(centroid);
    let phase = (curve.point(0) - centroid) / (curve.point(0) - centroid).norm();
    for i in 1..=spec.coarse_rings {
        let r = 1.5 * diam * i as f64 / spec.coarse_rings as f64;
        for j in 0..spec.coarse_rays {
            out.push(
                centroid + phase * C64::from_polar(r, TAU * j as f64 / spec.coarse_rays as f64),
            );
        }
    }
    out
}

/// `Ĉ = max d(w, Γ) ∫_Γ |dz| / |z - w|²` over the probes that are at least
/// three segment lengths from the curve.
///
/// The best few candidates are then improved by a compass search that
/// starts at step `diam/16` and halves the step whenever no neighbour is
/// better; every evaluated point is kept as a probe.
pub fn dual_regularity(curve: &CurveSample, spec: &ProbeSpec) -> Result<DualEstimate> {
    let mut est = dual_regularity_at(curve, &probe_candidates(curve, spec))?;
    if spec.refine_steps == 0 {
        return Ok(est);
    }
    let floor = 3.0 * curve.max_segment();
    let mut starts: Vec<&Probe> = est.probes.iter().collect();
    starts.sort_by(|a, b| b.product().total_cmp(&a.product()));
    let starts: Vec<C64> = starts.iter().take(REFINE_STARTS).map(|p| p.w).collect();
    let h0 = curve.diameter() / 16.0;
    let centroid = curve.centroid();
    let phase = (curve.point(0) - centroid) / (curve.point(0) - centroid).norm();
    let found: Vec<Vec<Probe>> = starts
        .par_iter()
        .map(|&w0| compass_search(curve, w0, h0, floor, spec.refine_steps, phase))
        .collect();
    for p in found.into_iter().flatten() {
        if p.product() > est.c_hat {
            est.c_hat = p.product();
            est.argmax = p.w;
        }
        est.probes.push(p);
    }
    Ok(est)
}

const REFINE_STARTS: usize = 4;

fn evaluate_probe(curve: &CurveSample, w: C64, floor: f64) -> Option<Probe> {
    let dist = curve.distance_to(w);
    if dist < floor {
        return None;
    }
    let side = match curve.contains_interior(w) {
        Ok(true) => Side::Interior,
        Ok(false) => Side::Exterior,
        Err(_) => return None,
    };
    Some(Probe {
        w,
        side,
        dist,
        integral: curve.inverse_square_integral(w),
    })
}

/// Moves to the best of eight neighbours on the same side while one
/// improves; directions are aligned with `phase` so the search commutes with
/// similarities.
fn compass_search(
    curve: &CurveSample,
    w0: C64,
    h0: f64,
    floor: f64,
    halvings: u32,
    phase: C64,
) -> Vec<Probe> {
    let mut out = Vec::new();
    let Some(mut best) = evaluate_probe(curve, w0, floor) else {
        return out;
    };
    let mut h = h0;
    let mut left = halvings;
    let mut budget = 64 * halvings as usize;
    let dirs: Vec<C64> = (0..8)
        .map(|k| phase * C64::from_polar(1.0, TAU * k as f64 / 8.0))
        .collect();
    while left > 0 && budget > 0 {
        budget -= 1;
        let mut next = best;
        for &d in &dirs {
            if let Some(p) = evaluate_probe(curve, best.w + d * h, floor) {
                out.push(p);
                if p.product() > next.product() && p.side == best.side {
                    next = p;
                }
            }
        }
        if next.w != best.w {
            best = next;
        } else {
            h *= 0.5;
            left -= 1;
        }
    }
    out
}

pub fn dual_regularity_at(curve: &CurveSample, points: &[C64]) -> Result<DualEstimate> {
    let floor = 3.0 * curve.max_segment();
    let evaluated: Vec<Option<Probe>> = points
        .par_iter()
        .map(|&w| evaluate_probe(curve, w, floor))
        .collect();
    let excluded = evaluated.iter().filter(|p| p.is_none()).count();
    let probes: Vec<Probe> = evaluated.into_iter().flatten().collect();
    let best = probes
        .iter()
        .fold(None::<&Probe>, |acc, p| match acc {
            Some(a) if a.product() >= p.product() => Some(a),
            _ => Some(p),
        })
        .ok_or_else(|| Error::InvalidGrid("no probe clears the resolution floor".into()))?;
    let (c_hat, argmax) = (best.product(), best.w);
    Ok(DualEstimate {
        c_hat,
        argmax,
        probes,
        excluded,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub chord_arc: f64,
    pub ball: BallEstimate,
    pub dual: DualEstimate,
}

pub fn regularity_report(
    curve: &CurveSample,
    grid: &BallGrid,
    spec: &ProbeSpec,
) -> Result<RegularityReport> {
    Ok(RegularityReport {
        chord_arc: curve.chord_arc_constant()?,
        ball: ball_regularity(curve, grid)?,
        dual: dual_regularity(curve, spec)?,
    })
}

/// Minimum slack in the sine comparison on a curve of length `2π`:
/// `min π|sin((t - s)/2)| - |z(t) - z(s)|` over sample pairs, and with `k`,
/// `min |z(t) - z(s)| - (2/k)|sin((t - s)/2)|`. Arc positions are the
/// polyline's own cumulative lengths.
pub fn lemma_sin_slack(curve: &CurveSample, k: Option<f64>) -> Result<(f64, Option<f64>)> {
    let l = curve.length();
    if (l - TAU).abs() > 1e-9 * TAU {
        return Err(Error::Precondition(format!("curve length {l} is not 2π")));
    }
    let n = curve.len();
    let z = curve.points();
    let s = curve.cum_len();
    let rows: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut m1 = f64::INFINITY;
            let mut m2 = f64::INFINITY;
            for i in j + 1..n {
                let sn = (0.5 * (s[i] - s[j])).sin().abs();
                let chord = (z[i] - z[j]).norm();
                m1 = m1.min(PI * sn - chord);
                if let Some(k) = k {
                    m2 = m2.min(chord - 2.0 / k * sn);
                }
            }
            (m1, m2)
        })
        .collect();
    let s1 = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let s2 = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    Ok((s1, k.map(|_| s2)))
}

/// Spearman rank correlation (average ranks for ties).
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&i, &j| v[i].partial_cmp(&v[j]).unwrap());
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0;
            for &k in &idx[i..=j] {
                r[k] = avg;
            }
            i = j + 1;
        }
        r
    }
    let (ra, rb) = (ranks(a), ranks(b));
    let n = a.len() as f64;
    let ma = ra.iter().sum::<f64>() / n;
    let mb = rb.iter().sum::<f64>() / n;
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = ra.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = rb.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}
