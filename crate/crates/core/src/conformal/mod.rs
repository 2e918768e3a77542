//! Conformal maps of the unit disk onto the two sides of a sampled curve.
//!
//! Interior maps send `𝔻` onto `Ω` with `φ(0)` at an anchor point and
//! `φ'(0) > 0`. Exterior maps are reflected: with `ι(z) = 1/z̄` and the curve
//! shifted so the interior anchor is `0`, `φ̃` sends `𝔻` onto
//! `ι(Ω_e)`, whose interior contains `0 = ι(∞)`.

pub mod welding;
pub mod zipper;

use std::f64::consts::TAU;
use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::curve::{BoundaryPoint, CurveSample, FamilyTag};
use crate::error::{Error, Result};

pub use welding::{compute_welding, dyadic_alphas, quasisymmetry_constant, Welding};
pub use zipper::Zipper;

/// Default distance from the unit circle below which derivatives are refused.
pub const EVAL_EPS: f64 = 1e-9;

/// Which side of the curve a map covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapSide {
    Interior,
    ExteriorReflected,
}

/// How a map is evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapEngine {
    /// `φ(z) = r z` for the circle of radius `r` (reflected: `z / r`).
    Circle {
        r: f64,
    },
    /// `φ(z) = z + c z²`.
    Polynomial {
        c: f64,
    },
    Zipper(Zipper),
}

impl MapEngine {
    pub fn is_closed_form(&self) -> bool {
        !matches!(self, MapEngine::Zipper(_))
    }

    pub fn label(&self) -> &'static str {
        if self.is_closed_form() {
            "closed-form"
        } else {
            "numeric"
        }
    }
}

/// The reflection `z ↦ 1/z̄`.
pub fn reflect(z: C64) -> C64 {
    z / z.norm_sqr()
}

/// A conformal map from the disk with its boundary correspondence.
///
/// The table pairs a strictly increasing lift `θ_0 < … < θ_{N-1} < θ_0 + 2π`
/// with the curve samples `z_k` (on the original, unreflected curve) and
/// their arc positions `s_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformalMap {
    engine: MapEngine,
    side: MapSide,
    shift: C64,
    theta: Vec<f64>,
    points: Vec<C64>,
    arc: Vec<f64>,
    length: f64,
}

impl ConformalMap {
    pub fn engine(&self) -> &MapEngine {
        &self.engine
    }

    pub fn side(&self) -> MapSide {
        self.side
    }

    /// Translation that moves the interior anchor to `0`; the anchor itself.
    pub fn shift(&self) -> C64 {
        self.shift
    }

    pub fn boundary_angles(&self) -> &[f64] {
        &self.theta
    }

    pub fn boundary_samples(&self) -> &[C64] {
        &self.points
    }

    fn check(zeta: C64, eps: f64) -> Result<()> {
        if !(zeta.norm() < 1.0 - eps) {
            Err(Error::OutsideDisk(zeta))
        } else {
            Ok(())
        }
    }

    /// `φ(ζ)`; for reflected maps this is `φ̃(ζ)` in the reflected plane.
    pub fn eval(&self, zeta: C64) -> Result<C64> {
        Self::check(zeta, 0.0)?;
        Ok(self.eval_unchecked(zeta).0)
    }

    pub fn eval_derivative(&self, zeta: C64) -> Result<C64> {
        Self::check(zeta, EVAL_EPS)?;
        Ok(self.eval_unchecked(zeta).1)
    }

    fn eval_unchecked(&self, zeta: C64) -> (C64, C64) {
        match &self.engine {
            MapEngine::Circle { r } => match self.side {
                MapSide::Interior => (zeta * *r + self.shift, C64::new(*r, 0.0)),
                MapSide::ExteriorReflected => (zeta / *r, C64::new(1.0 / *r, 0.0)),
            },
            MapEngine::Polynomial { c } => {
                (zeta + *c * zeta * zeta + self.shift, 1.0 + 2.0 * *c * zeta)
            }
            MapEngine::Zipper(z) => z.inverse(zeta),
        }
    }

    /// For reflected maps, the exterior point `ι(φ̃(ζ)) + shift`.
    pub fn eval_exterior_point(&self, zeta: C64) -> Result<C64> {
        let w = self.eval(zeta)?;
        Ok(match self.side {
            MapSide::Interior => w,
            MapSide::ExteriorReflected => reflect(w) + self.shift,
        })
    }

    /// Curve point corresponding to the boundary angle `θ`, by linear
    /// interpolation in the lifted angle.
    pub fn boundary_point(&self, theta: f64) -> BoundaryPoint {
        let n = self.theta.len();
        let t0 = self.theta[0];
        let t = t0 + (theta - t0).rem_euclid(TAU);
        let k = self.theta.partition_point(|&x| x <= t).saturating_sub(1);
        let (ta, tb) = (
            self.theta[k],
            if k + 1 < n {
                self.theta[k + 1]
            } else {
                t0 + TAU
            },
        );
        let (za, zb) = (self.points[k], self.points[(k + 1) % n]);
        let (sa, sb) = (
            self.arc[k],
            if k + 1 < n {
                self.arc[k + 1]
            } else {
                self.length
            },
        );
        let lam = ((t - ta) / (tb - ta)).clamp(0.0, 1.0);
        let s = sa + (sb - sa) * lam;
        BoundaryPoint {
            z: za + (zb - za) * lam,
            s: if s >= self.length { s - self.length } else { s },
        }
    }

    /// Boundary points at `m` uniform angles `2πj/m`.
    pub fn boundary_points_uniform(&self, m: usize) -> Vec<BoundaryPoint> {
        (0..m)
            .map(|j| self.boundary_point(TAU * j as f64 / m as f64))
            .collect()
    }

    /// Writes the map (engine parameters, normalization and table) as JSON.
    pub fn save_cache(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))?;
        std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load_cache(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    /// Whether the map was fitted to the samples of `curve`.
    pub fn fits(&self, curve: &CurveSample) -> bool {
        self.points.as_slice() == curve.points()
    }
}

/// Exact interior map for circles centred at `0` and the polynomial family.
pub fn closed_form_interior_map(curve: &CurveSample) -> Result<ConformalMap> {
    let n = curve.len();
    let engine = match curve.family() {
        Some(FamilyTag::Circle { r }) => MapEngine::Circle { r: *r },
        Some(FamilyTag::Polynomial { c }) => MapEngine::Polynomial { c: *c },
        other => {
            return Err(Error::UnsupportedFamily(
                other.map_or_else(|| "untagged".to_string(), |f| f.label()),
            ))
        }
    };
    Ok(ConformalMap {
        engine,
        side: MapSide::Interior,
        shift: C64::new(0.0, 0.0),
        theta: (0..n).map(|k| TAU * k as f64 / n as f64).collect(),
        points: curve.points().to_vec(),
        arc: curve.cum_len()[..n].to_vec(),
        length: curve.length(),
    })
}

/// Exact reflected exterior map; only circles have one.
pub fn closed_form_exterior_map(curve: &CurveSample) -> Result<ConformalMap> {
    let n = curve.len();
    match curve.family() {
        Some(FamilyTag::Circle { r }) => Ok(ConformalMap {
            engine: MapEngine::Circle { r: *r },
            side: MapSide::ExteriorReflected,
            shift: C64::new(0.0, 0.0),
            theta: (0..n).map(|k| TAU * k as f64 / n as f64).collect(),
            points: curve.points().to_vec(),
            arc: curve.cum_len()[..n].to_vec(),
            length: curve.length(),
        }),
        other => Err(Error::UnsupportedFamily(
            other.map_or_else(|| "untagged".to_string(), |f| f.label()),
        )),
    }
}

/// Interior point used to normalise maps: the sample centroid when it is
/// inside, otherwise the grid point farthest from the curve.
pub fn choose_anchor(curve: &CurveSample) -> Result<C64> {
    let c = curve.centroid();
    let floor = 3.0 * curve.max_segment();
    if curve.distance_to(c) > floor && curve.contains_interior(c).unwrap_or(false) {
        return Ok(c);
    }
    let pts = curve.points();
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for z in pts {
        lo = C64::new(lo.re.min(z.re), lo.im.min(z.im));
        hi = C64::new(hi.re.max(z.re), hi.im.max(z.im));
    }
    let g = 64;
    let mut best: Option<(f64, C64)> = None;
    for i in 1..g {
        for j in 1..g {
            let w = C64::new(
                lo.re + (hi.re - lo.re) * i as f64 / g as f64,
                lo.im + (hi.im - lo.im) * j as f64 / g as f64,
            );
            let d = curve.distance_to(w);
            if d > 0.0
                && best.is_none_or(|(bd, _)| d > bd)
                && curve.contains_interior(w).unwrap_or(false)
            {
                best = Some((d, w));
            }
        }
    }
    best.map(|(_, w)| w)
        .ok_or_else(|| Error::MapConstruction("no interior point found for the anchor".into()))
}

/// Fits a zipper map to the curve samples.
///
/// The interior map has `φ(0) = anchor`; the reflected exterior map is fitted
/// to `ι(z_k - anchor)` with `φ̃(0) = 0`.
pub fn fit_numeric_map(curve: &CurveSample, side: MapSide) -> Result<ConformalMap> {
    let anchor = choose_anchor(curve)?;
    fit_numeric_map_with_anchor(curve, side, anchor)
}

pub fn fit_numeric_map_with_anchor(
    curve: &CurveSample,
    side: MapSide,
    anchor: C64,
) -> Result<ConformalMap> {
    let n = curve.len();
    if !curve.contains_interior(anchor)? {
        return Err(Error::Precondition(format!(
            "anchor {anchor} is not inside the curve"
        )));
    }
    let (zip, theta) = match side {
        MapSide::Interior => Zipper::fit(curve.points(), anchor)?,
        MapSide::ExteriorReflected => {
            let pts: Vec<C64> = curve.points().iter().map(|z| reflect(z - anchor)).collect();
            Zipper::fit(&pts, C64::new(0.0, 0.0))?
        }
    };
    Ok(ConformalMap {
        engine: MapEngine::Zipper(zip),
        side,
        shift: anchor,
        theta,
        points: curve.points().to_vec(),
        arc: curve.cum_len()[..n].to_vec(),
        length: curve.length(),
    })
}

/// Closed form when the curve's family has one, numeric otherwise.
pub fn best_map(curve: &CurveSample, side: MapSide) -> Result<ConformalMap> {
    let closed = match side {
        MapSide::Interior => closed_form_interior_map(curve),
        MapSide::ExteriorReflected => closed_form_exterior_map(curve),
    };
    match closed {
        Ok(m) => Ok(m),
        Err(Error::UnsupportedFamily(_)) => fit_numeric_map(curve, side),
        Err(e) => Err(e),
    }
}

pub fn eval_map(m: &ConformalMap, zeta: C64) -> Result<C64> {
    m.eval(zeta)
}

pub fn eval_derivative(m: &ConformalMap, zeta: C64) -> Result<C64> {
    m.eval_derivative(zeta)
}

/// `λ(φ(ζ)) = 1 / ((1 - |ζ|²)|φ'(ζ)|)`.
pub fn hyperbolic_density(m: &ConformalMap, zeta: C64) -> Result<f64> {
    let d = m.eval_derivative(zeta)?;
    Ok(1.0 / ((1.0 - zeta.norm_sqr()) * d.norm()))
}
