//! The three boundary seminorms of a function on a curve: the curve Besov
//! seminorm and the interior and exterior `p`-Dirichlet energies.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conformal::{best_map, fit_numeric_map, reflect, ConformalMap, MapSide};
use crate::curve::{BoundaryPoint, CurveSample};
use crate::error::{Error, Result};
use crate::harmonic::{
    analyze_boundary, circle_besov_seminorm, disk_dirichlet_energy, DiskQuadrature,
};

/// A scalar function of the normalised arc parameter `t = 2πs/L`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParamFn {
    Cos {
        n: u32,
    },
    Sin {
        n: u32,
    },
    /// `e^{int}`.
    Exp {
        n: i32,
    },
    /// `Σ a_k cos(kt) + b_k sin(kt)`, `k ≥ 1`.
    TrigPoly {
        cos: Vec<f64>,
        sin: Vec<f64>,
    },
}

impl ParamFn {
    pub fn eval(&self, t: f64) -> C64 {
        match self {
            ParamFn::Cos { n } => C64::new((*n as f64 * t).cos(), 0.0),
            ParamFn::Sin { n } => C64::new((*n as f64 * t).sin(), 0.0),
            ParamFn::Exp { n } => C64::from_polar(1.0, *n as f64 * t),
            ParamFn::TrigPoly { cos, sin } => {
                let mut v = 0.0;
                for (k, a) in cos.iter().enumerate() {
                    v += a * ((k + 1) as f64 * t).cos();
                }
                for (k, b) in sin.iter().enumerate() {
                    v += b * ((k + 1) as f64 * t).sin();
                }
                C64::new(v, 0.0)
            }
        }
    }
}

/// A function on the curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryFunction {
    Constant {
        value: C64,
    },
    /// `u_w(z) = 1/(z - w)`.
    Pole {
        w: C64,
    },
    /// `g(2πs/L)` along the curve's own arc length.
    Composed {
        g: ParamFn,
    },
    /// Values at the curve samples, linear in arc length between them.
    Tabulated {
        values: Vec<C64>,
    },
    RealPart {
        inner: Box<BoundaryFunction>,
    },
    Scaled {
        factor: C64,
        inner: Box<BoundaryFunction>,
    },
}

impl BoundaryFunction {
    pub fn pole(w: C64) -> Self {
        BoundaryFunction::Pole { w }
    }

    pub fn composed(g: ParamFn) -> Self {
        BoundaryFunction::Composed { g }
    }

    pub fn cos(n: u32) -> Self {
        Self::composed(ParamFn::Cos { n })
    }

    pub fn constant(value: f64) -> Self {
        BoundaryFunction::Constant {
            value: C64::new(value, 0.0),
        }
    }

    pub fn real_part(self) -> Self {
        BoundaryFunction::RealPart {
            inner: Box::new(self),
        }
    }

    pub fn scaled(self, factor: C64) -> Self {
        BoundaryFunction::Scaled {
            factor,
            inner: Box::new(self),
        }
    }

    /// Value at a boundary point of `curve`.
    pub fn eval(&self, curve: &CurveSample, p: BoundaryPoint) -> C64 {
        match self {
            BoundaryFunction::Constant { value } => *value,
            BoundaryFunction::Pole { w } => 1.0 / (p.z - w),
            BoundaryFunction::Composed { g } => g.eval(TAU * p.s / curve.length()),
            BoundaryFunction::Tabulated { values } => {
                let cum = curve.cum_len();
                let n = values.len();
                let s = p.s.rem_euclid(curve.length());
                let k = cum
                    .partition_point(|&v| v <= s)
                    .saturating_sub(1)
                    .min(n - 1);
                let lam = (s - cum[k]) / (cum[k + 1] - cum[k]);
                values[k] + (values[(k + 1) % n] - values[k]) * lam
            }
            BoundaryFunction::RealPart { inner } => C64::new(inner.eval(curve, p).re, 0.0),
            BoundaryFunction::Scaled { factor, inner } => factor * inner.eval(curve, p),
        }
    }

    /// Values at the curve samples.
    pub fn sample(&self, curve: &CurveSample) -> Vec<C64> {
        (0..curve.len())
            .map(|k| self.eval(curve, curve.boundary_point(k)))
            .collect()
    }

    /// Checks that the function can be evaluated on `curve` with the quadrature
    /// resolved: tables match the resolution and poles stay at least three
    /// segment lengths away.
    pub fn validate(&self, curve: &CurveSample) -> Result<()> {
        match self {
            BoundaryFunction::Pole { w } => {
                let dist = curve.distance_to(*w);
                let floor = 3.0 * curve.max_segment();
                if dist < floor {
                    return Err(Error::UnresolvedPole { w: *w, dist, floor });
                }
                Ok(())
            }
            BoundaryFunction::Tabulated { values } if values.len() != curve.len() => {
                Err(Error::Precondition(format!(
                    "table has {} values for {} samples",
                    values.len(),
                    curve.len()
                )))
            }
            BoundaryFunction::RealPart { inner } | BoundaryFunction::Scaled { inner, .. } => {
                inner.validate(curve)
            }
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            BoundaryFunction::Constant { value } => format!("const({value})"),
            BoundaryFunction::Pole { w } => format!("pole({:.4}{:+.4}i)", w.re, w.im),
            BoundaryFunction::Composed { g } => match g {
                ParamFn::Cos { n } => format!("cos({n}t)"),
                ParamFn::Sin { n } => format!("sin({n}t)"),
                ParamFn::Exp { n } => format!("exp({n}it)"),
                ParamFn::TrigPoly { cos, sin } => format!("trig(deg {})", cos.len().max(sin.len())),
            },
            BoundaryFunction::Tabulated { values } => format!("table({})", values.len()),
            BoundaryFunction::RealPart { inner } => format!("re[{}]", inner.label()),
            BoundaryFunction::Scaled { factor, inner } => format!("{factor}*{}", inner.label()),
        }
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p >= 2.0) || !p.is_finite() {
        Err(Error::UnsupportedExponent(p))
    } else {
        Ok(())
    }
}

/// `Σ_{j≠k} |v_j - v_k|^p / |z_j - z_k|² Δs_j Δs_k` with trapezoid node
/// weights, plus the `p = 2` diagonal limit
/// `|v_{k+1} - v_{k-1}|² / |z_{k+1} - z_{k-1}|² Δs_k²`. No prefactor.
pub fn besov_double_sum(curve: &CurveSample, values: &[C64], p: f64) -> f64 {
    let n = curve.len();
    let z = curve.points();
    let ds: Vec<f64> = (0..n).map(|k| curve.node_weight(k)).collect();
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let (zj, vj) = (z[j], values[j]);
            let mut acc = 0.0;
            for k in 0..n {
                if k == j {
                    continue;
                }
                let du = (vj - values[k]).norm();
                if du == 0.0 {
                    continue;
                }
                acc += du.powf(p) / (zj - z[k]).norm_sqr() * ds[k];
            }
            if p == 2.0 {
                let (a, b) = ((j + n - 1) % n, (j + 1) % n);
                acc += (values[b] - values[a]).norm_sqr() / (z[b] - z[a]).norm_sqr() * ds[j];
            }
            acc * ds[j]
        })
        .collect();
    rows.iter().sum()
}

/// `‖u‖_{B_p(Γ)} = [(1/4π²) ∬ |u(z) - u(ζ)|^p / |z - ζ|² |dz||dζ|]^{1/p}`.
pub fn besov_seminorm(curve: &CurveSample, u: &BoundaryFunction, p: f64) -> Result<f64> {
    check_exponent(p)?;
    u.validate(curve)?;
    let values = u.sample(curve);
    let total = besov_double_sum(curve, &values, p) / (4.0 * PI * PI);
    Ok(total.powf(1.0 / p))
}

/// Resolution knobs for the disk-side seminorms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyOptions {
    /// Uniform disk angles at which the boundary data is sampled.
    pub boundary_samples: usize,
    pub n_trunc: usize,
    pub quad: DiskQuadrature,
}

impl Default for EnergyOptions {
    fn default() -> Self {
        Self {
            boundary_samples: 1024,
            n_trunc: 256,
            quad: DiskQuadrature::default(),
        }
    }
}

fn disk_seminorm(
    curve: &CurveSample,
    map: &ConformalMap,
    u: &BoundaryFunction,
    p: f64,
    opts: EnergyOptions,
    pre: Option<C64>,
) -> Result<f64> {
    check_exponent(p)?;
    u.validate(curve)?;
    if !map.fits(curve) {
        return Err(Error::TableMismatch(
            "map was fitted to a different curve".into(),
        ));
    }
    let m = opts.boundary_samples;
    let data: Vec<C64> = (0..m)
        .map(|j| {
            let mut t = TAU * j as f64 / m as f64;
            if let Some(a) = pre {
                let zeta = C64::from_polar(1.0, t);
                t = ((zeta - a) / (1.0 - a.conj() * zeta)).arg();
            }
            u.eval(curve, map.boundary_point(t))
        })
        .collect();
    let h = analyze_boundary(&data, opts.n_trunc)?;
    Ok(disk_dirichlet_energy(&h, p, opts.quad)?.powf(1.0 / p))
}

/// `D_p(P(u∘φ))^{1/p}`: the energy of the harmonic extension of `u` into the
/// interior, computed in the disk through the boundary correspondence of `map`.
pub fn interior_seminorm(
    curve: &CurveSample,
    map: &ConformalMap,
    u: &BoundaryFunction,
    p: f64,
    opts: EnergyOptions,
) -> Result<f64> {
    if map.side() != MapSide::Interior {
        return Err(Error::Precondition(
            "interior seminorm needs an interior map".into(),
        ));
    }
    disk_seminorm(curve, map, u, p, opts, None)
}

/// Interior seminorm with the disk parametrisation precomposed by the
/// automorphism `ζ ↦ (ζ - a)/(1 - āζ)`.
pub fn interior_seminorm_reparametrized(
    curve: &CurveSample,
    map: &ConformalMap,
    u: &BoundaryFunction,
    p: f64,
    a: C64,
    opts: EnergyOptions,
) -> Result<f64> {
    if a.norm() >= 1.0 {
        return Err(Error::OutsideDisk(a));
    }
    if map.side() != MapSide::Interior {
        return Err(Error::Precondition(
            "interior seminorm needs an interior map".into(),
        ));
    }
    disk_seminorm(curve, map, u, p, opts, Some(a))
}

/// Energy of the extension of `u` into the exterior, transported through
/// `ι` and a map of the disk onto the reflected exterior.
pub fn exterior_seminorm(
    curve: &CurveSample,
    map: &ConformalMap,
    u: &BoundaryFunction,
    p: f64,
    opts: EnergyOptions,
) -> Result<f64> {
    if map.side() != MapSide::ExteriorReflected {
        return Err(Error::Precondition(
            "exterior seminorm needs a reflected exterior map".into(),
        ));
    }
    if !curve.contains_interior(map.shift())? {
        return Err(Error::Precondition(format!(
            "shifted curve does not contain 0 (shift {})",
            map.shift()
        )));
    }
    disk_seminorm(curve, map, u, p, opts, None)
}

/// Which conformal engine the seminorm triple uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineChoice {
    /// Closed form where the curve family has one, numeric otherwise.
    #[default]
    Auto,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TripleOptions {
    pub energy: EnergyOptions,
    pub engine: EngineChoice,
    pub with_exterior: bool,
}

/// Interior and exterior maps for a curve under an engine choice.
#[derive(Debug, Clone)]
pub struct MapPair {
    pub interior: ConformalMap,
    pub exterior: Option<ConformalMap>,
}

impl MapPair {
    pub fn fit(curve: &CurveSample, engine: EngineChoice, with_exterior: bool) -> Result<Self> {
        let get = |side| match engine {
            EngineChoice::Auto => best_map(curve, side),
            EngineChoice::Numeric => fit_numeric_map(curve, side),
        };
        let interior = get(MapSide::Interior)?;
        let exterior = if with_exterior {
            Some(get(MapSide::ExteriorReflected)?)
        } else {
            None
        };
        Ok(Self { interior, exterior })
    }

    pub fn engine_label(&self) -> String {
        let i = self.interior.engine().label();
        match &self.exterior {
            Some(e) if e.engine().label() != i => format!("{i}/{}", e.engine().label()),
            _ => i.to_string(),
        }
    }
}

/// Quadrature metadata carried by a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureMeta {
    pub curve_samples: usize,
    pub boundary_samples: usize,
    pub n_trunc: usize,
    pub radial_order: usize,
    pub angular_order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeminormReport {
    pub p: f64,
    pub function: String,
    pub besov: f64,
    pub interior: f64,
    pub exterior: Option<f64>,
    pub besov_over_interior: Option<f64>,
    pub exterior_over_interior: Option<f64>,
    pub quadrature: QuadratureMeta,
    pub engine: String,
}

/// `(‖u‖_{B_p(Γ)}, ‖u‖ᵢ, ‖u‖ₑ)` with ratios, using already fitted maps.
pub fn seminorm_triple_with(
    curve: &CurveSample,
    maps: &MapPair,
    u: &BoundaryFunction,
    p: f64,
    opts: EnergyOptions,
) -> Result<SeminormReport> {
    let besov = besov_seminorm(curve, u, p)?;
    let interior = interior_seminorm(curve, &maps.interior, u, p, opts)?;
    let exterior = match &maps.exterior {
        Some(m) => Some(exterior_seminorm(curve, m, u, p, opts)?),
        None => None,
    };
    let ratio = |a: f64, b: f64| if b > 0.0 { Some(a / b) } else { None };
    Ok(SeminormReport {
        p,
        function: u.label(),
        besov,
        interior,
        exterior,
        besov_over_interior: ratio(besov, interior),
        exterior_over_interior: exterior.and_then(|e| ratio(e, interior)),
        quadrature: QuadratureMeta {
            curve_samples: curve.len(),
            boundary_samples: opts.boundary_samples,
            n_trunc: opts.n_trunc,
            radial_order: opts.quad.radial,
            angular_order: opts.quad.angular,
        },
        engine: maps.engine_label(),
    })
}

pub fn seminorm_triple(
    curve: &CurveSample,
    u: &BoundaryFunction,
    p: f64,
    opts: TripleOptions,
) -> Result<SeminormReport> {
    let maps = MapPair::fit(curve, opts.engine, opts.with_exterior)?;
    seminorm_triple_with(curve, &maps, u, p, opts.energy)
}

/// Both sides of the image-curve identity for `u_w`:
/// `4π²‖u_w‖^p_{B_p(Γ)}` and `∬_{Γ'×Γ'} |η - ξ|^{p-2} |dη||dξ|` on the image
/// polyline `Γ' = {1/(z - w)}` with its own segment weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImageIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub image_length: f64,
}

impl ImageIdentity {
    pub fn rel_error(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs.abs()
    }
}

pub fn image_curve_identity(curve: &CurveSample, w: C64, p: f64) -> Result<ImageIdentity> {
    check_exponent(p)?;
    let u = BoundaryFunction::pole(w);
    u.validate(curve)?;
    let lhs = besov_double_sum(curve, &u.sample(curve), p);
    let eta: Vec<C64> = curve.points().iter().map(|z| 1.0 / (z - w)).collect();
    let n = eta.len();
    let seg: Vec<f64> = (0..n).map(|k| (eta[(k + 1) % n] - eta[k]).norm()).collect();
    let wt: Vec<f64> = (0..n)
        .map(|k| 0.5 * (seg[k] + seg[(k + n - 1) % n]))
        .collect();
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut acc = 0.0;
            if p == 2.0 {
                acc = wt.iter().sum::<f64>();
            } else {
                for k in 0..n {
                    if k != j {
                        acc += (eta[j] - eta[k]).norm().powf(p - 2.0) * wt[k];
                    }
                }
            }
            acc * wt[j]
        })
        .collect();
    Ok(ImageIdentity {
        lhs,
        rhs: rows.iter().sum(),
        image_length: seg.iter().sum(),
    })
}

/// Upper bound on the energy of `u_w` on the side where `u_w` is
/// holomorphic.
///
/// For `w` outside, `‖u_w‖ᵢ^p ≤ (4^{p-2}/p) d^{-p}` with `d = d(w, Γ)`. For
/// `w` inside, the reflected form bounds `‖u_w‖ₑ^p` by
/// `|w|^{-2p} (4^{p-2}/p) d̃^{-p}` with `w` measured from the anchor and
/// `d̃` the distance from `ι(w)` to the reflected curve.
pub fn pole_energy_upper_bound(
    curve: &CurveSample,
    w: C64,
    shift: C64,
    p: f64,
) -> Result<(MapSide, f64)> {
    let k = 4f64.powf(p - 2.0) / p;
    if curve.contains_interior(w)? {
        let v = w - shift;
        if v.norm() == 0.0 {
            return Err(Error::Precondition(
                "pole at the anchor has no reflected bound".into(),
            ));
        }
        let iw = reflect(v);
        let d = (0..curve.len())
            .map(|j| {
                let a = reflect(curve.point(j) - shift);
                let b = reflect(curve.point(j + 1) - shift);
                crate::curve::point_segment_distance(iw, a, b)
            })
            .fold(f64::INFINITY, f64::min);
        Ok((
            MapSide::ExteriorReflected,
            v.norm().powf(-2.0 * p) * k * d.powf(-p),
        ))
    } else {
        Ok((MapSide::Interior, k * curve.distance_to(w).powf(-p)))
    }
}

/// `(1/4π²) 8^{1-p} length(Γ') d^{1-p}`, valid when `d < diam(Γ)/4`.
pub fn pole_besov_lower_bound(image_length: f64, d: f64, p: f64) -> f64 {
    8f64.powf(1.0 - p) * image_length * d.powf(1.0 - p) / (4.0 * PI * PI)
}

/// `(‖u‖^p_{B_p(Γ)}, ‖u∘z‖^p_{B_p(𝕊)})` for a curve sampled uniformly in arc
/// length with total length `2π`, where `z(e^{it})` is the unit-speed
/// parametrisation through the samples.
pub fn pullback_besov_pair(
    curve: &CurveSample,
    u: &BoundaryFunction,
    p: f64,
) -> Result<(f64, f64)> {
    check_exponent(p)?;
    if (curve.length() - TAU).abs() > 1e-9 * TAU || !curve.is_uniform(1e-9) {
        return Err(Error::Precondition(
            "curve must be unit speed with length 2π".into(),
        ));
    }
    let gamma = besov_seminorm(curve, u, p)?.powf(p);
    let circle = circle_besov_seminorm(&u.sample(curve), p)?.powf(p);
    Ok((gamma, circle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{closed_form_exterior_map, closed_form_interior_map};
    use crate::curve::{make_named_curve, reparametrize_arclength, square, NamedCurve};
    use approx::assert_relative_eq;

    fn circle(n: usize) -> CurveSample {
        make_named_curve(&NamedCurve::Circle { r: 1.0 }, n).unwrap()
    }

    #[test]
    fn besov_examples() {
        let c = circle(1024);
        for p in [2.0, 3.0] {
            assert_eq!(
                besov_seminorm(&c, &BoundaryFunction::constant(3.0), p).unwrap(),
                0.0
            );
        }
        let b = besov_seminorm(&c, &BoundaryFunction::cos(1), 2.0).unwrap();
        assert_relative_eq!(b * b, 0.5, max_relative = 1e-4);
        let b = besov_seminorm(&c, &BoundaryFunction::pole(C64::new(0.0, 0.0)), 2.0).unwrap();
        assert_relative_eq!(b * b, 1.0, max_relative = 1e-5);
    }

    #[test]
    fn pole_resolution_floor() {
        let c = circle(256);
        let u = BoundaryFunction::pole(C64::new(1.01, 0.0));
        assert!(matches!(
            besov_seminorm(&c, &u, 2.0),
            Err(Error::UnresolvedPole { .. })
        ));
    }

    #[test]
    fn circle_triple_for_cosine() {
        let c = circle(1024);
        let opts = TripleOptions {
            with_exterior: true,
            ..Default::default()
        };
        let r = seminorm_triple(&c, &BoundaryFunction::cos(1), 2.0, opts).unwrap();
        let v = 0.5f64.sqrt();
        for x in [r.besov, r.interior, r.exterior.unwrap()] {
            assert!((x - v).abs() < 1e-3 * v);
        }
        assert_eq!(r.engine, "closed-form");
        let r = seminorm_triple(&c, &BoundaryFunction::constant(1.0), 2.0, opts).unwrap();
        assert_eq!((r.besov, r.interior, r.exterior), (0.0, 0.0, Some(0.0)));
        assert_eq!(r.besov_over_interior, None);
    }

    #[test]
    fn circle_interior_pole_energy() {
        // holomorphic extension 1/(z-w): D_2 = ∫ r dr / ... = 1/(2(|w|²-1)²)
        let c = circle(1024);
        let m = closed_form_interior_map(&c).unwrap();
        let w = C64::new(1.5, 0.0);
        let e = interior_seminorm(
            &c,
            &m,
            &BoundaryFunction::pole(w),
            2.0,
            EnergyOptions::default(),
        )
        .unwrap();
        assert_relative_eq!(e * e, 0.5 / (1.25f64 * 1.25), max_relative = 1e-4);
        let (side, bound) = pole_energy_upper_bound(&c, w, C64::new(0.0, 0.0), 2.0).unwrap();
        assert_eq!(side, MapSide::Interior);
        assert!(e * e <= bound);
    }

    #[test]
    fn circle_exterior_equals_interior() {
        let c = circle(1024);
        let mi = closed_form_interior_map(&c).unwrap();
        let me = closed_form_exterior_map(&c).unwrap();
        let u = BoundaryFunction::composed(ParamFn::TrigPoly {
            cos: vec![0.3, 0.0, -0.2],
            sin: vec![0.0, 0.5],
        });
        for p in [2.0, 3.0] {
            let a = interior_seminorm(&c, &mi, &u, p, EnergyOptions::default()).unwrap();
            let b = exterior_seminorm(&c, &me, &u, p, EnergyOptions::default()).unwrap();
            assert!((a - b).abs() < 1e-6 * a);
        }
    }

    #[test]
    fn homogeneity() {
        let c = make_named_curve(&NamedCurve::Polynomial { c: 0.2 }, 256).unwrap();
        let u = BoundaryFunction::pole(C64::new(2.0, 0.5));
        let f = C64::new(-1.5, 2.0);
        let a = besov_seminorm(&c, &u, 3.0).unwrap();
        let b = besov_seminorm(&c, &u.clone().scaled(f), 3.0).unwrap();
        assert_relative_eq!(b, f.norm() * a, max_relative = 1e-12);
    }

    #[test]
    fn image_identity_on_circle() {
        let c = circle(1024);
        let id = image_curve_identity(&c, C64::new(0.0, 0.0), 2.0).unwrap();
        assert_relative_eq!(id.lhs, c.length() * c.length(), max_relative = 1e-12);
        assert_relative_eq!(id.rhs, TAU * TAU, max_relative = 1e-4);
        let id = image_curve_identity(&c, C64::new(1.5, 0.0), 3.0).unwrap();
        assert!(id.rel_error() < 1e-3);
    }

    #[test]
    fn pullback_lower_bound_on_square() {
        let sq = make_named_curve(
            &NamedCurve::Polygon {
                vertices: square(1.0, C64::new(0.0, 0.0)),
            },
            512,
        )
        .unwrap();
        let r = reparametrize_arclength(&sq, Some(TAU)).unwrap();
        let k = r.chord_arc_constant().unwrap();
        for u in [
            BoundaryFunction::pole(C64::new(3.0, 1.0)).real_part(),
            BoundaryFunction::cos(2),
        ] {
            let (g, s) = pullback_besov_pair(&r, &u, 2.0).unwrap();
            assert!(g >= 4.0 / (PI * PI) * s);
            assert!(g <= k * k * s);
        }
        assert!(matches!(
            pullback_besov_pair(&sq, &BoundaryFunction::cos(1), 2.0),
            Err(Error::Precondition(_))
        ));
    }
}
