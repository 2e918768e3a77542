//! Conformal welding `h = φ⁻¹ ∘ ψ` and its quasisymmetry constant.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use super::{ConformalMap, MapSide};
use crate::error::{Error, Result};

/// A sense-preserving circle homeomorphism given by a table of its lift.
///
/// `x` increases strictly over one period starting in `[0, 2π)`, and `y`
/// increases strictly with `y_last < y_0 + 2π`; `h(x + 2π) = h(x) + 2π`.
#[derive(Debug, Clone, PartialEq)]
pub struct Welding {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl Welding {
    /// Validates a lifted table. Pairs are rotated so `x` starts at its
    /// smallest value mod `2π`.
    pub fn from_table(pairs: Vec<(f64, f64)>) -> Result<Self> {
        let n = pairs.len();
        if n < 2 {
            return Err(Error::DegenerateWelding("need at least two samples".into()));
        }
        let mut x: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let mut y: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let increasing =
            |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]) && v[v.len() - 1] < v[0] + TAU;
        if !increasing(&x) {
            return Err(Error::Orientation(
                "source angles are not a strictly increasing lift".into(),
            ));
        }
        if !increasing(&y) {
            if y.windows(2).any(|w| w[1] == w[0]) {
                return Err(Error::DegenerateWelding("repeated image angles".into()));
            }
            return Err(Error::Orientation(
                "image angles are not a strictly increasing lift".into(),
            ));
        }
        // rotate so x[0] is the first angle in [0, 2π)
        let start = x
            .iter()
            .enumerate()
            .min_by(|a, b| {
                a.1.rem_euclid(TAU)
                    .partial_cmp(&b.1.rem_euclid(TAU))
                    .unwrap()
            })
            .map(|(i, _)| i)
            .unwrap();
        x.rotate_left(start);
        y.rotate_left(start);
        let shift_x = x[0] - x[0].rem_euclid(TAU);
        for k in 0..n {
            if k >= n - start {
                x[k] += TAU;
                y[k] += TAU;
            }
            x[k] -= shift_x;
            y[k] -= shift_x;
        }
        Ok(Self { x, y })
    }

    /// Welding from a lift `f` sampled at `n` uniform angles.
    pub fn from_fn<F: Fn(f64) -> f64>(n: usize, f: F) -> Result<Self> {
        Self::from_table(
            (0..n)
                .map(|k| {
                    let t = TAU * k as f64 / n as f64;
                    (t, f(t))
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn table(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x.iter().copied().zip(self.y.iter().copied())
    }

    /// Lift `h(θ)`, by periodic linear interpolation.
    pub fn eval(&self, theta: f64) -> f64 {
        let n = self.x.len();
        let x0 = self.x[0];
        let wraps = ((theta - x0) / TAU).floor();
        let t = theta - wraps * TAU;
        let k = self.x.partition_point(|&v| v <= t).saturating_sub(1);
        let (xa, xb) = (self.x[k], if k + 1 < n { self.x[k + 1] } else { x0 + TAU });
        let (ya, yb) = (
            self.y[k],
            if k + 1 < n {
                self.y[k + 1]
            } else {
                self.y[0] + TAU
            },
        );
        ya + (yb - ya) * (t - xa) / (xb - xa) + wraps * TAU
    }

    /// Largest deviation of `h` from the best rotation `θ ↦ θ + c`.
    pub fn rotation_defect(&self) -> f64 {
        let d: Vec<f64> = self.x.iter().zip(&self.y).map(|(a, b)| b - a).collect();
        let lo = d.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (hi - lo)
    }

    /// `h` precomposed with rotation by `pre` and followed by rotation by `post`.
    pub fn rotated(&self, pre: f64, post: f64) -> Result<Self> {
        Self::from_table(self.table().map(|(x, y)| (x - pre, y + post)).collect())
    }
}

/// `h = φ⁻¹ ∘ ψ` with `ψ = ι ∘ φ̃ ∘ ι`, paired sample by sample: the curve
/// point `z_k` sits at angle `θ̃_k` for the exterior map and `θ_k` for the
/// interior map.
pub fn compute_welding(interior: &ConformalMap, exterior: &ConformalMap) -> Result<Welding> {
    if interior.side() != MapSide::Interior || exterior.side() != MapSide::ExteriorReflected {
        return Err(Error::TableMismatch(
            "expected an interior and a reflected exterior map".into(),
        ));
    }
    if interior.boundary_samples() != exterior.boundary_samples() {
        return Err(Error::TableMismatch(
            "maps were fitted to different curves".into(),
        ));
    }
    if interior.shift() != exterior.shift() {
        return Err(Error::TableMismatch(
            "maps use different anchor shifts".into(),
        ));
    }
    let pairs = exterior
        .boundary_angles()
        .iter()
        .copied()
        .zip(interior.boundary_angles().iter().copied())
        .collect();
    Welding::from_table(pairs)
}

/// `{π/2, π/4, …, π/2^m}`.
pub fn dyadic_alphas(m: u32) -> Vec<f64> {
    (1..=m).map(|j| PI / 2f64.powi(j as i32)).collect()
}

/// Grid estimate of `sup max(ρ, 1/ρ)` for
/// `ρ = |h(e^{i(θ+α)}) - h(e^{iθ})| / |h(e^{iθ}) - h(e^{i(θ-α)})|`
/// over `n_theta` uniform angles and the given `α`.
pub fn quasisymmetry_constant(h: &Welding, alphas: &[f64], n_theta: usize) -> Result<f64> {
    if alphas.is_empty() || alphas.iter().any(|&a| !(a > 0.0 && a <= PI / 2.0)) {
        return Err(Error::InvalidGrid("α must lie in (0, π/2]".into()));
    }
    if n_theta == 0 {
        return Err(Error::InvalidGrid("empty θ grid".into()));
    }
    let chord = |d: f64| 2.0 * (0.5 * d).sin().abs();
    let worst = (0..n_theta)
        .into_par_iter()
        .map(|k| {
            let t = TAU * k as f64 / n_theta as f64;
            let ht = h.eval(t);
            let mut worst = 1.0f64;
            for &a in alphas {
                let fwd = chord(h.eval(t + a) - ht);
                let back = chord(ht - h.eval(t - a));
                if fwd == 0.0 || back == 0.0 {
                    return f64::NAN;
                }
                let r = fwd / back;
                worst = worst.max(r.max(1.0 / r));
            }
            worst
        })
        .collect::<Vec<f64>>();
    if worst.iter().any(|v| v.is_nan()) {
        return Err(Error::DegenerateWelding(
            "adjacent arcs with zero image".into(),
        ));
    }
    Ok(worst.into_iter().fold(1.0, f64::max))
}
