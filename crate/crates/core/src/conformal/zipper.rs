//! Geodesic zipper: a conformal map from the inside of a closed polyline onto
//! the unit disk, built as a chain of elementary slit maps.
//!
//! The forward chain sends the domain to the upper half plane `H`:
//!
//! 1. `ζ = i·sqrt((z - z₁)/(z - z₀))` opens the first segment and sends the
//!    rest of the curve to an arc from `0` to `∞`.
//! 2. For each further sample with current image `a`, a real Möbius map moves
//!    the geodesic from `0` to `a` onto the segment `[0, ic]` and
//!    `f = sqrt(w² + c²)` folds it into the real line.
//! 3. The last geodesic, a semicircle from `0` to the image of `z₀`, is opened
//!    into a quadrant and squared.
//!
//! A Cayley map then sends `H` to the disk with the anchor at `0` and positive
//! derivative there. Interior copies of already zipped samples always sit on
//! the negative half line.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative height below which the next sample is treated as lying on the
/// real axis.
const MIN_REL_HEIGHT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct Slit {
    /// `Re a / |a|²`, the reciprocal of the Möbius pole.
    inv_b: f64,
    /// Height of the straightened slit.
    c: f64,
}

/// Parameters of a fitted zipper map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Zipper {
    z0: C64,
    z1: C64,
    slits: Vec<Slit>,
    /// Reciprocal of the real image of `z₀` before the final map.
    inv_end: f64,
    /// `+1` when the final squaring is `w²`, `-1` for `-w²`.
    final_sign: f64,
    /// Image of the anchor in `H`.
    anchor_image: C64,
    /// Rotation of the Cayley map.
    beta: f64,
}

/// Principal square root moved to the upper half plane: `i·sqrt(-v)`.
fn sqrt_h(v: C64) -> C64 {
    C64::i() * (-v).sqrt()
}

fn clamp_h(z: C64) -> C64 {
    C64::new(z.re, z.im.max(0.0))
}

impl Slit {
    /// `w = z/((1 - z/b)·c)`, folded by `sqrt(w² + 1)`; the slit tip lands at `i`.
    fn forward(&self, z: C64) -> C64 {
        let w = z / ((1.0 - z * self.inv_b) * self.c);
        sqrt_h(w * w + 1.0)
    }

    fn forward_with_derivative(&self, z: C64) -> (C64, C64) {
        let den = 1.0 - z * self.inv_b;
        let w = z / (den * self.c);
        let f = sqrt_h(w * w + 1.0);
        (f, w / f / (den * den * self.c))
    }

    /// Image of a real boundary point. A point at the slit base (`w = 0`)
    /// goes to the interior copy, `-1`.
    fn forward_real(&self, x: f64) -> f64 {
        if x.is_infinite() {
            if self.inv_b == 0.0 {
                return f64::INFINITY;
            }
            let w = -1.0 / (self.inv_b * self.c);
            return w.signum() * (w * w + 1.0).sqrt();
        }
        let den = 1.0 - x * self.inv_b;
        if den == 0.0 {
            return f64::INFINITY;
        }
        let w = x / (den * self.c);
        let r = (w * w + 1.0).sqrt();
        if w > 0.0 {
            r
        } else {
            -r
        }
    }

    fn inverse_with_derivative(&self, f: C64) -> (C64, C64) {
        let w = self.c * sqrt_h(f * f - 1.0);
        let den = 1.0 + w * self.inv_b;
        let z = w / den;
        (z, self.c * self.c * f / w / (den * den))
    }
}

impl Zipper {
    /// Fits the map to the closed polyline `points` (counterclockwise) so
    /// that `anchor` goes to `0`.
    ///
    /// Returns the map and the boundary angles `θ_k`, lifted so that they
    /// increase strictly from `θ_0 ∈ [0, 2π)` and span less than `2π`.
    pub fn fit(points: &[C64], anchor: C64) -> Result<(Self, Vec<f64>)> {
        let n = points.len();
        if n < 3 {
            return Err(Error::MapConstruction("need at least three samples".into()));
        }
        let z0 = points[0];
        let z1 = points[1];
        let open = |z: C64| C64::i() * ((z - z1) / (z - z0)).sqrt();
        let mut cur: Vec<C64> = points[2..].iter().map(|&z| clamp_h(open(z))).collect();
        let mut zipped: Vec<f64> = vec![0.0]; // image of z₁
        let mut end = f64::INFINITY; // image of z₀
        let m = (anchor - z1) / (anchor - z0);
        let mut a_img = open(anchor);
        let mut a_der = -(z1 - z0) / ((anchor - z0) * (anchor - z0)) / (2.0 * a_img);
        if !(a_img.im > 0.0) {
            return Err(Error::MapConstruction(format!(
                "anchor {anchor} lies on the first segment (m = {m})"
            )));
        }
        let mut slits = Vec::with_capacity(n.saturating_sub(2));
        for k in 0..cur.len() {
            let a = cur[k];
            let na = a.norm();
            if !(a.im > MIN_REL_HEIGHT * na) || !na.is_finite() {
                return Err(Error::IllConditioned {
                    index: k + 2,
                    reason: format!("image {a} of the next sample is on the real axis"),
                });
            }
            let slit = Slit {
                inv_b: a.re / (na * na),
                c: na * na / a.im,
            };
            for z in cur[k + 1..].iter_mut() {
                *z = clamp_h(slit.forward(*z));
            }
            for x in zipped.iter_mut() {
                *x = slit.forward_real(*x);
            }
            zipped.push(0.0);
            end = slit.forward_real(end);
            let (f, d) = slit.forward_with_derivative(a_img);
            a_img = f;
            a_der *= d;
            slits.push(slit);
        }
        let inv_end = if end.is_infinite() { 0.0 } else { 1.0 / end };
        if !inv_end.is_finite() {
            return Err(Error::MapConstruction(
                "first sample collapsed onto the last".into(),
            ));
        }
        // open the final semicircle into a quadrant
        let den = 1.0 - a_img * inv_end;
        let w = a_img / den;
        let final_sign = if w.re >= 0.0 { 1.0 } else { -1.0 };
        let anchor_image = final_sign * w * w;
        a_der *= 2.0 * final_sign * w / (den * den);
        if !(anchor_image.im > 0.0) {
            return Err(Error::MapConstruction(format!(
                "anchor image {anchor_image} left the upper half plane"
            )));
        }
        // Cayley map with F'(anchor) > 0
        let beta = -(a_der / (2.0 * C64::i() * anchor_image.im)).arg();
        let map = Zipper {
            z0,
            z1,
            slits,
            inv_end,
            final_sign,
            anchor_image,
            beta,
        };
        let mut reals = Vec::with_capacity(n);
        reals.push(f64::INFINITY);
        reals.extend(zipped.iter().map(|&x| {
            let den = 1.0 - x * inv_end;
            if den == 0.0 {
                f64::INFINITY
            } else {
                let w = x / den;
                final_sign * w * w
            }
        }));
        let mut theta = Vec::with_capacity(n);
        for (k, &x) in reals.iter().enumerate() {
            let t = map.boundary_angle(x);
            let lifted = if k == 0 {
                t.rem_euclid(TAU)
            } else {
                let prev: f64 = theta[k - 1];
                prev + (t - prev).rem_euclid(TAU)
            };
            theta.push(lifted);
        }
        if theta[n - 1] - theta[0] >= TAU || theta.windows(2).any(|w| !(w[1] > w[0])) {
            let bad = theta
                .windows(2)
                .position(|w| !(w[1] > w[0]))
                .map_or(n - 1, |i| i + 1);
            return Err(Error::MapConstruction(format!(
                "boundary correspondence is not monotone at sample {bad}; samples are not a Jordan curve at this resolution"
            )));
        }
        Ok((map, theta))
    }

    /// `arg T(x)` for a real point `x` (or `∞`).
    fn boundary_angle(&self, x: f64) -> f64 {
        let a = self.anchor_image;
        if x.is_infinite() {
            return self.beta;
        }
        let t = (C64::new(x, 0.0) - a) / (C64::new(x, 0.0) - a.conj());
        self.beta + t.arg()
    }

    /// Forward map `F: Ω → 𝔻` and its derivative at a point of the domain.
    pub fn forward(&self, z: C64) -> (C64, C64) {
        let (z0, z1) = (self.z0, self.z1);
        let mut f = C64::i() * ((z - z1) / (z - z0)).sqrt();
        let mut d = -(z1 - z0) / ((z - z0) * (z - z0)) / (2.0 * f);
        for s in &self.slits {
            let (g, dg) = s.forward_with_derivative(f);
            f = g;
            d *= dg;
        }
        let den = 1.0 - f * self.inv_end;
        let w = f / den;
        d *= 2.0 * self.final_sign * w / (den * den);
        let h = self.final_sign * w * w;
        let a = self.anchor_image;
        let rot = C64::from_polar(1.0, self.beta);
        let t = rot * (h - a) / (h - a.conj());
        d *= rot * (a - a.conj()) / ((h - a.conj()) * (h - a.conj()));
        (t, d)
    }

    /// Inverse map `φ: 𝔻 → Ω` and `φ'` at `ζ`, `|ζ| < 1`.
    pub fn inverse(&self, zeta: C64) -> (C64, C64) {
        let a = self.anchor_image;
        let u = zeta * C64::from_polar(1.0, -self.beta);
        let mut z = (a - u * a.conj()) / (1.0 - u);
        let mut d = C64::from_polar(1.0, -self.beta) * (a - a.conj()) / ((1.0 - u) * (1.0 - u));
        // undo the squaring
        let w = if self.final_sign > 0.0 {
            z.sqrt()
        } else {
            -(-z).sqrt()
        };
        d /= 2.0 * self.final_sign * w;
        let den = 1.0 + w * self.inv_end;
        z = w / den;
        d /= den * den;
        for s in self.slits.iter().rev() {
            let (g, dg) = s.inverse_with_derivative(z);
            z = g;
            d *= dg;
        }
        // undo the opening map: m = -ζ², z = (m z₀ - z₁)/(m - 1)
        let m = -z * z;
        let dm = -2.0 * z;
        let out = (m * self.z0 - self.z1) / (m - 1.0);
        d *= dm * (self.z1 - self.z0) / ((m - 1.0) * (m - 1.0));
        (out, d)
    }

    pub fn n_slits(&self) -> usize {
        self.slits.len()
    }
}
