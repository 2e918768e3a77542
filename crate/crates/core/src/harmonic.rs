//! Harmonic extension to the unit disk and the disk/circle energies.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::RadialRule;

/// Truncated Fourier series of boundary data, extended harmonically.
///
/// `U(re^{iθ}) = Σ_{n≥0} a_n rⁿ e^{inθ} + Σ_{n<0} a_n r^{|n|} e^{inθ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskHarmonic {
    coeffs: Vec<C64>,
    n_trunc: usize,
}

/// Quadrature orders for the disk energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskQuadrature {
    pub radial: usize,
    pub angular: usize,
}

impl Default for DiskQuadrature {
    fn default() -> Self {
        Self {
            radial: 64,
            angular: 512,
        }
    }
}

impl DiskQuadrature {
    pub fn doubled(self) -> Self {
        Self {
            radial: 2 * self.radial,
            angular: 2 * self.angular,
        }
    }
}

/// Discrete Fourier coefficients `a_n`, `|n| ≤ n_trunc`, of samples taken at
/// the uniform angles `θ_k = 2πk/N`.
pub fn analyze_boundary(samples: &[C64], n_trunc: usize) -> Result<DiskHarmonic> {
    let n = samples.len();
    if n < 2 * n_trunc + 1 {
        return Err(Error::UnderSampled {
            needed: 2 * n_trunc + 1,
            order: n_trunc,
            got: n,
        });
    }
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    let coeffs = (0..=2 * n_trunc)
        .map(|i| {
            let m = i as isize - n_trunc as isize;
            buf[m.rem_euclid(n as isize) as usize] * scale
        })
        .collect();
    Ok(DiskHarmonic { coeffs, n_trunc })
}

impl DiskHarmonic {
    /// Builds an extension directly from coefficients `a_{-n_trunc} ..= a_{n_trunc}`.
    pub fn from_coeffs(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len().is_multiple_of(2) {
            return Err(Error::Precondition(
                "coefficient list must have odd length".into(),
            ));
        }
        let n_trunc = coeffs.len() / 2;
        Ok(Self { coeffs, n_trunc })
    }

    pub fn n_trunc(&self) -> usize {
        self.n_trunc
    }

    /// Coefficient `a_n`; zero outside the truncation band.
    pub fn coeff(&self, n: isize) -> C64 {
        if n.unsigned_abs() > self.n_trunc {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + self.n_trunc as isize) as usize]
        }
    }

    fn check(z: C64) -> Result<()> {
        if z.norm() >= 1.0 || !z.re.is_finite() || !z.im.is_finite() {
            Err(Error::OutsideDisk(z))
        } else {
            Ok(())
        }
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        Self::check(z)?;
        let zc = z.conj();
        let mut pos = C64::new(0.0, 0.0);
        let mut neg = C64::new(0.0, 0.0);
        // Horner in z and z̄
        for n in (1..=self.n_trunc as isize).rev() {
            pos = pos * z + self.coeff(n);
            neg = neg * zc + self.coeff(-n);
        }
        Ok(self.coeff(0) + pos * z + neg * zc)
    }

    /// `(U_w, U_w̄)` by term-wise differentiation.
    pub fn wirtinger_gradient(&self, z: C64) -> Result<(C64, C64)> {
        Self::check(z)?;
        let zc = z.conj();
        let mut dw = C64::new(0.0, 0.0);
        let mut dwbar = C64::new(0.0, 0.0);
        for n in (1..=self.n_trunc as isize).rev() {
            dw = dw * z + self.coeff(n) * n as f64;
            dwbar = dwbar * zc + self.coeff(-n) * n as f64;
        }
        Ok((dw, dwbar))
    }
}

pub fn eval_harmonic(u: &DiskHarmonic, z: C64) -> Result<C64> {
    u.eval(z)
}

pub fn wirtinger_gradient(u: &DiskHarmonic, z: C64) -> Result<(C64, C64)> {
    u.wirtinger_gradient(z)
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p >= 2.0) || !p.is_finite() {
        Err(Error::UnsupportedExponent(p))
    } else {
        Ok(())
    }
}

/// `(1/2π) ∬_𝔻 (|U_w| + |U_w̄|)^p (1 - |z|²)^{p-2} dA`.
///
/// Radial nodes come from a graded composite Gauss-Legendre rule; each ring
/// is summed by the trapezoid rule, with the ring values of both gradients
/// produced by one inverse FFT each.
pub fn disk_dirichlet_energy(u: &DiskHarmonic, p: f64, quad: DiskQuadrature) -> Result<f64> {
    check_exponent(p)?;
    if quad.radial == 0 || quad.angular == 0 {
        return Err(Error::Precondition(
            "quadrature orders must be positive".into(),
        ));
    }
    let rule = RadialRule::graded(quad.radial);
    let m = quad.angular;
    let fft: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_inverse(m);
    let nt = u.n_trunc;
    let ring_sums: Vec<f64> = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(&r, &wt)| {
            let mut a = vec![C64::new(0.0, 0.0); m];
            let mut b = vec![C64::new(0.0, 0.0); m];
            let mut rp = 1.0;
            for n in 1..=nt {
                // U_w carries frequency n-1, U_w̄ carries -(n-1)
                let k = (n - 1) % m;
                a[k] += u.coeff(n as isize) * (n as f64 * rp);
                b[(m - k) % m] += u.coeff(-(n as isize)) * (n as f64 * rp);
                rp *= r;
                if rp == 0.0 {
                    break;
                }
            }
            fft.process(&mut a);
            fft.process(&mut b);
            let mean = a
                .iter()
                .zip(&b)
                .map(|(x, y)| (x.norm() + y.norm()).powf(p))
                .sum::<f64>()
                / m as f64;
            wt * r * (1.0 - r * r).powf(p - 2.0) * mean
        })
        .collect();
    Ok(ring_sums.iter().sum())
}

/// Energy at `quad` and at doubled orders, with the relative change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergedEnergy {
    pub value: f64,
    pub refined: f64,
    pub rel_change: f64,
}

pub fn disk_dirichlet_energy_checked(
    u: &DiskHarmonic,
    p: f64,
    quad: DiskQuadrature,
) -> Result<ConvergedEnergy> {
    let value = disk_dirichlet_energy(u, p, quad)?;
    let refined = disk_dirichlet_energy(u, p, quad.doubled())?;
    let rel_change = if refined == 0.0 {
        value.abs()
    } else {
        (value - refined).abs() / refined.abs()
    };
    Ok(ConvergedEnergy {
        value,
        refined,
        rel_change,
    })
}

/// `[(1/4π²) ∬ |u(e^{it}) - u(e^{is})|^p / |e^{it} - e^{is}|² dt ds]^{1/p}`
/// from samples at `N` uniform angles.
///
/// The double trapezoid sum skips the diagonal for `p > 2`, where the
/// integrand vanishes; at `p = 2` the diagonal gets the limit `|g'|²` from a
/// centred difference.
pub fn circle_besov_seminorm(samples: &[C64], p: f64) -> Result<f64> {
    check_exponent(p)?;
    let n = samples.len();
    if n < crate::curve::MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: crate::curve::MIN_SAMPLES,
            got: n,
        });
    }
    let h = TAU / n as f64;
    let inv_chord2: Vec<f64> = (0..n)
        .map(|d| {
            let s = (PI * d as f64 / n as f64).sin();
            if d == 0 {
                0.0
            } else {
                1.0 / (4.0 * s * s)
            }
        })
        .collect();
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let uj = samples[j];
            let mut acc = 0.0;
            for (k, uk) in samples.iter().enumerate() {
                if k == j {
                    continue;
                }
                let d = k.abs_diff(j);
                acc += (uj - uk).norm().powf(p) * inv_chord2[d];
            }
            if p == 2.0 {
                let g = (samples[(j + 1) % n] - samples[(j + n - 1) % n]) / (2.0 * h);
                acc += g.norm_sqr();
            }
            acc
        })
        .collect();
    let total = rows.iter().sum::<f64>() * h * h / (4.0 * PI * PI);
    Ok(total.max(0.0).powf(1.0 / p))
}

/// Samples of `f` at `N` uniform angles.
pub fn sample_circle<F: Fn(f64) -> C64>(n: usize, f: F) -> Vec<C64> {
    (0..n).map(|k| f(TAU * k as f64 / n as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn coefficients_of_simple_data() {
        let u = analyze_boundary(&sample_circle(64, |t| C64::from_polar(1.0, t)), 16).unwrap();
        assert!((u.coeff(1) - 1.0).norm() < 1e-14);
        for n in -16..=16isize {
            if n != 1 {
                assert!(u.coeff(n).norm() < 1e-12);
            }
        }
        let u = analyze_boundary(&sample_circle(64, |t| re((3.0 * t).cos())), 16).unwrap();
        assert!((u.coeff(3) - 0.5).norm() < 1e-14);
        assert!((u.coeff(-3) - 0.5).norm() < 1e-14);
        let u = analyze_boundary(&sample_circle(64, |_| re(1.0)), 16).unwrap();
        assert!((u.coeff(0) - 1.0).norm() < 1e-14);
    }

    #[test]
    fn rejects_undersampling() {
        assert!(matches!(
            analyze_boundary(&sample_circle(32, |_| re(1.0)), 16),
            Err(Error::UnderSampled { needed: 33, .. })
        ));
    }

    #[test]
    fn boundary_recovery() {
        let g = |t: f64| re((2.0 * t).sin() + 0.3 * (5.0 * t).cos());
        let u = analyze_boundary(&sample_circle(64, g), 16).unwrap();
        let r = 1.0 - 1e-12;
        for t in [0.1, 1.7, 4.0] {
            assert!((u.eval(C64::from_polar(r, t)).unwrap() - g(t)).norm() < 1e-9);
        }
    }

    #[test]
    fn gradient_examples() {
        let u = analyze_boundary(&sample_circle(64, |t| C64::from_polar(1.0, t)), 16).unwrap();
        let z = C64::new(0.3, -0.4);
        assert!((u.eval(z).unwrap() - z).norm() < 1e-14);
        let (a, b) = u.wirtinger_gradient(z).unwrap();
        assert!((a - 1.0).norm() < 1e-14 && b.norm() < 1e-14);
        let u = analyze_boundary(&sample_circle(64, |t| re(t.cos())), 16).unwrap();
        let (a, b) = u.wirtinger_gradient(C64::new(-0.5, 0.2)).unwrap();
        assert!((a - 0.5).norm() < 1e-14 && (b - 0.5).norm() < 1e-14);
        assert!(matches!(
            u.eval(C64::new(1.0, 0.0)),
            Err(Error::OutsideDisk(_))
        ));
    }

    #[test]
    fn gradient_against_finite_differences() {
        let g = |t: f64| {
            C64::new(
                (3.0 * t).cos() - 0.2 * t.sin(),
                (2.0 * t).sin() + 0.1 * (7.0 * t).cos(),
            )
        };
        let u = analyze_boundary(&sample_circle(64, g), 16).unwrap();
        let z = C64::new(0.3, 0.2);
        let h = 1e-5;
        let ux = (u.eval(z + h).unwrap() - u.eval(z - h).unwrap()) / (2.0 * h);
        let uy = (u.eval(z + C64::new(0.0, h)).unwrap() - u.eval(z - C64::new(0.0, h)).unwrap())
            / (2.0 * h);
        let fd_w = (ux - C64::i() * uy) / 2.0;
        let fd_wbar = (ux + C64::i() * uy) / 2.0;
        let (a, b) = u.wirtinger_gradient(z).unwrap();
        assert!((a - fd_w).norm() <= 1e-8 * a.norm());
        assert!((b - fd_wbar).norm() <= 1e-8 * b.norm());
    }

    #[test]
    fn energy_of_cosines() {
        let quad = DiskQuadrature::default();
        for n in 1..=8usize {
            let u =
                analyze_boundary(&sample_circle(1024, |t| re((n as f64 * t).cos())), 256).unwrap();
            let e = disk_dirichlet_energy_checked(&u, 2.0, quad).unwrap();
            assert_relative_eq!(e.value, n as f64 / 2.0, max_relative = 1e-10);
            assert!(e.rel_change < 1e-4);
        }
        let u = analyze_boundary(&sample_circle(64, |_| re(2.5)), 16).unwrap();
        for p in [2.0, 3.0, 4.5] {
            assert_eq!(disk_dirichlet_energy(&u, p, quad).unwrap(), 0.0);
        }
        assert!(matches!(
            disk_dirichlet_energy(&u, 1.5, quad),
            Err(Error::UnsupportedExponent(_))
        ));
    }

    #[test]
    fn energy_of_cos_theta_at_higher_p() {
        // |U_w| + |U_w̄| ≡ 1, so the energy is ∫ (1 - r²)^{p-2} r dr = 1/(2(p-1))
        let u = analyze_boundary(&sample_circle(64, |t| re(t.cos())), 16).unwrap();
        for p in [2.0, 3.0, 4.0] {
            let e = disk_dirichlet_energy(&u, p, DiskQuadrature::default()).unwrap();
            assert_relative_eq!(e, 1.0 / (2.0 * (p - 1.0)), max_relative = 1e-10);
        }
        // square-root endpoint behaviour, resolved by the graded panels
        let e = disk_dirichlet_energy(&u, 2.5, DiskQuadrature::default()).unwrap();
        assert_relative_eq!(e, 1.0 / 3.0, max_relative = 1e-5);
    }

    #[test]
    fn complex_exponential_energy_is_half_its_besov_square() {
        for n in [1usize, 3] {
            let data = sample_circle(512, |t| C64::from_polar(1.0, n as f64 * t));
            let u = analyze_boundary(&data, 128).unwrap();
            let e = disk_dirichlet_energy(&u, 2.0, DiskQuadrature::default()).unwrap();
            assert_relative_eq!(e, n as f64 / 2.0, max_relative = 1e-10);
            let b = circle_besov_seminorm(&data, 2.0).unwrap();
            assert_relative_eq!(b * b, n as f64, max_relative = 1e-4);
        }
    }

    #[test]
    fn besov_examples() {
        for n in 1..=8usize {
            let data = sample_circle(1024, |t| re((n as f64 * t).cos()));
            let b = circle_besov_seminorm(&data, 2.0).unwrap();
            assert_relative_eq!(b * b, n as f64 / 2.0, max_relative = 1e-4);
        }
        let data = sample_circle(256, |t| C64::from_polar(1.0, t));
        let b = circle_besov_seminorm(&data, 2.0).unwrap();
        assert_relative_eq!(b * b, 1.0, max_relative = 1e-4);
        let data = sample_circle(64, |_| re(-1.0));
        for p in [2.0, 3.0] {
            assert_eq!(circle_besov_seminorm(&data, p).unwrap(), 0.0);
        }
        assert!(matches!(
            circle_besov_seminorm(&data[..8], 2.0),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn besov_rotation_invariance() {
        let g = |t: f64| re((2.0 * t).cos() + 0.5 * (3.0 * t).sin());
        for p in [2.0, 3.0] {
            let a = circle_besov_seminorm(&sample_circle(256, g), p).unwrap();
            let shift = TAU * 37.0 / 256.0;
            let b = circle_besov_seminorm(&sample_circle(256, |t| g(t + shift)), p).unwrap();
            assert!((a - b).abs() <= 1e-10 * a);
        }
        let a = circle_besov_seminorm(&sample_circle(256, g), 2.0).unwrap();
        let b = circle_besov_seminorm(&sample_circle(256, |t| g(t + 0.123)), 2.0).unwrap();
        assert!((a - b).abs() <= 1e-10 * a);
    }
}
