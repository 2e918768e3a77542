//! Fits the numeric conformal map of a polynomial-image curve and compares it
//! with the closed form `z + c z²`.

use std::f64::consts::TAU;

use chordarc_lab::conformal::{
    closed_form_interior_map, fit_numeric_map, hyperbolic_density, MapSide,
};
use chordarc_lab::curve::{make_named_curve, NamedCurve};
use num_complex::Complex64 as C64;

fn main() -> chordarc_lab::Result<()> {
    let curve = make_named_curve(&NamedCurve::Polynomial { c: 0.3 }, 1024)?;
    let exact = closed_form_interior_map(&curve)?;
    let numeric = fit_numeric_map(&curve, MapSide::Interior)?;
    println!("engine: {}", numeric.engine().label());

    let boundary = (0..2048)
        .map(|j| {
            let t = TAU * j as f64 / 2048.0;
            (exact.boundary_point(t).z - numeric.boundary_point(t).z).norm()
        })
        .fold(0.0, f64::max);
    println!("boundary correspondence: sup deviation {boundary:.3e}");

    println!(
        "{:>6} {:>14} {:>14} {:>12}",
        "|ζ|", "φ'(ζ) exact", "φ'(ζ) numeric", "λ·d"
    );
    for r in [0.0, 0.5, 0.9, 0.99] {
        let zeta = C64::new(r, 0.0);
        let a = exact.eval_derivative(zeta)?;
        let b = numeric.eval_derivative(zeta)?;
        let lam = hyperbolic_density(&exact, zeta)?;
        let d = curve.distance_to(exact.eval(zeta)?);
        println!("{r:>6.2} {:>14.8} {:>14.8} {:>12.6}", a.re, b.re, lam * d);
    }

    let koch = make_named_curve(&NamedCurve::Koch { level: 3 }, 1024)?;
    let m = fit_numeric_map(&koch, MapSide::ExteriorReflected)?;
    println!(
        "koch(3) exterior map: {} boundary angles",
        m.boundary_angles().len()
    );
    Ok(())
}
