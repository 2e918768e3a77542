//! Conformal welding and its quasisymmetry constant, a proxy for how far a
//! curve is from a circle. Corners make the welding a local power map, so
//! polygons give large but finite constants; scales below π/16 resolve
//! corner crowding poorly at N = 1024.

use chordarc_lab::conformal::{
    compute_welding, dyadic_alphas, fit_numeric_map, quasisymmetry_constant, MapSide,
};
use chordarc_lab::curve::{make_named_curve, NamedCurve};

fn main() -> chordarc_lab::Result<()> {
    let shapes = [
        ("circle", NamedCurve::Circle { r: 1.0 }),
        ("polynomial(0.3)", NamedCurve::Polynomial { c: 0.3 }),
        ("polynomial(0.45)", NamedCurve::Polynomial { c: 0.45 }),
        ("koch(1)", NamedCurve::Koch { level: 1 }),
        ("koch(2)", NamedCurve::Koch { level: 2 }),
    ];
    println!("{:<18} {:>14} {:>10}", "curve", "rotation gap", "QS const");
    for (name, f) in shapes {
        let c = make_named_curve(&f, 1024)?;
        let h = compute_welding(
            &fit_numeric_map(&c, MapSide::Interior)?,
            &fit_numeric_map(&c, MapSide::ExteriorReflected)?,
        )?;
        let qs = quasisymmetry_constant(&h, &dyadic_alphas(4), 512)?;
        println!("{name:<18} {:>14.3e} {qs:>10.4}", h.rotation_defect());
    }
    Ok(())
}
