//! The Besov seminorm on a curve next to the interior and exterior
//! p-Dirichlet energies of the harmonic extensions.

use chordarc_lab::curve::{make_named_curve, square, NamedCurve};
use chordarc_lab::seminorms::{
    image_curve_identity, seminorm_triple, BoundaryFunction, EnergyOptions, EngineChoice, ParamFn,
    TripleOptions,
};
use num_complex::Complex64 as C64;

fn main() -> chordarc_lab::Result<()> {
    let curves = [
        (
            "circle",
            make_named_curve(&NamedCurve::Circle { r: 1.0 }, 1024)?,
        ),
        (
            "polynomial(0.3)",
            make_named_curve(&NamedCurve::Polynomial { c: 0.3 }, 1024)?,
        ),
        (
            "square",
            make_named_curve(
                &NamedCurve::Polygon {
                    vertices: square(2.0, C64::new(0.0, 0.0)),
                },
                1024,
            )?,
        ),
    ];
    let functions = [
        BoundaryFunction::cos(2),
        BoundaryFunction::composed(ParamFn::TrigPoly {
            cos: vec![1.0, 0.0, -0.5],
            sin: vec![0.3],
        }),
        BoundaryFunction::pole(C64::new(2.0, 0.5)).real_part(),
    ];
    let opts = TripleOptions {
        energy: EnergyOptions::default(),
        engine: EngineChoice::Auto,
        with_exterior: true,
    };
    for (name, c) in &curves {
        for u in &functions {
            for p in [2.0, 3.0] {
                let r = seminorm_triple(c, u, p, opts)?;
                println!(
                    "{name:<16} {:<28} p={p}  B={:.6}  i={:.6}  e={:.6}  [{}]",
                    r.function,
                    r.besov,
                    r.interior,
                    r.exterior.unwrap_or(f64::NAN),
                    r.engine
                );
            }
        }
    }
    let id = image_curve_identity(&curves[1].1, C64::new(1.6, 0.0), 3.0)?;
    println!(
        "image-curve identity at w = 1.6, p = 3: {:.8} vs {:.8}",
        id.lhs, id.rhs
    );
    Ok(())
}
