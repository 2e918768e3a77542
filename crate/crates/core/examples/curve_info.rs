//! Builds the named curve families and prints their basic geometry.

use chordarc_lab::curve::{koch_vertices, make_named_curve, square, NamedCurve};
use num_complex::Complex64 as C64;

fn main() -> chordarc_lab::Result<()> {
    let families = [
        ("circle", NamedCurve::Circle { r: 1.0 }),
        ("polynomial(0.3)", NamedCurve::Polynomial { c: 0.3 }),
        ("polynomial(0.49)", NamedCurve::Polynomial { c: 0.49 }),
        (
            "square",
            NamedCurve::Polygon {
                vertices: square(1.0, C64::new(0.0, 0.0)),
            },
        ),
        ("koch(2)", NamedCurve::Koch { level: 2 }),
    ];
    println!(
        "{:<18} {:>6} {:>10} {:>10} {:>10}",
        "curve", "N", "length", "diameter", "K"
    );
    for (name, f) in families {
        let c = make_named_curve(&f, 1024)?;
        println!(
            "{name:<18} {:>6} {:>10.6} {:>10.6} {:>10.6}",
            c.len(),
            c.length(),
            c.diameter(),
            c.chord_arc_constant()?
        );
    }
    println!("koch level 3 has {} vertices", koch_vertices(3).len());

    let c = make_named_curve(&NamedCurve::Polynomial { c: 0.3 }, 1024)?;
    for w in [C64::new(0.0, 0.0), C64::new(1.2, 0.0), C64::new(0.0, 2.0)] {
        let p = c.probe(w)?;
        println!("probe {w:.2}: {:?}, distance {:.6}", p.side, p.dist);
    }
    Ok(())
}
