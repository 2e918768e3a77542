//! Chord-arc, ball-regularity and dual-integral constants side by side.

use chordarc_lab::curve::{make_named_curve, square, NamedCurve};
use chordarc_lab::regularity::{regularity_report, spearman, BallGrid, ProbeSpec};
use num_complex::Complex64 as C64;

fn main() -> chordarc_lab::Result<()> {
    let shapes = [
        ("circle", NamedCurve::Circle { r: 1.0 }),
        ("polynomial(0.2)", NamedCurve::Polynomial { c: 0.2 }),
        ("polynomial(0.45)", NamedCurve::Polynomial { c: 0.45 }),
        (
            "square",
            NamedCurve::Polygon {
                vertices: square(1.0, C64::new(0.0, 0.0)),
            },
        ),
        ("koch(1)", NamedCurve::Koch { level: 1 }),
        ("koch(2)", NamedCurve::Koch { level: 2 }),
        ("koch(3)", NamedCurve::Koch { level: 3 }),
    ];
    let (mut ms, mut cs) = (Vec::new(), Vec::new());
    println!("{:<18} {:>9} {:>9} {:>9}", "curve", "K", "M", "C");
    for (name, f) in shapes {
        let c = make_named_curve(&f, 1024)?;
        let r = regularity_report(&c, &BallGrid::for_curve(&c, 256, 24), &ProbeSpec::default())?;
        println!(
            "{name:<18} {:>9.4} {:>9.4} {:>9.4}",
            r.chord_arc, r.ball.m_hat, r.dual.c_hat
        );
        ms.push(r.ball.m_hat);
        cs.push(r.dual.c_hat);
    }
    println!("spearman(M, C) = {:.3}", spearman(&ms, &cs));
    Ok(())
}
