//! On the unit circle the Besov seminorm and both p = 2 Dirichlet energies of
//! a real trigonometric polynomial equal `(Σ k (a_k² + b_k²) / 2)^{1/2}`.

use chordarc_lab::curve::CurveSpec;
use chordarc_lab::lab::{
    douglas_closed_form, run_douglas, Experiment, ExperimentConfig, FunctionSpec, RowData,
};
use chordarc_lab::seminorms::{BoundaryFunction, ParamFn};

fn main() -> chordarc_lab::Result<()> {
    let mut cfg = ExperimentConfig::new(Experiment::Douglas);
    cfg.curves = vec![CurveSpec::circle(1.0, 1024)];
    cfg.functions = vec![
        FunctionSpec::Cos {
            modes: (1..=8).collect(),
        },
        FunctionSpec::TrigPoly {
            cos: vec![1.0, 0.0, -0.5],
            sin: vec![0.0, 0.25],
        },
    ];
    let report = run_douglas(&cfg)?;
    println!(
        "{:<34} {:>12} {:>12} {:>12}",
        "function", "besov", "interior", "exterior"
    );
    for row in &report.rows {
        if let RowData::Seminorm(r) = &row.data {
            println!(
                "{:<34} {:>12.8} {:>12.8} {:>12.8}",
                r.function,
                r.besov,
                r.interior,
                r.exterior.unwrap_or(f64::NAN)
            );
        }
    }
    let u = BoundaryFunction::composed(ParamFn::TrigPoly {
        cos: vec![1.0, 0.0, -0.5],
        sin: vec![0.0, 0.25],
    });
    if let Some(exact) = douglas_closed_form(&u) {
        println!("closed form for the trigonometric polynomial: {exact:.8}");
    }
    println!(
        "{} of {} checks passed",
        report.checks.iter().filter(|c| c.passed).count(),
        report.checks.len()
    );
    Ok(())
}
