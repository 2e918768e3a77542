//! Pole test functions near the boundary: the image-curve identity, the
//! energy and Besov bounds, and how the worst besov/interior ratio grows as
//! a curve family degenerates.

use chordarc_lab::curve::CurveSpec;
use chordarc_lab::lab::{
    run_necessity, Experiment, ExperimentConfig, FunctionSpec, Part, PoleSide,
};

fn main() -> chordarc_lab::Result<()> {
    let mut cfg = ExperimentConfig::new(Experiment::Necessity);
    cfg.curves = [0.0, 0.2, 0.4, 0.49]
        .iter()
        .map(|&c| CurveSpec::polynomial(c, 1024))
        .chain((1..=3).map(|l| CurveSpec::koch(l, 1024)))
        .collect();
    cfg.functions = vec![
        FunctionSpec::Pole {
            w: [2.5, 0.0],
            part: Part::Complex,
        },
        FunctionSpec::NormalPoles {
            sites: 16,
            offsets: vec![0.125, 0.03125],
            side: PoleSide::Exterior,
            parts: vec![Part::Re, Part::Im],
        },
    ];
    let report = run_necessity(&cfg)?;
    for note in &report.notes {
        println!("{note}");
    }
    let bounds = report
        .checks
        .iter()
        .filter(|c| c.name.contains("bound") || c.name.contains("identity"));
    let (n, ok) = bounds.fold((0, 0), |(n, ok), c| (n + 1, ok + c.passed as usize));
    println!("identity and bound checks: {ok} of {n} passed");
    for c in report.checks.iter().filter(|c| c.name.starts_with("trend")) {
        println!(
            "{} {}: {:.4}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.value
        );
    }
    Ok(())
}
