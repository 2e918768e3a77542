//! Two-sided comparison of the Besov seminorm with the interior energy for
//! p = 2, 3, 4 on a circle and on a smooth non-circular curve.

use chordarc_lab::curve::CurveSpec;
use chordarc_lab::lab::{
    run_equivalence, Experiment, ExperimentConfig, FunctionSpec, Part, PoleSide, RowData,
};

fn main() -> chordarc_lab::Result<()> {
    let mut cfg = ExperimentConfig::new(Experiment::Equivalence);
    cfg.seed = 17;
    cfg.p = vec![2.0, 3.0, 4.0];
    cfg.curves = vec![
        CurveSpec::circle(1.0, 1024),
        CurveSpec::polynomial(0.3, 1024),
    ];
    cfg.functions = vec![
        FunctionSpec::Cos {
            modes: vec![1, 3, 7],
        },
        FunctionSpec::RandomTrig {
            count: 3,
            degree: 6,
        },
        FunctionSpec::NormalPoles {
            sites: 4,
            offsets: vec![0.25, 0.0625],
            side: PoleSide::Both,
            parts: vec![Part::Re],
        },
    ];
    let report = run_equivalence(&cfg)?;
    for curve in ["circle(r=1)", "polynomial(c=0.3)"] {
        for p in &cfg.p {
            let ratios: Vec<f64> = report
                .rows
                .iter()
                .filter(|r| r.curve == curve)
                .filter_map(|r| match &r.data {
                    RowData::Seminorm(s) if s.p == *p => s.besov_over_interior,
                    _ => None,
                })
                .collect();
            let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = ratios.iter().copied().fold(0.0, f64::max);
            println!(
                "{curve:<20} p={p}  besov/interior in [{lo:.4}, {hi:.4}] over {} functions",
                ratios.len()
            );
        }
    }
    for c in report.failures() {
        println!("FAIL {}", c.name);
    }
    Ok(())
}
