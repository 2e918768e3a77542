//! Acceptance suite: one line per criterion, tolerances pinned below.

use std::f64::consts::{PI, TAU};
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64 as C64;
use serde::Deserialize;

use chordarc_lab::conformal::{
    closed_form_exterior_map, closed_form_interior_map, compute_welding, dyadic_alphas,
    fit_numeric_map, quasisymmetry_constant, MapSide,
};
use chordarc_lab::curve::{
    make_named_curve, reparametrize_arclength, square, CurveSample, CurveSpec, NamedCurve,
};
use chordarc_lab::harmonic::{analyze_boundary, sample_circle};
use chordarc_lab::lab::{
    self, normal_pole_sites, Experiment, ExperimentConfig, ExperimentReport, FunctionSpec, Part,
    PoleSide,
};
use chordarc_lab::regularity::{dual_regularity, lemma_sin_slack, ProbeSpec};
use chordarc_lab::seminorms::{
    besov_seminorm, image_curve_identity, interior_seminorm, interior_seminorm_reparametrized,
    pullback_besov_pair, BoundaryFunction, EnergyOptions, ParamFn,
};

const DOUGLAS_REL: f64 = 1e-3;
const DOUGLAS_SECONDS: f64 = 60.0;
const BRACKET_C0: f64 = 50.0;
const SINE_SLACK: f64 = -1e-9;
const SINE_K_INFLATION: f64 = 1e-6;
const SINE_SECONDS: f64 = 30.0;
const K_CIRCLE_TOL: f64 = 1e-3;
const K_SQUARE_TOL: f64 = 1e-3;
const DUAL_CIRCLE_REL: f64 = 1e-2;
const DUAL_ARGMAX_TOL: f64 = 1e-3;
const IDENTITY_REL: f64 = 1e-3;
const BOUND_SLACK: f64 = 0.0;
const MAP_BOUNDARY_TOL: f64 = 1e-2;
const MAP_DERIVATIVE_REL: f64 = 5e-2;
const WELDING_QS_TOL: f64 = 1e-2;
const WELDING_ROTATION_TOL: f64 = 1e-6;
const INVARIANCE_REL: f64 = 1e-10;
const REPARAM_REL: f64 = 1e-3;
const GRADIENT_REL: f64 = 1e-8;
const PULLBACK_SLACK: f64 = -1e-6;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
    /// Sub-checks that fail as documented in the regression data.
    known_failures: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
            known_failures: Vec::new(),
        }
    }
}

fn curve(f: NamedCurve, n: usize) -> CurveSample {
    make_named_curve(&f, n).unwrap()
}

fn unit_square(n: usize) -> CurveSample {
    curve(
        NamedCurve::Polygon {
            vertices: square(1.0, C64::new(0.0, 0.0)),
        },
        n,
    )
}

/// Circle, polynomial family, square, an L-shaped hexagon and Koch levels.
fn corpus() -> Vec<(String, CurveSample)> {
    let mut out = vec![(
        "circle".to_string(),
        curve(NamedCurve::Circle { r: 1.0 }, 1024),
    )];
    for c in [0.1, 0.3, 0.45, 0.49] {
        out.push((
            format!("polynomial({c})"),
            curve(NamedCurve::Polynomial { c }, 1024),
        ));
    }
    out.push(("square".into(), unit_square(1024)));
    let ell = [
        (0.0, 0.0),
        (2.0, 0.0),
        (2.0, 1.0),
        (1.0, 1.0),
        (1.0, 2.0),
        (0.0, 2.0),
    ]
    .iter()
    .map(|&(x, y)| C64::new(x, y))
    .collect();
    out.push((
        "L-hexagon".into(),
        curve(NamedCurve::Polygon { vertices: ell }, 1024),
    ));
    for level in 1..=4 {
        out.push((
            format!("koch({level})"),
            curve(NamedCurve::Koch { level }, 1024),
        ));
    }
    out
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let mut cfg = ExperimentConfig::new(Experiment::Douglas);
    cfg.curves = vec![CurveSpec::circle(1.0, 1024)];
    cfg.functions = vec![FunctionSpec::Cos {
        modes: (1..=8).collect(),
    }];
    cfg.tolerances.rel = DOUGLAS_REL;
    let report = lab::run_douglas(&cfg).unwrap();
    let secs = t0.elapsed().as_secs_f64();
    let mut worst: f64 = 0.0;
    for row in &report.rows {
        if let lab::RowData::Seminorm(r) = &row.data {
            let n: f64 = r
                .function
                .trim_start_matches("cos(")
                .trim_end_matches("t)")
                .parse()
                .unwrap();
            let exact = (n / 2.0).sqrt();
            for v in [r.besov, r.interior, r.exterior.unwrap()] {
                worst = worst.max((v - exact).abs() / exact);
            }
        }
    }
    let rows_ok = report.rows.len() == 8;
    Outcome::new(
        rows_ok && worst <= DOUGLAS_REL && report.passed() && secs < DOUGLAS_SECONDS,
        format!("worst rel. deviation {worst:.2e} (tol {DOUGLAS_REL:e}), {secs:.1} s (limit {DOUGLAS_SECONDS} s)"),
    )
}

fn test_family() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec::Cos {
            modes: vec![1, 2, 5, 9],
        },
        FunctionSpec::Sin { modes: vec![3, 7] },
        FunctionSpec::RandomTrig {
            count: 4,
            degree: 6,
        },
        FunctionSpec::NormalPoles {
            sites: 4,
            offsets: vec![0.25, 0.0625],
            side: PoleSide::Both,
            parts: vec![Part::Re, Part::Im],
        },
    ]
}

fn criterion_2() -> Outcome {
    let mut cfg = ExperimentConfig::new(Experiment::Equivalence);
    cfg.curves = vec![CurveSpec::circle(1.0, 1024)];
    cfg.p = vec![2.0, 3.0, 4.0];
    cfg.seed = 11;
    cfg.functions = test_family();
    let report = lab::run_equivalence(&cfg).unwrap();
    let mut c0: f64 = 1.0;
    for row in &report.rows {
        if let lab::RowData::Seminorm(r) = &row.data {
            let ratio = r.besov_over_interior.unwrap();
            c0 = c0.max(ratio.max(1.0 / ratio));
        }
    }
    let skipped = report
        .rows
        .iter()
        .filter(|r| matches!(r.data, lab::RowData::Skipped { .. }))
        .count();
    Outcome::new(
        c0 <= BRACKET_C0 && skipped == 0,
        format!("ratio bracket [1/{c0:.4}, {c0:.4}] over p in {{2,3,4}} (C0 limit {BRACKET_C0})"),
    )
}

fn criterion_3() -> Outcome {
    let t0 = Instant::now();
    let mut worst1 = f64::INFINITY;
    let mut worst2 = f64::INFINITY;
    for (_, c) in corpus() {
        let unit = reparametrize_arclength(&c, Some(TAU)).unwrap();
        let k = unit.chord_arc_constant().unwrap() * (1.0 + SINE_K_INFLATION);
        let (s1, s2) = lemma_sin_slack(&unit, Some(k)).unwrap();
        worst1 = worst1.min(s1);
        worst2 = worst2.min(s2.unwrap());
    }
    let secs = t0.elapsed().as_secs_f64();
    Outcome::new(
        worst1 >= SINE_SLACK && worst2 >= SINE_SLACK && secs < SINE_SECONDS,
        format!("min slacks {worst1:.3e} and {worst2:.3e} (floor {SINE_SLACK:e}), {secs:.1} s"),
    )
}

fn criterion_4() -> Outcome {
    let circle = curve(NamedCurve::Circle { r: 1.0 }, 2048);
    let k_c = circle.chord_arc_constant().unwrap();
    let k_s = unit_square(1024).chord_arc_constant().unwrap();
    let d = dual_regularity(&circle, &ProbeSpec::default()).unwrap();
    let ok = (k_c - PI / 2.0).abs() <= K_CIRCLE_TOL
        && (k_s - 2.0).abs() <= K_SQUARE_TOL
        && (d.c_hat - TAU).abs() <= DUAL_CIRCLE_REL * TAU
        && d.argmax.norm() <= DUAL_ARGMAX_TOL;
    Outcome::new(
        ok,
        format!(
            "K(circle) = {k_c:.6}, K(square) = {k_s:.6}, C(circle) = {:.6} at |w| = {:.1e}",
            d.c_hat,
            d.argmax.norm()
        ),
    )
}

fn criterion_5() -> Outcome {
    let circle = curve(NamedCurve::Circle { r: 1.0 }, 1024);
    let poly = curve(NamedCurve::Polynomial { c: 0.3 }, 1024);
    let mut probes: Vec<(&CurveSample, C64)> =
        vec![(&circle, C64::new(0.0, 0.0)), (&circle, C64::new(1.5, 0.0))];
    for side in [PoleSide::Exterior, PoleSide::Interior] {
        for w in normal_pole_sites(&poly, 2, &[0.125], side) {
            probes.push((&poly, w));
        }
    }
    let mut worst: f64 = 0.0;
    for (c, w) in &probes {
        for p in [2.0, 3.0] {
            worst = worst.max(image_curve_identity(c, *w, p).unwrap().rel_error());
        }
    }
    Outcome::new(
        worst <= IDENTITY_REL && probes.len() == 6,
        format!(
            "{} probes, worst rel. error {worst:.2e} (tol {IDENTITY_REL:e})",
            probes.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut cfg = ExperimentConfig::new(Experiment::Necessity);
    cfg.curves = vec![
        CurveSpec::circle(1.0, 1024),
        CurveSpec::polynomial(0.3, 1024),
    ];
    cfg.p = vec![2.0, 3.0];
    cfg.functions = vec![
        FunctionSpec::Pole {
            w: [1.5, 0.0],
            part: Part::Complex,
        },
        FunctionSpec::NormalPoles {
            sites: 8,
            offsets: vec![0.25, 0.125, 0.0625, 0.03125],
            side: PoleSide::Both,
            parts: vec![Part::Complex],
        },
    ];
    cfg.tolerances.bound_slack = BOUND_SLACK;
    let report = lab::run_necessity(&cfg).unwrap();
    let bounds: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.name.contains("bound"))
        .collect();
    let min = bounds.iter().map(|c| c.slack).fold(f64::INFINITY, f64::min);
    let lower = bounds
        .iter()
        .filter(|c| c.name.starts_with("besov lower"))
        .count();
    Outcome::new(
        !bounds.is_empty() && lower > 0 && bounds.iter().all(|c| c.passed),
        format!(
            "{} bound checks ({lower} lower), min slack {min:.3e}",
            bounds.len()
        ),
    )
}

#[derive(Debug, Deserialize)]
struct Regression {
    protocol: Protocol,
    polynomial: FamilyTable,
    koch: FamilyTable,
    expected_failures: ExpectedFailures,
}

#[derive(Debug, Deserialize)]
struct Protocol {
    n_samples: usize,
    sites: usize,
    offsets: Vec<f64>,
    table_rel: f64,
}

#[derive(Debug, Deserialize)]
struct FamilyTable {
    parameter: Vec<f64>,
    k_hat: Vec<f64>,
    c_hat: Vec<f64>,
    worst_ratio: Vec<f64>,
    c_hat_growth: f64,
}

#[derive(Debug, Deserialize)]
struct ExpectedFailures {
    checks: Vec<String>,
}

fn necessity_trend<'a>(reg: &'a Regression, family: &str) -> (ExperimentReport, &'a FamilyTable) {
    let (curves, table) = match family {
        "polynomial" => (
            reg.polynomial
                .parameter
                .iter()
                .map(|&c| CurveSpec::polynomial(c, reg.protocol.n_samples))
                .collect(),
            &reg.polynomial,
        ),
        _ => (
            reg.koch
                .parameter
                .iter()
                .map(|&l| CurveSpec::koch(l as u32, reg.protocol.n_samples))
                .collect(),
            &reg.koch,
        ),
    };
    let mut cfg = ExperimentConfig::new(Experiment::Necessity);
    cfg.curves = curves;
    cfg.p = vec![2.0];
    cfg.functions = vec![FunctionSpec::NormalPoles {
        sites: reg.protocol.sites,
        offsets: reg.protocol.offsets.clone(),
        side: PoleSide::Exterior,
        parts: vec![Part::Re, Part::Im],
    }];
    cfg.tolerances.c_hat_growth = Some(table.c_hat_growth);
    (lab::run_necessity(&cfg).unwrap(), table)
}

fn criterion_7() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/necessity_regression.toml");
    let reg: Regression = toml::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let mut failures = Vec::new();
    let mut drift: f64 = 0.0;
    let mut summary = Vec::new();
    for family in ["polynomial", "koch"] {
        let (report, table) = necessity_trend(&reg, family);
        let geo: Vec<(f64, f64)> = report
            .rows
            .iter()
            .filter_map(|r| match r.data {
                lab::RowData::Geometry {
                    chord_arc, dual, ..
                } => Some((chord_arc, dual.unwrap())),
                _ => None,
            })
            .collect();
        let pts: Vec<_> = report
            .series
            .iter()
            .find(|s| s.name.ends_with("ratio vs K"))
            .unwrap()
            .points
            .clone();
        assert_eq!(
            geo.len(),
            table.k_hat.len(),
            "{family}: every curve must produce a row"
        );
        for i in 0..geo.len() {
            drift = drift
                .max(((geo[i].0 - table.k_hat[i]) / table.k_hat[i]).abs())
                .max(((geo[i].1 - table.c_hat[i]) / table.c_hat[i]).abs())
                .max(((pts[i].1 - table.worst_ratio[i]) / table.worst_ratio[i]).abs());
        }
        for c in report.checks.iter().filter(|c| c.name.starts_with("trend")) {
            if !c.passed {
                failures.push(c.name.clone());
            }
        }
        let growth = geo[geo.len() - 1].1 / geo[0].1;
        summary.push(format!("{family}: C last/first {growth:.3}"));
    }
    let expected = &reg.expected_failures.checks;
    let unexpected: Vec<_> = failures
        .iter()
        .filter(|f| !expected.contains(f))
        .cloned()
        .collect();
    let vanished: Vec<_> = expected
        .iter()
        .filter(|f| !failures.contains(f))
        .cloned()
        .collect();
    let table_ok = drift <= reg.protocol.table_rel;
    let mut out = Outcome::new(
        failures.is_empty() && table_ok,
        format!(
            "{}; pinned-table drift {drift:.1e}; failing: [{}]",
            summary.join(", "),
            failures.join(", ")
        ),
    );
    if unexpected.is_empty() && vanished.is_empty() && table_ok {
        out.known_failures = failures;
    }
    out
}

fn criterion_8() -> Outcome {
    let mut worst_b: f64 = 0.0;
    let mut worst_d: f64 = 0.0;
    let shapes = [
        NamedCurve::Circle { r: 1.0 },
        NamedCurve::Polynomial { c: 0.2 },
        NamedCurve::Polynomial { c: 0.3 },
    ];
    for shape in shapes {
        let c = curve(shape, 1024);
        let exact = closed_form_interior_map(&c).unwrap();
        let numeric = fit_numeric_map(&c, MapSide::Interior).unwrap();
        for j in 0..1024 {
            let t = TAU * j as f64 / 1024.0;
            worst_b = worst_b.max((exact.boundary_point(t).z - numeric.boundary_point(t).z).norm());
        }
        for r in [0.0, 0.3, 0.6, 0.9] {
            for j in 0..16 {
                let z = C64::from_polar(r, TAU * j as f64 / 16.0);
                let a = exact.eval_derivative(z).unwrap();
                let b = numeric.eval_derivative(z).unwrap();
                worst_d = worst_d.max((a - b).norm() / a.norm());
            }
        }
    }
    let c = curve(NamedCurve::Circle { r: 1.0 }, 1024);
    let h = compute_welding(
        &fit_numeric_map(&c, MapSide::Interior).unwrap(),
        &fit_numeric_map(&c, MapSide::ExteriorReflected).unwrap(),
    )
    .unwrap();
    let qs = quasisymmetry_constant(&h, &dyadic_alphas(8), 1024).unwrap();
    let closed = compute_welding(
        &closed_form_interior_map(&c).unwrap(),
        &closed_form_exterior_map(&c).unwrap(),
    )
    .unwrap();
    Outcome::new(
        worst_b <= MAP_BOUNDARY_TOL && worst_d <= MAP_DERIVATIVE_REL && qs <= 1.0 + WELDING_QS_TOL
            && h.rotation_defect() <= WELDING_ROTATION_TOL
            && closed.rotation_defect() <= WELDING_ROTATION_TOL,
        format!(
            "boundary {worst_b:.2e} (tol {MAP_BOUNDARY_TOL:e}), derivative {worst_d:.2e} (tol {MAP_DERIVATIVE_REL:e}), circle welding C = {qs:.6}, rotation defect {:.1e}",
            h.rotation_defect()
        ),
    )
}

fn criterion_9() -> Outcome {
    let base = curve(NamedCurve::Polynomial { c: 0.3 }, 512);
    let moved = base
        .similarity(C64::from_polar(2.7, 1.1), C64::new(-3.0, 0.5))
        .unwrap();
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let u = BoundaryFunction::composed(ParamFn::TrigPoly {
        cos: vec![0.3, -1.2, 0.5],
        sin: vec![0.0, 0.7],
    });
    let mut sim: f64 = 0.0;
    for p in [2.0, 3.0] {
        sim = sim.max(rel(
            besov_seminorm(&moved, &u, p).unwrap(),
            besov_seminorm(&base, &u, p).unwrap(),
        ));
    }
    sim = sim.max(rel(
        moved.chord_arc_constant().unwrap(),
        base.chord_arc_constant().unwrap(),
    ));
    let spec = ProbeSpec::default();
    sim = sim.max(rel(
        dual_regularity(&moved, &spec).unwrap().c_hat,
        dual_regularity(&base, &spec).unwrap().c_hat,
    ));

    let map = closed_form_interior_map(&base).unwrap();
    let opts = EnergyOptions::default();
    let lam = C64::new(-1.7, 0.4);
    let mut homog: f64 = 0.0;
    for p in [2.0, 3.0] {
        let b1 = besov_seminorm(&base, &u, p).unwrap();
        let b2 = besov_seminorm(&base, &u.clone().scaled(lam), p).unwrap();
        let e1 = interior_seminorm(&base, &map, &u, p, opts).unwrap();
        let e2 = interior_seminorm(&base, &map, &u.clone().scaled(lam), p, opts).unwrap();
        homog = homog
            .max(rel(b2, lam.norm() * b1))
            .max(rel(e2, lam.norm() * e1));
    }

    let mut reparam: f64 = 0.0;
    for p in [2.0, 3.0] {
        let e = interior_seminorm(&base, &map, &u, p, opts).unwrap();
        for a in [C64::new(0.3, 0.0), C64::new(0.0, -0.5)] {
            let e2 = interior_seminorm_reparametrized(&base, &map, &u, p, a, opts).unwrap();
            reparam = reparam.max(rel(e2, e));
        }
    }

    let samples = sample_circle(256, |t| {
        C64::new((2.0 * t).cos() + 0.4 * (5.0 * t).sin(), (3.0 * t).cos())
    });
    let h = analyze_boundary(&samples, 16).unwrap();
    let mut grad: f64 = 0.0;
    let step = 1e-5;
    for z in [C64::new(0.2, -0.1), C64::new(-0.5, 0.4), C64::new(0.0, 0.7)] {
        let (uw, uwb) = h.wirtinger_gradient(z).unwrap();
        let dx = (h.eval(z + step).unwrap() - h.eval(z - step).unwrap()) / (2.0 * step);
        let dy = (h.eval(z + C64::i() * step).unwrap() - h.eval(z - C64::i() * step).unwrap())
            / (2.0 * step);
        let fd_w = (dx - C64::i() * dy) / 2.0;
        let fd_wb = (dx + C64::i() * dy) / 2.0;
        grad = grad
            .max((uw - fd_w).norm() / uw.norm())
            .max((uwb - fd_wb).norm() / uwb.norm());
    }
    Outcome::new(
        sim <= INVARIANCE_REL && homog <= INVARIANCE_REL && reparam <= REPARAM_REL && grad <= GRADIENT_REL,
        format!("similarity {sim:.1e}, homogeneity {homog:.1e}, reparametrization {reparam:.1e}, gradients {grad:.1e}"),
    )
}

fn criterion_10() -> Outcome {
    let funcs = [
        BoundaryFunction::cos(1),
        BoundaryFunction::cos(4),
        BoundaryFunction::composed(ParamFn::Sin { n: 2 }),
        BoundaryFunction::composed(ParamFn::TrigPoly {
            cos: vec![1.0, 0.0, -0.5],
            sin: vec![0.25, 0.8],
        }),
        BoundaryFunction::composed(ParamFn::Exp { n: 3 }),
    ];
    let mut worst = f64::INFINITY;
    let mut count = 0;
    for (_, c) in corpus() {
        let unit = reparametrize_arclength(&c, Some(TAU)).unwrap();
        for u in &funcs {
            for p in [2.0, 3.0] {
                let (g, s) = pullback_besov_pair(&unit, u, p).unwrap();
                worst = worst.min(g - 4.0 / (PI * PI) * s);
                count += 1;
            }
        }
    }
    Outcome::new(
        worst >= PULLBACK_SLACK,
        format!("{count} cases, min slack {worst:.3e} (floor {PULLBACK_SLACK:e})"),
    )
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let criteria: [Criterion; 10] = [
        ("Douglas formula on the circle", criterion_1),
        ("circle seminorm equivalence", criterion_2),
        ("sine comparison on the corpus", criterion_3),
        ("geometry closed forms", criterion_4),
        ("image-curve identity", criterion_5),
        ("pole energy and Besov bounds", criterion_6),
        ("necessity trend", criterion_7),
        ("numeric conformal engine", criterion_8),
        ("invariances", criterion_9),
        ("pullback lower bound", criterion_10),
    ];
    let mut hard_failures = Vec::new();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let o = f();
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status}: {name}: {} [{:.1} s]",
            i + 1,
            o.detail,
            t0.elapsed().as_secs_f64()
        );
        if !o.passed {
            failed += 1;
            if o.known_failures.is_empty() {
                hard_failures.push(i + 1);
            } else {
                println!(
                    "             known failures: {}",
                    o.known_failures.join(", ")
                );
            }
        }
    }
    let passed = criteria.len() - failed;
    println!("acceptance: {passed} of {} criteria passed", criteria.len());
    assert!(
        hard_failures.is_empty(),
        "criteria failed: {hard_failures:?}"
    );
}
