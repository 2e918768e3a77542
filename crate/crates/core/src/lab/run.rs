use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::time::Instant;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::config::{Experiment, ExperimentConfig};
use super::report::{
    rel_dev, Check, ExperimentReport, NecessityRow, Provenance, Row, RowData, Series,
};
use crate::conformal::{closed_form_interior_map, fit_numeric_map, MapSide};
use crate::curve::{
    make_named_curve, reparametrize_arclength, square, CurveSample, CurveSpec, NamedCurve, Side,
};
use crate::error::{Error, Result};
use crate::regularity::{dual_regularity, regularity_report, spearman, ProbeSpec};
use crate::seminorms::{
    besov_seminorm, exterior_seminorm, image_curve_identity, interior_seminorm,
    pole_besov_lower_bound, pole_energy_upper_bound, pullback_besov_pair, seminorm_triple_with,
    BoundaryFunction, EnergyOptions, MapPair, ParamFn,
};

/// Runs the experiment named in the config.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    match cfg.experiment {
        Experiment::Douglas => run_douglas(cfg),
        Experiment::Equivalence => run_equivalence(cfg),
        Experiment::Necessity => run_necessity(cfg),
        Experiment::RegularitySweep => run_regularity_sweep(cfg),
        Experiment::Selftest => selftest(cfg.seed),
    }
}

struct Built {
    label: String,
    spec: CurveSpec,
    curve: Result<CurveSample>,
}

fn build_curves(cfg: &ExperimentConfig) -> Result<Vec<Built>> {
    if cfg.curves.is_empty() {
        return Err(Error::Config(format!(
            "the {} experiment needs at least one curve",
            cfg.experiment
        )));
    }
    Ok((0..cfg.curves.len())
        .map(|i| {
            let spec = cfg.curve_spec(i);
            Built {
                label: spec.label(),
                curve: spec.build(),
                spec,
            }
        })
        .collect())
}

fn skipped(curve: &str, what: impl Into<String>, e: &Error) -> Row {
    Row {
        curve: curve.to_string(),
        data: RowData::Skipped {
            what: what.into(),
            reason: e.to_string(),
        },
    }
}

fn finish(
    cfg: &ExperimentConfig,
    rows: Vec<Row>,
    checks: Vec<Check>,
    series: Vec<Series>,
    notes: Vec<String>,
    t0: Instant,
) -> Result<ExperimentReport> {
    let engines: BTreeSet<String> = rows
        .iter()
        .filter_map(|r| match &r.data {
            RowData::Seminorm(s) => Some(s.engine.clone()),
            _ => None,
        })
        .collect();
    Ok(ExperimentReport {
        experiment: cfg.experiment,
        rows,
        checks,
        series,
        notes,
        provenance: Provenance {
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            engines: engines.into_iter().collect(),
            config: cfg.to_toml_string()?,
            workers: rayon::current_num_threads(),
            wall_time_s: t0.elapsed().as_secs_f64(),
        },
    })
}

/// Expands every function spec against every curve, in config order.
fn expand_functions(cfg: &ExperimentConfig, curves: &[Built]) -> Vec<Vec<BoundaryFunction>> {
    let mut rng = cfg.rng();
    curves
        .iter()
        .map(|b| match &b.curve {
            Ok(c) => cfg
                .functions
                .iter()
                .flat_map(|f| f.expand(c, &mut rng))
                .collect(),
            Err(_) => Vec::new(),
        })
        .collect()
}

/// `(Σ k(a_k² + b_k²)/2)^{1/2}`, the seminorm of a real trigonometric
/// polynomial in the arc parameter of a circle.
pub fn douglas_closed_form(u: &BoundaryFunction) -> Option<f64> {
    match u {
        BoundaryFunction::Constant { .. } => Some(0.0),
        BoundaryFunction::Composed { g } => match g {
            ParamFn::Cos { n } | ParamFn::Sin { n } => Some((*n as f64 / 2.0).sqrt()),
            ParamFn::TrigPoly { cos, sin } => {
                let e: f64 = cos
                    .iter()
                    .enumerate()
                    .chain(sin.iter().enumerate())
                    .map(|(k, a)| (k + 1) as f64 * a * a / 2.0)
                    .sum();
                Some(e.sqrt())
            }
            ParamFn::Exp { .. } => None,
        },
        _ => None,
    }
}

fn mode_of(u: &BoundaryFunction) -> Option<f64> {
    match u {
        BoundaryFunction::Composed {
            g: ParamFn::Cos { n } | ParamFn::Sin { n },
        } => Some(*n as f64),
        _ => None,
    }
}

/// Besov, interior and exterior seminorms of real trigonometric
/// polynomials on circles against the closed form.
pub fn run_douglas(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let t0 = Instant::now();
    cfg.validate()?;
    let curves = build_curves(cfg)?;
    let funcs = expand_functions(cfg, &curves);
    let opts = cfg.knobs.energy();
    let tol = cfg.tolerances;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut series = Vec::new();
    for (b, fs) in curves.iter().zip(&funcs) {
        let curve = match &b.curve {
            Ok(c) => c,
            Err(e) => {
                rows.push(skipped(&b.label, "curve", e));
                continue;
            }
        };
        let maps = match MapPair::fit(curve, cfg.knobs.engine, true) {
            Ok(m) => m,
            Err(e) => {
                rows.push(skipped(&b.label, "maps", &e));
                continue;
            }
        };
        let results: Vec<_> = fs
            .par_iter()
            .map(|u| (u, seminorm_triple_with(curve, &maps, u, 2.0, opts)))
            .collect();
        let mut pts = Vec::new();
        for (u, r) in results {
            let r = match r {
                Ok(r) => r,
                Err(e) => {
                    rows.push(skipped(&b.label, u.label(), &e));
                    continue;
                }
            };
            let exact =
                douglas_closed_form(u).expect("validated as a real trigonometric polynomial");
            let ext = r.exterior.unwrap_or(f64::NAN);
            for (name, v) in [
                ("besov", r.besov),
                ("interior", r.interior),
                ("exterior", ext),
            ] {
                checks.push(Check::at_most(
                    format!("douglas {} {} {name}", b.label, r.function),
                    format!("|{name} - {exact:.6}| / {exact:.6} <= rel"),
                    rel_dev(v, exact),
                    tol.rel,
                ));
            }
            let vals = [r.besov, r.interior, ext];
            let mut pair: f64 = 0.0;
            for i in 0..3 {
                for j in i + 1..3 {
                    pair = pair.max(rel_dev(vals[i], vals[j]));
                }
            }
            checks.push(Check::at_most(
                format!("douglas {} {} pairwise", b.label, r.function),
                "max pairwise relative deviation of the three seminorms <= rel",
                pair,
                tol.rel,
            ));
            if let Some(n) = mode_of(u) {
                pts.push((n, r.interior));
            }
            rows.push(Row {
                curve: b.label.clone(),
                data: RowData::Seminorm(r),
            });
        }
        if !pts.is_empty() {
            series.push(Series {
                name: format!("douglas {}", b.label),
                x_label: "mode n".into(),
                y_label: "interior seminorm".into(),
                points: pts,
            });
        }
    }
    finish(cfg, rows, checks, series, Vec::new(), t0)
}

/// Worst ratios of the three seminorms over the test set on chord-arc
/// curves, next to `K̂`, plus the pullback sandwich on the curve rescaled to
/// length `2π`.
pub fn run_equivalence(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let t0 = Instant::now();
    cfg.validate()?;
    let curves = build_curves(cfg)?;
    let funcs = expand_functions(cfg, &curves);
    let opts = cfg.knobs.energy();
    let tol = cfg.tolerances;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut by_k = Vec::new();
    for (b, fs) in curves.iter().zip(&funcs) {
        let curve = match &b.curve {
            Ok(c) => c,
            Err(e) => {
                rows.push(skipped(&b.label, "curve", e));
                continue;
            }
        };
        let k_hat = match curve.chord_arc_constant() {
            Ok(k) => k,
            Err(e) => {
                rows.push(skipped(&b.label, "chord-arc constant", &e));
                continue;
            }
        };
        rows.push(Row {
            curve: b.label.clone(),
            data: RowData::Geometry {
                chord_arc: k_hat,
                ball: None,
                dual: None,
                dual_argmax: None,
            },
        });
        let maps = match MapPair::fit(curve, cfg.knobs.engine, true) {
            Ok(m) => m,
            Err(e) => {
                rows.push(skipped(&b.label, "maps", &e));
                continue;
            }
        };
        let jobs: Vec<(f64, &BoundaryFunction)> = cfg
            .p
            .iter()
            .flat_map(|&p| fs.iter().map(move |u| (p, u)))
            .collect();
        let results: Vec<_> = jobs
            .par_iter()
            .map(|&(p, u)| (p, u, seminorm_triple_with(curve, &maps, u, p, opts)))
            .collect();
        for &p in &cfg.p {
            let mut bracket: f64 = 1.0;
            let mut band: f64 = 0.0;
            for (q, u, r) in &results {
                if *q != p {
                    continue;
                }
                let r = match r {
                    Ok(r) => r,
                    Err(e) => {
                        rows.push(skipped(&b.label, format!("{} p={p}", u.label()), e));
                        continue;
                    }
                };
                for ratio in [r.besov_over_interior, r.exterior_over_interior]
                    .into_iter()
                    .flatten()
                {
                    bracket = bracket.max(ratio.max(1.0 / ratio));
                    band = band.max((ratio - 1.0).abs());
                }
                rows.push(Row {
                    curve: b.label.clone(),
                    data: RowData::Seminorm(r.clone()),
                });
            }
            checks.push(Check::at_most(
                format!("equivalence {} p={p} bracket", b.label),
                "max over the test set of max(ratio, 1/ratio) <= C0",
                bracket,
                tol.bracket,
            ));
            if matches!(b.spec, CurveSpec::Circle { .. }) && p == 2.0 {
                checks.push(Check::at_most(
                    format!("equivalence {} p=2 circle band", b.label),
                    "max |ratio - 1| <= band",
                    band,
                    tol.circle_band,
                ));
            }
            by_k.push((p, k_hat, bracket));
        }
        // pullback sandwich on the unit-speed rescaling
        let unit = match reparametrize_arclength(curve, Some(TAU)) {
            Ok(c) => c,
            Err(e) => {
                rows.push(skipped(&b.label, "unit-speed rescaling", &e));
                continue;
            }
        };
        let k_unit = unit.chord_arc_constant()?;
        let composed: Vec<&BoundaryFunction> = fs
            .iter()
            .filter(|u| matches!(u, BoundaryFunction::Composed { .. }))
            .collect();
        let pairs: Vec<_> = cfg
            .p
            .iter()
            .flat_map(|&p| composed.iter().map(move |u| (p, *u)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(p, u)| (p, u, pullback_besov_pair(&unit, u, p)))
            .collect();
        for (p, u, r) in pairs {
            let (g, c) = match r {
                Ok(v) => v,
                Err(e) => {
                    rows.push(skipped(
                        &b.label,
                        format!("pullback {} p={p}", u.label()),
                        &e,
                    ));
                    continue;
                }
            };
            let lo = 4.0 / (PI * PI) * c;
            let hi = k_unit * k_unit * c;
            checks.push(Check::at_least(
                format!("sandwich {} {} p={p} lower", b.label, u.label()),
                "curve^p - (4/pi^2) circle^p >= min slack",
                g - lo,
                tol.sandwich_slack,
            ));
            checks.push(Check::at_least(
                format!("sandwich {} {} p={p} upper", b.label, u.label()),
                "K^2 circle^p - curve^p >= min slack",
                hi - g,
                tol.sandwich_slack,
            ));
            rows.push(Row {
                curve: b.label.clone(),
                data: RowData::Pullback {
                    function: u.label(),
                    p,
                    curve_value: g,
                    circle_value: c,
                },
            });
        }
    }
    let mut series = Vec::new();
    for &p in &cfg.p {
        series.push(Series {
            name: format!("equivalence p={p}"),
            x_label: "K".into(),
            y_label: "worst bracket".into(),
            points: by_k
                .iter()
                .filter(|r| r.0 == p)
                .map(|r| (r.1, r.2))
                .collect(),
        });
    }
    finish(cfg, rows, checks, series, Vec::new(), t0)
}

/// Family parameter used on plot axes.
pub fn curve_parameter(spec: &CurveSpec) -> f64 {
    match spec {
        CurveSpec::Circle { params, .. } => params.r,
        CurveSpec::Polynomial { params, .. } => params.c,
        CurveSpec::Koch { params, .. } => params.level as f64,
        CurveSpec::Polygon { params, .. } => params.vertices.len() as f64,
        CurveSpec::Polyline { points } => points.len() as f64,
    }
}

fn family_name(spec: &CurveSpec) -> &'static str {
    match spec {
        CurveSpec::Circle { .. } => "circle",
        CurveSpec::Polynomial { .. } => "polynomial",
        CurveSpec::Koch { .. } => "koch",
        CurveSpec::Polygon { .. } => "polygon",
        CurveSpec::Polyline { .. } => "polyline",
    }
}

/// Necessity quantities for `u_w` at one `p`.
fn necessity_row(
    curve: &CurveSample,
    maps: &MapPair,
    w: C64,
    p: f64,
    opts: EnergyOptions,
    besov: f64,
) -> Result<NecessityRow> {
    let probe = curve.probe(w)?;
    let diam = curve.diameter();
    let u = BoundaryFunction::pole(w);
    let energy = match probe.side {
        Side::Exterior => interior_seminorm(curve, &maps.interior, &u, p, opts)?,
        Side::Interior => {
            let ext = maps.exterior.as_ref().ok_or_else(|| {
                Error::Precondition("interior pole needs the exterior map".into())
            })?;
            exterior_seminorm(curve, ext, &u, p, opts)?
        }
    };
    let shift = maps
        .exterior
        .as_ref()
        .map_or(maps.interior.shift(), |m| m.shift());
    let (_, upper) = pole_energy_upper_bound(curve, w, shift, p)?;
    let id = image_curve_identity(curve, w, p)?;
    let lower =
        (probe.dist < diam / 4.0).then(|| pole_besov_lower_bound(id.image_length, probe.dist, p));
    Ok(NecessityRow {
        w,
        side: probe.side,
        dist: probe.dist,
        p,
        besov,
        energy,
        identity_lhs: id.lhs,
        identity_rhs: id.rhs,
        image_length: id.image_length,
        upper_bound: upper,
        lower_bound: lower,
    })
}

struct TrendPoint {
    family: &'static str,
    label: String,
    param: f64,
    k_hat: f64,
    c_hat: f64,
    worst: f64,
}

/// Pole identities and bounds at every admissible probe, and the trend of
/// `K̂`, `Ĉ` and the worst Besov/interior ratio along each curve family in
/// config order.
pub fn run_necessity(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let t0 = Instant::now();
    cfg.validate()?;
    let curves = build_curves(cfg)?;
    let funcs = expand_functions(cfg, &curves);
    let opts = cfg.knobs.energy();
    let tol = cfg.tolerances;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut trend = Vec::new();
    for (b, fs) in curves.iter().zip(&funcs) {
        let curve = match &b.curve {
            Ok(c) => c,
            Err(e) => {
                rows.push(skipped(&b.label, "curve", e));
                continue;
            }
        };
        let geo = curve
            .chord_arc_constant()
            .and_then(|k| dual_regularity(curve, &cfg.probes.dual).map(|d| (k, d)));
        let (k_hat, dual) = match geo {
            Ok(v) => v,
            Err(e) => {
                rows.push(skipped(&b.label, "geometry", &e));
                continue;
            }
        };
        rows.push(Row {
            curve: b.label.clone(),
            data: RowData::Geometry {
                chord_arc: k_hat,
                ball: None,
                dual: Some(dual.c_hat),
                dual_argmax: Some(dual.argmax),
            },
        });
        let maps = match MapPair::fit(curve, cfg.knobs.engine, true) {
            Ok(m) => m,
            Err(e) => {
                rows.push(skipped(&b.label, "maps", &e));
                continue;
            }
        };
        let interior_only = MapPair {
            interior: maps.interior.clone(),
            exterior: None,
        };
        let jobs: Vec<(f64, &BoundaryFunction)> = cfg
            .p
            .iter()
            .flat_map(|&p| fs.iter().map(move |u| (p, u)))
            .collect();
        let results: Vec<_> = jobs
            .par_iter()
            .map(|&(p, u)| {
                let triple = seminorm_triple_with(curve, &interior_only, u, p, opts);
                let nec = match (u, &triple) {
                    (BoundaryFunction::Pole { w }, Ok(t)) => {
                        Some(necessity_row(curve, &maps, *w, p, opts, t.besov))
                    }
                    _ => None,
                };
                (p, u, triple, nec)
            })
            .collect();
        let mut worst: f64 = 0.0;
        for (p, u, triple, nec) in results {
            match triple {
                Ok(t) => {
                    if let Some(r) = t.besov_over_interior {
                        worst = worst.max(r);
                    }
                    rows.push(Row {
                        curve: b.label.clone(),
                        data: RowData::Seminorm(t),
                    });
                }
                Err(e) => {
                    rows.push(skipped(&b.label, format!("{} p={p}", u.label()), &e));
                    continue;
                }
            }
            match nec {
                Some(Ok(r)) => {
                    let tag = format!("{} {} p={p}", b.label, u.label());
                    checks.push(Check::at_most(
                        format!("image identity {tag}"),
                        "|4pi^2 besov^p - image double integral| / image double integral <= rel",
                        rel_dev(r.identity_lhs, r.identity_rhs),
                        tol.rel,
                    ));
                    checks.push(Check::at_least(
                        format!("energy upper bound {tag}"),
                        "(4^(p-2)/p) d^-p - energy^p >= min slack",
                        r.upper_bound - r.energy.powf(p),
                        tol.bound_slack,
                    ));
                    if let Some(lo) = r.lower_bound {
                        checks.push(Check::at_least(
                            format!("besov lower bound {tag}"),
                            "besov^p - (1/4pi^2) 8^(1-p) length(image) d^(1-p) >= min slack",
                            r.besov.powf(p) - lo,
                            tol.bound_slack,
                        ));
                    }
                    rows.push(Row {
                        curve: b.label.clone(),
                        data: RowData::Necessity(r),
                    });
                }
                Some(Err(e)) => rows.push(skipped(
                    &b.label,
                    format!("necessity {} p={p}", u.label()),
                    &e,
                )),
                None => {}
            }
        }
        trend.push(TrendPoint {
            family: family_name(&b.spec),
            label: b.label.clone(),
            param: curve_parameter(&b.spec),
            k_hat,
            c_hat: dual.c_hat,
            worst,
        });
    }
    let mut notes = Vec::new();
    let mut series = Vec::new();
    let families: Vec<&str> = {
        let mut seen = Vec::new();
        for t in &trend {
            if !seen.contains(&t.family) {
                seen.push(t.family);
            }
        }
        seen
    };
    for fam in families {
        let pts: Vec<&TrendPoint> = trend.iter().filter(|t| t.family == fam).collect();
        notes.push(format!(
            "trend {fam}: {}",
            pts.iter()
                .map(|t| format!(
                    "{} K={:.4} C={:.4} worst={:.4}",
                    t.label, t.k_hat, t.c_hat, t.worst
                ))
                .collect::<Vec<_>>()
                .join("; ")
        ));
        series.push(Series {
            name: format!("necessity {fam} ratio vs parameter"),
            x_label: "parameter".into(),
            y_label: "worst besov/interior".into(),
            points: pts.iter().map(|t| (t.param, t.worst)).collect(),
        });
        series.push(Series {
            name: format!("necessity {fam} ratio vs K"),
            x_label: "K".into(),
            y_label: "worst besov/interior".into(),
            points: pts.iter().map(|t| (t.k_hat, t.worst)).collect(),
        });
        series.push(Series {
            name: format!("necessity {fam} C vs K"),
            x_label: "K".into(),
            y_label: "C".into(),
            points: pts.iter().map(|t| (t.k_hat, t.c_hat)).collect(),
        });
        if pts.len() < 2 {
            continue;
        }
        for (name, get) in [
            ("K", (|t: &TrendPoint| t.k_hat) as fn(&TrendPoint) -> f64),
            ("C", |t: &TrendPoint| t.c_hat),
            ("worst besov/interior", |t: &TrendPoint| t.worst),
        ] {
            let step = pts
                .windows(2)
                .map(|w| get(w[1]) - get(w[0]))
                .fold(f64::INFINITY, f64::min);
            checks.push(Check::at_least(
                format!("trend {fam} {name} nondecreasing"),
                format!("min consecutive increase of {name} >= -monotone slack"),
                step,
                -tol.monotone_slack,
            ));
        }
        if let Some(g) = tol.c_hat_growth {
            checks.push(Check::at_least(
                format!("trend {fam} C growth"),
                "C_last / C_first >= growth threshold",
                pts[pts.len() - 1].c_hat / pts[0].c_hat,
                g,
            ));
        }
    }
    finish(cfg, rows, checks, series, notes, t0)
}

/// `(K̂, M̂, Ĉ)` for every curve and the rank correlation of `M̂` and `Ĉ`.
pub fn run_regularity_sweep(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let t0 = Instant::now();
    cfg.validate()?;
    let curves = build_curves(cfg)?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let mut table = Vec::new();
    for b in &curves {
        let r = b
            .curve
            .as_ref()
            .map_err(|e| Error::InvalidCurve(e.to_string()))
            .and_then(|c| regularity_report(c, &cfg.probes.ball_grid(c), &cfg.probes.dual));
        match r {
            Ok(r) => {
                table.push((r.chord_arc, r.ball.m_hat, r.dual.c_hat));
                rows.push(Row {
                    curve: b.label.clone(),
                    data: RowData::Geometry {
                        chord_arc: r.chord_arc,
                        ball: Some(r.ball.m_hat),
                        dual: Some(r.dual.c_hat),
                        dual_argmax: Some(r.dual.argmax),
                    },
                });
            }
            Err(e) => rows.push(skipped(&b.label, "regularity", &e)),
        }
    }
    if table.len() >= 6 {
        let m: Vec<f64> = table.iter().map(|r| r.1).collect();
        let c: Vec<f64> = table.iter().map(|r| r.2).collect();
        checks.push(Check::at_least(
            "rank concordance of M and C",
            "spearman(M, C) >= rank concordance",
            spearman(&m, &c),
            cfg.tolerances.rank_concordance,
        ));
    } else {
        notes.push(format!(
            "rank concordance needs at least 6 curves, have {}; not checked",
            table.len()
        ));
    }
    let series = vec![
        Series {
            name: "regularity M vs K".into(),
            x_label: "K".into(),
            y_label: "M".into(),
            points: table.iter().map(|r| (r.0, r.1)).collect(),
        },
        Series {
            name: "regularity C vs K".into(),
            x_label: "K".into(),
            y_label: "C".into(),
            points: table.iter().map(|r| (r.0, r.2)).collect(),
        },
    ];
    finish(cfg, rows, checks, series, notes, t0)
}

/// A fast battery of closed-form checks across every module.
pub fn selftest(seed: u64) -> Result<ExperimentReport> {
    let t0 = Instant::now();
    let mut cfg = ExperimentConfig::new(Experiment::Selftest);
    cfg.seed = seed;
    let mut checks = Vec::new();
    let mut rows = Vec::new();

    // Douglas equality on a coarse circle
    let circle = make_named_curve(&NamedCurve::Circle { r: 1.0 }, 512)?;
    let maps = MapPair::fit(&circle, Default::default(), true)?;
    let opts = EnergyOptions {
        boundary_samples: 512,
        n_trunc: 64,
        quad: crate::harmonic::DiskQuadrature {
            radial: 32,
            angular: 256,
        },
    };
    for n in 1..=3 {
        let u = BoundaryFunction::cos(n);
        let r = seminorm_triple_with(&circle, &maps, &u, 2.0, opts)?;
        let exact = (n as f64 / 2.0).sqrt();
        let worst = [r.besov, r.interior, r.exterior.unwrap_or(f64::NAN)]
            .iter()
            .map(|v| rel_dev(*v, exact))
            .fold(0.0, f64::max);
        checks.push(Check::at_most(
            format!("douglas cos({n}t)"),
            "max relative deviation of the three seminorms from (n/2)^(1/2) <= 1e-3",
            worst,
            1e-3,
        ));
        rows.push(Row {
            curve: "circle(r=1)".into(),
            data: RowData::Seminorm(r),
        });
    }

    // geometry
    let k_circle = circle.chord_arc_constant()?;
    checks.push(Check::at_most(
        "chord-arc circle",
        "|K - pi/2| <= 2e-3",
        (k_circle - PI / 2.0).abs(),
        2e-3,
    ));
    let sq = make_named_curve(
        &NamedCurve::Polygon {
            vertices: square(1.0, C64::new(0.0, 0.0)),
        },
        256,
    )?;
    let k_square = sq.chord_arc_constant()?;
    checks.push(Check::at_most(
        "chord-arc square",
        "|K - 2| <= 1e-3",
        (k_square - 2.0).abs(),
        1e-3,
    ));
    let dual = dual_regularity(&circle, &ProbeSpec::default())?;
    checks.push(Check::at_most(
        "dual circle",
        "|C - 2pi| / 2pi <= 1e-2",
        rel_dev(dual.c_hat, TAU),
        1e-2,
    ));
    rows.push(Row {
        curve: "circle(r=1)".into(),
        data: RowData::Geometry {
            chord_arc: k_circle,
            ball: None,
            dual: Some(dual.c_hat),
            dual_argmax: Some(dual.argmax),
        },
    });

    // image identity at the centre
    let id = image_curve_identity(&circle, C64::new(0.0, 0.0), 2.0)?;
    checks.push(Check::at_most(
        "image identity circle w=0",
        "|4pi^2 besov^2 - length(image)^2| / length(image)^2 <= 1e-3",
        rel_dev(id.lhs, id.rhs),
        1e-3,
    ));

    // numeric engine against the closed form
    let poly = make_named_curve(&NamedCurve::Polynomial { c: 0.2 }, 512)?;
    let exact = closed_form_interior_map(&poly)?;
    let numeric = fit_numeric_map(&poly, MapSide::Interior)?;
    let dev = (0..256)
        .map(|j| {
            let t = TAU * j as f64 / 256.0;
            (exact.boundary_point(t).z - numeric.boundary_point(t).z).norm()
        })
        .fold(0.0, f64::max);
    checks.push(Check::at_most(
        "numeric map polynomial(0.2)",
        "sup boundary deviation from the closed form <= 1e-2",
        dev,
        1e-2,
    ));

    // Besov homogeneity
    let u = BoundaryFunction::cos(2);
    let a = besov_seminorm(&poly, &u, 3.0)?;
    let b = besov_seminorm(&poly, &u.clone().scaled(C64::new(0.0, 2.5)), 3.0)?;
    checks.push(Check::at_most(
        "besov homogeneity",
        "|B(2.5i u) - 2.5 B(u)| / (2.5 B(u)) <= 1e-12",
        rel_dev(b, 2.5 * a),
        1e-12,
    ));
    finish(&cfg, rows, checks, Vec::new(), Vec::new(), t0)
}
