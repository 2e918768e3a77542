use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::config::{Experiment, Format};
use crate::curve::Side;
use crate::error::{Error, Result};
use crate::seminorms::SeminormReport;

/// One inequality evaluated against a declared tolerance.
///
/// `slack ≥ 0` iff the check passes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub inequality: String,
    pub value: f64,
    pub tolerance: f64,
    pub slack: f64,
    pub passed: bool,
}

impl Check {
    /// `value ≤ tolerance`.
    pub fn at_most(
        name: impl Into<String>,
        inequality: impl Into<String>,
        value: f64,
        tolerance: f64,
    ) -> Self {
        Self::from_slack(name, inequality, value, tolerance, tolerance - value)
    }

    /// `value ≥ tolerance`.
    pub fn at_least(
        name: impl Into<String>,
        inequality: impl Into<String>,
        value: f64,
        tolerance: f64,
    ) -> Self {
        Self::from_slack(name, inequality, value, tolerance, value - tolerance)
    }

    fn from_slack(
        name: impl Into<String>,
        inequality: impl Into<String>,
        value: f64,
        tolerance: f64,
        slack: f64,
    ) -> Self {
        Self {
            name: name.into(),
            inequality: inequality.into(),
            value,
            tolerance,
            slack,
            passed: slack >= 0.0,
        }
    }
}

/// `|a - b| / |b|`, or `|a|` when `b = 0`.
pub fn rel_dev(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NecessityRow {
    pub w: C64,
    pub side: Side,
    pub dist: f64,
    pub p: f64,
    pub besov: f64,
    /// Energy on the side where `u_w` is holomorphic.
    pub energy: f64,
    pub identity_lhs: f64,
    pub identity_rhs: f64,
    pub image_length: f64,
    pub upper_bound: f64,
    /// `None` when `d ≥ diam/4` and the lower bound does not apply.
    pub lower_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RowData {
    Seminorm(SeminormReport),
    Geometry {
        chord_arc: f64,
        ball: Option<f64>,
        dual: Option<f64>,
        dual_argmax: Option<C64>,
    },
    Necessity(NecessityRow),
    /// `‖u‖^p_{B_p(Γ)}` and `‖u∘z‖^p_{B_p(𝕊)}` on the curve rescaled to length `2π`.
    Pullback {
        function: String,
        p: f64,
        curve_value: f64,
        circle_value: f64,
    },
    Skipped {
        what: String,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub curve: String,
    pub data: RowData,
}

impl Row {
    /// Flat `(column, value)` pairs for the delimited output.
    pub fn columns(&self) -> Vec<(&'static str, String)> {
        let f = |v: f64| format!("{v:e}");
        let o = |v: Option<f64>| v.map_or(String::new(), f);
        match &self.data {
            RowData::Seminorm(r) => vec![
                ("function", r.function.clone()),
                ("p", f(r.p)),
                ("besov", f(r.besov)),
                ("interior", f(r.interior)),
                ("exterior", o(r.exterior)),
                ("besov/interior", o(r.besov_over_interior)),
                ("exterior/interior", o(r.exterior_over_interior)),
                ("engine", r.engine.clone()),
            ],
            RowData::Geometry {
                chord_arc,
                ball,
                dual,
                dual_argmax,
            } => vec![
                ("K", f(*chord_arc)),
                ("M", o(*ball)),
                ("C", o(*dual)),
                ("argmax", dual_argmax.map_or(String::new(), fmt_c)),
            ],
            RowData::Necessity(r) => vec![
                ("w", fmt_c(r.w)),
                ("side", format!("{:?}", r.side).to_lowercase()),
                ("d", f(r.dist)),
                ("p", f(r.p)),
                ("besov^p", f(r.besov.powf(r.p))),
                ("energy^p", f(r.energy.powf(r.p))),
                ("identity_lhs", f(r.identity_lhs)),
                ("identity_rhs", f(r.identity_rhs)),
                ("upper_bound", f(r.upper_bound)),
                ("lower_bound", o(r.lower_bound)),
            ],
            RowData::Pullback {
                function,
                p,
                curve_value,
                circle_value,
            } => vec![
                ("function", function.clone()),
                ("p", f(*p)),
                ("curve^p", f(*curve_value)),
                ("circle^p", f(*circle_value)),
            ],
            RowData::Skipped { what, reason } => {
                vec![("skipped", what.clone()), ("reason", reason.clone())]
            }
        }
    }
}

fn fmt_c(z: C64) -> String {
    format!("{:e}{:+e}i", z.re, z.im)
}

/// An `(x, y)` series for plotting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub crate_version: String,
    pub engines: Vec<String>,
    /// The configuration that produced the report, as TOML.
    pub config: String,
    pub workers: usize,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: Experiment,
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
    pub series: Vec<Series>,
    pub notes: Vec<String>,
    pub provenance: Provenance,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// The report body without wall time, for determinism comparisons.
    pub fn body(&self) -> String {
        let mut out = render_text_body(self);
        out.push_str(&render(self, Format::Csv));
        out.push_str(&render(self, Format::Plot));
        out
    }
}

fn render_text_body(r: &ExperimentReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "experiment: {}", r.experiment);
    let _ = writeln!(s, "rows: {}", r.rows.len());
    let mut last_curve = "";
    for row in &r.rows {
        if row.curve != last_curve {
            let _ = writeln!(s, "\n[{}]", row.curve);
            last_curve = &row.curve;
        }
        let cols: Vec<String> = row
            .columns()
            .into_iter()
            .map(|(k, v)| format!("{k}={}", short(&v)))
            .collect();
        let _ = writeln!(s, "  {}", cols.join("  "));
    }
    if !r.notes.is_empty() {
        let _ = writeln!(s, "\nnotes:");
        for n in &r.notes {
            let _ = writeln!(s, "  {n}");
        }
    }
    let _ = writeln!(s, "\nchecks:");
    for c in &r.checks {
        let _ = writeln!(
            s,
            "  {} {}: {} (value {:.6e}, tolerance {:.3e}, slack {:+.3e})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.inequality,
            c.value,
            c.tolerance,
            c.slack
        );
    }
    let failed = r.failures().count();
    let _ = writeln!(
        s,
        "\n{} of {} checks passed",
        r.checks.len() - failed,
        r.checks.len()
    );
    s
}

/// Shortens a full-precision number for the human-readable table.
fn short(v: &str) -> String {
    match v.parse::<f64>() {
        Ok(x) if v.contains('e') => format!("{x:.6}"),
        _ => v.to_string(),
    }
}

pub fn render(r: &ExperimentReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = render_text_body(r);
            let p = &r.provenance;
            let _ = writeln!(s, "\nprovenance:");
            let _ = writeln!(s, "  version: {}", p.crate_version);
            let _ = writeln!(s, "  engines: {}", p.engines.join(", "));
            let _ = writeln!(s, "  workers: {}", p.workers);
            let _ = writeln!(s, "  wall time: {:.3} s", p.wall_time_s);
            let _ = writeln!(s, "  config:");
            for line in p.config.lines() {
                let _ = writeln!(s, "    {line}");
            }
            s
        }
        Format::Csv => {
            let mut s = String::new();
            let mut header: Option<Vec<&str>> = None;
            for row in &r.rows {
                let cols = row.columns();
                let names: Vec<&str> = cols.iter().map(|c| c.0).collect();
                if header.as_ref() != Some(&names) {
                    let _ = writeln!(s, "curve,{}", names.join(","));
                    header = Some(names);
                }
                let vals: Vec<String> = cols.iter().map(|c| csv_field(&c.1)).collect();
                let _ = writeln!(s, "{},{}", csv_field(&row.curve), vals.join(","));
            }
            let _ = writeln!(s, "check,inequality,value,tolerance,slack,passed");
            for c in &r.checks {
                let _ = writeln!(
                    s,
                    "{},{},{:e},{:e},{:e},{}",
                    csv_field(&c.name),
                    csv_field(&c.inequality),
                    c.value,
                    c.tolerance,
                    c.slack,
                    c.passed
                );
            }
            s
        }
        Format::Plot => {
            let mut s = String::new();
            for series in &r.series {
                let _ = writeln!(
                    s,
                    "# {}: {} vs {}",
                    series.name, series.y_label, series.x_label
                );
                for (x, y) in &series.points {
                    let _ = writeln!(s, "{x:e} {y:e}");
                }
                s.push_str("\n\n");
            }
            s
        }
    }
}

fn csv_field(v: &str) -> String {
    if v.contains([',', '"', '\n']) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

/// Writes one file per format at `stem.<ext>` and returns their paths.
pub fn emit_report(r: &ExperimentReport, stem: &Path, formats: &[Format]) -> Result<Vec<PathBuf>> {
    if let Some(dir) = stem.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    let mut out = Vec::new();
    for &f in formats {
        let path = stem.with_extension(f.extension());
        std::fs::write(&path, render(r, f)).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        out.push(path);
    }
    Ok(out)
}
