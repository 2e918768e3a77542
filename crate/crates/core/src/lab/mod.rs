//! Configuration-driven experiments and their reports.
//!
//! A TOML [`ExperimentConfig`] names one experiment, the curves, exponents,
//! test functions, quadrature knobs and declared tolerances. [`run`]
//! produces an [`ExperimentReport`] whose checks cite the tolerance they
//! were judged against; [`emit_report`] writes it as text, CSV or plot data.
//! Rows are computed in parallel and assembled in config order, so identical
//! configs give identical report bodies.

mod config;
mod report;
mod run;
mod shorthand;

pub use config::{
    load_config, normal_pole_sites, Experiment, ExperimentConfig, Format, FunctionSpec, Knobs,
    OutputSpec, Part, PoleSide, ProbeKnobs, Tolerances,
};
pub use report::{
    emit_report, rel_dev, render, Check, ExperimentReport, NecessityRow, Provenance, Row, RowData,
    Series,
};
pub use run::{
    curve_parameter, douglas_closed_form, run, run_douglas, run_equivalence, run_necessity,
    run_regularity_sweep, selftest,
};
pub use shorthand::{parse_curve_arg, parse_function_arg};
