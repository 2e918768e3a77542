use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the lab.
#[derive(Debug, Error)]
pub enum Error {
    #[error("curve needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("polynomial coefficient |c| = {0} must be below 1/2 (univalence)")]
    NotUnivalent(f64),

    #[error("koch level {0} exceeds the maximum of 7")]
    KochLevelTooHigh(u32),

    #[error("segments {0} and {1} intersect; curve is not simple")]
    SelfIntersecting(usize, usize),

    #[error("samples {0} and {1} coincide")]
    DegenerateSegment(usize, usize),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("point {w} lies within resolution of the curve (distance {dist:e})")]
    AmbiguousLocation {
        w: num_complex::Complex64,
        dist: f64,
    },

    #[error("point {0} is outside the open unit disk")]
    OutsideDisk(num_complex::Complex64),

    #[error("no closed-form map for curve family {0}")]
    UnsupportedFamily(String),

    #[error("elementary map ill-conditioned at sample {index}: {reason}")]
    IllConditioned { index: usize, reason: String },

    #[error("conformal map construction failed: {0}")]
    MapConstruction(String),

    #[error("boundary tables do not describe the same curve: {0}")]
    TableMismatch(String),

    #[error("welding is not a sense-preserving homeomorphism: {0}")]
    Orientation(String),

    #[error("degenerate welding table: {0}")]
    DegenerateWelding(String),

    #[error("need at least {needed} boundary samples for truncation order {order}, got {got}")]
    UnderSampled {
        needed: usize,
        order: usize,
        got: usize,
    },

    #[error("exponent p = {0} is unsupported (need p >= 2)")]
    UnsupportedExponent(f64),

    #[error("pole {w} at distance {dist:e} is below the resolution floor {floor:e}")]
    UnresolvedPole {
        w: num_complex::Complex64,
        dist: f64,
        floor: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("failed to parse {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
