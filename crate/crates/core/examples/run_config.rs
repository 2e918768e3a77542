//! Runs an experiment config (default: the bundled Douglas config) and
//! prints the text report.
//!
//!     cargo run --release --example run_config -- examples/configs/equivalence.toml

use std::path::PathBuf;

use chordarc_lab::lab::{load_config, render, run, Format};

fn main() -> chordarc_lab::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/douglas.toml")
        });
    let mut cfg = load_config(&path)?;
    cfg.output.path = None;
    let report = run(&cfg)?;
    print!("{}", render(&report, Format::Text));
    println!(
        "{}",
        if report.passed() {
            "all checks passed"
        } else {
            "some checks failed"
        }
    );
    Ok(())
}
