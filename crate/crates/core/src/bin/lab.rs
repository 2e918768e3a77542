use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chordarc_lab::conformal::choose_anchor;
use chordarc_lab::lab::{self, Format};
use chordarc_lab::regularity::{regularity_report, BallGrid, ProbeSpec};
use chordarc_lab::seminorms::{seminorm_triple, EnergyOptions, EngineChoice, TripleOptions};

#[derive(Parser)]
#[command(
    name = "lab",
    version,
    about = "Boundary seminorms and chord-arc geometry of sampled curves"
)]
struct Cli {
    /// Seed for randomized test-function draws; overrides the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for row-level parallelism.
    #[arg(long, global = true, env = "LAB_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an experiment described by a TOML config.
    Run {
        config: PathBuf,
        /// Output file stem; overrides the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated formats: text, csv, plot.
        #[arg(long, value_delimiter = ',')]
        format: Vec<Format>,
    },
    /// Curve inspection.
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// Besov, interior and exterior seminorms of one function.
    Seminorm {
        /// Curve shorthand (`polynomial:c=0.3,n=1024`) or spec file.
        spec: String,
        #[arg(long)]
        p: f64,
        /// Function shorthand: cos:N, sin:N, exp:N, const:V, pole:X,Y, re-pole:X,Y, im-pole:X,Y.
        #[arg(long = "fn")]
        function: String,
        /// Always use the numeric conformal engine.
        #[arg(long)]
        numeric: bool,
    },
    /// Chord-arc, ball and dual regularity constants.
    Regularity { spec: String },
    /// Fast closed-form checks across all modules.
    Selftest,
}

#[derive(Subcommand)]
enum CurveCmd {
    Info { spec: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("lab: cannot configure {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("lab: {e}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(true)` iff every declared check passed.
fn execute(cli: Cli) -> chordarc_lab::Result<bool> {
    match cli.cmd {
        Cmd::Run {
            config,
            out,
            format,
        } => {
            let mut cfg = lab::load_config(&config)?;
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(o) = out {
                cfg.output.path = Some(o);
            }
            if !format.is_empty() {
                cfg.output.formats = format;
            }
            let report = lab::run(&cfg)?;
            print!("{}", lab::render(&report, Format::Text));
            if let Some(stem) = &cfg.output.path {
                for p in lab::emit_report(&report, stem, &cfg.output.formats)? {
                    eprintln!("wrote {}", p.display());
                }
            }
            Ok(report.passed())
        }
        Cmd::Curve {
            cmd: CurveCmd::Info { spec },
        } => {
            let spec = lab::parse_curve_arg(&spec)?;
            let c = spec.build()?;
            println!("curve:        {}", spec.label());
            println!("samples:      {}", c.len());
            println!("length:       {:.12}", c.length());
            println!("diameter:     {:.12}", c.diameter());
            println!("centroid:     {:.6}", c.centroid());
            println!("max segment:  {:.6e}", c.max_segment());
            println!("uniform:      {}", c.is_uniform(1e-9));
            println!("chord-arc K:  {:.6}", c.chord_arc_constant()?);
            println!("map anchor:   {:.6}", choose_anchor(&c)?);
            Ok(true)
        }
        Cmd::Seminorm {
            spec,
            p,
            function,
            numeric,
        } => {
            let c = lab::parse_curve_arg(&spec)?.build()?;
            let u = lab::parse_function_arg(&function)?;
            let opts = TripleOptions {
                energy: EnergyOptions::default(),
                engine: if numeric {
                    EngineChoice::Numeric
                } else {
                    EngineChoice::Auto
                },
                with_exterior: true,
            };
            let r = seminorm_triple(&c, &u, p, opts)?;
            println!("function:           {}", r.function);
            println!("p:                  {}", r.p);
            println!("besov:              {:.10}", r.besov);
            println!("interior:           {:.10}", r.interior);
            if let Some(e) = r.exterior {
                println!("exterior:           {e:.10}");
            }
            if let Some(x) = r.besov_over_interior {
                println!("besov/interior:     {x:.6}");
            }
            if let Some(x) = r.exterior_over_interior {
                println!("exterior/interior:  {x:.6}");
            }
            println!("engine:             {}", r.engine);
            Ok(true)
        }
        Cmd::Regularity { spec } => {
            let c = lab::parse_curve_arg(&spec)?.build()?;
            let r =
                regularity_report(&c, &BallGrid::for_curve(&c, 256, 24), &ProbeSpec::default())?;
            println!("chord-arc K:  {:.6}", r.chord_arc);
            println!(
                "ball M:       {:.6}  (center {:.4}, radius {:.4e})",
                r.ball.m_hat, r.ball.center, r.ball.radius
            );
            println!(
                "dual C:       {:.6}  (argmax {:.4}, {} probes, {} excluded)",
                r.dual.c_hat,
                r.dual.argmax,
                r.dual.probes.len(),
                r.dual.excluded
            );
            Ok(true)
        }
        Cmd::Selftest => {
            let report = lab::selftest(cli.seed.unwrap_or(0))?;
            print!("{}", lab::render(&report, Format::Text));
            Ok(report.passed())
        }
    }
}
