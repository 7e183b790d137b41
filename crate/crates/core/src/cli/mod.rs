//! Command-line front end: scenario runs, constants, verification of stored runs.

pub mod config;
pub mod export;
pub mod json;
pub mod scenario;
pub mod svg;

use crate::constants::{constants_report, ConfinementCase};
use crate::error::{Error, Result};
use crate::flow::FlowParams;
use clap::{Parser, Subcommand};
use config::ScenarioConfig;
use export::read_trajectory;
use scenario::{analyze_trajectory, run_scenario, RunManifest};
use std::path::{Path, PathBuf};

/// `println!` that tolerates a closed stdout (e.g. piped into `head`).
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ambientflow", version, about = "Curve shortening flow in an ambient field")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a scenario from a TOML or JSON config.
    Run {
        config: PathBuf,
        /// output directory (overrides the config's `output`)
        #[arg(long)]
        out: Option<PathBuf>,
        /// exit with status 3 if any verdict fails
        #[arg(long)]
        strict: bool,
    },
    /// Print K, M and the case data as JSON.
    Constants {
        /// scenario config to take field, params and bounds from
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        sigma1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        sigma2: f64,
        #[arg(long)]
        c0: Option<f64>,
        #[arg(long)]
        c1: Option<f64>,
        #[arg(long)]
        c2: Option<f64>,
        #[arg(long, value_parser = parse_case)]
        case: Option<ConfinementCase>,
        #[arg(long)]
        x_t0: Option<f64>,
    },
    /// Recompute monitors from a stored run and compare verdicts.
    Verify {
        dir: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Recompute the rescaled flow of a stored run.
    Rescale { dir: PathBuf },
}

fn parse_case(s: &str) -> std::result::Result<ConfinementCase, String> {
    match s.to_ascii_lowercase().as_str() {
        "a" => Ok(ConfinementCase::A),
        "b" => Ok(ConfinementCase::B),
        "c" => Ok(ConfinementCase::C),
        _ => Err(format!("unknown case {s:?}, expected a, b or c")),
    }
}

/// Sets up the global rayon pool from `AMBIENTFLOW_THREADS` when present.
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("AMBIENTFLOW_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| Error::Config(format!("AMBIENTFLOW_THREADS={v:?} is not a count")))?;
        // a second initialisation (e.g. in tests) is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn report_verdicts(m: &RunManifest) {
    for (k, v) in &m.verdicts {
        say!("{:<32} {}", k, if *v { "pass" } else { "FAIL" });
    }
}

/// Runs the parsed command and returns the process exit status.
pub fn execute(cli: Cli) -> Result<i32> {
    init_threads()?;
    match cli.command {
        Command::Run { config, out, strict } => {
            let cfg = ScenarioConfig::load(&config)?;
            let dir = out
                .or_else(|| cfg.output.as_ref().map(|o| cfg.config_dir.clone().unwrap_or_default().join(o)))
                .ok_or_else(|| Error::Config("no output directory: pass --out or set `output`".into()))?;
            let m = run_scenario(&cfg, &dir)?;
            report_verdicts(&m);
            say!("wrote {}", dir.join("manifest.json").display());
            Ok(if strict && !m.passed() { EXIT_VERIFY_FAILED } else { EXIT_OK })
        }
        Command::Constants { config, sigma1, sigma2, c0, c1, c2, case, x_t0 } => {
            let rep = match config {
                Some(p) => {
                    let mut cfg = ScenarioConfig::load(&p)?;
                    let mut input = cfg.constants.clone().unwrap_or_default();
                    input.c0 = c0.or(input.c0);
                    input.c1 = c1.or(input.c1);
                    input.c2 = c2.or(input.c2);
                    input.case = case.or(input.case);
                    input.x_t0 = x_t0.or(input.x_t0);
                    cfg.constants = Some(input);
                    scenario::constants_from_config(&cfg)?
                }
                None => {
                    let params = FlowParams::new(sigma1, sigma2)?;
                    let need = |x: Option<f64>, n: &str| x.ok_or_else(|| Error::MissingInput(format!("--{n} is required without a config")));
                    constants_report(&params, need(c0, "c0")?, need(c1, "c1")?, need(c2, "c2")?, case.unwrap_or(ConfinementCase::A), x_t0, None)?
                }
            };
            say!("{}", json::to_json_17(&rep)?);
            Ok(EXIT_OK)
        }
        Command::Verify { dir, strict } => {
            let ok = verify_run(&dir)?;
            Ok(if strict && !ok { EXIT_VERIFY_FAILED } else { EXIT_OK })
        }
        Command::Rescale { dir } => {
            let stored = RunManifest::load(&dir)?;
            let meta = stored.trajectory.clone().ok_or_else(|| Error::MissingInput("run has no stored trajectory".into()))?;
            let traj = read_trajectory(&dir, &meta)?;
            let out = dir.join("rescaled");
            std::fs::create_dir_all(&out)?;
            let mut m = RunManifest { files: Vec::new(), ..stored };
            m.headline.clear();
            m.verdicts.clear();
            m.monitors.clear();
            match analyze_trajectory(&traj, &meta, &out, &mut m)? {
                Some(_) => {
                    m.write(&out)?;
                    say!("wrote {}", out.join("manifest.json").display());
                    Ok(EXIT_OK)
                }
                None => Err(Error::InsufficientData("stored run did not reach extinction".into())),
            }
        }
    }
}

/// Recomputes the trajectory monitors of a stored run and compares them with
/// the stored verdicts. Returns whether every recomputed verdict passes and
/// agrees with the stored one.
pub fn verify_run(dir: &Path) -> Result<bool> {
    let stored = RunManifest::load(dir)?;
    let Some(meta) = stored.trajectory.clone() else {
        report_verdicts(&stored);
        return Ok(stored.passed());
    };
    let traj = read_trajectory(dir, &meta)?;
    let scratch = tempdir_in(dir)?;
    let mut fresh = RunManifest { files: Vec::new(), ..stored.clone() };
    fresh.verdicts.clear();
    let res = analyze_trajectory(&traj, &meta, &scratch, &mut fresh);
    let _ = std::fs::remove_dir_all(&scratch);
    res?;
    let mut ok = true;
    for (k, v) in &fresh.verdicts {
        let agree = stored.verdicts.get(k).map(|s| s == v).unwrap_or(true);
        ok &= *v && agree;
        say!("{:<32} {}{}", k, if *v { "pass" } else { "FAIL" }, if agree { "" } else { " (differs from stored)" });
    }
    Ok(ok)
}

fn tempdir_in(dir: &Path) -> Result<PathBuf> {
    let p = dir.join(format!(".verify-{}", std::process::id()));
    std::fs::create_dir_all(&p)?;
    Ok(p)
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
