use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use perc::arms::{AnnulusQuery, ArmShape, ArmSpec};
use perc::geometry::{innermost_circuits, leftmost_radial_path, lowest_crossing};
use perc::harness::output::{self, Table};
use perc::harness::verify::{verify_suite, Level};
use perc::harness::{self, Conditioning, Study, StudySpec};
use perc::lattice::{sample_config, BondConfig, ConfigFile};

#[derive(Parser)]
#[command(name = "perc", version, about = "Critical bond percolation studies on Z^2")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads; the output does not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample one configuration and write it as a config file.
    Sample {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate an arm probability. `--inner 0` uses the edge {0, e_1}.
    Arms {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 0)]
        inner: u32,
        #[arg(long)]
        outer: u32,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Radial chemical distance on A_n and its n^2 pi_3(n) normalisation.
    Radial {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2000)]
        trials: u64,
        /// Trials for pi_3(n); defaults to --trials.
        #[arg(long)]
        pi3_trials: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Crossing lengths S_n and L_n on H_n, and the shortcut when --eps is set.
    Crossing {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 400)]
        trials: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Shortcut of the lowest crossing by shielded detours.
    Shortcut {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 400)]
        trials: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Law of the dyadic scale D_{e_1}.
    Dtail {
        #[arg(long, default_value_t = 6)]
        kmax: u32,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        /// Trials per pi_4 normaliser.
        #[arg(long, default_value_t = 100_000)]
        pi4_trials: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Point-to-point distance tail and confining circuit scale.
    Pt2pt {
        #[arg(long, default_value_t = 1)]
        d: u32,
        /// Dyadic padding L; the box has radius 2^(L+1) d.
        #[arg(long, default_value_t = 4)]
        levels: u32,
        #[arg(long, default_value_t = 20_000)]
        trials: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Run the oracle suite, or with --config emit the geometry of a config file.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, requires = "config")]
        emit_geometry: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(common: &Common, spec: &StudySpec, result: Value, table: Table, start: Instant) -> Result<()> {
    let text = match common.format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let v = output::summary(spec, &result, start.elapsed().as_secs_f64());
            serde_json::to_string_pretty(&v)? + "\n"
        }
    };
    emit(common, &text)
}

fn spec(study: Study, trials: u64, seed: u64, conditioning: Conditioning) -> StudySpec {
    StudySpec { study, n: None, kmax: None, eps: None, trials, seed, conditioning }
}

fn geometry(cfg: &BondConfig) -> Value {
    let l = lowest_crossing(cfg).map(|p| p.to_json());
    let circuits = innermost_circuits(cfg).ok().map(|d| {
        json!({
            "circuits": d.circuits.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "radial_path": d.radial_path().to_json(),
        })
    });
    let sigma = leftmost_radial_path(cfg).ok().map(|p| p.to_json());
    json!({
        "n": cfg.n(),
        "lowest_crossing": l,
        "innermost_circuits": circuits,
        "leftmost_radial_path": sigma,
    })
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    let start = Instant::now();
    match cmd {
        Cmd::Sample { n, stream, p, common } => {
            let cfg = sample_config(n, p, common.seed, stream)?;
            emit(&common, &(serde_json::to_string_pretty(&cfg.to_file())? + "\n"))?;
        }
        Cmd::Arms { spec: word, inner, outer, trials, common } => {
            let arm: ArmSpec = word.parse()?;
            let shape = if inner == 0 {
                ArmShape::Edge { radius: outer }
            } else {
                ArmShape::Annulus(AnnulusQuery::at_origin(inner, outer))
            };
            let est = harness::run_arms(&arm, &shape, trials, common.seed)?;
            let s = spec(Study::Arms, trials, common.seed, Conditioning::None);
            let table = output::arms_table(&arm, inner, outer, &est);
            let result = json!({"spec": arm.to_string(), "inner": inner, "outer": outer, "estimate": est});
            render(&common, &s, result, table, start)?;
        }
        Cmd::Radial { n, trials, pi3_trials, common } => {
            let r = harness::run_radial_with(n, trials, common.seed, 0.5, pi3_trials.unwrap_or(trials))?;
            let mut s = spec(Study::Radial, trials, common.seed, Conditioning::An);
            s.n = Some(n);
            render(&common, &s, serde_json::to_value(&r)?, output::radial_table(&r), start)?;
        }
        Cmd::Crossing { n, eps, trials, common } => {
            let r = harness::run_crossing(n, eps, trials, common.seed)?;
            let mut s = spec(Study::Crossing, trials, common.seed, Conditioning::Hn);
            (s.n, s.eps) = (Some(n), eps);
            render(&common, &s, serde_json::to_value(&r)?, output::crossing_table(&r), start)?;
        }
        Cmd::Shortcut { n, eps, trials, common } => {
            let r = harness::run_crossing(n, Some(eps), trials, common.seed)?;
            let mut s = spec(Study::Shortcut, trials, common.seed, Conditioning::Hn);
            (s.n, s.eps) = (Some(n), Some(eps));
            render(&common, &s, serde_json::to_value(&r)?, output::crossing_table(&r), start)?;
            if !r.violations.is_empty() {
                for v in &r.violations {
                    eprintln!("{v}");
                }
                return Ok(ExitCode::from(2));
            }
        }
        Cmd::Dtail { kmax, trials, pi4_trials, common } => {
            let r = harness::run_dtail(kmax, trials, common.seed, pi4_trials)?;
            let mut s = spec(Study::Dtail, trials, common.seed, Conditioning::None);
            s.kmax = Some(kmax);
            render(&common, &s, serde_json::to_value(&r)?, output::dtail_table(&r), start)?;
        }
        Cmd::Pt2pt { d, levels, trials, common } => {
            let r = harness::run_pt2pt(d, levels, trials, common.seed)?;
            let mut s = spec(Study::Pt2pt, trials, common.seed, Conditioning::Connected);
            s.n = Some(r.radius);
            render(&common, &s, serde_json::to_value(&r)?, output::pt2pt_table(&r), start)?;
        }
        Cmd::Verify { level, config, emit_geometry, common } => {
            if let Some(path) = config {
                let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                let file: ConfigFile = serde_json::from_str(&text)?;
                let cfg = BondConfig::from_file(&file)?;
                if cfg.to_file() != file {
                    bail!("config file does not round-trip");
                }
                if emit_geometry {
                    emit(&common, &(serde_json::to_string_pretty(&geometry(&cfg))? + "\n"))?;
                }
                return Ok(ExitCode::SUCCESS);
            }
            let level = match level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let report = verify_suite(level, common.seed);
            let mut table = Table::new(&["check", "passed", "total", "ok", "detail"]);
            for c in &report.checks {
                table.push(vec![
                    c.name.clone().into(),
                    c.passed.into(),
                    c.total.into(),
                    if c.ok() { "pass" } else { "FAIL" }.into(),
                    c.detail.clone().into(),
                ]);
            }
            let s = spec(Study::Verify, 0, common.seed, Conditioning::None);
            render(&common, &s, serde_json::to_value(&report)?, table, start)?;
            if !report.passed() {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn common(cmd: &Cmd) -> &Common {
    match cmd {
        Cmd::Sample { common, .. }
        | Cmd::Arms { common, .. }
        | Cmd::Radial { common, .. }
        | Cmd::Crossing { common, .. }
        | Cmd::Shortcut { common, .. }
        | Cmd::Dtail { common, .. }
        | Cmd::Pt2pt { common, .. }
        | Cmd::Verify { common, .. } => common,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = common(&cli.cmd).threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("perc: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("perc: {e:#}");
            ExitCode::FAILURE
        }
    }
}
