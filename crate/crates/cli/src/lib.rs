//! `equipart` command-line front end.
//!
//! ```text
//! equipart solve            --curve <spec|path> --n <N> [--alphas a1,…,aN] [--metric <name>[:<params>]]
//!                           [--tol 1e-8] [--method auto|march|project|grid] [--grid m] [--eps e]
//! equipart oracle           --curve <spec|path> --n <N> [--grid 201]
//! equipart check-zero-chain --curve <spec|path> --n <N> [--grid 101] [--eps 1e-9]
//! equipart lemma-demo       [--n N] [--tau 2,3,1] [--grid 40]
//! ```
//!
//! Common flags: `--out <path>`, `--format json|csv|svg`, `--threads <k>`,
//! `--seed <int>` (seed for `random(…)` curves).
//!
//! Exit status: 0 on success, 2 when the problem is degenerate (a zero chain
//! exists), 1 on solver failure or bad input.

mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equipart::curve::{make_builtin_curve, read_polyline};
use equipart::oracle::OracleOptions;
use equipart::simplex::{face_maps, lemma_a_probe};
use equipart::{
    brute_force_min_residual, detect_zero_chain, solve, ChordEvaluator, Curve, Exec, Permutation,
    SemiMetric, SolveMethod, SolveOptions, Status, Weights,
};

pub use output::{OracleDocument, SolveDocument, ZeroChainDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "equipart",
    version,
    about = "Weighted chord-length equipartition of curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a partition whose chords are proportional to the weights.
    Solve(Flags),
    /// Exhaustive grid minimisation of the residual.
    Oracle(Flags),
    /// Look for breakpoints whose chords all vanish.
    CheckZeroChain(Flags),
    /// Probe the fixed-point-free permutation map on the simplex boundary.
    LemmaDemo(Flags),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodFlag {
    Auto,
    March,
    Project,
    Grid,
}

#[derive(Debug, Args)]
struct Flags {
    /// Curve description (e.g. `circle(1,0.75)`) or path to a JSON/CSV polyline.
    #[arg(long)]
    curve: Option<String>,
    #[arg(long, default_value = "euclidean")]
    metric: String,
    /// Number of chords.
    #[arg(long)]
    n: Option<usize>,
    /// Positive weight ratios; normalised to sum to one.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    alphas: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = MethodFlag::Auto)]
    method: MethodFlag,
    /// Grid size: oracle grid, zero-chain grid, or probe density.
    #[arg(long)]
    grid: Option<usize>,
    /// Zero-chain chord tolerance.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// 1-based cyclic permutation for `lemma-demo`, e.g. `2,3,1`.
    #[arg(long, value_delimiter = ',')]
    tau: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Solve,
    Oracle,
    CheckZeroChain,
    LemmaDemo,
}

/// Fully resolved invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub curve_spec: Option<String>,
    pub metric: String,
    pub n: Option<usize>,
    /// Normalised weights, when given.
    pub alphas: Option<Vec<f64>>,
    pub tol: f64,
    pub method: MethodFlag,
    pub grid: Option<usize>,
    pub eps: Option<f64>,
    pub out_format: OutFormat,
    pub out_path: Option<PathBuf>,
    pub threads: Option<usize>,
    pub seed: u64,
    pub tau: Option<Vec<usize>>,
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self, String> {
        let (command, f) = match cli.command {
            Command::Solve(f) => (CommandKind::Solve, f),
            Command::Oracle(f) => (CommandKind::Oracle, f),
            Command::CheckZeroChain(f) => (CommandKind::CheckZeroChain, f),
            Command::LemmaDemo(f) => (CommandKind::LemmaDemo, f),
        };
        let alphas = match &f.alphas {
            Some(raw) => Some(
                Weights::normalized(raw)
                    .map_err(|e| format!("--alphas: {e}"))?
                    .alpha()
                    .to_vec(),
            ),
            None => None,
        };
        let n = match (f.n, &alphas) {
            (Some(n), Some(a)) if a.len() != n => {
                return Err(format!("--alphas has {} entries but --n is {n}", a.len()))
            }
            (None, Some(a)) => Some(a.len()),
            (n, _) => n,
        };
        Ok(RunConfig {
            command,
            curve_spec: f.curve,
            metric: f.metric,
            n,
            alphas,
            tol: f.tol,
            method: f.method,
            grid: f.grid,
            eps: f.eps,
            out_format: f.format,
            out_path: f.out,
            threads: f.threads,
            seed: f.seed,
            tau: f.tau,
        })
    }

    fn require_n(&self) -> Result<usize, String> {
        self.n.ok_or_else(|| "--n is required".to_string())
    }

    fn weights(&self, n: usize) -> Result<Weights, String> {
        match &self.alphas {
            Some(a) => Weights::new(a.clone()).map_err(|e| e.to_string()),
            None => Ok(Weights::uniform(n)),
        }
    }

    fn evaluator(&self) -> Result<ChordEvaluator, String> {
        let spec = self.curve_spec.as_deref().ok_or("--curve is required")?;
        let curve = load_curve(spec, self.seed)?;
        let metric = SemiMetric::parse(&self.metric).map_err(|e| e.to_string())?;
        ChordEvaluator::new(curve, metric).map_err(|e| e.to_string())
    }
}

/// Resolves `--curve`: a family description, `random`/`random(segments)`
/// (seeded by `--seed`), or a polyline file path.
pub fn load_curve(spec: &str, seed: u64) -> Result<Curve, String> {
    let spec = spec.trim();
    let seeded = if spec == "random" {
        Some(format!("random(16, {seed})"))
    } else if let Some(inner) = spec
        .strip_prefix("random(")
        .and_then(|s| s.strip_suffix(')'))
    {
        (!inner.contains(',')).then(|| format!("random({inner}, {seed})"))
    } else {
        None
    };
    let spec = seeded.as_deref().unwrap_or(spec);
    let result = if spec.contains('(') {
        make_builtin_curve(spec)
    } else {
        read_polyline(spec)
    };
    result.map_err(|e| e.to_string())
}

pub(crate) struct Emitted {
    pub body: String,
    pub code: i32,
}

/// Parses `argv` (including the program name), executes the command and
/// returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_FAILURE
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| execute(&cfg).map(|out| (cfg, out)));
    match result {
        Ok((cfg, emitted)) => match write_output(&cfg, &emitted.body) {
            Ok(()) => emitted.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_FAILURE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

fn write_output(cfg: &RunConfig, body: &str) -> Result<(), String> {
    match &cfg.out_path {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn configure_threads(threads: Option<usize>) -> Result<(), String> {
    let Some(k) = threads else { return Ok(()) };
    if k == 0 {
        return Err("--threads must be positive".into());
    }
    #[cfg(feature = "parallel")]
    {
        // a global pool that already exists is kept
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    Ok(())
}

fn execute(cfg: &RunConfig) -> Result<Emitted, String> {
    configure_threads(cfg.threads)?;
    match cfg.command {
        CommandKind::Solve => run_solve(cfg),
        CommandKind::Oracle => run_oracle(cfg),
        CommandKind::CheckZeroChain => run_zero_chain(cfg),
        CommandKind::LemmaDemo => run_lemma(cfg),
    }
}

fn run_solve(cfg: &RunConfig) -> Result<Emitted, String> {
    let n = cfg.require_n()?;
    let w = cfg.weights(n)?;
    let ev = cfg.evaluator()?;
    let defaults = SolveOptions::default();
    let opts = SolveOptions {
        tol: cfg.tol,
        method: match cfg.method {
            MethodFlag::Auto => None,
            MethodFlag::March => Some(SolveMethod::MarchingBisection),
            MethodFlag::Project => Some(SolveMethod::ProjectionIteration),
            MethodFlag::Grid => Some(SolveMethod::GridRefine),
        },
        zero_chain_grid: cfg.grid.unwrap_or(defaults.zero_chain_grid),
        zero_chain_eps: cfg.eps.unwrap_or(defaults.zero_chain_eps),
        ..defaults
    };
    let solution = solve(&ev, n, &w, &opts).map_err(|e| e.to_string())?;
    let code = match solution.report.status {
        Status::Converged => EXIT_OK,
        Status::DegenerateZeroChain => EXIT_DEGENERATE,
        _ => EXIT_FAILURE,
    };
    let body = match cfg.out_format {
        OutFormat::Json => output::to_json(&SolveDocument::new(&solution, &w))?,
        OutFormat::Csv => {
            output::breakpoints_csv(solution.partition.t(), solution.partition.chords())?
        }
        OutFormat::Svg => output::svg(
            ev.curve(),
            solution.partition.t(),
            &format!(
                "{} residual = {:e}",
                solution.report.status, solution.report.residual
            ),
        )?,
    };
    Ok(Emitted { body, code })
}

fn run_oracle(cfg: &RunConfig) -> Result<Emitted, String> {
    let n = cfg.require_n()?;
    let w = cfg.weights(n)?;
    let ev = cfg.evaluator()?;
    let m = cfg.grid.unwrap_or(201);
    let result = brute_force_min_residual(&ev, n, &w, m, &OracleOptions::default())
        .map_err(|e| e.to_string())?;
    let code = if result.degenerate {
        EXIT_DEGENERATE
    } else {
        EXIT_OK
    };
    let doc = OracleDocument::new(&ev, &result, &w);
    let body = match cfg.out_format {
        OutFormat::Json => output::to_json(&doc)?,
        OutFormat::Csv => output::breakpoints_csv(&doc.t, &doc.chords)?,
        OutFormat::Svg => output::svg(
            ev.curve(),
            &doc.t,
            &format!("oracle m = {m} residual = {:e}", result.residual_star),
        )?,
    };
    Ok(Emitted { body, code })
}

fn run_zero_chain(cfg: &RunConfig) -> Result<Emitted, String> {
    let n = cfg.require_n()?;
    let ev = cfg.evaluator()?;
    let m = cfg.grid.unwrap_or(101);
    let eps = cfg.eps.unwrap_or(1e-9);
    let witness = detect_zero_chain(&ev, n, eps, m).map_err(|e| e.to_string())?;
    let code = if witness.is_some() {
        EXIT_DEGENERATE
    } else {
        EXIT_OK
    };
    let doc = ZeroChainDocument {
        found: witness.is_some(),
        witness,
        n,
        eps,
        grid_m: m,
    };
    let body = match cfg.out_format {
        OutFormat::Json => output::to_json(&doc)?,
        OutFormat::Csv => {
            let t = doc.witness.clone().unwrap_or_default();
            let chords: Vec<f64> = t
                .windows(2)
                .map(|p| ev.chord(p[0], p[1]).unwrap_or(f64::NAN))
                .collect();
            output::breakpoints_csv(&t, &chords)?
        }
        OutFormat::Svg => output::svg(
            ev.curve(),
            doc.witness.as_deref().unwrap_or(&[]),
            if doc.found {
                "zero chain found"
            } else {
                "no zero chain"
            },
        )?,
    };
    Ok(Emitted { body, code })
}

fn run_lemma(cfg: &RunConfig) -> Result<Emitted, String> {
    if cfg.out_format == OutFormat::Svg {
        return Err("lemma-demo supports json and csv output only".into());
    }
    let m = cfg.grid.unwrap_or(40);
    let sizes: Vec<usize> = match (cfg.n, &cfg.tau) {
        (Some(n), _) => vec![n],
        (None, Some(t)) => vec![t.len()],
        (None, None) => vec![2, 3, 4],
    };
    let mut rows = Vec::new();
    for n in sizes {
        let tau = match &cfg.tau {
            Some(t) => Permutation::from_one_based(t).map_err(|e| e.to_string())?,
            None => Permutation::cyclic_shift(n),
        };
        for (name, phi) in face_maps::fixture_family() {
            let d = lemma_a_probe(n, &tau, &phi, m, Exec::default()).map_err(|e| e.to_string())?;
            rows.push(output::LemmaRow {
                n,
                tau: (0..n).map(|i| tau.apply(i) + 1).collect(),
                map: name.to_string(),
                min_displacement: d,
            });
        }
    }
    let all_positive = rows.iter().all(|r| r.min_displacement > 0.0);
    let body = match cfg.out_format {
        OutFormat::Csv => output::lemma_csv(&rows)?,
        _ => output::to_json(&output::LemmaDocument {
            grid_density: m,
            all_positive,
            results: rows,
        })?,
    };
    Ok(Emitted {
        body,
        code: if all_positive { EXIT_OK } else { EXIT_FAILURE },
    })
}
