//! Command-line front end.
//!
//! Exit codes: 0 success, 1 runtime/assertion failure, 2 usage error,
//! 3 input-data error. Outputs are plain CSV (`.` decimals, LF endings)
//! plus a `manifest.json` that pins every resolved setting, so any result
//! can be reproduced from the manifest alone. `CAT_LAB_THREADS` caps
//! worker parallelism (0 or unset = automatic).

mod bank;
mod manifest;
mod svg;

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::counterexample::{self, DivergenceScenario, DivergenceTrace};
use crate::designer::{ASchedule, BRule, CRule, DesignPolicy, ItemBank};
use crate::irt::ModelKind;
use crate::simulator::{self, SimulationConfig, SimulatorError, SummaryTable};

pub use bank::{read_bank, summarize, BankError};
pub use manifest::RunManifest;

#[derive(Parser)]
#[command(
    name = "cat-lab",
    version,
    about = "Sequential-design laboratory for computerized adaptive testing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a replicated adaptive-testing experiment and write summary.csv.
    Simulate(SimulateArgs),
    /// Replay the forced divergence trajectory and write trace.csv.
    Diverge(DivergeArgs),
    /// Compare ascending vs descending discrimination schedules (common
    /// random numbers) and write paired MSE tables.
    MseCompare(MseCompareArgs),
    /// Inspect item bank files.
    Bank(BankArgs),
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct SimulateArgs {
    /// JSON config file whose keys mirror these flags; explicit flags win.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    /// Model: rasch | 2pl | 3pl.
    #[arg(long)]
    model: Option<String>,
    /// True ability of the simulated examinee.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Test length.
    #[arg(long = "n-items")]
    #[serde(rename = "n-items")]
    n_items: Option<usize>,
    /// Number of independent replications.
    #[arg(long)]
    replications: Option<usize>,
    /// Master seed; replication r uses stream r of this seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Discrimination schedule: const:<a> | asc:<lo>:<hi> | desc:<hi>:<lo>
    /// | strat:<l1,l2,..>:<block> | explicit:<v1,v2,..> | cubic.
    #[arg(long = "a-schedule")]
    #[serde(rename = "a-schedule")]
    a_schedule: Option<String>,
    /// Constant guessing floor.
    #[arg(long)]
    c: Option<f64>,
    /// Difficulty rule: plain | offset (default offset for 3pl).
    #[arg(long = "b-rule")]
    #[serde(rename = "b-rule")]
    b_rule: Option<String>,
    /// Difficulty of the first item.
    #[arg(long, allow_negative_numbers = true)]
    b1: Option<f64>,
    /// Initialization ladder step.
    #[arg(long)]
    eps0: Option<f64>,
    /// Lower discrimination bound m.
    #[arg(long = "a-min")]
    #[serde(rename = "a-min")]
    a_min: Option<f64>,
    /// Upper discrimination bound M.
    #[arg(long = "a-max")]
    #[serde(rename = "a-max")]
    a_max: Option<f64>,
    /// Guessing ceiling margin (c must stay <= 1 - delta0).
    #[arg(long)]
    delta0: Option<f64>,
    /// Comma-separated checkpoint steps (default 25,50,100,200,400 capped
    /// at the test length, plus the final step).
    #[arg(long)]
    checkpoints: Option<String>,
    /// Finite item bank CSV; omit for the idealized continuum.
    #[arg(long)]
    bank: Option<PathBuf>,
    /// Also emit a line plot of MSE vs n.
    #[arg(long)]
    svg: bool,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct DivergeArgs {
    /// JSON config file whose keys mirror these flags; explicit flags win.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    /// True ability.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Initial estimate; must lie below theta - 1 - pi^2/6.
    #[arg(long, allow_negative_numbers = true)]
    theta0: Option<f64>,
    /// Initialization ladder step.
    #[arg(long)]
    eps0: Option<f64>,
    /// Trajectory length.
    #[arg(long)]
    horizon: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct MseCompareArgs {
    /// JSON config file whose keys mirror these flags; explicit flags win.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    /// Lower end of the discrimination ramp.
    #[arg(long = "a-lo")]
    #[serde(rename = "a-lo")]
    a_lo: Option<f64>,
    /// Upper end of the discrimination ramp.
    #[arg(long = "a-hi")]
    #[serde(rename = "a-hi")]
    a_hi: Option<f64>,
    /// True ability.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Test length.
    #[arg(long = "n-items")]
    #[serde(rename = "n-items")]
    n_items: Option<usize>,
    /// Number of replications per schedule (common random numbers).
    #[arg(long)]
    replications: Option<usize>,
    /// Master seed shared by both schedules.
    #[arg(long)]
    seed: Option<u64>,
    /// Difficulty of the first item.
    #[arg(long, allow_negative_numbers = true)]
    b1: Option<f64>,
    /// Initialization ladder step.
    #[arg(long)]
    eps0: Option<f64>,
    /// Comma-separated checkpoint steps.
    #[arg(long)]
    checkpoints: Option<String>,
    /// Also emit an overlay plot of both MSE curves.
    #[arg(long)]
    svg: bool,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BankArgs {
    #[command(subcommand)]
    action: BankAction,
}

#[derive(Subcommand)]
enum BankAction {
    /// Validate a bank file and print its parameter ranges.
    Inspect { path: PathBuf },
}

/// A command failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn runtime(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn data(message: impl Into<String>) -> Failure {
    Failure { code: 3, message: message.into() }
}

fn from_simulator(err: SimulatorError) -> Failure {
    match err {
        SimulatorError::Replication { .. } => runtime(err.to_string()),
        _ => usage(err.to_string()),
    }
}

fn io_failure(context: &str, err: io::Error) -> Failure {
    runtime(format!("{context}: {err}"))
}

/// Entry point used by the binary.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Diverge(args) => cmd_diverge(args),
        Command::MseCompare(args) => cmd_mse_compare(args),
        Command::Bank(args) => cmd_bank(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn load_config_file<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("bad config {}: {e}", path.display())))
}

fn parse_model(s: &str) -> Result<ModelKind, Failure> {
    match s {
        "rasch" => Ok(ModelKind::Rasch),
        "2pl" => Ok(ModelKind::TwoPl),
        "3pl" => Ok(ModelKind::ThreePl),
        other => Err(usage(format!("unknown model `{other}` (expected rasch|2pl|3pl)"))),
    }
}

fn parse_b_rule(s: &str) -> Result<BRule, Failure> {
    match s {
        "plain" => Ok(BRule::PlainTheta),
        "offset" => Ok(BRule::InfoOptimalOffset),
        other => Err(usage(format!("unknown b rule `{other}` (expected plain|offset)"))),
    }
}

fn parse_f64_list(s: &str, what: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("bad {what} entry `{part}`")))
        })
        .collect()
}

fn parse_a_schedule(s: &str) -> Result<ASchedule, Failure> {
    let bad = || usage(format!("bad a schedule `{s}`"));
    let mut parts = s.splitn(2, ':');
    let kind = parts.next().unwrap_or_default();
    let rest = parts.next();
    match (kind, rest) {
        ("cubic", None) => Ok(ASchedule::CubicDivergent),
        ("const", Some(v)) => Ok(ASchedule::Constant(v.parse().map_err(|_| bad())?)),
        ("asc", Some(v)) => {
            let (lo, hi) = v.split_once(':').ok_or_else(bad)?;
            Ok(ASchedule::LinearAscending {
                lo: lo.parse().map_err(|_| bad())?,
                hi: hi.parse().map_err(|_| bad())?,
            })
        }
        ("desc", Some(v)) => {
            let (hi, lo) = v.split_once(':').ok_or_else(bad)?;
            Ok(ASchedule::LinearDescending {
                hi: hi.parse().map_err(|_| bad())?,
                lo: lo.parse().map_err(|_| bad())?,
            })
        }
        ("strat", Some(v)) => {
            let (levels, block) = v.rsplit_once(':').ok_or_else(bad)?;
            Ok(ASchedule::Stratified {
                levels: parse_f64_list(levels, "stratified level")?,
                block_length: block.parse().map_err(|_| bad())?,
            })
        }
        ("explicit", Some(v)) => Ok(ASchedule::Explicit(parse_f64_list(v, "explicit a")?)),
        _ => Err(bad()),
    }
}

fn parse_checkpoints(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("bad checkpoint `{part}`")))
        })
        .collect()
}

fn schedule_display(schedule: &ASchedule) -> String {
    match schedule {
        ASchedule::Constant(a) => format!("const:{a}"),
        ASchedule::LinearAscending { lo, hi } => format!("asc:{lo}:{hi}"),
        ASchedule::LinearDescending { hi, lo } => format!("desc:{hi}:{lo}"),
        ASchedule::Stratified { levels, block_length } => {
            let levels: Vec<String> = levels.iter().map(|l| l.to_string()).collect();
            format!("strat:{}:{block_length}", levels.join(","))
        }
        ASchedule::Explicit(seq) => {
            let seq: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
            format!("explicit:{}", seq.join(","))
        }
        ASchedule::CubicDivergent => "cubic".to_string(),
    }
}

fn checkpoints_display(cps: &[usize]) -> String {
    cps.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn ensure_out_dir(out: &Path) -> Result<(), Failure> {
    fs::create_dir_all(out).map_err(|e| io_failure("cannot create output directory", e))
}

fn write_summary_csv(path: &Path, table: &SummaryTable) -> Result<(), Failure> {
    let mut body = String::from("n,bias,variance,mse,info_ratio,std_err_var,ks_stat,fallback_count\n");
    for row in &table.rows {
        let info_ratio = row.info_ratio.map(|v| v.to_string()).unwrap_or_default();
        body.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.n, row.bias, row.variance, row.mse, info_ratio, row.std_err_var, row.ks_stat,
            row.fallback_count
        ));
    }
    fs::write(path, body).map_err(|e| io_failure("cannot write summary", e))
}

fn print_summary(table: &SummaryTable) {
    for row in &table.rows {
        let info = row
            .info_ratio
            .map(|v| format!(" info_ratio={v:.4}"))
            .unwrap_or_default();
        println!(
            "n={:<5} bias={:+.5} var={:.6} mse={:.6}{} std_err_var={:.4} ks={:.4} fallback={}",
            row.n, row.bias, row.variance, row.mse, info, row.std_err_var, row.ks_stat,
            row.fallback_count
        );
    }
}

fn mse_points(table: &SummaryTable) -> Vec<(f64, f64)> {
    table.rows.iter().map(|r| (r.n as f64, r.mse)).collect()
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Failure> {
    let args = match &args.config {
        Some(path) => {
            let file: SimulateArgs = load_config_file(path)?;
            merge_simulate(args, file)
        }
        None => args,
    };

    let model = parse_model(args.model.as_deref().unwrap_or("rasch"))?;
    let theta = args.theta.unwrap_or(0.0);
    let n_items = args.n_items.unwrap_or(400);
    let replications = args.replications.unwrap_or(2000);
    let seed = args.seed.unwrap_or(42);
    let a_schedule = parse_a_schedule(args.a_schedule.as_deref().unwrap_or("const:1"))?;
    let c = args.c.unwrap_or(0.0);
    let default_b_rule = if model == ModelKind::ThreePl { "offset" } else { "plain" };
    let b_rule = parse_b_rule(args.b_rule.as_deref().unwrap_or(default_b_rule))?;
    let b1 = args.b1.unwrap_or(0.0);
    let eps0 = args.eps0.unwrap_or(1.0);
    let a_min = args.a_min.unwrap_or(0.5);
    let a_max = args.a_max.unwrap_or(2.0);
    let delta0 = args.delta0.unwrap_or(0.5);
    let checkpoints = match &args.checkpoints {
        Some(s) => parse_checkpoints(s)?,
        None => simulator::default_checkpoints(n_items),
    };
    let out = args.out.clone().ok_or_else(|| usage("--out is required"))?;

    let bank = match &args.bank {
        Some(path) => {
            let items = read_bank(path).map_err(|e| data(e.to_string()))?;
            ItemBank::finite(items)
        }
        None => ItemBank::Idealized,
    };

    let config = SimulationConfig {
        theta_true: theta,
        model,
        policy: DesignPolicy {
            b1,
            eps0,
            a_schedule: a_schedule.clone(),
            a_bounds: (a_min, a_max),
            c_rule: if c == 0.0 { CRule::Zero } else { CRule::Constant(c) },
            delta0,
            b_rule,
        },
        bank,
        n_items,
        replications,
        master_seed: seed,
        checkpoints: checkpoints.clone(),
    };

    let table = simulator::run_replications(&config).map_err(from_simulator)?;

    ensure_out_dir(&out)?;
    write_summary_csv(&out.join("summary.csv"), &table)?;
    let mut artifacts = vec!["summary.csv"];
    if args.svg {
        let points = mse_points(&table);
        let plot = svg::line_plot(
            "mean squared error vs test length",
            "items administered",
            "mse",
            &[svg::Series { label: "mse", color: "#1f77b4", points: &points }],
        );
        fs::write(out.join("mse.svg"), plot).map_err(|e| io_failure("cannot write svg", e))?;
        artifacts.push("mse.svg");
    }

    let resolved = json!({
        "model": model.to_string(),
        "theta": theta,
        "n-items": n_items,
        "replications": replications,
        "seed": seed,
        "a-schedule": schedule_display(&a_schedule),
        "c": c,
        "b-rule": if b_rule == BRule::PlainTheta { "plain" } else { "offset" },
        "b1": b1,
        "eps0": eps0,
        "a-min": a_min,
        "a-max": a_max,
        "delta0": delta0,
        "checkpoints": checkpoints_display(&checkpoints),
        "bank": args.bank.as_ref().map(|p| p.display().to_string()),
        "svg": args.svg,
        "out": out.display().to_string(),
    });
    artifacts.push("manifest.json");
    RunManifest::new("simulate", resolved, seed, &artifacts)
        .write(&out)
        .map_err(|e| io_failure("cannot write manifest", e))?;

    print_summary(&table);
    println!("wrote {}", out.join("summary.csv").display());
    Ok(())
}

fn merge_simulate(flags: SimulateArgs, file: SimulateArgs) -> SimulateArgs {
    SimulateArgs {
        config: None,
        model: flags.model.or(file.model),
        theta: flags.theta.or(file.theta),
        n_items: flags.n_items.or(file.n_items),
        replications: flags.replications.or(file.replications),
        seed: flags.seed.or(file.seed),
        a_schedule: flags.a_schedule.or(file.a_schedule),
        c: flags.c.or(file.c),
        b_rule: flags.b_rule.or(file.b_rule),
        b1: flags.b1.or(file.b1),
        eps0: flags.eps0.or(file.eps0),
        a_min: flags.a_min.or(file.a_min),
        a_max: flags.a_max.or(file.a_max),
        delta0: flags.delta0.or(file.delta0),
        checkpoints: flags.checkpoints.or(file.checkpoints),
        bank: flags.bank.or(file.bank),
        svg: flags.svg || file.svg,
        out: flags.out.or(file.out),
    }
}

fn write_trace_csv(path: &Path, trace: &DivergenceTrace) -> Result<(), Failure> {
    let mut body = String::from("k,a,b,y,theta_hat,bound_a13,below_theta_minus_1\n");
    for step in &trace.steps {
        body.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            step.k,
            step.a,
            step.b,
            u8::from(step.y),
            step.theta_hat,
            step.bound_a13,
            step.below_theta_minus_1
        ));
    }
    fs::write(path, body).map_err(|e| io_failure("cannot write trace", e))
}

fn cmd_diverge(args: DivergeArgs) -> Result<(), Failure> {
    let args = match &args.config {
        Some(path) => {
            let file: DivergeArgs = load_config_file(path)?;
            DivergeArgs {
                config: None,
                theta: args.theta.or(file.theta),
                theta0: args.theta0.or(file.theta0),
                eps0: args.eps0.or(file.eps0),
                horizon: args.horizon.or(file.horizon),
                out: args.out.or(file.out),
            }
        }
        None => args,
    };
    let theta = args.theta.unwrap_or(0.0);
    let theta0 = args.theta0.unwrap_or(-2.7);
    let eps0 = args.eps0.unwrap_or(1.0);
    let horizon = args.horizon.unwrap_or(200);
    let out = args.out.ok_or_else(|| usage("--out is required"))?;

    let scenario = DivergenceScenario::new(theta, theta0, eps0, horizon)
        .map_err(|e| usage(e.to_string()))?;
    let trace = counterexample::divergent_trajectory(&scenario).map_err(|e| runtime(e.to_string()))?;
    let log_prob = counterexample::log_prob_event_a(&trace, theta);

    ensure_out_dir(&out)?;
    write_trace_csv(&out.join("trace.csv"), &trace)?;
    let resolved = json!({
        "theta": theta,
        "theta0": theta0,
        "eps0": eps0,
        "horizon": scenario.horizon,
        "out": out.display().to_string(),
    });
    RunManifest::new("diverge", resolved, 0, &["trace.csv", "manifest.json"])
        .write(&out)
        .map_err(|e| io_failure("cannot write manifest", e))?;

    println!("n0 = {}", scenario.n0);
    println!("log P(A) = {:.4}", log_prob);
    let last = trace.steps.last().expect("nonempty trace");
    println!(
        "estimate after {} steps: {:.6} (stays below theta - 1 = {})",
        scenario.horizon,
        last.theta_hat,
        theta - 1.0
    );
    println!("wrote {}", out.join("trace.csv").display());
    Ok(())
}

fn cmd_mse_compare(args: MseCompareArgs) -> Result<(), Failure> {
    let args = match &args.config {
        Some(path) => {
            let file: MseCompareArgs = load_config_file(path)?;
            MseCompareArgs {
                config: None,
                a_lo: args.a_lo.or(file.a_lo),
                a_hi: args.a_hi.or(file.a_hi),
                theta: args.theta.or(file.theta),
                n_items: args.n_items.or(file.n_items),
                replications: args.replications.or(file.replications),
                seed: args.seed.or(file.seed),
                b1: args.b1.or(file.b1),
                eps0: args.eps0.or(file.eps0),
                checkpoints: args.checkpoints.or(file.checkpoints),
                svg: args.svg || file.svg,
                out: args.out.or(file.out),
            }
        }
        None => args,
    };
    let a_lo = args.a_lo.unwrap_or(0.5);
    let a_hi = args.a_hi.unwrap_or(2.0);
    let theta = args.theta.unwrap_or(0.0);
    let n_items = args.n_items.unwrap_or(30);
    let replications = args.replications.unwrap_or(5000);
    let seed = args.seed.unwrap_or(42);
    let b1 = args.b1.unwrap_or(0.0);
    let eps0 = args.eps0.unwrap_or(1.0);
    let checkpoints = match &args.checkpoints {
        Some(s) => parse_checkpoints(s)?,
        None => simulator::default_checkpoints(n_items),
    };
    let out = args.out.ok_or_else(|| usage("--out is required"))?;

    let base = |a_schedule: ASchedule| SimulationConfig {
        theta_true: theta,
        model: ModelKind::TwoPl,
        policy: DesignPolicy {
            b1,
            eps0,
            a_schedule,
            a_bounds: (a_lo.min(a_hi), a_hi.max(a_lo)),
            c_rule: CRule::Zero,
            delta0: 0.5,
            b_rule: BRule::PlainTheta,
        },
        bank: ItemBank::Idealized,
        n_items,
        replications,
        master_seed: seed,
        checkpoints: checkpoints.clone(),
    };
    let ascending = base(ASchedule::LinearAscending { lo: a_lo, hi: a_hi });
    let descending = base(ASchedule::LinearDescending { hi: a_hi, lo: a_lo });

    let (asc_table, desc_table) =
        simulator::mse_compare(&ascending, &descending).map_err(from_simulator)?;

    ensure_out_dir(&out)?;
    write_summary_csv(&out.join("mse_ascending.csv"), &asc_table)?;
    write_summary_csv(&out.join("mse_descending.csv"), &desc_table)?;
    let mut artifacts = vec!["mse_ascending.csv", "mse_descending.csv"];
    if args.svg {
        let asc_points = mse_points(&asc_table);
        let desc_points = mse_points(&desc_table);
        let plot = svg::line_plot(
            "mse under ascending vs descending discrimination",
            "items administered",
            "mse",
            &[
                svg::Series { label: "ascending a", color: "#1f77b4", points: &asc_points },
                svg::Series { label: "descending a", color: "#d62728", points: &desc_points },
            ],
        );
        fs::write(out.join("mse_overlay.svg"), plot)
            .map_err(|e| io_failure("cannot write svg", e))?;
        artifacts.push("mse_overlay.svg");
    }

    let resolved = json!({
        "a-lo": a_lo,
        "a-hi": a_hi,
        "theta": theta,
        "n-items": n_items,
        "replications": replications,
        "seed": seed,
        "b1": b1,
        "eps0": eps0,
        "checkpoints": checkpoints_display(&checkpoints),
        "svg": args.svg,
        "out": out.display().to_string(),
    });
    artifacts.push("manifest.json");
    RunManifest::new("mse-compare", resolved, seed, &artifacts)
        .write(&out)
        .map_err(|e| io_failure("cannot write manifest", e))?;

    let final_asc = asc_table.rows.last().expect("rows").mse;
    let final_desc = desc_table.rows.last().expect("rows").mse;
    println!("final-checkpoint mse: ascending={final_asc:.6} descending={final_desc:.6}");
    println!("wrote {}", out.join("mse_ascending.csv").display());
    println!("wrote {}", out.join("mse_descending.csv").display());
    Ok(())
}

fn cmd_bank(args: BankArgs) -> Result<(), Failure> {
    match args.action {
        BankAction::Inspect { path } => {
            let items = read_bank(&path).map_err(|e| data(e.to_string()))?;
            match summarize(&items) {
                None => println!("items: 0"),
                Some(s) => {
                    println!("items: {}", s.count);
                    println!("a range: [{}, {}]", s.a_range.0, s.a_range.1);
                    println!("b range: [{}, {}]", s.b_range.0, s.b_range.1);
                    println!("c range: [{}, {}]", s.c_range.0, s.c_range.1);
                }
            }
            Ok(())
        }
    }
}
