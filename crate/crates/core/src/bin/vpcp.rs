use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use vpcp::harness::{
    build_variety, ldt_bits, load_graph, pcp_bits, preset, preset_description, run_experiment, write_csv, zerotest_bits,
    ExperimentConfig, HarnessError, LdtConfig, LdtKind, Mode, PcpConfig, Report, ZeroConfig, DEFAULT_BUDGET, PRESETS,
};
use vpcp::oracle::CorruptionMode;
use vpcp::pcp::PcpInstance;

#[derive(Parser)]
#[command(name = "vpcp", version, about = "Zero-on-variety tests and a 3-COLOR PCP over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a variety.
    #[command(subcommand)]
    Variety(VarietyCmd),
    /// Zero-on-variety test experiments.
    #[command(subcommand)]
    Zerotest(ZeroCmd),
    /// 3-COLOR PCP experiments.
    #[command(subcommand)]
    Pcp(PcpCmd),
    /// Low-degree test and local correction experiments.
    #[command(subcommand)]
    Ldt(LdtCmd),
    /// Randomness bits per verifier invocation.
    Budget(BudgetArgs),
    /// Built-in configurations.
    #[command(subcommand)]
    Preset(PresetCmd),
    /// Run an experiment from a JSON config file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Clone)]
struct VarietyArgs {
    /// Field modulus, an odd prime.
    #[arg(long)]
    q: u32,
    /// `cube:H=0,1;m=2`, `ball1:n=3`, `pow:(ball1:n=2)^2` or `points:<file>`.
    #[arg(long)]
    variety: String,
}

#[derive(Subcommand)]
enum VarietyCmd {
    /// Dimension, size, extension degree and Grobner complexity.
    Info(VarietyArgs),
    /// The Grobner generating set, one polynomial per line.
    Grobner(VarietyArgs),
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a CSV table with one row per run.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Report elapsed_ms = 0 so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum ZeroCmd {
    Run(ZeroArgs),
}

#[derive(Args)]
struct ZeroArgs {
    #[command(flatten)]
    variety: VarietyArgs,
    /// Proof degree; defaults to the extension degree plus one.
    #[arg(long)]
    degree: Option<usize>,
    /// `random`, `zero`, or a polynomial such as `x1^2 + 3*x1*x2`.
    #[arg(long, default_value = "random")]
    poly: String,
    #[arg(long, default_value = "completeness")]
    mode: Mode,
    /// Comma-separated adversaries: honest, wrong-poly, zero-m, random-m, corrupt-m:<delta>, inconsistent.
    #[arg(long, default_value = "honest")]
    adversary: String,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate the whole randomness space instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Soundness passes when the 99% lower bound exceeds this.
    #[arg(long, default_value_t = 0.04)]
    min_reject: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Subcommand)]
enum PcpCmd {
    Run(PcpArgs),
}

#[derive(Args)]
struct PcpArgs {
    /// Edge-list file (first line: vertex count) or `complete:<n>`.
    #[arg(long)]
    graph: String,
    #[command(flatten)]
    variety: VarietyArgs,
    #[arg(long, default_value = "completeness")]
    mode: Mode,
    /// Comma-separated adversaries: honest, improper, fake-b, corrupt-chi:<delta>, zero-certs.
    #[arg(long, default_value = "honest")]
    adversary: String,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, default_value_t = 0.0)]
    min_reject: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Subcommand)]
enum LdtCmd {
    Run(LdtArgs),
}

#[derive(Args)]
struct LdtArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    d: usize,
    /// `ldt` or `lc`.
    #[arg(long, default_value = "ldt", value_parser = parse_kind)]
    test: LdtKind,
    /// Comma-separated corruption fractions.
    #[arg(long, default_value = "0")]
    corrupt: String,
    /// `point`, `lines` or `both`.
    #[arg(long, default_value = "point", value_parser = parse_target)]
    target: CorruptionMode,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BudgetArgs {
    /// `zerotest`, `pcp` or `ldt`.
    #[arg(long)]
    experiment: String,
    #[arg(long)]
    q: u32,
    /// Required for zerotest and pcp.
    #[arg(long)]
    variety: Option<String>,
    /// Required for pcp.
    #[arg(long)]
    graph: Option<String>,
    /// Required for ldt.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    reps: usize,
}

#[derive(Subcommand)]
enum PresetCmd {
    /// Names and descriptions.
    List,
    /// Print a preset's config as JSON.
    Show { name: String },
    /// Run a preset.
    Run {
        name: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_kind(s: &str) -> Result<LdtKind, String> {
    match s {
        "ldt" => Ok(LdtKind::Ldt),
        "lc" => Ok(LdtKind::Lc),
        _ => Err(format!("expected ldt or lc, got {s:?}")),
    }
}

fn parse_target(s: &str) -> Result<CorruptionMode, String> {
    match s {
        "point" => Ok(CorruptionMode::Point),
        "lines" => Ok(CorruptionMode::Lines),
        "both" => Ok(CorruptionMode::Both),
        _ => Err(format!("expected point, lines or both, got {s:?}")),
    }
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
}

fn emit_json(value: &serde_json::Value, path: Option<&PathBuf>) -> Result<(), HarnessError> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Runs each labelled config, writes the reports and returns whether all passed.
fn run_all(runs: Vec<(String, ExperimentConfig)>, out: &OutputArgs) -> Result<bool, HarnessError> {
    let mut rows: Vec<(String, Report)> = Vec::new();
    for (label, cfg) in runs {
        let report = run_experiment(&cfg, !out.no_timing)?;
        eprintln!(
            "{} {label}: {}/{} rejected, rate {:.4} (99% CI {:.4}..{:.4}) {}",
            report.experiment,
            report.rejects,
            report.trials,
            report.rate,
            report.ci99[0],
            report.ci99[1],
            if report.pass { "pass" } else { "FAIL" }
        );
        rows.push((label, report));
    }
    let pass = rows.iter().all(|(_, r)| r.pass);
    let value = if rows.len() == 1 {
        serde_json::to_value(&rows[0].1)?
    } else {
        serde_json::to_value(rows.iter().map(|(_, r)| r).collect::<Vec<_>>())?
    };
    emit_json(&value, out.out.as_ref())?;
    if let Some(path) = &out.csv {
        write_csv(BufWriter::new(File::create(path)?), &rows)?;
    }
    Ok(pass)
}

fn variety_cmd(cmd: VarietyCmd) -> Result<bool, HarnessError> {
    match cmd {
        VarietyCmd::Info(a) => {
            let (v, g) = build_variety(a.q, &a.variety)?;
            let points: Vec<Vec<u32>> = v.points().iter().map(|p| p.iter().map(|x| x.value()).collect()).collect();
            emit_json(
                &json!({
                    "q": a.q,
                    "variety": a.variety,
                    "m": v.dim(),
                    "size": v.len(),
                    "extension_degree": v.extension_degree(),
                    "grobner_complexity": g.len(),
                    "grobner_max_degree": g.max_degree(),
                    "points": points,
                }),
                None,
            )?;
        }
        VarietyCmd::Grobner(a) => {
            let (_, g) = build_variety(a.q, &a.variety)?;
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            for p in g.generators() {
                writeln!(w, "{p}")?;
            }
        }
    }
    Ok(true)
}

fn budget_cmd(a: BudgetArgs) -> Result<bool, HarnessError> {
    let need = |o: Option<String>, what: &str| o.ok_or_else(|| HarnessError::Config(format!("--{what} is required")));
    let value = match a.experiment.as_str() {
        "zerotest" => {
            let (v, g) = build_variety(a.q, &need(a.variety, "variety")?)?;
            let bits = zerotest_bits(v.field(), v.dim(), g.len()) * a.reps as u64;
            json!({"experiment": "zerotest", "q": a.q, "m": v.dim(), "k": g.len(), "reps": a.reps, "bits": bits})
        }
        "pcp" => {
            let (v, g) = build_variety(a.q, &need(a.variety, "variety")?)?;
            let graph = load_graph(&need(a.graph, "graph")?)?;
            let inst = PcpInstance::new(v, g, graph).map_err(|e| HarnessError::Config(e.to_string()))?;
            let bits = pcp_bits(inst.field(), inst.m(), inst.k(), inst.k2(), a.reps);
            json!({"experiment": "pcp", "q": a.q, "m": inst.m(), "k": inst.k(), "k2": inst.k2(), "reps": a.reps, "bits": bits})
        }
        "ldt" => {
            let m = a.m.ok_or_else(|| HarnessError::Config("--m is required".into()))?;
            let fq = vpcp::gf::Field::new(a.q).map_err(|e| HarnessError::Config(e.to_string()))?;
            json!({"experiment": "ldt", "q": a.q, "m": m, "reps": a.reps, "bits": ldt_bits(fq, m) * a.reps as u64})
        }
        other => return Err(HarnessError::Config(format!("unknown experiment {other:?}"))),
    };
    emit_json(&value, None)?;
    Ok(true)
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Variety(cmd) => variety_cmd(cmd),
        Command::Budget(a) => budget_cmd(a),
        Command::Zerotest(ZeroCmd::Run(a)) => {
            let runs = split_list(&a.adversary)
                .into_iter()
                .map(|adv| {
                    let cfg = ZeroConfig {
                        q: a.variety.q,
                        variety: a.variety.variety.clone(),
                        degree: a.degree,
                        poly: a.poly.clone(),
                        mode: a.mode,
                        adversary: adv.clone(),
                        trials: a.trials,
                        seed: a.seed,
                        exhaustive: a.exhaustive,
                        budget: a.budget,
                        min_reject: a.min_reject,
                    };
                    (adv, ExperimentConfig::Zerotest(cfg))
                })
                .collect();
            run_all(runs, &a.out)
        }
        Command::Pcp(PcpCmd::Run(a)) => {
            let runs = split_list(&a.adversary)
                .into_iter()
                .map(|adv| {
                    let cfg = PcpConfig {
                        q: a.variety.q,
                        variety: a.variety.variety.clone(),
                        graph: a.graph.clone(),
                        mode: a.mode,
                        adversary: adv.clone(),
                        trials: a.trials,
                        seed: a.seed,
                        reps: a.reps,
                        min_reject: a.min_reject,
                    };
                    (adv, ExperimentConfig::Pcp(cfg))
                })
                .collect();
            run_all(runs, &a.out)
        }
        Command::Ldt(LdtCmd::Run(a)) => {
            let mut runs = Vec::new();
            for frac in split_list(&a.corrupt) {
                let corrupt: f64 =
                    frac.parse().map_err(|_| HarnessError::Config(format!("bad corruption fraction {frac:?}")))?;
                let cfg = LdtConfig {
                    q: a.q,
                    m: a.m,
                    d: a.d,
                    test: a.test,
                    corrupt,
                    target: a.target,
                    trials: a.trials,
                    seed: a.seed,
                    exhaustive: a.exhaustive,
                    budget: a.budget,
                };
                runs.push((frac, ExperimentConfig::Ldt(cfg)));
            }
            run_all(runs, &a.out)
        }
        Command::Preset(PresetCmd::List) => {
            for name in PRESETS {
                println!("{name:<14} {}", preset_description(name).unwrap_or_default());
            }
            Ok(true)
        }
        Command::Preset(PresetCmd::Show { name }) => {
            emit_json(&serde_json::to_value(preset(&name)?)?, None)?;
            Ok(true)
        }
        Command::Preset(PresetCmd::Run { name, out }) => run_all(vec![(name.clone(), preset(&name)?)], &out),
        Command::Run { config, out } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| HarnessError::Config(format!("{}: {e}", config.display())))?;
            let cfg: ExperimentConfig =
                serde_json::from_str(&text).map_err(|e| HarnessError::Config(format!("{}: {e}", config.display())))?;
            run_all(vec![(cfg.name().to_string(), cfg)], &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
