//! `mmimo`: command-line driver for the Massive MIMO IoT uplink simulator.

mod config;
mod report;
mod selftest;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use mmimo_core::campaign::{anova_oneway, run_campaign, sweep, CampaignResult, Kpi, Preset, ScenarioConfig};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or config; exit code 2.
    Usage(String),
    /// The simulation or file output failed; exit code 1.
    Runtime(anyhow::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

#[derive(Parser)]
#[command(name = "mmimo", version, about = "Massive MIMO uplink simulator for dense IoT deployments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CampaignArgs {
    /// Monte Carlo drops (default: the scenario's own value)
    #[arg(long)]
    drops: Option<usize>,
    /// Master seed (default: the scenario's own value)
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads (default: available cores)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario
    Run {
        /// JSON config laid over the preset
        config: Option<PathBuf>,
        #[arg(long, default_value = "baseline")]
        preset: Preset,
        #[command(flatten)]
        common: CampaignArgs,
    },
    /// Run several presets on the same seed and compare them
    Compare {
        #[arg(long, value_delimiter = ',', default_value = "baseline,optimized,ai_assisted")]
        presets: Vec<Preset>,
        #[command(flatten)]
        common: CampaignArgs,
    },
    /// Sweep the device count for one preset
    Sweep {
        #[arg(long, default_value = "baseline")]
        preset: Preset,
        #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
        devices: Vec<usize>,
        #[command(flatten)]
        common: CampaignArgs,
    },
    /// Run the built-in checks
    Selftest {
        /// Directory holding an alternative micro_metrics.csv
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long, hide = true)]
        print_golden: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let command_line: Vec<String> = std::env::args().collect();
    match dispatch(cli.command, &command_line.join(" ")) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cmd: Command, command_line: &str) -> Result<ExitCode, CliError> {
    match cmd {
        Command::Run { config, preset, common } => {
            let cfg = match &config {
                Some(path) => config::load(path, preset)?,
                None => ScenarioConfig::preset(preset),
            };
            run(cfg, &common, command_line)?;
        }
        Command::Compare { presets, common } => compare(&presets, &common, command_line)?,
        Command::Sweep { preset, devices, common } => sweep_cmd(preset, &devices, &common, command_line)?,
        Command::Selftest { golden, print_golden } => {
            if print_golden {
                print!("{}", selftest::micro_campaign().map_err(anyhow::Error::msg)?);
                return Ok(ExitCode::SUCCESS);
            }
            if !selftest::run(golden.as_deref()) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

struct Settings {
    drops: usize,
    seed: u64,
    workers: usize,
}

fn settings(cfg: &ScenarioConfig, a: &CampaignArgs) -> Result<Settings, CliError> {
    let drops = a.drops.unwrap_or(cfg.drops);
    if drops == 0 {
        return Err(CliError::Usage("--drops must be at least 1".into()));
    }
    let workers = a
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    Ok(Settings {
        drops,
        seed: a.seed.unwrap_or(cfg.master_seed),
        workers,
    })
}

fn out_dir(path: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(())
}

fn manifest(command_line: &str, digest: String, s: &Settings, started: String, outputs: &[String]) -> Value {
    json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command_line,
        "config_digest": digest,
        "master_seed": s.seed,
        "drops": s.drops,
        "workers": s.workers,
        "started_at": started,
        "finished_at": chrono::Utc::now().to_rfc3339(),
        "outputs": outputs,
    })
}

fn campaign(cfg: &ScenarioConfig, s: &Settings) -> Result<CampaignResult, CliError> {
    run_campaign(cfg, s.drops, s.workers)
        .with_context(|| format!("scenario {}", cfg.name))
        .map_err(CliError::Runtime)
}

/// Writes the per-scenario files into `dir` and returns their names.
fn write_scenario(dir: &Path, res: &CampaignResult, seed: u64) -> Result<Vec<String>, CliError> {
    Ok(vec![
        report::write(dir, "metrics.csv", &report::metrics_csv(res))?,
        report::write(dir, "latency.csv", &report::latency_csv(res))?,
        report::write_json(dir, "summary.json", &report::scenario_json(res, seed))?,
    ])
}

fn print_summary(res: &CampaignResult) {
    println!("{} ({} drops)", res.scenario, res.drops.len());
    for s in &res.summary {
        println!("  {:<16} {:>14} ± {}", s.kpi.name(), report::num(s.mean), report::num(s.ci95));
    }
}

fn run(mut cfg: ScenarioConfig, a: &CampaignArgs, command_line: &str) -> Result<(), CliError> {
    let started = chrono::Utc::now().to_rfc3339();
    let s = settings(&cfg, a)?;
    cfg.master_seed = s.seed;
    cfg.drops = s.drops;
    config::check(&cfg)?;
    let res = campaign(&cfg, &s)?;
    out_dir(&a.out)?;
    let mut outputs = write_scenario(&a.out, &res, s.seed)?;
    outputs.push("manifest.json".into());
    report::write_json(&a.out, "manifest.json", &manifest(command_line, config::digest(&cfg), &s, started, &outputs))?;
    print_summary(&res);
    Ok(())
}

fn compare(presets: &[Preset], a: &CampaignArgs, command_line: &str) -> Result<(), CliError> {
    if presets.len() < 2 {
        return Err(CliError::Usage("compare needs at least two presets".into()));
    }
    for (i, p) in presets.iter().enumerate() {
        if presets[..i].contains(p) {
            return Err(CliError::Usage(format!("preset {p} listed twice")));
        }
    }
    let started = chrono::Utc::now().to_rfc3339();
    let s = settings(&ScenarioConfig::preset(presets[0]), a)?;
    let cfgs: Vec<ScenarioConfig> = presets
        .iter()
        .map(|&p| ScenarioConfig {
            master_seed: s.seed,
            drops: s.drops,
            ..ScenarioConfig::preset(p)
        })
        .collect();
    out_dir(&a.out)?;
    let mut results = Vec::new();
    let mut outputs = Vec::new();
    for cfg in &cfgs {
        let res = campaign(cfg, &s)?;
        let sub = a.out.join(&cfg.name);
        out_dir(&sub)?;
        for f in write_scenario(&sub, &res, s.seed)? {
            outputs.push(format!("{}/{f}", cfg.name));
        }
        print_summary(&res);
        results.push(res);
    }

    let anova: Vec<(Kpi, Result<_, String>)> = Kpi::ALL
        .iter()
        .map(|&k| {
            let groups: Vec<Vec<f64>> = results.iter().map(|r| r.column(k)).collect();
            (k, anova_oneway(&groups).map_err(|e| e.to_string()))
        })
        .collect();
    for (k, a) in &anova {
        match a {
            Ok(a) => println!("anova {:<16} F = {} p = {}", k.name(), report::num(a.f), report::num(a.p)),
            Err(why) => println!("anova {:<16} n/a ({why})", k.name()),
        }
    }
    outputs.push(report::write(&a.out, "compare.csv", &report::compare_csv(&results))?);
    outputs.push(report::write_json(&a.out, "anova.json", &report::anova_json(&results, &anova))?);
    let summary = json!({
        "scenarios": results.iter().map(|r| report::scenario_json(r, s.seed)).collect::<Vec<_>>(),
    });
    outputs.push(report::write_json(&a.out, "summary.json", &summary)?);
    outputs.push("manifest.json".into());
    report::write_json(&a.out, "manifest.json", &manifest(command_line, config::digest(&cfgs), &s, started, &outputs))?;
    Ok(())
}

fn sweep_cmd(preset: Preset, devices: &[usize], a: &CampaignArgs, command_line: &str) -> Result<(), CliError> {
    if devices.is_empty() || devices.contains(&0) {
        return Err(CliError::Usage("--devices needs positive device counts".into()));
    }
    let started = chrono::Utc::now().to_rfc3339();
    let mut cfg = ScenarioConfig::preset(preset);
    let s = settings(&cfg, a)?;
    cfg.master_seed = s.seed;
    cfg.drops = s.drops;
    let res = sweep(&cfg, devices, s.drops, s.workers)
        .context("sweep")
        .map_err(CliError::Runtime)?;
    out_dir(&a.out)?;
    let mut outputs = vec![
        report::write(&a.out, "sweep.csv", &report::sweep_csv(&res))?,
        report::write_json(&a.out, "sweep.json", &report::sweep_json(&res, preset.name(), s.drops, s.seed))?,
    ];
    outputs.push("manifest.json".into());
    report::write_json(&a.out, "manifest.json", &manifest(command_line, config::digest(&cfg), &s, started, &outputs))?;
    for p in &res.points {
        let succ = p.summary.iter().find(|k| k.kpi == Kpi::SuccessPct).expect("success summarized");
        println!("{:>6} devices  success {}%", p.n_devices, report::num(succ.mean));
    }
    match res.breaking_point {
        Some(n) => println!("breaking point: {n} devices"),
        None => println!("breaking point: not reached"),
    }
    Ok(())
}
