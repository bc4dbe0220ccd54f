//! Embedded oracle checks and the golden micro-campaign.

use crate::report;
use mmimo_core::beamform::{antenna_select_exact, antenna_select_exhaustive};
use mmimo_core::campaign::{anova_oneway, confidence_interval, run_campaign, Preset, ScenarioConfig};
use mmimo_core::channel::{draw_channel, drop_devices, DropParams};
use mmimo_core::pilot::{estimate, Estimator, PilotAssignment};
use mmimo_core::randcore::derive_stream;
use std::path::Path;

pub const GOLDEN_FILE: &str = "micro_metrics.csv";
const GOLDEN: &str = include_str!("../golden/micro_metrics.csv");
const MICRO_DROPS: usize = 3;

/// Small version of a preset used for the golden file.
pub fn micro_config(p: Preset) -> ScenarioConfig {
    let mut c = ScenarioConfig::preset(p);
    c.n_antennas = 16;
    c.n_devices = 12;
    c.tau_c = 20;
    c.tau_p /= 10;
    c.n_rf = if p == Preset::AiAssisted { 4 } else { 16 };
    c.max_streams = 4;
    c.horizon_ms = 120.0;
    c.qlearning.episodes = 10;
    c.master_seed = 7;
    c
}

/// The golden text: each preset's metrics.csv, prefixed with a `# name` line.
pub fn micro_campaign() -> Result<String, String> {
    let mut out = String::new();
    for p in Preset::ALL {
        let res = run_campaign(&micro_config(p), MICRO_DROPS, 1).map_err(|e| e.to_string())?;
        out.push_str(&format!("# {}\n", p.name()));
        out.push_str(&report::metrics_csv(&res));
    }
    Ok(out)
}

fn ls_zero_noise() -> Result<(), String> {
    for seed in 0..20u64 {
        let mut rng = derive_stream(seed, 0);
        let n = 8 + rng.below(57) as usize;
        let k = 1 + rng.below(16) as usize;
        let devs = drop_devices(k, &DropParams::default(), &mut rng).map_err(|e| e.to_string())?;
        let ch = draw_channel(&devs, n, 0.5, &mut rng).map_err(|e| e.to_string())?;
        let asg = PilotAssignment::new(k, (0..k).collect()).map_err(|e| e.to_string())?;
        let est = estimate(&ch, &asg, 0.2, 0.0, Estimator::Ls, &mut rng).map_err(|e| e.to_string())?;
        for c in 0..k {
            let err: f64 = est.h_hat.col(c).iter().zip(ch.h.col(c)).map(|(a, b)| (a - b).norm_sqr()).sum();
            let norm: f64 = ch.h.col(c).iter().map(|z| z.norm_sqr()).sum();
            if (err / norm).sqrt() >= 1e-10 {
                return Err(format!("seed {seed} device {c}: relative error {:e}", (err / norm).sqrt()));
            }
        }
    }
    Ok(())
}

fn knapsack() -> Result<(), String> {
    for seed in 0..50u64 {
        let mut rng = derive_stream(seed, 1);
        let n = 1 + rng.below(12) as usize;
        let u: Vec<f64> = (0..n).map(|_| rng.below(20) as f64).collect();
        let p: Vec<f64> = (0..n).map(|_| 0.5 * (1 + rng.below(9)) as f64).collect();
        let budget = (rng.uniform(0.0, 1.2) * p.iter().sum::<f64>()).floor();
        let sel = antenna_select_exact(&u, &p, budget).map_err(|e| e.to_string())?;
        let (set, value, _) = antenna_select_exhaustive(&u, &p, budget);
        if sel.indices() != set || sel.value != value {
            return Err(format!("seed {seed}: {:?} vs exhaustive {set:?}", sel.indices()));
        }
    }
    Ok(())
}

fn anova_example() -> Result<(), String> {
    let g = vec![vec![1.0, 2.0, 3.0], vec![2.0, 3.0, 4.0], vec![3.0, 4.0, 5.0]];
    let a = anova_oneway(&g).map_err(|e| e.to_string())?;
    if (a.f - 3.0).abs() > 1e-12 || (a.p - 0.125).abs() > 0.002 {
        return Err(format!("F = {}, p = {}", a.f, a.p));
    }
    let (_, h) = confidence_interval(&[1.0, 2.0, 3.0, 4.0], 0.95).map_err(|e| e.to_string())?;
    if (h - 2.0540).abs() > 1e-3 {
        return Err(format!("CI half-width {h}"));
    }
    Ok(())
}

fn golden(dir: Option<&Path>) -> Result<(), String> {
    let expected = match dir {
        Some(d) => std::fs::read_to_string(d.join(GOLDEN_FILE))
            .map_err(|e| format!("cannot read {}: {e}", d.join(GOLDEN_FILE).display()))?,
        None => GOLDEN.to_string(),
    };
    let got = micro_campaign()?;
    if got == expected {
        return Ok(());
    }
    let line = got
        .lines()
        .zip(expected.lines())
        .position(|(a, b)| a != b)
        .unwrap_or_else(|| got.lines().count().min(expected.lines().count()));
    Err(format!("output differs from golden file at line {}", line + 1))
}

/// Runs every check, printing one line each; true when all pass.
pub fn run(golden_dir: Option<&Path>) -> bool {
    let checks = [
        ("ls_zero_noise_exact", ls_zero_noise()),
        ("knapsack_vs_exhaustive", knapsack()),
        ("anova_and_ci_examples", anova_example()),
        ("golden_micro_campaign", golden(golden_dir)),
    ];
    let mut ok = true;
    for (name, outcome) in checks {
        match outcome {
            Ok(()) => println!("pass  {name}"),
            Err(why) => {
                ok = false;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    ok
}
