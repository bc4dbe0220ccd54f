//! Scenario presets, the Monte Carlo driver and the statistics used to
//! summarize a campaign.
//!
//! Drop `i` of a campaign draws everything from `derive_stream(master_seed, i)`,
//! so results do not depend on how drops are spread over worker threads.

use crate::beamform::CombinerKind;
use crate::channel::{drop_devices, DropParams};
use crate::error::{Result, SimError};
use crate::mac::{
    device_success_rate, generate_traffic, latency_stats, simulate_frames, success_rate, LinkConfig, MacConfig,
    SchedulerKind, TraceOptions, TrafficParams,
};
use crate::pilot::{assign_greedy, assign_qlearning, assign_random, Estimator, QLearningConfig};
use crate::powermodel::{energy_efficiency, PowerParams};
use crate::randcore::{derive_stream, f_sf, student_t_quantile};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Success-rate threshold (percent) below which a density counts as broken.
pub const BREAKING_POINT_PCT: f64 = 90.0;

/// Normal quantile used for 95% intervals once `n >= 200`.
pub const Z_975: f64 = 1.959964;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PilotStrategy {
    Random,
    Greedy,
    Qlearning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Baseline,
    Optimized,
    AiAssisted,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Baseline, Preset::Optimized, Preset::AiAssisted];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Baseline => "baseline",
            Preset::Optimized => "optimized",
            Preset::AiAssisted => "ai_assisted",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = SimError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "baseline" => Ok(Preset::Baseline),
            "optimized" => Ok(Preset::Optimized),
            "ai_assisted" => Ok(Preset::AiAssisted),
            _ => Err(SimError::Unknown {
                kind: "preset",
                name: s.to_string(),
            }),
        }
    }
}

/// Full description of one scenario. Unknown keys are rejected when parsing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub n_antennas: usize,
    pub n_devices: usize,
    /// When false every device is static regardless of `geometry.mobile_fraction`.
    pub mobile: bool,
    pub tau_p: usize,
    pub tau_c: usize,
    pub pilot_strategy: PilotStrategy,
    pub estimator: Estimator,
    pub combiner: CombinerKind,
    pub n_rf: usize,
    pub antenna_selection: bool,
    /// Fraction of the full-array antenna circuit power the selection may spend.
    pub antenna_budget_fraction: f64,
    pub scheduler: SchedulerKind,
    pub learned_weight: f64,
    pub max_streams: usize,
    pub frame_ms: f64,
    pub pilot_period_frames: u64,
    pub sinr_min_db: f64,
    pub horizon_ms: f64,
    pub tx_power_w: f64,
    pub noise_power_dbm: f64,
    pub corr_r: f64,
    pub zf_ridge: f64,
    pub qlearning: QLearningConfig,
    pub geometry: DropParams,
    pub traffic: TrafficParams,
    pub power: PowerParams,
    pub drops: usize,
    pub master_seed: u64,
}

impl ScenarioConfig {
    pub fn preset(p: Preset) -> ScenarioConfig {
        let shared = ScenarioConfig {
            name: p.name().to_string(),
            n_antennas: 128,
            n_devices: 500,
            mobile: true,
            tau_p: 60,
            tau_c: 200,
            pilot_strategy: PilotStrategy::Random,
            estimator: Estimator::Ls,
            combiner: CombinerKind::Mrc,
            n_rf: 128,
            antenna_selection: false,
            antenna_budget_fraction: 0.75,
            scheduler: SchedulerKind::RoundRobin,
            learned_weight: 0.7,
            max_streams: 16,
            frame_ms: 1.0,
            pilot_period_frames: 10,
            sinr_min_db: 0.0,
            horizon_ms: 1000.0,
            tx_power_w: 0.2,
            // thermal noise over 20 MHz plus a 2 dB receiver noise figure
            noise_power_dbm: -99.0,
            corr_r: 0.5,
            zf_ridge: 0.0,
            qlearning: QLearningConfig {
                episodes: 100,
                ..QLearningConfig::default()
            },
            geometry: DropParams::default(),
            traffic: TrafficParams::default(),
            power: PowerParams::default(),
            drops: 1000,
            master_seed: 42,
        };
        match p {
            Preset::Baseline => shared,
            Preset::Optimized => ScenarioConfig {
                tau_p: 40,
                pilot_strategy: PilotStrategy::Greedy,
                estimator: Estimator::Mmse,
                combiner: CombinerKind::Zf,
                antenna_selection: true,
                scheduler: SchedulerKind::DelayAware,
                ..shared
            },
            Preset::AiAssisted => ScenarioConfig {
                tau_p: 30,
                pilot_strategy: PilotStrategy::Qlearning,
                estimator: Estimator::Mmse,
                combiner: CombinerKind::Hybrid,
                n_rf: 32,
                antenna_selection: true,
                scheduler: SchedulerKind::Learned,
                ..shared
            },
        }
    }

    pub fn pilot_overhead(&self) -> f64 {
        self.tau_p as f64 / self.tau_c as f64
    }

    pub fn noise_var_w(&self) -> f64 {
        10f64.powf((self.noise_power_dbm - 30.0) / 10.0)
    }

    /// `min(K, N_RF or N, max_streams)`.
    pub fn spatial_streams(&self) -> usize {
        let dims = match self.combiner {
            CombinerKind::Hybrid => self.n_rf,
            _ => self.n_antennas,
        };
        self.n_devices.min(dims).min(self.max_streams)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_antennas == 0 || self.n_devices == 0 {
            return Err(SimError::invalid("n_antennas", "antennas and devices must be at least 1"));
        }
        if self.tau_p == 0 || self.tau_p >= self.tau_c {
            return Err(SimError::invalid(
                "tau_p",
                format!("need 1 <= tau_p < tau_c, got tau_p={} tau_c={}", self.tau_p, self.tau_c),
            ));
        }
        if self.n_rf == 0 || self.n_rf > self.n_antennas {
            return Err(SimError::invalid("n_rf", "must lie in [1, n_antennas]"));
        }
        if self.drops == 0 {
            return Err(SimError::invalid("drops", "must be at least 1"));
        }
        if self.max_streams == 0 {
            return Err(SimError::invalid("max_streams", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.antenna_budget_fraction) {
            return Err(SimError::invalid("antenna_budget_fraction", "must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.learned_weight) {
            return Err(SimError::invalid("learned_weight", "must lie in [0, 1]"));
        }
        if !(0.0..1.0).contains(&self.corr_r) {
            return Err(SimError::invalid("corr_r", "must lie in [0, 1)"));
        }
        if !(self.horizon_ms > 0.0 && self.horizon_ms.is_finite()) {
            return Err(SimError::invalid("horizon_ms", "must be positive"));
        }
        if !(self.zf_ridge >= 0.0) {
            return Err(SimError::invalid("zf_ridge", "must be >= 0"));
        }
        if !self.noise_power_dbm.is_finite() {
            return Err(SimError::invalid("noise_power_dbm", "must be finite"));
        }
        self.power.validate()
    }

    pub fn link(&self) -> LinkConfig {
        LinkConfig {
            n_antennas: self.n_antennas,
            corr_r: self.corr_r,
            combiner: self.combiner,
            n_rf: self.n_rf,
            estimator: self.estimator,
            pilot_overhead: self.pilot_overhead(),
            tx_power_w: self.tx_power_w,
            noise_var_w: self.noise_var_w(),
            zf_ridge: self.zf_ridge,
            antenna_budget_fraction: self.antenna_selection.then_some(self.antenna_budget_fraction),
        }
    }

    pub fn mac(&self) -> MacConfig {
        MacConfig {
            frame_ms: self.frame_ms,
            pilot_period_frames: self.pilot_period_frames,
            spatial_streams: self.spatial_streams(),
            sinr_min_db: self.sinr_min_db,
            scheduler: self.scheduler,
            learned_weight: self.learned_weight,
            horizon_ms: self.horizon_ms,
        }
    }
}

/// KPIs of one Monte Carlo drop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DropMetrics {
    pub drop_index: u64,
    /// Mean over busy frames of the summed spectral efficiency, bps/Hz.
    pub se_cell: f64,
    /// Bits per joule.
    pub ee: f64,
    pub mean_latency_ms: f64,
    pub pci: f64,
    pub success_pct: f64,
    pub pilot_overhead: f64,
    pub device_success_pct: f64,
    pub latency_p50_ms: f64,
    pub latency_iqr_ms: f64,
    pub packets: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kpi {
    SeCell,
    Ee,
    MeanLatencyMs,
    Pci,
    SuccessPct,
    PilotOverhead,
}

impl Kpi {
    pub const ALL: [Kpi; 6] = [
        Kpi::SeCell,
        Kpi::Ee,
        Kpi::MeanLatencyMs,
        Kpi::Pci,
        Kpi::SuccessPct,
        Kpi::PilotOverhead,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kpi::SeCell => "se_cell",
            Kpi::Ee => "ee",
            Kpi::MeanLatencyMs => "mean_latency_ms",
            Kpi::Pci => "pci",
            Kpi::SuccessPct => "success_pct",
            Kpi::PilotOverhead => "pilot_overhead",
        }
    }

    pub fn of(self, m: &DropMetrics) -> f64 {
        match self {
            Kpi::SeCell => m.se_cell,
            Kpi::Ee => m.ee,
            Kpi::MeanLatencyMs => m.mean_latency_ms,
            Kpi::Pci => m.pci,
            Kpi::SuccessPct => m.success_pct,
            Kpi::PilotOverhead => m.pilot_overhead,
        }
    }
}

/// One full pipeline pass for drop `drop_index`.
pub fn run_drop(cfg: &ScenarioConfig, drop_index: u64) -> Result<DropMetrics> {
    run_drop_inner(cfg, drop_index).map_err(|e| SimError::Drop {
        drop_index,
        source: Box::new(e),
    })
}

fn run_drop_inner(cfg: &ScenarioConfig, drop_index: u64) -> Result<DropMetrics> {
    cfg.validate()?;
    let mut rng = derive_stream(cfg.master_seed, drop_index);
    let mut geo_rng = rng.fork(1);
    let mut pilot_rng = rng.fork(2);
    let mut traffic_rng = rng.fork(3);
    let mut frame_rng = rng.fork(4);

    let geometry = DropParams {
        mobile_fraction: if cfg.mobile { cfg.geometry.mobile_fraction } else { 0.0 },
        ..cfg.geometry
    };
    let devices = drop_devices(cfg.n_devices, &geometry, &mut geo_rng)?;
    let noise_term = cfg.noise_var_w() / (cfg.tx_power_w * cfg.tau_p as f64);
    let assignment = match cfg.pilot_strategy {
        PilotStrategy::Random => assign_random(cfg.n_devices, cfg.tau_p, &mut pilot_rng)?,
        PilotStrategy::Greedy => assign_greedy(&devices, cfg.tau_p)?,
        PilotStrategy::Qlearning => {
            let q = QLearningConfig {
                noise_term,
                ..cfg.qlearning
            };
            assign_qlearning(&devices, cfg.tau_p, &q, &mut pilot_rng)?
        }
    };
    let packets = generate_traffic(&devices, cfg.horizon_ms, &cfg.traffic, &mut traffic_rng)?;
    if packets.is_empty() {
        return Err(SimError::Empty("packets"));
    }
    let out = simulate_frames(
        &devices,
        &assignment,
        &cfg.link(),
        &cfg.mac(),
        &cfg.power,
        packets,
        &mut frame_rng,
        TraceOptions::default(),
    )?;

    let lat = latency_stats(&out.packets)?;
    let (se_cell, mean_power) = if out.busy_frames > 0 {
        (out.se_sum / out.busy_frames as f64, out.power_sum_w / out.busy_frames as f64)
    } else {
        (0.0, cfg.power.p_fixed_w)
    };
    let ee = energy_efficiency(se_cell, cfg.power.bandwidth_hz, mean_power)?;
    let pci = if out.pci_samples > 0 {
        out.pci_sum / out.pci_samples as f64
    } else {
        0.0
    };
    Ok(DropMetrics {
        drop_index,
        se_cell,
        ee,
        mean_latency_ms: lat.mean_ms,
        pci,
        success_pct: success_rate(&out.packets)?,
        pilot_overhead: cfg.pilot_overhead(),
        device_success_pct: device_success_rate(&out.packets)?,
        latency_p50_ms: lat.p50_ms,
        latency_iqr_ms: lat.iqr_ms,
        packets: out.packets.len(),
    })
}

/// Mean, 95% half-width and range of one KPI over a campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KpiSummary {
    pub kpi: Kpi,
    pub mean: f64,
    pub ci95: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignResult {
    pub scenario: String,
    pub drops: Vec<DropMetrics>,
    pub summary: Vec<KpiSummary>,
}

impl CampaignResult {
    pub fn kpi(&self, kpi: Kpi) -> &KpiSummary {
        self.summary.iter().find(|s| s.kpi == kpi).expect("summary covers every KPI")
    }

    pub fn column(&self, kpi: Kpi) -> Vec<f64> {
        self.drops.iter().map(|d| kpi.of(d)).collect()
    }
}

/// Runs drops `0..n_drops` on `workers` threads; the result is ordered by
/// drop index and identical for every worker count.
pub fn run_campaign(cfg: &ScenarioConfig, n_drops: usize, workers: usize) -> Result<CampaignResult> {
    if n_drops == 0 {
        return Err(SimError::invalid("drops", "must be at least 1"));
    }
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| SimError::invalid("workers", e.to_string()))?;
    let drops: Vec<DropMetrics> = pool.install(|| {
        (0..n_drops as u64)
            .into_par_iter()
            .map(|i| run_drop(cfg, i))
            .collect::<Result<Vec<_>>>()
    })?;
    let summary = summarize(&drops)?;
    Ok(CampaignResult {
        scenario: cfg.name.clone(),
        drops,
        summary,
    })
}

pub fn summarize(drops: &[DropMetrics]) -> Result<Vec<KpiSummary>> {
    if drops.is_empty() {
        return Err(SimError::Empty("drops"));
    }
    Kpi::ALL
        .iter()
        .map(|&kpi| {
            let xs: Vec<f64> = drops.iter().map(|d| kpi.of(d)).collect();
            let (mean, ci95) = if xs.len() >= 2 {
                confidence_interval(&xs, 0.95)?
            } else {
                (xs[0], 0.0)
            };
            Ok(KpiSummary {
                kpi,
                mean,
                ci95,
                min: xs.iter().copied().fold(f64::INFINITY, f64::min),
                max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            })
        })
        .collect()
}

/// `(mean, half_width)` of the two-sided interval at `level`.
///
/// Uses the Student-t quantile for `n < 200`. At `level = 0.95` and
/// `n >= 200` the normal quantile 1.959964 is used instead.
pub fn confidence_interval(samples: &[f64], level: f64) -> Result<(f64, f64)> {
    let n = samples.len();
    if n < 2 {
        return Err(SimError::invalid("samples", format!("need at least 2, got {n}")));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(SimError::invalid("level", "must lie in (0, 1)"));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(SimError::invalid("samples", "must be finite"));
    }
    let nf = n as f64;
    let mean = mean_of(samples);
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    let q = if n >= 200 && level == 0.95 {
        Z_975
    } else {
        student_t_quantile(0.5 + level / 2.0, nf - 1.0)?
    };
    Ok((mean, q * var.sqrt() / nf.sqrt()))
}

/// Arithmetic mean, exact for constant samples (a float sum of n copies of
/// x divided by n need not give x back).
fn mean_of(xs: &[f64]) -> f64 {
    if xs.iter().all(|x| *x == xs[0]) {
        return xs[0];
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Anova {
    pub f: f64,
    pub p: f64,
    pub df_between: usize,
    pub df_within: usize,
}

/// One-way ANOVA. Errors when fewer than two groups, a group has fewer than
/// two samples, or every group has zero spread.
pub fn anova_oneway(groups: &[Vec<f64>]) -> Result<Anova> {
    if groups.len() < 2 {
        return Err(SimError::invalid("groups", "need at least 2 groups"));
    }
    if groups.iter().any(|g| g.len() < 2) {
        return Err(SimError::invalid("groups", "each group needs at least 2 samples"));
    }
    if groups.iter().flatten().any(|x| !x.is_finite()) {
        return Err(SimError::invalid("groups", "samples must be finite"));
    }
    let total: usize = groups.iter().map(Vec::len).sum();
    let all: Vec<f64> = groups.iter().flatten().copied().collect();
    let grand = mean_of(&all);
    let mut ssb = 0.0;
    let mut ssw = 0.0;
    for g in groups {
        let m = mean_of(g);
        ssb += g.len() as f64 * (m - grand).powi(2);
        ssw += g.iter().map(|x| (x - m).powi(2)).sum::<f64>();
    }
    if ssw == 0.0 {
        return Err(SimError::invalid("groups", "zero within-group variance"));
    }
    let df_between = groups.len() - 1;
    let df_within = total - groups.len();
    let f = (ssb / df_between as f64) / (ssw / df_within as f64);
    let p = f_sf(f, df_between as f64, df_within as f64)?;
    Ok(Anova {
        f,
        p,
        df_between,
        df_within,
    })
}

/// Pearson correlation; `None` when either side is constant.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(SimError::Shape(format!("pearson needs equal lengths >= 2, got {} and {}", x.len(), y.len())));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    if x.iter().all(|v| *v == x[0]) || y.iter().all(|v| *v == y[0]) {
        return Ok(None);
    }
    Ok(Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)))
}

/// KPI × KPI Pearson matrix over per-drop values, in [`Kpi::ALL`] order.
pub fn kpi_correlation(drops: &[DropMetrics]) -> Result<Vec<Vec<Option<f64>>>> {
    let cols: Vec<Vec<f64>> = Kpi::ALL.iter().map(|k| drops.iter().map(|d| k.of(d)).collect()).collect();
    cols.iter()
        .map(|a| cols.iter().map(|b| pearson(a, b)).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub n_devices: usize,
    pub summary: Vec<KpiSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    /// Smallest device count whose mean success rate is below [`BREAKING_POINT_PCT`].
    pub breaking_point: Option<usize>,
}

pub fn sweep(base: &ScenarioConfig, device_counts: &[usize], n_drops: usize, workers: usize) -> Result<SweepResult> {
    if device_counts.is_empty() {
        return Err(SimError::Empty("device_counts"));
    }
    let mut points = Vec::with_capacity(device_counts.len());
    for &k in device_counts {
        if k == 0 {
            return Err(SimError::invalid("device_counts", "counts must be at least 1"));
        }
        let cfg = ScenarioConfig {
            n_devices: k,
            ..base.clone()
        };
        let res = run_campaign(&cfg, n_drops, workers)?;
        points.push(SweepPoint {
            n_devices: k,
            summary: res.summary,
        });
    }
    let breaking_point = points
        .iter()
        .filter(|p| {
            p.summary
                .iter()
                .any(|s| s.kpi == Kpi::SuccessPct && s.mean < BREAKING_POINT_PCT)
        })
        .map(|p| p.n_devices)
        .min();
    Ok(SweepResult { points, breaking_point })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ci_of_one_to_four() {
        let (m, h) = confidence_interval(&[1.0, 2.0, 3.0, 4.0], 0.95).unwrap();
        assert_eq!(m, 2.5);
        // t(0.975, 3) = 3.1824 from tables
        assert!((h - 3.1824 * 1.290994 / 2.0).abs() < 1e-3, "{h}");
        assert!((h - 2.0540).abs() < 1e-3);
    }

    #[test]
    fn ci_edge_cases() {
        assert_eq!(confidence_interval(&[7.0; 5], 0.95).unwrap(), (7.0, 0.0));
        // 3 * 0.2 / 3 != 0.2 in floating point
        assert_eq!(confidence_interval(&[0.2; 3], 0.95).unwrap(), (0.2, 0.0));
        assert!(anova_oneway(&[vec![0.3; 3], vec![0.2; 3], vec![0.15; 3]]).is_err());
        assert!(confidence_interval(&[1.0], 0.95).is_err());
        assert!(confidence_interval(&[1.0, 2.0], 1.0).is_err());
        let xs: Vec<f64> = (0..250).map(|i| (i % 10) as f64).collect();
        let (m, h) = confidence_interval(&xs, 0.95).unwrap();
        let sd = (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / 249.0).sqrt();
        assert!((h - 1.959964 * sd / 250f64.sqrt()).abs() < 1e-12);
    }

    fn groups() -> Vec<Vec<f64>> {
        vec![vec![1.0, 2.0, 3.0], vec![2.0, 3.0, 4.0], vec![3.0, 4.0, 5.0]]
    }

    #[test]
    fn anova_fixture() {
        let a = anova_oneway(&groups()).unwrap();
        // SSB = 6 on 2 df, SSW = 6 on 6 df
        assert!((a.f - 3.0).abs() < 1e-12);
        assert_eq!((a.df_between, a.df_within), (2, 6));
        // F(2, 6) upper tail by Simpson's rule on the density
        let pdf = |x: f64| {
            let (d1, d2) = (2.0f64, 6.0f64);
            let b = 1.0 / 3.0; // B(d1/2, d2/2) = B(1, 3)
            (d1 / d2) * (1.0 + d1 * x / d2).powf(-(d1 + d2) / 2.0) / b
        };
        let (lo, hi, n) = (0.0, 3.0, 3000);
        let h = (hi - lo) / n as f64;
        let mut s = pdf(lo) + pdf(hi);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * pdf(lo + i as f64 * h);
        }
        let p_oracle = 1.0 - s * h / 3.0;
        assert!((p_oracle - 0.125).abs() < 1e-6);
        assert!((a.p - p_oracle).abs() < 0.002, "{}", a.p);
    }

    #[test]
    fn anova_identical_and_degenerate() {
        let g = vec![vec![1.0, 2.0, 4.0]; 3];
        let a = anova_oneway(&g).unwrap();
        assert_eq!(a.f, 0.0);
        assert!((a.p - 1.0).abs() < 1e-12);
        assert!(anova_oneway(&[vec![1.0, 1.0], vec![2.0, 2.0]]).is_err());
        assert!(anova_oneway(&[vec![1.0, 2.0]]).is_err());
        assert!(anova_oneway(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn pearson_cases() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert!((pearson(&x, &[2.0, 4.0, 6.0, 8.0]).unwrap().unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&x, &[4.0, 3.0, 2.0, 1.0]).unwrap().unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(pearson(&x, &[5.0; 4]).unwrap(), None);
        assert!(pearson(&x, &[1.0]).is_err());
        let r = pearson(&x, &[1.0, 3.0, 2.0, 4.0]).unwrap().unwrap();
        assert!((r - 0.8).abs() < 1e-12);
    }

    #[test]
    fn preset_names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!(matches!("turbo".parse::<Preset>(), Err(SimError::Unknown { .. })));
    }
}
