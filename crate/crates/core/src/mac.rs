//! IoT traffic, per-frame schedulers and the frame-level delivery loop.
//!
//! Access is grant based: a granted device trains its channel with its pilot
//! in the same frame unless it holds a recent estimate. See
//! [`simulate_frames`] for the frame structure.

use crate::beamform::{
    antenna_select_exact, antenna_utilities, select_beams, spectral_efficiency, uplink_sinr, zf, CombinerKind,
    CombinerMatrix,
};
use crate::channel::{aging_coefficient, AgingChannel, Correlation, DeviceProfile, TrafficClass};
use crate::error::{Result, SimError};
use crate::pilot::{estimate_transmissions, pci_of_transmissions, Estimator, PilotAssignment, PilotTx};
use crate::powermodel::{total_power, PowerParams};
use crate::randcore::{norm_sqr, rank_norm, CMatrix, RngStream, C64};
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Packet {
    pub device_id: usize,
    pub arrival_ms: f64,
    pub size_bits: u32,
    pub deadline_ms: f64,
    pub delivered_ms: Option<f64>,
}

impl Packet {
    pub fn latency_ms(&self) -> Option<f64> {
        self.delivered_ms.map(|d| d - self.arrival_ms)
    }

    pub fn delivered_in_time(&self) -> bool {
        self.latency_ms().is_some_and(|l| l <= self.deadline_ms + 1e-9)
    }
}

/// Traffic model parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrafficParams {
    pub packet_bits: u32,
    pub periodic_interval_ms: f64,
    pub periodic_deadline_ms: f64,
    pub urgent_rate_per_s: f64,
    pub urgent_deadline_ms: f64,
}

impl Default for TrafficParams {
    fn default() -> Self {
        TrafficParams {
            packet_bits: 1600,
            periodic_interval_ms: 100.0,
            periodic_deadline_ms: 100.0,
            urgent_rate_per_s: 5.0,
            urgent_deadline_ms: 50.0,
        }
    }
}

impl TrafficParams {
    pub fn max_deadline_ms(&self) -> f64 {
        self.periodic_deadline_ms.max(self.urgent_deadline_ms)
    }
}

/// Packet arrivals over `[0, horizon_ms)`, sorted by arrival time then device.
///
/// Periodic sensors start at a uniformly drawn whole-millisecond phase;
/// delay-sensitive devices follow a Poisson process.
pub fn generate_traffic(
    devices: &[DeviceProfile],
    horizon_ms: f64,
    params: &TrafficParams,
    rng: &mut RngStream,
) -> Result<Vec<Packet>> {
    if !(horizon_ms > 0.0 && horizon_ms.is_finite()) {
        return Err(SimError::invalid("horizon_ms", "must be positive and finite"));
    }
    if !(params.periodic_interval_ms >= 1.0) || !(params.urgent_rate_per_s > 0.0) {
        return Err(SimError::invalid("traffic", "interval must be >= 1 ms and rate positive"));
    }
    let mut packets = Vec::new();
    for dev in devices {
        match dev.traffic_class {
            TrafficClass::PeriodicSensor => {
                let slots = params.periodic_interval_ms.floor() as u64;
                let mut t = rng.below(slots) as f64;
                while t < horizon_ms {
                    packets.push(Packet {
                        device_id: dev.id,
                        arrival_ms: t,
                        size_bits: params.packet_bits,
                        deadline_ms: params.periodic_deadline_ms,
                        delivered_ms: None,
                    });
                    t += params.periodic_interval_ms;
                }
            }
            TrafficClass::DelaySensitive => {
                let rate_per_ms = params.urgent_rate_per_s / 1000.0;
                let mut t = rng.exponential(rate_per_ms);
                while t < horizon_ms {
                    packets.push(Packet {
                        device_id: dev.id,
                        arrival_ms: t,
                        size_bits: params.packet_bits,
                        deadline_ms: params.urgent_deadline_ms,
                        delivered_ms: None,
                    });
                    t += rng.exponential(rate_per_ms);
                }
            }
        }
    }
    packets.sort_by(|a, b| a.arrival_ms.total_cmp(&b.arrival_ms).then(a.device_id.cmp(&b.device_id)));
    Ok(packets)
}

/// Head-of-line packet of one backlogged device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueueHead {
    pub device: usize,
    pub arrival_ms: f64,
    pub deadline_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSchedule {
    pub frame_index: u64,
    pub granted: Vec<usize>,
    pub spatial_streams: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchedulerKind {
    RoundRobin,
    DelayAware,
    Learned,
}

/// Rotation pointer for [`schedule_round_robin`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RoundRobin {
    next: usize,
}

/// Grants backlogged devices in ascending id order, continuing after the last
/// device granted in the previous call and wrapping around.
pub fn schedule_round_robin(
    heads: &[QueueHead],
    spatial_streams: usize,
    frame_index: u64,
    state: &mut RoundRobin,
) -> FrameSchedule {
    let mut ids: Vec<usize> = heads.iter().map(|h| h.device).collect();
    ids.sort_unstable();
    ids.dedup();
    let start = ids.partition_point(|&d| d < state.next);
    let take = spatial_streams.min(ids.len());
    let granted: Vec<usize> = (0..take).map(|i| ids[(start + i) % ids.len()]).collect();
    if let Some(&last) = granted.last() {
        state.next = last + 1;
    }
    FrameSchedule {
        frame_index,
        granted,
        spatial_streams,
    }
}

/// Earliest-deadline-first over head-of-line packets. Ties: longer wait, then id.
pub fn schedule_delay_aware(heads: &[QueueHead], spatial_streams: usize, now_ms: f64, frame_index: u64) -> FrameSchedule {
    let mut order: Vec<&QueueHead> = heads.iter().collect();
    order.sort_by(|a, b| {
        let sa = a.arrival_ms + a.deadline_ms - now_ms;
        let sb = b.arrival_ms + b.deadline_ms - now_ms;
        sa.total_cmp(&sb)
            .then(a.arrival_ms.total_cmp(&b.arrival_ms))
            .then(a.device.cmp(&b.device))
    });
    FrameSchedule {
        frame_index,
        granted: order.iter().take(spatial_streams).map(|h| h.device).collect(),
        spatial_streams,
    }
}

/// Priority `w·(wait/deadline) + (1 − w)·rank_norm(channel quality)`, highest first.
/// `channel_quality` is indexed by device id. Ties go to the lower id.
pub fn schedule_learned(
    heads: &[QueueHead],
    spatial_streams: usize,
    now_ms: f64,
    channel_quality: &[f64],
    w: f64,
    frame_index: u64,
) -> Result<FrameSchedule> {
    if !(0.0..=1.0).contains(&w) {
        return Err(SimError::invalid("learned_weight", format!("must lie in [0, 1], got {w}")));
    }
    let quality: Vec<f64> = heads
        .iter()
        .map(|h| {
            channel_quality
                .get(h.device)
                .copied()
                .ok_or_else(|| SimError::Shape(format!("no channel quality for device {}", h.device)))
        })
        .collect::<Result<_>>()?;
    let ranks = rank_norm(&quality);
    let mut scored: Vec<(f64, usize)> = heads
        .iter()
        .zip(&ranks)
        .map(|(h, &r)| {
            let urgency = (now_ms - h.arrival_ms).max(0.0) / h.deadline_ms;
            (w * urgency + (1.0 - w) * r, h.device)
        })
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    Ok(FrameSchedule {
        frame_index,
        granted: scored.iter().take(spatial_streams).map(|s| s.1).collect(),
        spatial_streams,
    })
}

/// Physical-layer settings used inside the frame loop.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkConfig {
    pub n_antennas: usize,
    pub corr_r: f64,
    pub combiner: CombinerKind,
    pub n_rf: usize,
    pub estimator: Estimator,
    pub pilot_overhead: f64,
    pub tx_power_w: f64,
    pub noise_var_w: f64,
    pub zf_ridge: f64,
    /// Share of the full-array circuit power available to antenna selection.
    pub antenna_budget_fraction: Option<f64>,
}

/// MAC timing and scheduling settings.
#[derive(Debug, Clone, PartialEq)]
pub struct MacConfig {
    pub frame_ms: f64,
    pub pilot_period_frames: u64,
    pub spatial_streams: usize,
    pub sinr_min_db: f64,
    pub scheduler: SchedulerKind,
    pub learned_weight: f64,
    pub horizon_ms: f64,
}

impl Default for MacConfig {
    fn default() -> Self {
        MacConfig {
            frame_ms: 1.0,
            pilot_period_frames: 10,
            spatial_streams: 16,
            sinr_min_db: 0.0,
            scheduler: SchedulerKind::RoundRobin,
            learned_weight: 0.7,
            horizon_ms: 1000.0,
        }
    }
}

/// Everything the frame loop reports back.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FrameSimOutcome {
    pub packets: Vec<Packet>,
    pub frames: u64,
    pub busy_frames: u64,
    /// Sum over busy frames of the frame's cell spectral efficiency.
    pub se_sum: f64,
    /// Sum over busy frames of the consumed power.
    pub power_sum_w: f64,
    pub pci_sum: f64,
    pub pci_samples: u64,
    pub grants: u64,
    pub schedules: Vec<FrameSchedule>,
}

/// Options that are useful for tests and traces but not for campaigns.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TraceOptions {
    pub keep_schedules: bool,
}

struct DeviceState {
    channel: AgingChannel,
    queue: VecDeque<usize>,
    /// Last estimate and the frame it was trained in.
    estimate: Option<(Vec<C64>, u64)>,
}

/// Frame-by-frame uplink simulation.
///
/// Per frame: admit arrivals, drop packets that can no longer meet their
/// deadline, refresh antenna selection on pilot-period boundaries, schedule,
/// let granted devices without a usable estimate send their pilot, evaluate
/// SINR of the granted devices on their aged channels, and deliver the head
/// packet of every granted device whose SINR clears `sinr_min_db`.
///
/// An estimate is reused for `pilot_period_frames` frames after training. A
/// failed grant discards it, so the next grant retrains. Only devices training
/// in the same frame contaminate each other.
#[allow(clippy::too_many_arguments)]
pub fn simulate_frames(
    devices: &[DeviceProfile],
    assignment: &PilotAssignment,
    link: &LinkConfig,
    mac: &MacConfig,
    power: &PowerParams,
    mut packets: Vec<Packet>,
    rng: &mut RngStream,
    trace: TraceOptions,
) -> Result<FrameSimOutcome> {
    validate(devices, assignment, link, mac)?;
    let k = devices.len();
    let n = link.n_antennas;
    let mut chan_rng = rng.fork(1);
    let mut noise_rng = rng.fork(2);

    let mut state: Vec<DeviceState> = devices
        .iter()
        .map(|d| {
            let rho = aging_coefficient(d.doppler_hz, mac.frame_ms / 1000.0)?;
            let corr = Correlation::for_device(link.corr_r, d);
            Ok(DeviceState {
                channel: AgingChannel::new(n, d.beta, corr, rho, &mut chan_rng),
                queue: VecDeque::new(),
                estimate: None,
            })
        })
        .collect::<Result<_>>()?;

    packets.sort_by(|a, b| a.arrival_ms.total_cmp(&b.arrival_ms).then(a.device_id.cmp(&b.device_id)));
    if let Some(p) = packets.iter().find(|p| p.device_id >= k) {
        return Err(SimError::Shape(format!("packet for unknown device {}", p.device_id)));
    }
    let last_deadline = packets.iter().map(|p| p.arrival_ms + p.deadline_ms).fold(0.0, f64::max);
    let end_ms = mac.horizon_ms.max(last_deadline);
    let n_frames = (end_ms / mac.frame_ms).ceil() as u64;

    let sinr_min = 10f64.powf(mac.sinr_min_db / 10.0);
    let noise_term = link.noise_var_w / (link.tx_power_w * assignment.tau_p as f64);
    let quality: Vec<f64> = devices.iter().map(|d| d.beta).collect();
    let mut active_antennas: Vec<usize> = (0..n).collect();
    let mut planner = FftPlanner::<f64>::new();
    let mut fft: Arc<dyn Fft<f64>> = planner.plan_fft_forward(n);
    let mut rr = RoundRobin::default();

    let mut out = FrameSimOutcome::default();
    let mut next_packet = 0;
    let mut backlog: Vec<usize> = Vec::new();

    for frame in 0..n_frames {
        let now = frame as f64 * mac.frame_ms;
        let frame_end = now + mac.frame_ms;

        while next_packet < packets.len() && packets[next_packet].arrival_ms <= now + 1e-12 {
            let p = &packets[next_packet];
            state[p.device_id].queue.push_back(next_packet);
            next_packet += 1;
        }

        // expire heads that cannot finish by their deadline
        backlog.clear();
        for (d, st) in state.iter_mut().enumerate() {
            while let Some(&idx) = st.queue.front() {
                let p = &packets[idx];
                if frame_end > p.arrival_ms + p.deadline_ms + 1e-9 {
                    st.queue.pop_front();
                } else {
                    break;
                }
            }
            if matches!(st.estimate, Some((_, t)) if frame - t >= mac.pilot_period_frames) {
                st.estimate = None;
            }
            if !st.queue.is_empty() {
                backlog.push(d);
            }
        }

        if frame % mac.pilot_period_frames == 0 {
            if let Some(frac) = link.antenna_budget_fraction {
                let ests: Vec<Vec<C64>> = state
                    .iter()
                    .filter_map(|st| st.estimate.as_ref().map(|(e, _)| e.clone()))
                    .collect();
                if !ests.is_empty() {
                    let utilities = antenna_utilities(&CMatrix::from_columns(n, &ests));
                    let powers = vec![power.p_antenna_w.max(f64::MIN_POSITIVE); n];
                    let budget = frac * powers.iter().sum::<f64>();
                    let chosen = antenna_select_exact(&utilities, &powers, budget)?.indices();
                    let needed = match link.combiner {
                        CombinerKind::Hybrid => link.n_rf.max(mac.spatial_streams),
                        _ => mac.spatial_streams,
                    };
                    if chosen.len() >= needed && chosen != active_antennas {
                        active_antennas = chosen;
                        fft = planner.plan_fft_forward(active_antennas.len());
                    }
                }
            }
        }

        if backlog.is_empty() {
            continue;
        }

        let heads: Vec<QueueHead> = backlog
            .iter()
            .map(|&d| {
                let p = &packets[*state[d].queue.front().unwrap()];
                QueueHead {
                    device: d,
                    arrival_ms: p.arrival_ms,
                    deadline_ms: p.deadline_ms,
                }
            })
            .collect();
        let schedule = match mac.scheduler {
            SchedulerKind::RoundRobin => schedule_round_robin(&heads, mac.spatial_streams, frame, &mut rr),
            SchedulerKind::DelayAware => schedule_delay_aware(&heads, mac.spatial_streams, now, frame),
            SchedulerKind::Learned => {
                schedule_learned(&heads, mac.spatial_streams, now, &quality, mac.learned_weight, frame)?
            }
        };
        let granted = &schedule.granted;

        let h_full: Vec<Vec<C64>> = granted
            .iter()
            .map(|&d| state[d].channel.at(frame, &mut chan_rng).to_vec())
            .collect();

        let trainees: Vec<usize> = (0..granted.len())
            .filter(|&i| state[granted[i]].estimate.is_none())
            .collect();
        if !trainees.is_empty() {
            let txs: Vec<PilotTx<'_>> = trainees
                .iter()
                .map(|&i| PilotTx {
                    pilot: assignment.assignment[granted[i]],
                    beta: devices[granted[i]].beta,
                    h: &h_full[i],
                })
                .collect();
            let est = estimate_transmissions(
                &txs,
                assignment.tau_p,
                link.tx_power_w,
                link.noise_var_w,
                link.estimator,
                &mut noise_rng,
            )?;
            let pairs: Vec<(usize, f64)> = txs.iter().map(|t| (t.pilot, t.beta)).collect();
            for v in pci_of_transmissions(&pairs, assignment.tau_p, noise_term) {
                out.pci_sum += v;
                out.pci_samples += 1;
            }
            for (&i, e) in trainees.iter().zip(est) {
                state[granted[i]].estimate = Some((e, frame));
            }
        }

        let h_true: Vec<Vec<C64>> = h_full
            .iter()
            .map(|h| active_antennas.iter().map(|&m| h[m]).collect())
            .collect();
        let h_hat: Vec<Vec<C64>> = granted
            .iter()
            .map(|&d| {
                let (e, _) = state[d].estimate.as_ref().expect("granted devices hold estimates");
                active_antennas.iter().map(|&m| e[m]).collect()
            })
            .collect();
        let n_act = active_antennas.len();
        let powers = vec![link.tx_power_w; granted.len()];
        let sinr = match link.combiner {
            CombinerKind::Mrc => {
                let v = CombinerMatrix {
                    v: CMatrix::from_columns(n_act, &h_hat),
                    method: CombinerKind::Mrc,
                };
                sinr_or_zero(&CMatrix::from_columns(n_act, &h_true), &v, &powers, link.noise_var_w)?
            }
            CombinerKind::Zf => {
                let v = zf(&CMatrix::from_columns(n_act, &h_hat), link.zf_ridge)?;
                sinr_or_zero(&CMatrix::from_columns(n_act, &h_true), &v, &powers, link.noise_var_w)?
            }
            CombinerKind::Hybrid => {
                // F^H h equals the forward FFT of h scaled by 1/sqrt(N)
                let to_beams = |cols: &[Vec<C64>]| -> Vec<Vec<C64>> {
                    let scale = 1.0 / (n_act as f64).sqrt();
                    cols.iter()
                        .map(|c| {
                            let mut buf = c.clone();
                            fft.process(&mut buf);
                            buf.iter_mut().for_each(|z| *z *= scale);
                            buf
                        })
                        .collect()
                };
                let beam_hat = to_beams(&h_hat);
                let beam_true = to_beams(&h_true);
                let energy: Vec<f64> = (0..n_act)
                    .map(|b| beam_hat.iter().map(|c| c[b].norm_sqr()).sum())
                    .collect();
                let beams = select_beams(&energy, link.n_rf.min(n_act));
                let pick = |cols: &[Vec<C64>]| {
                    let picked: Vec<Vec<C64>> = cols.iter().map(|c| beams.iter().map(|&b| c[b]).collect()).collect();
                    CMatrix::from_columns(beams.len(), &picked)
                };
                let w = zf(&pick(&beam_hat), link.zf_ridge)?;
                sinr_or_zero(&pick(&beam_true), &w, &powers, link.noise_var_w)?
            }
        };

        let (_, se) = spectral_efficiency(&sinr, link.pilot_overhead)?;
        let chains = match link.combiner {
            CombinerKind::Hybrid => link.n_rf.min(n_act),
            _ => n_act,
        };
        out.busy_frames += 1;
        out.se_sum += se;
        out.power_sum_w += total_power(power, chains, &powers, granted.len());
        out.grants += granted.len() as u64;

        for (&d, &s) in granted.iter().zip(&sinr) {
            if s >= sinr_min {
                let idx = state[d].queue.pop_front().expect("granted device is backlogged");
                packets[idx].delivered_ms = Some(frame_end);
            } else {
                // failed grant: retrain before the next attempt
                state[d].estimate = None;
            }
        }
        if trace.keep_schedules {
            out.schedules.push(schedule);
        }
    }
    out.frames = n_frames;
    out.packets = packets;
    Ok(out)
}

/// SINR where a degenerate (all-zero) combiner column counts as an outage.
fn sinr_or_zero(h: &CMatrix, v: &CombinerMatrix, p: &[f64], noise: f64) -> Result<Vec<f64>> {
    match uplink_sinr(h, v, p, noise) {
        Err(SimError::ZeroCombiner { .. }) => Ok((0..h.cols())
            .map(|k| {
                let vk = v.v.col(k);
                if norm_sqr(vk) == 0.0 {
                    0.0
                } else {
                    single_sinr(h, vk, k, p, noise)
                }
            })
            .collect()),
        other => other,
    }
}

fn single_sinr(h: &CMatrix, v: &[C64], k: usize, p: &[f64], noise: f64) -> f64 {
    let mut signal = 0.0;
    let mut interference = 0.0;
    for j in 0..h.cols() {
        let g = crate::randcore::inner(v, h.col(j)).norm_sqr() * p[j];
        if j == k {
            signal = g;
        } else {
            interference += g;
        }
    }
    signal / (interference + noise * norm_sqr(v))
}

fn validate(devices: &[DeviceProfile], assignment: &PilotAssignment, link: &LinkConfig, mac: &MacConfig) -> Result<()> {
    if devices.is_empty() {
        return Err(SimError::invalid("n_devices", "must be at least 1"));
    }
    if assignment.n_devices() != devices.len() {
        return Err(SimError::Shape(format!(
            "pilot assignment covers {} devices, scenario has {}",
            assignment.n_devices(),
            devices.len()
        )));
    }
    if link.n_antennas == 0 {
        return Err(SimError::invalid("n_antennas", "must be at least 1"));
    }
    if link.combiner == CombinerKind::Hybrid && !(1..=link.n_antennas).contains(&link.n_rf) {
        return Err(SimError::invalid("n_rf", "must lie in [1, n_antennas]"));
    }
    if mac.spatial_streams == 0 {
        return Err(SimError::invalid("spatial_streams", "must be at least 1"));
    }
    let dims = match link.combiner {
        CombinerKind::Hybrid => link.n_rf,
        _ => link.n_antennas,
    };
    if link.combiner != CombinerKind::Mrc && mac.spatial_streams > dims {
        return Err(SimError::invalid(
            "spatial_streams",
            format!("{} streams exceed {} zero-forcing dimensions", mac.spatial_streams, dims),
        ));
    }
    if !(mac.frame_ms > 0.0) || mac.pilot_period_frames == 0 {
        return Err(SimError::invalid("frame", "frame_ms and pilot_period_frames must be positive"));
    }
    if !(link.tx_power_w > 0.0) || !(link.noise_var_w > 0.0) {
        return Err(SimError::invalid("power", "tx power and noise variance must be positive"));
    }
    if let Some(f) = link.antenna_budget_fraction {
        if !(0.0..=1.0).contains(&f) {
            return Err(SimError::invalid("antenna_budget_fraction", "must lie in [0, 1]"));
        }
    }
    Ok(())
}

/// Latency summary over delivered packets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatencyStats {
    pub delivered: usize,
    pub mean_ms: f64,
    pub p5_ms: f64,
    pub p25_ms: f64,
    pub p50_ms: f64,
    pub p75_ms: f64,
    pub p95_ms: f64,
    /// Interquartile range, used as the jitter figure.
    pub iqr_ms: f64,
}

/// Linear-interpolation percentile of sorted data (`q` in `[0, 1]`).
pub fn percentile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub fn latency_stats(packets: &[Packet]) -> Result<LatencyStats> {
    if packets.is_empty() {
        return Err(SimError::Empty("packets"));
    }
    let mut lat: Vec<f64> = packets.iter().filter_map(Packet::latency_ms).collect();
    if lat.is_empty() {
        return Err(SimError::NoDeliveries);
    }
    lat.sort_by(f64::total_cmp);
    let mean = lat.iter().sum::<f64>() / lat.len() as f64;
    let p25 = percentile_sorted(&lat, 0.25);
    let p75 = percentile_sorted(&lat, 0.75);
    Ok(LatencyStats {
        delivered: lat.len(),
        mean_ms: mean,
        p5_ms: percentile_sorted(&lat, 0.05),
        p25_ms: p25,
        p50_ms: percentile_sorted(&lat, 0.5),
        p75_ms: p75,
        p95_ms: percentile_sorted(&lat, 0.95),
        iqr_ms: p75 - p25,
    })
}

/// Percentage of packets delivered within their deadline.
pub fn success_rate(packets: &[Packet]) -> Result<f64> {
    if packets.is_empty() {
        return Err(SimError::Empty("packets"));
    }
    let ok = packets.iter().filter(|p| p.delivered_in_time()).count();
    Ok(100.0 * ok as f64 / packets.len() as f64)
}

/// Percentage of devices (with at least one packet) whose packets were all
/// delivered within their deadlines.
pub fn device_success_rate(packets: &[Packet]) -> Result<f64> {
    if packets.is_empty() {
        return Err(SimError::Empty("packets"));
    }
    let max_id = packets.iter().map(|p| p.device_id).max().unwrap_or(0);
    let mut seen = vec![false; max_id + 1];
    let mut failed = vec![false; max_id + 1];
    for p in packets {
        seen[p.device_id] = true;
        if !p.delivered_in_time() {
            failed[p.device_id] = true;
        }
    }
    let devices = seen.iter().filter(|&&s| s).count();
    let good = seen.iter().zip(&failed).filter(|(&s, &f)| s && !f).count();
    Ok(100.0 * good as f64 / devices as f64)
}
