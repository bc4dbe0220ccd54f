//! Pilot books, pilot assignment, contaminated channel estimation and the
//! pilot contamination index (PCI).
//!
//! A "cluster" here is the set of devices sharing one pilot. After despreading
//! with pilot `t`, the base station observes
//!
//! ```text
//! y_t = Σ_{k: pilot(k) = t} h_k + n / sqrt(p·τ_p),   n ~ CN(0, σ² I)
//! ```
//!
//! LS takes `ĥ_k = y_t`; scalar MMSE takes `ĥ_k = c_k y_t` with
//! `c_k = β_k / (Σ_{j on t} β_j + σ²/(p·τ_p))`.

use crate::channel::{ChannelRealization, DeviceProfile};
use crate::error::{Result, SimError};
use crate::randcore::{CMatrix, RngStream, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::str::FromStr;

/// Device → pilot map over a book of `tau_p` orthogonal pilots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PilotAssignment {
    pub tau_p: usize,
    pub assignment: Vec<usize>,
}

impl PilotAssignment {
    pub fn new(tau_p: usize, assignment: Vec<usize>) -> Result<Self> {
        if tau_p == 0 {
            return Err(SimError::invalid("tau_p", "must be at least 1"));
        }
        if let Some(&bad) = assignment.iter().find(|&&p| p >= tau_p) {
            return Err(SimError::invalid("assignment", format!("pilot {bad} >= tau_p {tau_p}")));
        }
        Ok(PilotAssignment { tau_p, assignment })
    }

    pub fn n_devices(&self) -> usize {
        self.assignment.len()
    }

    /// Number of devices on each pilot.
    pub fn reuse_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.tau_p];
        for &p in &self.assignment {
            counts[p] += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    Ls,
    Mmse,
}

impl FromStr for Estimator {
    type Err = SimError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ls" => Ok(Estimator::Ls),
            "mmse" => Ok(Estimator::Mmse),
            _ => Err(SimError::Unknown {
                kind: "estimator",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimationResult {
    pub h_hat: CMatrix,
    pub nmse: Vec<f64>,
    pub method: Estimator,
}

/// Unitary DFT pilot book; column `t` is pilot `t`.
pub fn build_pilot_book(tau_p: usize) -> Result<CMatrix> {
    if tau_p == 0 {
        return Err(SimError::invalid("tau_p", "must be at least 1"));
    }
    let scale = 1.0 / (tau_p as f64).sqrt();
    Ok(CMatrix::from_fn(tau_p, tau_p, |i, t| {
        C64::from_polar(scale, -2.0 * PI * (i * t) as f64 / tau_p as f64)
    }))
}

/// Independent uniform pilot per device.
pub fn assign_random(k: usize, tau_p: usize, rng: &mut RngStream) -> Result<PilotAssignment> {
    if k == 0 {
        return Err(SimError::invalid("n_devices", "must be at least 1"));
    }
    if tau_p == 0 {
        return Err(SimError::invalid("tau_p", "must be at least 1"));
    }
    let assignment = (0..k).map(|_| rng.below(tau_p as u64) as usize).collect();
    PilotAssignment::new(tau_p, assignment)
}

/// Ranks devices by `0.5·rank_norm(β) + 0.5·rank_norm(Doppler)` and deals them
/// round-robin over the pilots, best score first.
pub fn assign_greedy(devices: &[DeviceProfile], tau_p: usize) -> Result<PilotAssignment> {
    if devices.is_empty() {
        return Err(SimError::invalid("n_devices", "must be at least 1"));
    }
    if tau_p == 0 {
        return Err(SimError::invalid("tau_p", "must be at least 1"));
    }
    let betas: Vec<f64> = devices.iter().map(|d| d.beta).collect();
    let dopplers: Vec<f64> = devices.iter().map(|d| d.doppler_hz).collect();
    let rb = crate::randcore::rank_norm(&betas);
    let rd = crate::randcore::rank_norm(&dopplers);
    let score: Vec<f64> = rb.iter().zip(&rd).map(|(a, b)| 0.5 * a + 0.5 * b).collect();
    let mut order: Vec<usize> = (0..devices.len()).collect();
    order.sort_by(|&a, &b| {
        score[b]
            .total_cmp(&score[a])
            .then(devices[a].id.cmp(&devices[b].id))
    });
    let mut assignment = vec![0; devices.len()];
    for (slot, &k) in order.iter().enumerate() {
        assignment[k] = slot % tau_p;
    }
    PilotAssignment::new(tau_p, assignment)
}

/// Tabular Q-learning hyper-parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QLearningConfig {
    pub episodes: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub epsilon_start: f64,
    pub epsilon_end: f64,
    /// `σ²/(p·τ_p)` used in the PCI reward.
    pub noise_term: f64,
}

impl Default for QLearningConfig {
    fn default() -> Self {
        QLearningConfig {
            episodes: 500,
            alpha: 0.1,
            gamma: 0.9,
            epsilon_start: 1.0,
            epsilon_end: 0.05,
            noise_term: 0.0,
        }
    }
}

const LOAD_BUCKETS: usize = 4;
const INTERFERENCE_BUCKETS: usize = 4;

/// Environment state shared by training episodes and the final rollout.
struct PilotEnv {
    load: Vec<usize>,
    beta_sum: Vec<f64>,
    members: Vec<Vec<f64>>,
    sorted: Vec<f64>,
}

impl PilotEnv {
    fn new(tau_p: usize) -> Self {
        PilotEnv {
            load: vec![0; tau_p],
            beta_sum: vec![0.0; tau_p],
            members: vec![Vec::new(); tau_p],
            sorted: vec![0.0; tau_p],
        }
    }

    fn reset(&mut self) {
        self.load.iter_mut().for_each(|l| *l = 0);
        self.beta_sum.iter_mut().for_each(|s| *s = 0.0);
        self.members.iter_mut().for_each(Vec::clear);
    }

    /// Fills `states[t]` with the discretized state of candidate pilot `t`.
    fn candidate_states(&mut self, states: &mut [usize]) {
        let tau = self.load.len();
        self.sorted.copy_from_slice(&self.beta_sum);
        self.sorted.sort_by(f64::total_cmp);
        let min_load = self.load.iter().copied().min().unwrap_or(0);
        for t in 0..tau {
            let load = (self.load[t] - min_load).min(LOAD_BUCKETS - 1);
            let below = self.sorted.partition_point(|&s| s < self.beta_sum[t]);
            let interf = (INTERFERENCE_BUCKETS * below / tau).min(INTERFERENCE_BUCKETS - 1);
            states[t] = load * INTERFERENCE_BUCKETS + interf;
        }
    }

    /// Pair PCI the device would create on pilot `t`: every co-pilot pair is
    /// scored as if the two devices were the only ones sending that pilot.
    fn pair_cost(&self, t: usize, beta: f64, noise_term: f64) -> f64 {
        self.members[t].iter().map(|&b| (b + beta) / (b + beta + noise_term)).sum()
    }

    /// Places a device and returns the reward: the mean pair cost over all
    /// candidate pilots minus the cost of the chosen one, divided by `k`.
    fn place(&mut self, pilot: usize, beta: f64, k: usize, noise_term: f64) -> f64 {
        let tau = self.load.len();
        let mean = (0..tau).map(|t| self.pair_cost(t, beta, noise_term)).sum::<f64>() / tau as f64;
        let cost = self.pair_cost(pilot, beta, noise_term);
        self.load[pilot] += 1;
        self.beta_sum[pilot] += beta;
        self.members[pilot].push(beta);
        (mean - cost) / k as f64
    }

    /// Places a device without computing a reward.
    fn commit(&mut self, pilot: usize, beta: f64) {
        self.load[pilot] += 1;
        self.beta_sum[pilot] += beta;
        self.members[pilot].push(beta);
    }
}

fn greedy_action(q: &[f64], states: &[usize]) -> usize {
    let mut best = 0;
    let mut best_v = f64::NEG_INFINITY;
    for (t, &s) in states.iter().enumerate() {
        if q[s] > best_v {
            best_v = q[s];
            best = t;
        }
    }
    best
}

/// Learns a pilot-placement policy with tabular Q-learning and returns its
/// greedy rollout.
///
/// Devices are placed one by one in descending `β` (ties by id). For each
/// candidate pilot the state is `(load bucket ∈ {0,1,2,≥3}, quartile of its
/// co-pilot β sum among all pilots)`, where the load is counted above the
/// least-loaded pilot; the action is the pilot index and the
/// reward is the pair PCI the placement creates (each new co-pilot pair scored
/// as if alone on the pilot), measured against the mean over all candidate
/// pilots so that rewards do not drift as pilots fill up. Pilots are interchangeable, so
/// the table holds one value per candidate state and the value of choosing a
/// pilot is the value of its state. Exploration is ε-greedy with ε
/// decaying linearly from `epsilon_start` to `epsilon_end` over the episodes.
pub fn assign_qlearning(
    devices: &[DeviceProfile],
    tau_p: usize,
    cfg: &QLearningConfig,
    rng: &mut RngStream,
) -> Result<PilotAssignment> {
    if devices.is_empty() {
        return Err(SimError::invalid("n_devices", "must be at least 1"));
    }
    if tau_p == 0 {
        return Err(SimError::invalid("tau_p", "must be at least 1"));
    }
    if cfg.episodes == 0 {
        return Err(SimError::invalid("episodes", "must be at least 1"));
    }
    let k = devices.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        devices[b]
            .beta
            .total_cmp(&devices[a].beta)
            .then(devices[a].id.cmp(&devices[b].id))
    });

    let mut q = vec![0.0; LOAD_BUCKETS * INTERFERENCE_BUCKETS];
    let mut env = PilotEnv::new(tau_p);
    let mut states = vec![0; tau_p];
    let mut next_states = vec![0; tau_p];

    for episode in 0..cfg.episodes {
        let frac = if cfg.episodes > 1 {
            episode as f64 / (cfg.episodes - 1) as f64
        } else {
            0.0
        };
        let epsilon = cfg.epsilon_start + (cfg.epsilon_end - cfg.epsilon_start) * frac;
        env.reset();
        env.candidate_states(&mut states);
        for (step, &dev) in order.iter().enumerate() {
            let action = if rng.next_f64() < epsilon {
                rng.below(tau_p as u64) as usize
            } else {
                greedy_action(&q, &states)
            };
            let s = states[action];
            let reward = env.place(action, devices[dev].beta, k, cfg.noise_term);
            let future = if step + 1 < k {
                env.candidate_states(&mut next_states);
                next_states.iter().map(|&ns| q[ns]).fold(f64::NEG_INFINITY, f64::max)
            } else {
                0.0
            };
            let cell = &mut q[s];
            *cell += cfg.alpha * (reward + cfg.gamma * future - *cell);
            std::mem::swap(&mut states, &mut next_states);
        }
    }

    env.reset();
    let mut assignment = vec![0; k];
    for &dev in &order {
        env.candidate_states(&mut states);
        let action = greedy_action(&q, &states);
        env.commit(action, devices[dev].beta);
        assignment[dev] = action;
    }
    PilotAssignment::new(tau_p, assignment)
}

/// One device's pilot transmission, for estimating a subset of devices.
#[derive(Debug, Clone, Copy)]
pub struct PilotTx<'a> {
    pub pilot: usize,
    pub beta: f64,
    pub h: &'a [C64],
}

/// Estimates every transmitter's channel from its despread pilot observation.
/// Noise for pilot groups is drawn in ascending pilot order.
pub fn estimate_transmissions(
    txs: &[PilotTx<'_>],
    tau_p: usize,
    pilot_power: f64,
    noise_var: f64,
    method: Estimator,
    rng: &mut RngStream,
) -> Result<Vec<Vec<C64>>> {
    if !(pilot_power > 0.0) {
        return Err(SimError::invalid("pilot_power", "must be positive"));
    }
    if !(noise_var >= 0.0) {
        return Err(SimError::invalid("noise_var", "must be non-negative"));
    }
    let Some(n) = txs.first().map(|t| t.h.len()) else {
        return Ok(Vec::new());
    };
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); tau_p];
    for (i, tx) in txs.iter().enumerate() {
        if tx.pilot >= tau_p {
            return Err(SimError::invalid("pilot", format!("{} >= tau_p {tau_p}", tx.pilot)));
        }
        if tx.h.len() != n {
            return Err(SimError::Shape("pilot transmitters disagree on antenna count".into()));
        }
        groups[tx.pilot].push(i);
    }
    let noise_term = noise_var / (pilot_power * tau_p as f64);
    let noise_std = noise_term.sqrt();
    let mut out = vec![Vec::new(); txs.len()];
    let mut y = vec![C64::new(0.0, 0.0); n];
    for members in groups.iter().filter(|g| !g.is_empty()) {
        y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        for &i in members {
            for (acc, h) in y.iter_mut().zip(txs[i].h) {
                *acc += h;
            }
        }
        if noise_std > 0.0 {
            for v in y.iter_mut() {
                *v += rng.complex_normal() * noise_std;
            }
        }
        let beta_sum: f64 = members.iter().map(|&i| txs[i].beta).sum();
        for &i in members {
            let c = match method {
                Estimator::Ls => 1.0,
                Estimator::Mmse => txs[i].beta / (beta_sum + noise_term),
            };
            out[i] = y.iter().map(|v| v * c).collect();
        }
    }
    Ok(out)
}

/// Estimates all devices of a realization, every device sending its pilot.
pub fn estimate(
    truth: &ChannelRealization,
    assignment: &PilotAssignment,
    pilot_power: f64,
    noise_var: f64,
    method: Estimator,
    rng: &mut RngStream,
) -> Result<EstimationResult> {
    if assignment.n_devices() != truth.n_devices() {
        return Err(SimError::Shape(format!(
            "assignment covers {} devices, channel has {}",
            assignment.n_devices(),
            truth.n_devices()
        )));
    }
    let txs: Vec<PilotTx<'_>> = (0..truth.n_devices())
        .map(|k| PilotTx {
            pilot: assignment.assignment[k],
            beta: truth.betas[k],
            h: truth.h.col(k),
        })
        .collect();
    let cols = estimate_transmissions(&txs, assignment.tau_p, pilot_power, noise_var, method, rng)?;
    let n = truth.n_antennas();
    let h_hat = CMatrix::from_columns(n, &cols);
    let nmse = (0..truth.n_devices())
        .map(|k| {
            let err: f64 = h_hat
                .col(k)
                .iter()
                .zip(truth.h.col(k))
                .map(|(a, b)| (a - b).norm_sqr())
                .sum();
            err / (n as f64 * truth.betas[k])
        })
        .collect();
    Ok(EstimationResult {
        h_hat,
        nmse,
        method,
    })
}

/// Per-device contamination share
/// `PCI_k = Σ_{j≠k co-pilot} β_j / (β_k + Σ_{j≠k co-pilot} β_j + σ²/(p·τ_p))`.
pub fn pci_per_device(
    assignment: &PilotAssignment,
    betas: &[f64],
    pilot_power: f64,
    noise_var: f64,
) -> Result<Vec<f64>> {
    if betas.len() != assignment.n_devices() {
        return Err(SimError::Shape("betas and assignment lengths differ".into()));
    }
    if let Some(b) = betas.iter().find(|b| !(**b > 0.0)) {
        return Err(SimError::invalid("beta", format!("must be positive, got {b}")));
    }
    if !(pilot_power > 0.0) {
        return Err(SimError::invalid("pilot_power", "must be positive"));
    }
    let noise_term = noise_var / (pilot_power * assignment.tau_p as f64);
    let txs: Vec<(usize, f64)> = assignment.assignment.iter().copied().zip(betas.iter().copied()).collect();
    Ok(pci_of_transmissions(&txs, assignment.tau_p, noise_term))
}

/// Mean of [`pci_per_device`].
pub fn pci(assignment: &PilotAssignment, betas: &[f64], pilot_power: f64, noise_var: f64) -> Result<f64> {
    let per = pci_per_device(assignment, betas, pilot_power, noise_var)?;
    Ok(per.iter().sum::<f64>() / per.len() as f64)
}

/// PCI of an arbitrary transmitter set: `(pilot, β)` pairs. Returns per-entry values.
pub fn pci_of_transmissions(txs: &[(usize, f64)], tau_p: usize, noise_term: f64) -> Vec<f64> {
    let mut sums = vec![0.0; tau_p];
    let mut counts = vec![0usize; tau_p];
    for &(p, b) in txs {
        sums[p] += b;
        counts[p] += 1;
    }
    txs.iter()
        .map(|&(p, b)| {
            if counts[p] < 2 {
                0.0
            } else {
                let others = sums[p] - b;
                others / (b + others + noise_term)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{draw_channel, drop_devices, DropParams, TrafficClass};
    use crate::randcore::derive_stream;

    fn device(id: usize, beta: f64, doppler: f64) -> DeviceProfile {
        DeviceProfile {
            id,
            position: (50.0, 0.0),
            distance_m: 50.0,
            azimuth_rad: 0.1 * id as f64,
            beta,
            doppler_hz: doppler,
            mobile: doppler > 0.0,
            pilot: None,
            traffic_class: TrafficClass::PeriodicSensor,
        }
    }

    #[test]
    fn pilot_book_is_unitary() {
        assert_eq!(build_pilot_book(1).unwrap(), CMatrix::identity(1));
        for tau in [2usize, 4, 7, 30] {
            let book = build_pilot_book(tau).unwrap();
            let gram = book.gram();
            assert!(gram.sub(&CMatrix::identity(tau)).frobenius() < 1e-12);
            for a in 0..tau {
                for b in (a + 1)..tau {
                    assert!(crate::randcore::inner(book.col(a), book.col(b)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn random_assignment_properties() {
        let mut rng = derive_stream(1, 1);
        let one = assign_random(50, 1, &mut rng).unwrap();
        assert!(one.assignment.iter().all(|&p| p == 0));
        let big = assign_random(10_000, 4, &mut rng).unwrap();
        for c in big.reuse_counts() {
            assert!((c as f64 - 2500.0).abs() < 125.0, "{c}");
        }
        let a = assign_random(100, 7, &mut derive_stream(9, 9)).unwrap();
        let b = assign_random(100, 7, &mut derive_stream(9, 9)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.reuse_counts().iter().sum::<usize>(), 100);
    }

    #[test]
    fn greedy_with_enough_pilots_has_zero_pci() {
        let devs: Vec<_> = (0..6).map(|i| device(i, 1e-9 * (i + 1) as f64, 0.0)).collect();
        let a = assign_greedy(&devs, 6).unwrap();
        let mut seen = a.assignment.clone();
        seen.sort();
        assert_eq!(seen, (0..6).collect::<Vec<_>>());
        let betas: Vec<f64> = devs.iter().map(|d| d.beta).collect();
        assert_eq!(pci(&a, &betas, 1.0, 1e-12).unwrap(), 0.0);
        assert_eq!(a, assign_greedy(&devs, 6).unwrap());
    }

    #[test]
    fn greedy_separates_strong_devices() {
        let betas = [10.0, 10.0, 1.0, 1.0];
        let devs: Vec<_> = betas.iter().enumerate().map(|(i, &b)| device(i, b, 0.0)).collect();
        let a = assign_greedy(&devs, 2).unwrap();
        assert_ne!(a.assignment[0], a.assignment[1]);
        assert_ne!(a.assignment[2], a.assignment[3]);

        // Enumerate the three pairings of four devices into two pilots.
        let pairings = [[0, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 0]];
        let eval = |asg: &[usize], noise: f64| {
            let pa = PilotAssignment::new(2, asg.to_vec()).unwrap();
            pci(&pa, &betas, 1.0, noise * 2.0).unwrap()
        };
        let greedy = eval(&a.assignment, 0.0);
        // without noise every two-per-pilot pairing has mean PCI exactly 0.5
        for p in &pairings {
            assert!((eval(p, 0.0) - 0.5).abs() < 1e-15);
        }
        assert!((greedy - 0.5).abs() < 1e-15);
        // with a noise term, grouping the weak devices together is what lowers
        // the index: sum over a cluster is (m-1) S / (S + noise)
        let noise = 1.0;
        let strong_apart = eval(&a.assignment, noise);
        let strong_together = eval(&pairings[0], noise);
        assert!((strong_apart - 2.0 * 11.0 / 12.0 / 4.0).abs() < 1e-12);
        assert!((strong_together - (20.0 / 21.0 + 2.0 / 3.0) / 4.0).abs() < 1e-12);
    }

    fn brute_force_min_pci(betas: &[f64], tau: usize, noise: f64) -> f64 {
        let k = betas.len();
        let mut best = f64::INFINITY;
        let total = tau.pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let asg: Vec<usize> = (0..k)
                .map(|_| {
                    let p = c % tau;
                    c /= tau;
                    p
                })
                .collect();
            let pa = PilotAssignment::new(tau, asg).unwrap();
            best = best.min(pci(&pa, betas, 1.0, noise).unwrap());
        }
        best
    }

    #[test]
    fn qlearning_finds_orthogonal_assignment() {
        let betas = [3e-10, 1e-9, 5e-11, 2e-10];
        let devs: Vec<_> = betas.iter().enumerate().map(|(i, &b)| device(i, b, 0.0)).collect();
        let cfg = QLearningConfig {
            noise_term: 1e-11,
            ..QLearningConfig::default()
        };
        let a = assign_qlearning(&devs, 4, &cfg, &mut derive_stream(3, 0)).unwrap();
        assert_eq!(brute_force_min_pci(&betas, 4, 4e-11), 0.0);
        assert_eq!(pci(&a, &betas, 1.0, 4e-11).unwrap(), 0.0);
        let again = assign_qlearning(&devs, 4, &cfg, &mut derive_stream(3, 0)).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn qlearning_beats_random_by_margin() {
        let (mut q, mut rnd) = (0.0, 0.0);
        for s in 0..100u64 {
            let mut rng = derive_stream(800 + s, 0);
            let devs = drop_devices(8, &DropParams::default(), &mut rng).unwrap();
            let betas: Vec<f64> = devs.iter().map(|d| d.beta).collect();
            let a = assign_qlearning(&devs, 2, &QLearningConfig::default(), &mut rng.fork(1)).unwrap();
            let b = assign_random(8, 2, &mut rng.fork(2)).unwrap();
            q += pci(&a, &betas, 1.0, 0.0).unwrap() / 100.0;
            rnd += pci(&b, &betas, 1.0, 0.0).unwrap() / 100.0;
        }
        assert!(q <= rnd - 0.01, "q-learning {q} random {rnd}");
    }

    #[test]
    fn ls_is_exact_without_noise_or_reuse() {
        let mut rng = derive_stream(2, 2);
        let devs: Vec<_> = (0..5).map(|i| device(i, 1e-9 * (i + 1) as f64, 0.0)).collect();
        let ch = draw_channel(&devs, 16, 0.5, &mut rng).unwrap();
        let a = PilotAssignment::new(5, vec![0, 1, 2, 3, 4]).unwrap();
        let est = estimate(&ch, &a, 0.2, 0.0, Estimator::Ls, &mut rng).unwrap();
        let rel = est.h_hat.sub(&ch.h).frobenius() / ch.h.frobenius();
        assert!(rel < 1e-10);
        assert!(est.nmse.iter().all(|&e| e < 1e-20));
    }

    #[test]
    fn contaminated_nmse_closed_forms() {
        // two co-pilot devices, beta = 1, noiseless
        let devs = vec![device(0, 1.0, 0.0), device(1, 1.0, 0.0)];
        let a = PilotAssignment::new(1, vec![0, 0]).unwrap();
        let mut rng = derive_stream(4, 4);
        let (mut ls, mut mmse) = (0.0, 0.0);
        let trials = 10_000;
        for _ in 0..trials {
            let ch = draw_channel(&devs, 4, 0.0, &mut rng).unwrap();
            ls += estimate(&ch, &a, 1.0, 0.0, Estimator::Ls, &mut rng).unwrap().nmse[0];
            mmse += estimate(&ch, &a, 1.0, 0.0, Estimator::Mmse, &mut rng).unwrap().nmse[0];
        }
        let (ls, mmse) = (ls / trials as f64, mmse / trials as f64);
        assert!((ls - 1.0).abs() < 0.03, "{ls}");
        assert!((mmse - 0.5).abs() < 0.03 * 0.5, "{mmse}");
    }

    #[test]
    fn estimator_parsing() {
        assert_eq!("LS".parse::<Estimator>().unwrap(), Estimator::Ls);
        assert_eq!("mmse".parse::<Estimator>().unwrap(), Estimator::Mmse);
        assert!("zf".parse::<Estimator>().is_err());
    }

    #[test]
    fn pci_examples() {
        let none = PilotAssignment::new(3, vec![0, 1, 2]).unwrap();
        assert_eq!(pci(&none, &[1.0, 2.0, 3.0], 1.0, 1.0).unwrap(), 0.0);
        let shared = PilotAssignment::new(1, vec![0, 0]).unwrap();
        assert_eq!(pci(&shared, &[2.0, 2.0], 1.0, 0.0).unwrap(), 0.5);
        // beta_k = 1 with co-pilots {0.1, 0.1}, noise term 0.05
        let three = PilotAssignment::new(1, vec![0, 0, 0]).unwrap();
        let per = pci_per_device(&three, &[1.0, 0.1, 0.1], 1.0, 0.05).unwrap();
        assert!((per[0] - 0.16).abs() < 1e-15);
    }
}
