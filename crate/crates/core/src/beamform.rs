//! Receive combining, hybrid analog/digital beam selection, exact power-aware
//! antenna selection and SINR / spectral-efficiency evaluation.

use crate::error::{Result, SimError};
use crate::randcore::{cholesky_psd, cholesky_solve, inner, norm_sqr, CMatrix, HermitianMatrix, C64};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombinerKind {
    Mrc,
    Zf,
    Hybrid,
}

/// Receive combiner, one column per device.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinerMatrix {
    pub v: CMatrix,
    pub method: CombinerKind,
}

/// Gram-matrix condition above which ZF regularizes.
pub const ZF_MAX_CONDITION: f64 = 1e12;

fn check_nonzero_columns(m: &CMatrix) -> Result<()> {
    for k in 0..m.cols() {
        if norm_sqr(m.col(k)) == 0.0 {
            return Err(SimError::ZeroCombiner { device: k });
        }
    }
    Ok(())
}

/// Matched filter `v_k = ĥ_k`.
pub fn mrc(h_hat: &CMatrix) -> Result<CombinerMatrix> {
    check_nonzero_columns(h_hat)?;
    Ok(CombinerMatrix {
        v: h_hat.clone(),
        method: CombinerKind::Mrc,
    })
}

/// Factorizes `G + ridge·I`, returning the factor and the pivot-ratio
/// condition estimate `(max L_ii / min L_ii)²`.
fn regularized_factor(gram: &CMatrix, ridge: f64) -> Option<(CMatrix, f64)> {
    let mut g = gram.clone();
    for i in 0..g.rows() {
        g[(i, i)] += ridge;
    }
    let h = HermitianMatrix::new(g).ok()?;
    let l = cholesky_psd(&h).ok()?;
    let diag: Vec<f64> = (0..l.rows()).map(|i| l[(i, i)].re).collect();
    let max = diag.iter().cloned().fold(0.0, f64::max);
    let min = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min > 0.0) {
        return None;
    }
    Some((l, (max / min).powi(2)))
}

/// Zero-forcing `V = Ĥ (Ĥ^H Ĥ + ridge·I)^{-1}`.
///
/// When the Gram matrix is numerically singular (Cholesky fails or the
/// pivot-ratio condition estimate exceeds [`ZF_MAX_CONDITION`]) the ridge is
/// raised to `1e-10·trace(Ĥ^H Ĥ)/K`.
pub fn zf(h_hat: &CMatrix, ridge: f64) -> Result<CombinerMatrix> {
    let (n, k) = (h_hat.rows(), h_hat.cols());
    if k > n {
        return Err(SimError::invalid(
            "devices",
            format!("zero-forcing needs K <= N, got K={k}, N={n}"),
        ));
    }
    if !(ridge >= 0.0) {
        return Err(SimError::invalid("ridge", "must be non-negative"));
    }
    check_nonzero_columns(h_hat)?;
    let gram = h_hat.gram();
    let factor = match regularized_factor(&gram, ridge) {
        Some((l, cond)) if cond <= ZF_MAX_CONDITION => l,
        _ => {
            let auto = 1e-10 * gram.trace().re / k as f64;
            regularized_factor(&gram, ridge.max(auto))
                .map(|(l, _)| l)
                .ok_or_else(|| SimError::Numeric(crate::NumericError::NotPsd { pivot: 0, value: 0.0 }))?
        }
    };
    let inv = cholesky_solve(&factor, &CMatrix::identity(k));
    Ok(CombinerMatrix {
        v: h_hat.matmul(&inv),
        method: CombinerKind::Zf,
    })
}

/// `SINR_k = p_k |v_k^H h_k|² / (Σ_{j≠k} p_j |v_k^H h_j|² + σ² ‖v_k‖²)`.
pub fn uplink_sinr(h_true: &CMatrix, v: &CombinerMatrix, tx_powers: &[f64], noise_var: f64) -> Result<Vec<f64>> {
    let k = h_true.cols();
    if v.v.cols() != k || v.v.rows() != h_true.rows() || tx_powers.len() != k {
        return Err(SimError::Shape(format!(
            "combiner {}x{}, channel {}x{}, {} powers",
            v.v.rows(),
            v.v.cols(),
            h_true.rows(),
            k,
            tx_powers.len()
        )));
    }
    if !(noise_var > 0.0) {
        return Err(SimError::invalid("noise_var", "must be positive"));
    }
    if tx_powers.iter().any(|p| !(*p >= 0.0)) {
        return Err(SimError::invalid("tx_powers", "must be non-negative"));
    }
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let vi = v.v.col(i);
        let vnorm = norm_sqr(vi);
        if vnorm == 0.0 {
            return Err(SimError::ZeroCombiner { device: i });
        }
        let mut signal = 0.0;
        let mut interference = 0.0;
        for j in 0..k {
            let g = inner(vi, h_true.col(j)).norm_sqr() * tx_powers[j];
            if j == i {
                signal = g;
            } else {
                interference += g;
            }
        }
        out.push(signal / (interference + noise_var * vnorm));
    }
    Ok(out)
}

/// Per-device `(1 − overhead)·log2(1 + SINR)` and the cell sum, bps/Hz.
pub fn spectral_efficiency(sinr: &[f64], pilot_overhead: f64) -> Result<(Vec<f64>, f64)> {
    if !(0.0..1.0).contains(&pilot_overhead) {
        return Err(SimError::invalid(
            "pilot_overhead",
            format!("must lie in [0, 1), got {pilot_overhead}"),
        ));
    }
    if let Some(s) = sinr.iter().find(|s| !(**s >= 0.0)) {
        return Err(SimError::invalid("sinr", format!("must be non-negative, got {s}")));
    }
    let per: Vec<f64> = sinr.iter().map(|s| (1.0 - pilot_overhead) * (1.0 + s).log2()).collect();
    let sum = per.iter().sum();
    Ok((per, sum))
}

/// Unitary DFT beam matrix `F[m][b] = e^{2πi·mb/N} / sqrt(N)`, so that
/// `F^H h` is the forward DFT of `h` scaled by `1/sqrt(N)`.
pub fn dft_codebook(n: usize) -> Result<CMatrix> {
    if n == 0 {
        return Err(SimError::invalid("n_antennas", "must be at least 1"));
    }
    let scale = 1.0 / (n as f64).sqrt();
    Ok(CMatrix::from_fn(n, n, |m, b| {
        C64::from_polar(scale, 2.0 * PI * ((m * b) % n) as f64 / n as f64)
    }))
}

/// Analog stage chosen by [`hybrid_select`].
#[derive(Debug, Clone, PartialEq)]
pub struct HybridStage {
    /// Selected codebook columns, in selection order.
    pub beams: Vec<usize>,
    /// `N × n_rf` analog combiner.
    pub analog: CMatrix,
    /// `n_rf × K` effective channel `F^H Ĥ`.
    pub effective: CMatrix,
}

/// Greedy beam selection maximizing the captured energy `Σ_k |f_b^H ĥ_k|²`.
/// Ties go to the lower beam index.
pub fn hybrid_select(h_hat: &CMatrix, codebook: &CMatrix, n_rf: usize) -> Result<HybridStage> {
    let n = h_hat.rows();
    if codebook.rows() != n {
        return Err(SimError::Shape("codebook rows must equal antenna count".into()));
    }
    if n_rf == 0 || n_rf > n || n_rf > codebook.cols() {
        return Err(SimError::invalid(
            "n_rf",
            format!("need 1 <= n_rf <= N = {n}, got {n_rf}"),
        ));
    }
    let projections = codebook.adjoint_mul(h_hat);
    let energy: Vec<f64> = (0..codebook.cols())
        .map(|b| (0..h_hat.cols()).map(|k| projections[(b, k)].norm_sqr()).sum())
        .collect();
    let beams = select_beams(&energy, n_rf);
    let analog = codebook.select_cols(&beams);
    let effective = projections.select_rows(&beams);
    Ok(HybridStage {
        beams,
        analog,
        effective,
    })
}

/// Greedy picks over per-beam captured energy. The marginal gain of a beam
/// does not depend on earlier picks, so each step takes the best remaining beam.
pub fn select_beams(energy: &[f64], n_rf: usize) -> Vec<usize> {
    let mut taken = vec![false; energy.len()];
    let mut beams = Vec::with_capacity(n_rf);
    for _ in 0..n_rf.min(energy.len()) {
        let mut best: Option<usize> = None;
        for (b, &e) in energy.iter().enumerate() {
            if taken[b] {
                continue;
            }
            if best.map_or(true, |cur| e > energy[cur]) {
                best = Some(b);
            }
        }
        let b = best.expect("n_rf <= codebook size");
        taken[b] = true;
        beams.push(b);
    }
    beams
}

/// Full hybrid combiner `V = F·W`, with `W` the ZF combiner of the effective channel.
pub fn hybrid_combiner(h_hat: &CMatrix, codebook: &CMatrix, n_rf: usize, ridge: f64) -> Result<CombinerMatrix> {
    let stage = hybrid_select(h_hat, codebook, n_rf)?;
    let digital = zf(&stage.effective, ridge)?;
    Ok(CombinerMatrix {
        v: stage.analog.matmul(&digital.v),
        method: CombinerKind::Hybrid,
    })
}

/// Channel energy captured by each antenna, `u_m = Σ_k |ĥ_{m,k}|²`.
pub fn antenna_utilities(h_hat: &CMatrix) -> Vec<f64> {
    (0..h_hat.rows())
        .map(|m| (0..h_hat.cols()).map(|k| h_hat[(m, k)].norm_sqr()).sum())
        .collect()
}

/// Result of the 0/1 antenna-selection program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntennaSelection {
    pub active: Vec<bool>,
    pub utilities: Vec<f64>,
    pub powers_w: Vec<f64>,
    pub budget_w: f64,
    pub value: f64,
    pub power_w: f64,
}

impl AntennaSelection {
    pub fn indices(&self) -> Vec<usize> {
        self.active
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| a.then_some(i))
            .collect()
    }

    pub fn n_active(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }
}

/// Value and power of a subset, summed in ascending index order.
/// Relative slack on the power budget, absorbing rounding in summed powers.
pub const BUDGET_RTOL: f64 = 1e-12;

#[inline]
fn within_budget(power: f64, budget: f64) -> bool {
    power <= budget + BUDGET_RTOL * budget.abs()
}

fn canonical_totals(set: &[usize], utilities: &[f64], powers: &[f64]) -> (f64, f64) {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let value = sorted.iter().map(|&i| utilities[i]).sum();
    let power = sorted.iter().map(|&i| powers[i]).sum();
    (value, power)
}

/// Preference order for selections: higher value, then lower power, then the
/// lexicographically smaller ascending index list.
pub fn compare_selections(a: (f64, f64, &[usize]), b: (f64, f64, &[usize])) -> Ordering {
    b.0.total_cmp(&a.0)
        .then(a.1.total_cmp(&b.1))
        .then_with(|| a.2.cmp(b.2))
}

struct Knapsack<'a> {
    utilities: &'a [f64],
    powers: &'a [f64],
    budget: f64,
    order: Vec<usize>,
    best_set: Vec<usize>,
    best_value: f64,
    best_power: f64,
    chosen: Vec<usize>,
}

impl Knapsack<'_> {
    fn bound(&self, depth: usize, value: f64, weight: f64) -> f64 {
        let mut used = weight;
        let mut bound = value;
        for &i in &self.order[depth..] {
            let (u, p) = (self.utilities[i], self.powers[i]);
            if within_budget(used + p, self.budget) {
                used += p;
                bound += u;
            } else {
                bound += u * (self.budget - used).max(0.0) / p;
                break;
            }
        }
        bound
    }

    fn consider_current(&mut self) {
        let mut set = self.chosen.clone();
        set.sort_unstable();
        let (value, power) = canonical_totals(&set, self.utilities, self.powers);
        let better = compare_selections(
            (value, power, &set),
            (self.best_value, self.best_power, &self.best_set),
        ) == Ordering::Less;
        if better {
            self.best_value = value;
            self.best_power = power;
            self.best_set = set;
        }
    }

    fn search(&mut self, depth: usize, value: f64, weight: f64) {
        if depth == self.order.len() {
            self.consider_current();
            return;
        }
        // ties must survive pruning, so allow a small slack
        let slack = 1e-9 * self.best_value.abs().max(1e-300);
        if self.bound(depth, value, weight) < self.best_value - slack {
            return;
        }
        let i = self.order[depth];
        let (u, p) = (self.utilities[i], self.powers[i]);
        // a zero-utility antenna never improves value and only adds power
        if u > 0.0 && within_budget(weight + p, self.budget) {
            self.chosen.push(i);
            self.search(depth + 1, value + u, weight + p);
            self.chosen.pop();
        }
        self.search(depth + 1, value, weight);
    }
}

/// Exact 0/1 knapsack `max Σ u_m x_m s.t. Σ p_m x_m ≤ budget` by depth-first
/// branch-and-bound with fractional-knapsack upper bounds.
pub fn antenna_select_exact(utilities: &[f64], powers_w: &[f64], budget_w: f64) -> Result<AntennaSelection> {
    if utilities.len() != powers_w.len() {
        return Err(SimError::Shape(format!(
            "{} utilities but {} powers",
            utilities.len(),
            powers_w.len()
        )));
    }
    if !(budget_w >= 0.0) {
        return Err(SimError::invalid("budget_w", format!("must be >= 0, got {budget_w}")));
    }
    if let Some(u) = utilities.iter().find(|u| !(**u >= 0.0 && u.is_finite())) {
        return Err(SimError::invalid("utilities", format!("must be finite and >= 0, got {u}")));
    }
    if let Some(p) = powers_w.iter().find(|p| !(**p > 0.0 && p.is_finite())) {
        return Err(SimError::invalid("powers_w", format!("must be finite and > 0, got {p}")));
    }
    if let Some(&p0) = powers_w.first() {
        if powers_w.iter().all(|&p| p == p0) {
            return Ok(select_uniform(utilities, p0, budget_w));
        }
    }
    let mut order: Vec<usize> = (0..utilities.len()).collect();
    order.sort_by(|&a, &b| {
        (utilities[b] / powers_w[b])
            .total_cmp(&(utilities[a] / powers_w[a]))
            .then(a.cmp(&b))
    });
    let mut solver = Knapsack {
        utilities,
        powers: powers_w,
        budget: budget_w,
        order,
        best_set: Vec::new(),
        best_value: 0.0,
        best_power: 0.0,
        chosen: Vec::new(),
    };
    solver.search(0, 0.0, 0.0);
    let mut active = vec![false; utilities.len()];
    for &i in &solver.best_set {
        active[i] = true;
    }
    Ok(AntennaSelection {
        active,
        utilities: utilities.to_vec(),
        powers_w: powers_w.to_vec(),
        budget_w,
        value: solver.best_value,
        power_w: solver.best_power,
    })
}

/// Equal weights: the best set is the largest affordable prefix of the
/// utilities sorted descending (ties to lower index), zero utilities dropped.
fn select_uniform(utilities: &[f64], power: f64, budget_w: f64) -> AntennaSelection {
    let mut order: Vec<usize> = (0..utilities.len()).filter(|&i| utilities[i] > 0.0).collect();
    order.sort_by(|&a, &b| utilities[b].total_cmp(&utilities[a]).then(a.cmp(&b)));
    let mut count = 0;
    while count < order.len() && within_budget((count + 1) as f64 * power, budget_w) {
        count += 1;
    }
    let mut active = vec![false; utilities.len()];
    for &i in &order[..count] {
        active[i] = true;
    }
    let powers_w = vec![power; utilities.len()];
    let (value, power_w) = canonical_totals(&order[..count], utilities, &powers_w);
    AntennaSelection {
        active,
        utilities: utilities.to_vec(),
        powers_w,
        budget_w,
        value,
        power_w,
    }
}

/// Exhaustive 0/1 enumeration using the same preference order as
/// [`antenna_select_exact`]. Exponential; meant for `N ≤ 20`.
pub fn antenna_select_exhaustive(utilities: &[f64], powers_w: &[f64], budget_w: f64) -> (Vec<usize>, f64, f64) {
    let n = utilities.len();
    assert!(n <= 24, "exhaustive selection is limited to 24 antennas");
    let mut best: (Vec<usize>, f64, f64) = (Vec::new(), 0.0, 0.0);
    for mask in 0u32..(1u32 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let (value, power) = canonical_totals(&set, utilities, powers_w);
        if !within_budget(power, budget_w) {
            continue;
        }
        if compare_selections((value, power, &set), (best.1, best.2, &best.0)) == Ordering::Less {
            best = (set, value, power);
        }
    }
    best
}
