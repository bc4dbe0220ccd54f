//! Base-station power accounting and energy efficiency.
//!
//! `P = P_fixed + n_active·P_antenna + Σ p_tx / η + c_proc·n_active·n_scheduled`
//!
//! `n_active` counts powered RF chains: the selected antennas for a fully
//! digital array, `n_rf` for the hybrid architecture.

use crate::error::{Result, SimError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PowerParams {
    pub p_fixed_w: f64,
    pub p_antenna_w: f64,
    pub pa_efficiency: f64,
    pub p_proc_coeff_w: f64,
    pub bandwidth_hz: f64,
}

impl Default for PowerParams {
    fn default() -> Self {
        PowerParams {
            p_fixed_w: 10.0,
            p_antenna_w: 0.4,
            pa_efficiency: 0.39,
            p_proc_coeff_w: 0.01,
            bandwidth_hz: 20e6,
        }
    }
}

impl PowerParams {
    pub fn validate(&self) -> Result<()> {
        let nonneg = [
            ("p_fixed_w", self.p_fixed_w),
            ("p_antenna_w", self.p_antenna_w),
            ("p_proc_coeff_w", self.p_proc_coeff_w),
        ];
        for (name, v) in nonneg {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(SimError::invalid(name, format!("must be finite and >= 0, got {v}")));
            }
        }
        if !(self.pa_efficiency > 0.0 && self.pa_efficiency <= 1.0) {
            return Err(SimError::invalid("pa_efficiency", "must lie in (0, 1]"));
        }
        if !(self.bandwidth_hz > 0.0 && self.bandwidth_hz.is_finite()) {
            return Err(SimError::invalid("bandwidth_hz", "must be positive"));
        }
        Ok(())
    }
}

/// Total consumed power in watts.
pub fn total_power(params: &PowerParams, n_active: usize, tx_powers_w: &[f64], n_scheduled: usize) -> f64 {
    let tx: f64 = tx_powers_w.iter().sum();
    params.p_fixed_w
        + n_active as f64 * params.p_antenna_w
        + tx / params.pa_efficiency
        + params.p_proc_coeff_w * n_active as f64 * n_scheduled as f64
}

/// Bits per joule: `SE·B / P`.
pub fn energy_efficiency(cell_se_bpshz: f64, bandwidth_hz: f64, total_power_w: f64) -> Result<f64> {
    if !(total_power_w > 0.0) {
        return Err(SimError::invalid(
            "total_power_w",
            format!("must be positive, got {total_power_w}"),
        ));
    }
    Ok(cell_se_bpshz * bandwidth_hz / total_power_w)
}
