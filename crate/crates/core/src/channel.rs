//! Device geometry, large-scale fading, spatially correlated Rayleigh channels
//! and Gauss–Markov channel aging.
//!
//! The array is a uniform linear array. Device `k` sees the exponential
//! correlation model `[R_k]_{m,n} = r^{|m−n|} e^{iθ_k(m−n)}` with
//! `θ_k = π sin(azimuth_k)`, and its channel is `h_k = sqrt(β_k) L_k g_k`
//! with `L_k` the Cholesky factor of `R_k`.

use crate::error::{Result, SimError};
use crate::randcore::{bessel_j0, CMatrix, HermitianMatrix, RngStream, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Lower/upper bound of the Doppler spread drawn for mobile devices.
pub const MOBILE_DOPPLER_HZ: (f64, f64) = (5.0, 50.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrafficClass {
    PeriodicSensor,
    DelaySensitive,
}

/// One IoT device as seen by the base station.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceProfile {
    pub id: usize,
    pub position: (f64, f64),
    pub distance_m: f64,
    /// Angle from array broadside, radians.
    pub azimuth_rad: f64,
    /// Linear large-scale gain (path loss and shadowing).
    pub beta: f64,
    pub doppler_hz: f64,
    pub mobile: bool,
    pub pilot: Option<usize>,
    pub traffic_class: TrafficClass,
}

/// Geometry and fading parameters for [`drop_devices`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DropParams {
    pub cell_radius_m: f64,
    pub min_distance_m: f64,
    pub mobile_fraction: f64,
    pub delay_sensitive_fraction: f64,
    pub shadow_sigma_db: f64,
}

impl Default for DropParams {
    fn default() -> Self {
        DropParams {
            cell_radius_m: 250.0,
            min_distance_m: 10.0,
            mobile_fraction: 0.5,
            delay_sensitive_fraction: 0.2,
            shadow_sigma_db: 8.0,
        }
    }
}

/// Spatial correlation parameters of one device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub r: f64,
    pub theta: f64,
}

impl Correlation {
    pub fn for_device(r: f64, device: &DeviceProfile) -> Self {
        Correlation {
            r,
            theta: PI * device.azimuth_rad.sin(),
        }
    }
}

/// Small-scale channel matrix (antennas × devices) plus per-device correlation.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub h: CMatrix,
    pub correlation: Vec<Correlation>,
    pub betas: Vec<f64>,
}

impl ChannelRealization {
    pub fn n_antennas(&self) -> usize {
        self.h.rows()
    }

    pub fn n_devices(&self) -> usize {
        self.h.cols()
    }
}

fn round_count(fraction: f64, k: usize) -> usize {
    ((fraction * k as f64).round() as usize).min(k)
}

/// Picks exactly `count` distinct indices out of `0..k` (partial Fisher–Yates).
fn choose_subset(k: usize, count: usize, rng: &mut RngStream) -> Vec<bool> {
    let mut idx: Vec<usize> = (0..k).collect();
    for i in 0..count {
        let j = i + rng.below((k - i) as u64) as usize;
        idx.swap(i, j);
    }
    let mut flags = vec![false; k];
    for &i in &idx[..count] {
        flags[i] = true;
    }
    flags
}

/// Drops `k` devices uniformly over the annulus `[min_distance, radius]`.
pub fn drop_devices(k: usize, params: &DropParams, rng: &mut RngStream) -> Result<Vec<DeviceProfile>> {
    if k == 0 {
        return Err(SimError::invalid("n_devices", "must be at least 1"));
    }
    let (rmin, rmax) = (params.min_distance_m, params.cell_radius_m);
    if !(rmin > 0.0 && rmin < rmax && rmax.is_finite()) {
        return Err(SimError::invalid(
            "geometry",
            format!("need 0 < min_distance_m < cell_radius_m, got {rmin} and {rmax}"),
        ));
    }
    if !(0.0..=1.0).contains(&params.mobile_fraction) {
        return Err(SimError::invalid("mobile_fraction", "must lie in [0, 1]"));
    }
    if !(0.0..=1.0).contains(&params.delay_sensitive_fraction) {
        return Err(SimError::invalid("delay_sensitive_fraction", "must lie in [0, 1]"));
    }
    if !(params.shadow_sigma_db >= 0.0) {
        return Err(SimError::invalid("shadow_sigma_db", "must be non-negative"));
    }

    let mut devices = Vec::with_capacity(k);
    for id in 0..k {
        // area-uniform radius: d^2 uniform on [rmin^2, rmax^2]
        let d = rng.uniform(rmin * rmin, rmax * rmax).sqrt();
        let phi = rng.uniform(-PI, PI);
        let beta = large_scale_gain(d, params.shadow_sigma_db, rng)?;
        devices.push(DeviceProfile {
            id,
            position: (d * phi.cos(), d * phi.sin()),
            distance_m: d,
            azimuth_rad: phi,
            beta,
            doppler_hz: 0.0,
            mobile: false,
            pilot: None,
            traffic_class: TrafficClass::PeriodicSensor,
        });
    }
    let mobile = choose_subset(k, round_count(params.mobile_fraction, k), rng);
    for (dev, is_mobile) in devices.iter_mut().zip(mobile) {
        if is_mobile {
            dev.mobile = true;
            dev.doppler_hz = rng.uniform(MOBILE_DOPPLER_HZ.0, MOBILE_DOPPLER_HZ.1);
        }
    }
    let urgent = choose_subset(k, round_count(params.delay_sensitive_fraction, k), rng);
    for (dev, is_urgent) in devices.iter_mut().zip(urgent) {
        if is_urgent {
            dev.traffic_class = TrafficClass::DelaySensitive;
        }
    }
    Ok(devices)
}

/// Urban-macro style NLOS path loss, dB (negative).
pub fn path_loss_db(distance_m: f64) -> Result<f64> {
    if !(distance_m >= 1.0) || !distance_m.is_finite() {
        return Err(SimError::invalid(
            "distance_m",
            format!("path loss needs distance >= 1 m, got {distance_m}"),
        ));
    }
    Ok(-30.5 - 36.7 * distance_m.log10())
}

/// `β = 10^((PL + X)/10)` with log-normal shadowing `X ~ N(0, σ²)` dB.
pub fn large_scale_gain(distance_m: f64, shadow_sigma_db: f64, rng: &mut RngStream) -> Result<f64> {
    let pl = path_loss_db(distance_m)?;
    let shadow = if shadow_sigma_db > 0.0 {
        shadow_sigma_db * rng.std_normal()
    } else {
        0.0
    };
    Ok(10f64.powf((pl + shadow) / 10.0))
}

fn check_r(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(SimError::invalid("correlation r", format!("must lie in [0, 1), got {r}")));
    }
    Ok(())
}

/// Exponential ULA correlation matrix.
pub fn correlation_matrix(n: usize, r: f64, theta: f64) -> Result<HermitianMatrix> {
    check_r(r)?;
    if n == 0 {
        return Err(SimError::invalid("n_antennas", "must be at least 1"));
    }
    let m = CMatrix::from_fn(n, n, |i, j| {
        let lag = i as f64 - j as f64;
        C64::from_polar(r.powi((i as i64 - j as i64).unsigned_abs() as i32), theta * lag)
    });
    Ok(HermitianMatrix::new(m)?)
}

/// Closed-form Cholesky factor of the exponential correlation matrix:
/// `L[m][0] = a^m`, `L[m][n] = a^{m−n} sqrt(1−r²)` for `1 ≤ n ≤ m`, `a = r e^{iθ}`.
pub fn exponential_cholesky(n: usize, r: f64, theta: f64) -> Result<CMatrix> {
    check_r(r)?;
    let a = C64::from_polar(r, theta);
    let c = (1.0 - r * r).sqrt();
    Ok(CMatrix::from_fn(n, n, |i, j| {
        if j > i {
            C64::new(0.0, 0.0)
        } else {
            let p = a.powu((i - j) as u32);
            if j == 0 {
                p
            } else {
                p * c
            }
        }
    }))
}

/// Writes `sqrt(β) L g` into `out` using the AR(1) recursion equivalent to the
/// exponential Cholesky factor.
pub fn draw_correlated(out: &mut [C64], beta: f64, corr: Correlation, rng: &mut RngStream) {
    let a = C64::from_polar(corr.r, corr.theta);
    let c = (1.0 - corr.r * corr.r).sqrt();
    let s = beta.sqrt();
    let mut prev = C64::new(0.0, 0.0);
    for (m, slot) in out.iter_mut().enumerate() {
        let g = rng.complex_normal();
        prev = if m == 0 { g } else { a * prev + c * g };
        *slot = prev * s;
    }
}

/// Draws one correlated Rayleigh realization for all devices.
pub fn draw_channel(
    devices: &[DeviceProfile],
    n_antennas: usize,
    corr_r: f64,
    rng: &mut RngStream,
) -> Result<ChannelRealization> {
    check_r(corr_r)?;
    if n_antennas == 0 {
        return Err(SimError::invalid("n_antennas", "must be at least 1"));
    }
    let mut h = CMatrix::zeros(n_antennas, devices.len());
    let mut correlation = Vec::with_capacity(devices.len());
    for (k, dev) in devices.iter().enumerate() {
        if !(dev.beta > 0.0) {
            return Err(SimError::invalid("beta", format!("device {} has beta <= 0", dev.id)));
        }
        let corr = Correlation::for_device(corr_r, dev);
        draw_correlated(h.col_mut(k), dev.beta, corr, rng);
        correlation.push(corr);
    }
    Ok(ChannelRealization {
        h,
        correlation,
        betas: devices.iter().map(|d| d.beta).collect(),
    })
}

/// Jakes temporal correlation `J0(2π f_D T)` over one slot.
pub fn aging_coefficient(doppler_hz: f64, slot_seconds: f64) -> Result<f64> {
    if !(doppler_hz >= 0.0) || !(slot_seconds > 0.0) {
        return Err(SimError::invalid(
            "aging",
            format!("need doppler >= 0 and slot > 0, got {doppler_hz}, {slot_seconds}"),
        ));
    }
    Ok(bessel_j0(2.0 * PI * doppler_hz * slot_seconds)?)
}

/// One Gauss–Markov step: `h_k ← ρ_k h_k + sqrt(1 − ρ_k²) · fresh_k`.
pub fn age_channel(h: &ChannelRealization, rho: &[f64], rng: &mut RngStream) -> Result<ChannelRealization> {
    if rho.len() != h.n_devices() {
        return Err(SimError::Shape(format!(
            "{} aging coefficients for {} devices",
            rho.len(),
            h.n_devices()
        )));
    }
    let mut out = h.clone();
    let mut fresh = vec![C64::new(0.0, 0.0); h.n_antennas()];
    for (k, &p) in rho.iter().enumerate() {
        if !(p.abs() <= 1.0) {
            return Err(SimError::invalid("rho", format!("|rho| must be <= 1, got {p}")));
        }
        if p == 1.0 {
            continue;
        }
        draw_correlated(&mut fresh, h.betas[k], h.correlation[k], rng);
        let w = (1.0 - p * p).sqrt();
        for (o, f) in out.h.col_mut(k).iter_mut().zip(&fresh) {
            *o = *o * p + f * w;
        }
    }
    Ok(out)
}

/// A single device channel that ages lazily, frame by frame.
///
/// Advancing by `n` frames at once applies `ρ^n` with a single fresh draw,
/// which has the same distribution as `n` successive one-frame steps.
#[derive(Debug, Clone)]
pub struct AgingChannel {
    h: Vec<C64>,
    frame: u64,
    rho: f64,
    beta: f64,
    corr: Correlation,
}

impl AgingChannel {
    pub fn new(n_antennas: usize, beta: f64, corr: Correlation, rho: f64, rng: &mut RngStream) -> Self {
        let mut h = vec![C64::new(0.0, 0.0); n_antennas];
        draw_correlated(&mut h, beta, corr, rng);
        AgingChannel {
            h,
            frame: 0,
            rho,
            beta,
            corr,
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Channel at `frame`; frames must be requested in nondecreasing order.
    pub fn at(&mut self, frame: u64, rng: &mut RngStream) -> &[C64] {
        if frame > self.frame {
            let steps = frame - self.frame;
            self.frame = frame;
            if self.rho != 1.0 {
                let p = self.rho.powi(steps.min(i32::MAX as u64) as i32);
                let w = (1.0 - p * p).max(0.0).sqrt();
                let mut fresh = vec![C64::new(0.0, 0.0); self.h.len()];
                draw_correlated(&mut fresh, self.beta, self.corr, rng);
                for (o, f) in self.h.iter_mut().zip(&fresh) {
                    *o = *o * p + f * w;
                }
            }
        }
        &self.h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randcore::{cholesky_psd, derive_stream};

    fn static_params() -> DropParams {
        DropParams {
            mobile_fraction: 0.0,
            ..DropParams::default()
        }
    }

    #[test]
    fn single_static_device_in_bounds() {
        let mut rng = derive_stream(1, 0);
        let devs = drop_devices(1, &static_params(), &mut rng).unwrap();
        assert_eq!(devs.len(), 1);
        assert!(!devs[0].mobile);
        assert_eq!(devs[0].doppler_hz, 0.0);
        assert!(devs[0].distance_m >= 10.0 && devs[0].distance_m <= 250.0);
    }

    #[test]
    fn radial_distribution_is_area_uniform() {
        let mut rng = derive_stream(77, 1);
        let p = static_params();
        let mut d: Vec<f64> = drop_devices(1000, &p, &mut rng)
            .unwrap()
            .iter()
            .map(|x| x.distance_m)
            .collect();
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let (a2, b2) = (p.min_distance_m.powi(2), p.cell_radius_m.powi(2));
        let n = d.len() as f64;
        let ks = d
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let cdf = (x * x - a2) / (b2 - a2);
                (cdf - i as f64 / n).abs().max(((i + 1) as f64 / n - cdf).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks < 0.05, "KS {ks}");
    }

    #[test]
    fn drops_are_deterministic_and_mobility_exact() {
        let p = DropParams::default();
        let a = drop_devices(101, &p, &mut derive_stream(5, 9)).unwrap();
        let b = drop_devices(101, &p, &mut derive_stream(5, 9)).unwrap();
        assert_eq!(a, b);
        let mobile = a.iter().filter(|d| d.mobile).count();
        assert_eq!(mobile, 51); // round(50.5)
        for d in &a {
            assert_eq!(d.doppler_hz == 0.0, !d.mobile);
            if d.mobile {
                assert!((5.0..=50.0).contains(&d.doppler_hz));
            }
            assert!(d.beta > 0.0);
        }
        assert_eq!(
            a.iter().filter(|d| d.traffic_class == TrafficClass::DelaySensitive).count(),
            20
        );
    }

    #[test]
    fn invalid_geometry_rejected() {
        let mut rng = derive_stream(1, 0);
        let bad = DropParams {
            min_distance_m: 300.0,
            ..DropParams::default()
        };
        assert!(drop_devices(3, &bad, &mut rng).is_err());
        assert!(drop_devices(0, &DropParams::default(), &mut rng).is_err());
    }

    #[test]
    fn path_loss_values() {
        assert!((path_loss_db(1.0).unwrap() + 30.5).abs() < 1e-12);
        assert!((path_loss_db(100.0).unwrap() + 103.9).abs() < 1e-12);
        assert!(path_loss_db(0.5).is_err());
    }

    #[test]
    fn shadowing_moments() {
        let mut rng = derive_stream(3, 3);
        assert_eq!(large_scale_gain(1.0, 0.0, &mut rng).unwrap(), 10f64.powf(-3.05));
        let n = 100_000;
        let mean_db = (0..n)
            .map(|_| {
                let b = large_scale_gain(100.0, 8.0, &mut rng).unwrap();
                assert!(b > 0.0);
                10.0 * b.log10()
            })
            .sum::<f64>()
            / n as f64;
        assert!((mean_db + 103.9).abs() < 0.1, "{mean_db}");
    }

    #[test]
    fn correlation_matrix_cases() {
        assert_eq!(correlation_matrix(3, 0.0, 1.0).unwrap().matrix(), &CMatrix::identity(3));
        let r = correlation_matrix(2, 0.5, 0.0).unwrap();
        assert_eq!(r.matrix(), &CMatrix::from_real_rows(&[&[1.0, 0.5], &[0.5, 1.0]]));
        // eigenvalues of [[1,a],[a,1]] are 1 ± a
        let m = r.matrix();
        let tr = m.trace().re;
        let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
        let disc = (tr * tr / 4.0 - det).sqrt();
        assert!((tr / 2.0 + disc - 1.5).abs() < 1e-12 && (tr / 2.0 - disc - 0.5).abs() < 1e-12);
        assert!(correlation_matrix(2, 1.0, 0.0).is_err());
        assert!(correlation_matrix(2, -0.1, 0.0).is_err());
    }

    #[test]
    fn correlation_matrices_are_valid_covariances() {
        for &r in &[0.0, 0.3, 0.5, 0.9] {
            for &n in &[2usize, 64, 256] {
                let theta = 0.7;
                let rm = correlation_matrix(n, r, theta).unwrap();
                for i in 0..n {
                    assert_eq!(rm.matrix()[(i, i)], C64::new(1.0, 0.0));
                }
                // PSD: Cholesky succeeds without the not-PSD error
                cholesky_psd(&rm).unwrap();
            }
        }
    }

    #[test]
    fn closed_form_factor_matches_generic_cholesky() {
        for &(n, r, theta) in &[(8usize, 0.5, 0.3), (32, 0.9, -1.2), (5, 0.0, 2.0), (64, 0.3, 3.0)] {
            let generic = cholesky_psd(&correlation_matrix(n, r, theta).unwrap()).unwrap();
            let closed = exponential_cholesky(n, r, theta).unwrap();
            assert!(closed.sub(&generic).frobenius() < 1e-10, "n={n} r={r}");
        }
    }

    #[test]
    fn recursive_draw_equals_factor_times_gaussian() {
        let (n, r, theta) = (16, 0.7, 0.4);
        let corr = Correlation { r, theta };
        let mut out = vec![C64::new(0.0, 0.0); n];
        draw_correlated(&mut out, 2.0, corr, &mut derive_stream(8, 8));
        let mut rng = derive_stream(8, 8);
        let g = CMatrix::from_fn(n, 1, |_, _| rng.complex_normal());
        let l = exponential_cholesky(n, r, theta).unwrap();
        let want = l.matmul(&g);
        for i in 0..n {
            assert!((out[i] - want[(i, 0)] * 2f64.sqrt()).norm() < 1e-12);
        }
    }

    fn sample_covariance_error(r: f64, beta: f64, draws: usize, seed: u64) -> f64 {
        let n = 4;
        let dev = DeviceProfile {
            id: 0,
            position: (50.0, 0.0),
            distance_m: 50.0,
            azimuth_rad: 0.4,
            beta,
            doppler_hz: 0.0,
            mobile: false,
            pilot: None,
            traffic_class: TrafficClass::PeriodicSensor,
        };
        let devices = vec![dev.clone()];
        let mut rng = derive_stream(seed, 0);
        let mut acc = CMatrix::zeros(n, n);
        for _ in 0..draws {
            let ch = draw_channel(&devices, n, r, &mut rng).unwrap();
            let h = ch.h.col(0);
            for i in 0..n {
                for j in 0..n {
                    acc[(i, j)] += h[i] * h[j].conj();
                }
            }
        }
        let want = correlation_matrix(n, r, PI * dev.azimuth_rad.sin()).unwrap();
        let mut est = acc;
        for z in 0..n * n {
            let (i, j) = (z % n, z / n);
            est[(i, j)] /= draws as f64 * beta;
        }
        est.sub(want.matrix()).frobenius() / want.matrix().frobenius()
    }

    #[test]
    fn channel_covariance_matches_model() {
        for &(r, beta) in &[(0.0, 1.0), (0.5, 1.0), (0.5, 3e-9), (0.9, 0.2)] {
            let err = sample_covariance_error(r, beta, 100_000, 21);
            assert!(err < 0.02, "r={r} beta={beta} err={err}");
        }
    }

    #[test]
    fn vanishing_beta_gives_vanishing_column() {
        let mut rng = derive_stream(4, 4);
        let mut devs = drop_devices(2, &static_params(), &mut rng).unwrap();
        devs[0].beta = 1e-30;
        let ch = draw_channel(&devs, 8, 0.5, &mut rng).unwrap();
        assert!(crate::randcore::norm_sqr(ch.h.col(0)) < 1e-27);
    }

    #[test]
    fn aging_coefficients() {
        assert_eq!(aging_coefficient(0.0, 1e-3).unwrap(), 1.0);
        let zero = aging_coefficient(2.404_825_557_695_773 / (2.0 * PI), 1.0).unwrap();
        assert!(zero.abs() < 1e-9);
        assert!((aging_coefficient(50.0, 1e-3).unwrap() - 0.975_41).abs() < 1e-4);
        assert!(aging_coefficient(-1.0, 1e-3).is_err());
    }

    #[test]
    fn aging_rho_one_is_identity() {
        let mut rng = derive_stream(6, 0);
        let devs = drop_devices(5, &static_params(), &mut rng).unwrap();
        let ch = draw_channel(&devs, 8, 0.3, &mut rng).unwrap();
        let aged = age_channel(&ch, &[1.0; 5], &mut rng).unwrap();
        assert_eq!(aged, ch);
    }

    #[test]
    fn aging_rho_zero_decorrelates() {
        let mut rng = derive_stream(6, 1);
        let dev = drop_devices(1, &static_params(), &mut rng).unwrap();
        let (mut cross, mut p0, mut p1) = (C64::new(0.0, 0.0), 0.0, 0.0);
        for _ in 0..10_000 {
            let ch = draw_channel(&dev, 1, 0.0, &mut rng).unwrap();
            let aged = age_channel(&ch, &[0.0], &mut rng).unwrap();
            let (a, b) = (ch.h[(0, 0)], aged.h[(0, 0)]);
            cross += a * b.conj();
            p0 += a.norm_sqr();
            p1 += b.norm_sqr();
        }
        let rho = cross.norm() / (p0 * p1).sqrt();
        assert!(rho < 0.02, "{rho}");
    }

    #[test]
    fn aging_preserves_second_moment() {
        let mut rng = derive_stream(6, 2);
        let devs = drop_devices(1, &static_params(), &mut rng).unwrap();
        let beta = devs[0].beta;
        let n = 8;
        let trials = 10_000;
        let mut before = 0.0;
        let mut after = 0.0;
        for _ in 0..trials {
            let mut ch = draw_channel(&devs, n, 0.5, &mut rng).unwrap();
            before += crate::randcore::norm_sqr(ch.h.col(0));
            for _ in 0..100 {
                ch = age_channel(&ch, &[0.95], &mut rng).unwrap();
            }
            after += crate::randcore::norm_sqr(ch.h.col(0));
        }
        let denom = (trials * n) as f64 * beta;
        assert!((before / denom - 1.0).abs() < 0.03);
        assert!((after / denom - 1.0).abs() < 0.03, "{}", after / denom);
    }

    #[test]
    fn lazy_aging_matches_stepwise_statistics() {
        // correlation between frame 0 and frame 10 should be rho^10
        let corr = Correlation { r: 0.0, theta: 0.0 };
        let rho = 0.9;
        let mut rng = derive_stream(31, 0);
        let (mut cross, mut p) = (C64::new(0.0, 0.0), 0.0);
        for _ in 0..20_000 {
            let mut ch = AgingChannel::new(1, 1.0, corr, rho, &mut rng);
            let h0 = ch.at(0, &mut rng)[0];
            let h10 = ch.at(10, &mut rng)[0];
            cross += h10 * h0.conj();
            p += h0.norm_sqr();
        }
        let est = cross.re / p;
        assert!((est - rho.powi(10)).abs() < 0.02, "{est}");
    }
}
