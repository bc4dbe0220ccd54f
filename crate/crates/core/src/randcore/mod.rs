//! Deterministic randomness plus the small numeric kernels shared by every
//! other module.

pub mod linalg;
pub mod rng;
pub mod special;

pub use linalg::{cholesky_psd, cholesky_solve, inner, norm_sqr, CMatrix, HermitianMatrix, C64};
pub use rng::{derive_stream, draw_std_normal, RngStream};
pub use special::{bessel_j0, f_sf, ln_gamma, reg_incomplete_beta, student_t_cdf, student_t_quantile};

/// Fractional ranks scaled to `[0, 1]`: the smallest value maps to 0, the
/// largest to 1, ties share their average rank. A single value maps to 0.
pub fn rank_norm(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    if n <= 1 {
        return vec![0.0; n];
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg / (n - 1) as f64;
        }
        i = j + 1;
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::rank_norm;

    #[test]
    fn rank_norm_handles_ties() {
        assert_eq!(rank_norm(&[3.0]), vec![0.0]);
        assert_eq!(rank_norm(&[1.0, 3.0, 2.0]), vec![0.0, 1.0, 0.5]);
        assert_eq!(rank_norm(&[10.0, 10.0, 1.0, 1.0]), vec![2.5 / 3.0, 2.5 / 3.0, 0.5 / 3.0, 0.5 / 3.0]);
    }
}
