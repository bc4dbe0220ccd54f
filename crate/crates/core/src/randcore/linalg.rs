//! Dense complex matrices and the handful of kernels the simulator needs.

use crate::error::NumericError;
use num_complex::Complex64;

pub type C64 = Complex64;

/// Column-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for c in 0..cols {
            for r in 0..rows {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from equal-length columns.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        let mut data = Vec::with_capacity(rows * columns.len());
        for col in columns {
            assert_eq!(col.len(), rows, "column length mismatch");
            data.extend_from_slice(col);
        }
        CMatrix {
            rows,
            cols: columns.len(),
            data,
        }
    }

    /// Builds a matrix from row-major real entries (test fixtures).
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn col(&self, c: usize) -> &[C64] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, c: usize) -> &mut [C64] {
        &mut self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[C64]> {
        self.data.chunks_exact(self.rows.max(1)).take(self.cols)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let out_col = &mut out.data[j * self.rows..(j + 1) * self.rows];
            for k in 0..self.cols {
                let b = other[(k, j)];
                if b == C64::new(0.0, 0.0) {
                    continue;
                }
                let a_col = &self.data[k * self.rows..(k + 1) * self.rows];
                for (o, a) in out_col.iter_mut().zip(a_col) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self^H · other` without materializing the adjoint.
    pub fn adjoint_mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.rows, other.rows, "adjoint_mul shape mismatch");
        CMatrix::from_fn(self.cols, other.cols, |i, j| inner(self.col(i), other.col(j)))
    }

    /// Gram matrix `self^H · self`.
    pub fn gram(&self) -> CMatrix {
        let n = self.cols;
        let mut g = CMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..=j {
                let v = inner(self.col(i), self.col(j));
                g[(i, j)] = v;
                g[(j, i)] = v.conj();
            }
        }
        for i in 0..n {
            g[(i, i)] = C64::new(g[(i, i)].re, 0.0);
        }
        g
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sq().sqrt()
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Keeps only the listed rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> CMatrix {
        CMatrix::from_fn(rows.len(), self.cols, |r, c| self[(rows[r], c)])
    }

    /// Keeps only the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> CMatrix {
        CMatrix::from_fn(self.rows, cols.len(), |r, c| self[(r, cols[c])])
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[c * self.rows + r]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[c * self.rows + r]
    }
}

/// `a^H b`.
#[inline]
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        acc += x.conj() * y;
    }
    acc
}

#[inline]
pub fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// A conjugate-symmetric matrix with a real diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Validates symmetry to a relative tolerance of 1e-12 and snaps the
    /// diagonal to real.
    pub fn new(m: CMatrix) -> Result<Self, NumericError> {
        if m.rows() != m.cols() || m.rows() == 0 {
            return Err(NumericError::Shape(format!(
                "hermitian matrix must be square and non-empty, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        let scale = m.frobenius().max(f64::MIN_POSITIVE);
        let mut m = m;
        for i in 0..n {
            for j in 0..i {
                if (m[(i, j)] - m[(j, i)].conj()).norm() > 1e-12 * scale {
                    return Err(NumericError::NotHermitian);
                }
            }
            if m[(i, i)].im.abs() > 1e-12 * scale {
                return Err(NumericError::NotHermitian);
            }
            m[(i, i)] = C64::new(m[(i, i)].re, 0.0);
        }
        Ok(HermitianMatrix(m))
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_inner(self) -> CMatrix {
        self.0
    }
}

/// Cholesky factor `L` with `L·L^H = R`.
///
/// If a pivot drops to (near) zero or below, `1e-12·trace(R)/order` is added to
/// the diagonal once and the factorization restarts. A pivot that is still
/// negative after that is reported as [`NumericError::NotPsd`].
pub fn cholesky_psd(r: &HermitianMatrix) -> Result<CMatrix, NumericError> {
    let m = r.matrix();
    let n = r.order();
    match cholesky_inner(m, 0.0) {
        Ok(l) => Ok(l),
        Err(_) => {
            let jitter = 1e-12 * m.trace().re / n as f64;
            cholesky_inner(m, jitter.max(0.0))
        }
    }
}

fn cholesky_inner(m: &CMatrix, jitter: f64) -> Result<CMatrix, NumericError> {
    let n = m.rows();
    let scale = (0..n).map(|i| m[(i, i)].re.abs()).fold(0.0, f64::max);
    let floor = scale * 1e-15;
    let mut l = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)].re + jitter;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d < 0.0 && jitter > 0.0 {
            return Err(NumericError::NotPsd { pivot: j, value: d });
        }
        if d <= floor {
            if jitter == 0.0 {
                return Err(NumericError::NotPsd { pivot: j, value: d });
            }
            // semidefinite direction: zero column below the pivot
            l[(j, j)] = C64::new(d.max(0.0).sqrt(), 0.0);
            continue;
        }
        let djj = d.sqrt();
        l[(j, j)] = C64::new(djj, 0.0);
        for i in (j + 1)..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Solves `A X = B` for Hermitian positive-definite `A` via its Cholesky factor.
pub fn cholesky_solve(l: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = l.rows();
    assert_eq!(b.rows(), n);
    let mut x = b.clone();
    for c in 0..b.cols() {
        let col = x.col_mut(c);
        // forward: L y = b
        for i in 0..n {
            let mut s = col[i];
            for k in 0..i {
                s -= l[(i, k)] * col[k];
            }
            col[i] = s / l[(i, i)];
        }
        // backward: L^H x = y
        for i in (0..n).rev() {
            let mut s = col[i];
            for k in (i + 1)..n {
                s -= l[(k, i)].conj() * col[k];
            }
            col[i] = s / l[(i, i)].conj();
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randcore::rng::derive_stream;

    #[test]
    fn cholesky_identity() {
        let r = HermitianMatrix::new(CMatrix::identity(4)).unwrap();
        assert_eq!(cholesky_psd(&r).unwrap(), CMatrix::identity(4));
    }

    #[test]
    fn cholesky_two_by_two() {
        let r = HermitianMatrix::new(CMatrix::from_real_rows(&[&[1.0, 0.5], &[0.5, 1.0]])).unwrap();
        let l = cholesky_psd(&r).unwrap();
        let want = [[1.0, 0.0], [0.5, 0.866_025_4]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((l[(i, j)].re - want[i][j]).abs() < 1e-7);
                assert_eq!(l[(i, j)].im, 0.0);
            }
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let r = HermitianMatrix::new(CMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]])).unwrap();
        assert!(matches!(cholesky_psd(&r), Err(NumericError::NotPsd { .. })));
    }

    #[test]
    fn cholesky_semidefinite_uses_jitter() {
        // rank-one PSD
        let r = HermitianMatrix::new(CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]])).unwrap();
        let l = cholesky_psd(&r).unwrap();
        let err = l.matmul(&l.adjoint()).sub(r.matrix()).frobenius() / r.matrix().frobenius();
        assert!(err < 1e-10);
    }

    #[test]
    fn hermitian_validation() {
        let bad = CMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(HermitianMatrix::new(bad).is_err());
        assert!(HermitianMatrix::new(CMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn cholesky_round_trip_random_psd() {
        let mut rng = derive_stream(11, 0);
        for trial in 0..100 {
            let n = 1 + (trial * 7) % 64;
            let k = n + 2;
            let a = CMatrix::from_fn(n, k, |_, _| rng.complex_normal());
            let r = HermitianMatrix::new(a.matmul(&a.adjoint())).unwrap();
            let l = cholesky_psd(&r).unwrap();
            let err = l.matmul(&l.adjoint()).sub(r.matrix()).frobenius() / r.matrix().frobenius();
            assert!(err < 1e-10, "order {n}: {err}");
            for i in 0..n {
                for j in (i + 1)..n {
                    assert_eq!(l[(i, j)], C64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn solve_recovers_rhs() {
        let mut rng = derive_stream(12, 0);
        let a = CMatrix::from_fn(6, 6, |_, _| rng.complex_normal());
        let g = HermitianMatrix::new(a.gram()).unwrap();
        let l = cholesky_psd(&g).unwrap();
        let b = CMatrix::from_fn(6, 2, |_, _| rng.complex_normal());
        let x = cholesky_solve(&l, &b);
        let resid = g.matrix().matmul(&x).sub(&b).frobenius();
        assert!(resid < 1e-10);
    }
}
