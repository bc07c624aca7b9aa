//! Small dense, banded, and tridiagonal linear algebra.
//!
//! Everything here is sized for desk-scale problems: Gram matrices of at
//! most a few dozen solutions and banded systems from 2-D space grids.
//! Algorithms are deterministic (fixed sweep and reduction order) so that
//! repeated runs produce bit-identical results.

use crate::error::{Error, Result};

/// Row-major dense matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0.0;
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Congruence transform `C * G * C^T` for a symmetric `G`.
    pub fn congruence(&self, gram: &Matrix) -> Matrix {
        self.mul(gram).mul(&self.transpose())
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_offdiag(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    m = m.max(self.get(i, j).abs());
                }
            }
        }
        m
    }

    /// Max absolute asymmetry `|A - A^T|`, as a relative measure against the
    /// largest entry (0 for the zero matrix).
    pub fn symmetry_defect(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst / scale
    }

    pub fn symmetrize(&mut self) {
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let v = 0.5 * (self.get(i, j) + self.get(j, i));
                self.set(i, j, v);
                self.set(j, i, v);
            }
        }
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

/// Quadratic form `x^T G y`.
pub fn quadratic_form(g: &Matrix, x: &[f64], y: &[f64]) -> f64 {
    let gx = g.mul_vec(y);
    x.iter().zip(&gx).map(|(a, b)| a * b).sum()
}

/// Cholesky factorization `A = L L^T` of a symmetric positive definite matrix.
pub fn cholesky(a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if s <= 0.0 {
                    return Err(Error::Numeric(format!(
                        "cholesky pivot {i} is non-positive ({s:e}); matrix is not positive definite"
                    )));
                }
                l.set(i, i, s.sqrt());
            } else {
                l.set(i, j, s / l.get(j, j));
            }
        }
    }
    Ok(l)
}

/// Rank-revealing Cholesky pivots of a PSD matrix.
///
/// Pivot `i` is the Schur complement of entry `(i,i)` with respect to the
/// leading block, i.e. the squared distance of column `i` from the span of
/// the previous columns in the inner product defined by `a`.  A pivot at or
/// below `rel_tol` times the matching diagonal entry is reported as exactly
/// zero and the column is excluded from later eliminations.
pub struct PivotedCholesky {
    pub pivots: Vec<f64>,
    pub factor: Matrix,
    pub active: Vec<bool>,
}

pub fn cholesky_pivots(a: &Matrix, rel_tol: f64) -> Result<PivotedCholesky> {
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    let mut pivots = vec![0.0; n];
    let mut active = vec![false; n];
    for i in 0..n {
        let mut d = a.get(i, i);
        for m in 0..i {
            if active[m] {
                d -= l.get(i, m) * l.get(i, m);
            }
        }
        let own = a.get(i, i);
        if own < 0.0 {
            return Err(Error::Numeric(format!(
                "diagonal entry {i} of a PSD matrix is negative ({own:e})"
            )));
        }
        if d <= rel_tol * own || own == 0.0 {
            pivots[i] = 0.0;
            continue;
        }
        pivots[i] = d;
        active[i] = true;
        let lii = d.sqrt();
        l.set(i, i, lii);
        for j in (i + 1)..n {
            let mut s = a.get(j, i);
            for m in 0..i {
                if active[m] {
                    s -= l.get(j, m) * l.get(i, m);
                }
            }
            l.set(j, i, s / lii);
        }
    }
    Ok(PivotedCholesky { pivots, factor: l, active })
}

/// Solve `L x = b` for lower-triangular `L` restricted to active columns.
pub fn solve_lower(l: &Matrix, b: &[f64]) -> Vec<f64> {
    let n = l.rows();
    let mut x = b.to_vec();
    for i in 0..n {
        for j in 0..i {
            let v = l.get(i, j);
            x[i] -= v * x[j];
        }
        x[i] /= l.get(i, i);
    }
    x
}

/// Solve `L^T x = b` for lower-triangular `L`.
pub fn solve_lower_transpose(l: &Matrix, b: &[f64]) -> Vec<f64> {
    let n = l.rows();
    let mut x = b.to_vec();
    for i in (0..n).rev() {
        for j in (i + 1)..n {
            x[i] -= l.get(j, i) * x[j];
        }
        x[i] /= l.get(i, i);
    }
    x
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in descending order with matching orthonormal
/// eigenvector columns.  Sweeps run in a fixed (p,q) order for determinism.
pub fn sym_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut m = a.clone();
    m.symmetrize();
    let mut v = Matrix::identity(n);
    let scale = m.max_abs().max(1e-300);
    const MAX_SWEEPS: usize = 64;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(m.get(i, j).abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let eig: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    order.sort_by(|&i, &j| eig[j].partial_cmp(&eig[i]).unwrap().then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| eig[i]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new_j, v.get(i, old_j));
        }
    }
    Ok((values, vectors))
}

/// Minimal-norm solution of `A x = b` for symmetric PSD `A`, truncating
/// eigenvalues at `rel_tol` times the largest one.
pub fn pseudo_solve_psd(a: &Matrix, b: &[f64], rel_tol: f64) -> Result<Vec<f64>> {
    let (vals, vecs) = sym_eigen(a)?;
    let n = a.rows();
    let vmax = vals.first().copied().unwrap_or(0.0).max(0.0);
    let mut x = vec![0.0; n];
    for j in 0..n {
        if vals[j] > rel_tol * vmax && vals[j] > 0.0 {
            let col = vecs.column(j);
            let proj: f64 = col.iter().zip(b).map(|(a, b)| a * b).sum();
            let w = proj / vals[j];
            for i in 0..n {
                x[i] += w * col[i];
            }
        }
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// Banded LU with partial pivoting (LAPACK-style storage)
// ---------------------------------------------------------------------------

/// Square banded matrix with `kl` sub- and `ku` super-diagonals.
///
/// Storage uses `kl + ku + 1 + kl` rows per column so that partial pivoting
/// has room for fill-in, following the LAPACK `dgbtrf` layout.
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    /// `data[r][j]` holds entry `(i, j)` with `r = kl + ku + i - j`.
    data: Vec<Vec<f64>>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        BandedMatrix { n, kl, ku, data: vec![vec![0.0; n]; 2 * kl + ku + 1] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(j + self.kl >= i && i + self.ku >= j, "entry outside band");
        self.data[self.kl + self.ku + i - j][j] += v;
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j + self.kl < i || i + self.ku < j {
            return 0.0;
        }
        self.data[self.kl + self.ku + i - j][j]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let jlo = i.saturating_sub(self.kl);
            let jhi = (i + self.ku).min(self.n - 1);
            let mut acc = 0.0;
            for j in jlo..=jhi {
                acc += self.get(i, j) * x[j];
            }
            y[i] = acc;
        }
        y
    }

    /// Factor in place with partial pivoting.
    pub fn lu_factor(mut self) -> Result<BandedLu> {
        let n = self.n;
        let kl = self.kl;
        let ku = self.ku;
        let kv = kl + ku; // width available above the diagonal after pivoting
        let mut pivots = vec![0usize; n];
        for j in 0..n {
            // find pivot in column j among rows j..=min(j+kl, n-1)
            let imax = (j + kl).min(n - 1);
            let mut p = j;
            let mut pmax = self.entry(j, j).abs();
            for i in (j + 1)..=imax {
                let v = self.entry(i, j).abs();
                if v > pmax {
                    pmax = v;
                    p = i;
                }
            }
            if pmax == 0.0 {
                return Err(Error::Numeric(format!("banded LU: zero pivot at column {j}")));
            }
            pivots[j] = p;
            if p != j {
                let jhi = (j + kv).min(n - 1);
                for col in j..=jhi {
                    let a = self.entry(p, col);
                    let b = self.entry(j, col);
                    self.set_entry(p, col, b);
                    self.set_entry(j, col, a);
                }
            }
            let diag = self.entry(j, j);
            for i in (j + 1)..=imax {
                let m = self.entry(i, j) / diag;
                self.set_entry(i, j, m);
                let jhi = (j + kv).min(n - 1);
                for col in (j + 1)..=jhi {
                    let v = self.entry(i, col) - m * self.entry(j, col);
                    self.set_entry(i, col, v);
                }
            }
        }
        Ok(BandedLu { mat: self, pivots })
    }

    #[inline]
    fn entry(&self, i: usize, j: usize) -> f64 {
        if j + self.kl < i || i + self.kl + self.ku < j {
            0.0
        } else {
            self.data[self.kl + self.ku + i - j][j]
        }
    }

    #[inline]
    fn set_entry(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(j + self.kl >= i && i + self.kl + self.ku >= j);
        self.data[self.kl + self.ku + i - j][j] = v;
    }
}

/// Factored banded matrix ready for repeated solves.
pub struct BandedLu {
    mat: BandedMatrix,
    pivots: Vec<usize>,
}

impl BandedLu {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.mat.n;
        let kl = self.mat.kl;
        let kv = kl + self.mat.ku;
        let mut x = b.to_vec();
        for j in 0..n {
            let p = self.pivots[j];
            if p != j {
                x.swap(p, j);
            }
            let imax = (j + kl).min(n - 1);
            for i in (j + 1)..=imax {
                x[i] -= self.mat.entry(i, j) * x[j];
            }
        }
        for j in (0..n).rev() {
            x[j] /= self.mat.entry(j, j);
            let ilo = j.saturating_sub(kv);
            for i in ilo..j {
                x[i] -= self.mat.entry(i, j) * x[j];
            }
        }
        x
    }
}

// ---------------------------------------------------------------------------
// Symmetric tridiagonal eigenvalues by Sturm bisection
// ---------------------------------------------------------------------------

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below `x`,
/// by the Sturm sequence of leading principal minors.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    let mut count = 0usize;
    let mut q = 1.0f64;
    for i in 0..n {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if q != 0.0 { e2 / q } else { e2 / 1e-300 };
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `count` smallest eigenvalues of a symmetric tridiagonal matrix,
/// ascending, located by bisection on Sturm counts.
pub fn tridiag_smallest_eigenvalues(diag: &[f64], off: &[f64], count: usize) -> Vec<f64> {
    let n = diag.len();
    assert!(count <= n);
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += off[i - 1].abs();
        }
        if i + 1 < n {
            r += off[i].abs();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let mut out = Vec::with_capacity(count);
    for k in 1..=count {
        let mut a = lo;
        let mut b = hi;
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if sturm_count(diag, off, mid) >= k {
                b = mid;
            } else {
                a = mid;
            }
            if (b - a) <= 1e-14 * b.abs().max(a.abs()).max(1.0) {
                break;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// Eigenvector for an isolated eigenvalue of a symmetric tridiagonal matrix
/// via two steps of inverse iteration with a tridiagonal LU solve.
pub fn tridiag_eigenvector(diag: &[f64], off: &[f64], eigenvalue: f64) -> Vec<f64> {
    let n = diag.len();
    // deterministic start vector
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64 * 0.7).sin() * 0.3).collect();
    normalize(&mut v);
    let shift = eigenvalue * (1.0 + 1e-12) + 1e-300;
    for _ in 0..3 {
        v = tridiag_solve_shifted(diag, off, shift, &v);
        normalize(&mut v);
    }
    // fix overall sign: first entry of notable size positive
    let lead = v.iter().find(|x| x.abs() > 1e-8).copied().unwrap_or(1.0);
    if lead < 0.0 {
        for x in &mut v {
            *x = -*x;
        }
    }
    v
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// Solve `(T - shift I) x = b` by Gaussian elimination with partial pivoting
/// specialized to tridiagonal structure.
fn tridiag_solve_shifted(diag: &[f64], off: &[f64], shift: f64, b: &[f64]) -> Vec<f64> {
    let n = diag.len();
    // working bands: sub (a), main (d), sup (c), extra sup (e) for pivot fill
    let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
    let mut c: Vec<f64> = (0..n - 1).map(|i| off[i]).collect();
    let mut a: Vec<f64> = (0..n - 1).map(|i| off[i]).collect();
    let mut e = vec![0.0; n];
    let mut x = b.to_vec();
    for i in 0..n - 1 {
        if a[i].abs() > d[i].abs() {
            // swap rows i and i+1
            let (d0, c0, e0) = (d[i], c[i], e[i]);
            d[i] = a[i];
            c[i] = d[i + 1];
            e[i] = if i + 2 < n { c[i + 1] } else { 0.0 };
            d[i + 1] = c0;
            if i + 2 < n {
                c[i + 1] = e0;
            }
            a[i] = d0;
            x.swap(i, i + 1);
        }
        let piv = if d[i].abs() < 1e-300 { 1e-300_f64.copysign(d[i]) } else { d[i] };
        let m = a[i] / piv;
        d[i + 1] -= m * c[i];
        if i + 2 < n {
            c[i + 1] -= m * e[i];
        }
        x[i + 1] -= m * x[i];
    }
    // back substitution with two superdiagonals
    for i in (0..n).rev() {
        let mut s = x[i];
        if i + 1 < n {
            s -= c[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= e[i] * x[i + 2];
        }
        let piv = if d[i].abs() < 1e-300 { 1e-300_f64.copysign(d[i]) } else { d[i] };
        x[i] = s / piv;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cholesky_reconstructs() {
        let a = Matrix::from_rows(&[vec![4.0, 2.0, 0.5], vec![2.0, 5.0, 1.0], vec![0.5, 1.0, 3.0]]);
        let l = cholesky(&a).unwrap();
        let back = l.mul(&l.transpose());
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(back.get(i, j), a.get(i, j), max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = Matrix::from_rows(&[vec![1.0, 3.0], vec![3.0, 1.0]]);
        assert!(cholesky(&a).is_err());
    }

    #[test]
    fn pivots_flag_dependent_column() {
        // second column is twice the first
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        let p = cholesky_pivots(&a, 1e-10).unwrap();
        assert_relative_eq!(p.pivots[0], 1.0);
        assert_eq!(p.pivots[1], 0.0);
        assert!(!p.active[1]);
    }

    #[test]
    fn jacobi_diagonalizes() {
        let a = Matrix::from_rows(&[vec![2.0, 1.0, 0.0], vec![1.0, 3.0, 0.5], vec![0.0, 0.5, 1.0]]);
        let (vals, vecs) = sym_eigen(&a).unwrap();
        // A V = V diag(vals)
        for j in 0..3 {
            let col = vecs.column(j);
            let av = a.mul_vec(&col);
            for i in 0..3 {
                assert_relative_eq!(av[i], vals[j] * col[i], epsilon = 1e-12);
            }
        }
        assert!(vals[0] >= vals[1] && vals[1] >= vals[2]);
    }

    #[test]
    fn pseudo_solve_minimal_norm() {
        // A = [[1,1],[1,1]] (rank 1), b = (2,2): min-norm solution (1,1)
        let a = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let x = pseudo_solve_psd(&a, &[2.0, 2.0], 1e-12).unwrap();
        assert_relative_eq!(x[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(x[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn banded_lu_matches_direct() {
        // 6x6 with kl=2, ku=1, diagonally non-dominant to exercise pivoting
        let n = 6;
        let mut b = BandedMatrix::zeros(n, 2, 1);
        let mut dense = Matrix::zeros(n, n);
        let vals = [
            (0usize, 0usize, 0.5),
            (0, 1, 2.0),
            (1, 0, 3.0),
            (1, 1, 1.0),
            (1, 2, -1.0),
            (2, 0, 1.5),
            (2, 1, 0.2),
            (2, 2, 0.7),
            (2, 3, 1.1),
            (3, 1, -0.4),
            (3, 2, 2.2),
            (3, 3, 0.9),
            (3, 4, 0.3),
            (4, 2, 1.0),
            (4, 3, -2.0),
            (4, 4, 1.4),
            (4, 5, 0.6),
            (5, 3, 0.8),
            (5, 4, 1.2),
            (5, 5, 2.5),
        ];
        for (i, j, v) in vals {
            b.add(i, j, v);
            dense.set(i, j, v);
        }
        let rhs: Vec<f64> = (0..n).map(|i| (i as f64) - 2.5).collect();
        let lu = b.lu_factor().unwrap();
        let x = lu.solve(&rhs);
        // residual against the dense matrix
        let ax = dense.mul_vec(&x);
        for i in 0..n {
            assert_relative_eq!(ax[i], rhs[i], epsilon = 1e-10);
        }
    }

    #[test]
    fn sturm_finds_known_spectrum() {
        // second-difference matrix on 9 interior nodes of (0,1), h = 0.1
        let m = 9usize;
        let h = 0.1;
        let diag = vec![2.0 / (h * h); m];
        let off = vec![-1.0 / (h * h); m - 1];
        let eigs = tridiag_smallest_eigenvalues(&diag, &off, 3);
        for (k, ev) in eigs.iter().enumerate() {
            let kk = (k + 1) as f64;
            let exact = (2.0 / (h * h)) * (1.0 - (std::f64::consts::PI * kk * h).cos());
            assert_relative_eq!(*ev, exact, max_relative = 1e-10);
        }
    }

    #[test]
    fn inverse_iteration_recovers_sine_vector() {
        let m = 31usize;
        let h = 1.0 / (m as f64 + 1.0);
        let diag = vec![2.0 / (h * h); m];
        let off = vec![-1.0 / (h * h); m - 1];
        let ev = tridiag_smallest_eigenvalues(&diag, &off, 1)[0];
        let v = tridiag_eigenvector(&diag, &off, ev);
        // compare with sin(pi x) normalized
        let mut exact: Vec<f64> =
            (1..=m).map(|i| (std::f64::consts::PI * i as f64 * h).sin()).collect();
        let norm = exact.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut exact {
            *x /= norm;
        }
        for i in 0..m {
            assert_relative_eq!(v[i], exact[i], epsilon = 1e-8);
        }
    }
}
