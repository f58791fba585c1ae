//! Small dense and tridiagonal linear algebra kernels.
//!
//! Everything here is sized for oracle-scale problems (a few hundred rows)
//! and per-module blocks (at most a few dozen rows), so the kernels are
//! plain loops over row-major storage.

use crate::error::{Error, Result};

/// Row-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().iter().sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (l, &a) in self.row(i).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(l)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &DenseMatrix) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// `self + s * I`.
    pub fn shift(&self, s: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] += s;
        }
        m
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &DenseMatrix) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &DenseMatrix) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// `self * other + other * self`.
    pub fn anticommutator(&self, other: &DenseMatrix) -> Self {
        self.matmul(other).add(&other.matmul(self))
    }

    fn zip_with(&self, other: &DenseMatrix, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// `(M + M^T) / 2`.
    pub fn symmetrized(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let v = 0.5 * (self[(i, j)] + self[(j, i)]);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        self.max_asymmetry() == 0.0
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// `v^T M v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            let r: f64 = self.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
            s += v[i] * r;
        }
        s
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Relative asymmetry accepted by the dense eigensolver.
pub const SYMMETRY_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_TOL: f64 = 1e-12;

/// Full symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Eigenvalues are returned in ascending order; column `c` of the returned
/// matrix is the eigenvector of eigenvalue `c`.
pub fn symmetric_eigen(m: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let (vals, vecs) = jacobi(m, true)?;
    Ok((vals, vecs.expect("vectors requested")))
}

/// Eigenvalues only (ascending), same kernel as [`symmetric_eigen`].
pub fn symmetric_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    Ok(jacobi(m, false)?.0)
}

fn jacobi(m: &DenseMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<DenseMatrix>)> {
    if !m.is_square() {
        return Err(Error::InvalidArgument("eigensolver needs a square matrix".into()));
    }
    let asym = m.max_asymmetry();
    if asym > SYMMETRY_TOL * m.max_abs() {
        return Err(Error::NotSymmetric(asym));
    }
    let n = m.rows();
    let mut a = m.symmetrized();
    let mut v = want_vectors.then(|| DenseMatrix::identity(n));
    let target = JACOBI_REL_TOL * m.frobenius();

    let off_norm = |a: &DenseMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[(i, j)] * a[(i, j)];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) > target {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence(sweeps));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[(r, p)] = new_rp;
                    a[(p, r)] = new_rp;
                    a[(r, q)] = new_rq;
                    a[(q, r)] = new_rq;
                }
                if let Some(v) = v.as_mut() {
                    for r in 0..n {
                        let vrp = v[(r, p)];
                        let vrq = v[(r, q)];
                        v[(r, p)] = c * vrp - s * vrq;
                        v[(r, q)] = s * vrp + c * vrq;
                    }
                }
            }
        }
    }

    let diag = a.diagonal();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let vals = order.iter().map(|&i| diag[i]).collect();
    let vecs = v.map(|v| {
        let mut sorted = DenseMatrix::zeros(n, n);
        for (c, &src) in order.iter().enumerate() {
            for r in 0..n {
                sorted[(r, c)] = v[(r, src)];
            }
        }
        sorted
    });
    Ok((vals, vecs))
}

/// Symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal (`offdiagonal[i]` couples rows `i` and `i + 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    pub diagonal: Vec<f64>,
    pub offdiagonal: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diagonal: Vec<f64>, offdiagonal: Vec<f64>) -> Result<Self> {
        if diagonal.len() != offdiagonal.len() + 1 && !(diagonal.is_empty() && offdiagonal.is_empty()) {
            return Err(Error::InvalidArgument(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
                diagonal.len(),
                offdiagonal.len()
            )));
        }
        Ok(Self { diagonal, offdiagonal })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Leading principal block of size `len`.
    pub fn leading(&self, len: usize) -> Self {
        let len = len.min(self.dim());
        Self {
            diagonal: self.diagonal[..len].to_vec(),
            offdiagonal: self.offdiagonal[..len.saturating_sub(1)].to_vec(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diagonal[i];
        }
        for (i, &e) in self.offdiagonal.iter().enumerate() {
            m[(i, i + 1)] = e;
            m[(i + 1, i)] = e;
        }
        m
    }
}

/// Eigendecomposition of a symmetric tridiagonal matrix.
///
/// Implicit-shift QL; if any eigenvalue needs more than `30 * dim`
/// iterations the whole problem is redone with Sturm bisection and inverse
/// iteration. Output is sorted ascending, eigenvectors in columns.
pub fn tridiagonal_eigen(t: &TridiagonalMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    match tql_implicit(t) {
        Some(res) => Ok(res),
        None => bisection_inverse_iteration(t),
    }
}

fn tql_implicit(t: &TridiagonalMatrix) -> Option<(Vec<f64>, DenseMatrix)> {
    let n = t.dim();
    let mut d = t.diagonal.clone();
    let mut e = t.offdiagonal.clone();
    e.push(0.0);
    let mut z = DenseMatrix::identity(n);
    let max_iter = 30 * n.max(1);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == max_iter {
                return None;
            }
            iter += 1;
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut early = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let zk1 = z[(k, i + 1)];
                    let zk = z[(k, i)];
                    z[(k, i + 1)] = s * zk + c * zk1;
                    z[(k, i)] = c * zk - s * zk1;
                }
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Some(sort_pairs(d, z))
}

fn sort_pairs(vals: Vec<f64>, vecs: DenseMatrix) -> (Vec<f64>, DenseMatrix) {
    let n = vals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    let mut out = DenseMatrix::zeros(n, n);
    for (c, &src) in order.iter().enumerate() {
        for r in 0..n {
            out[(r, c)] = vecs[(r, src)];
        }
    }
    (order.iter().map(|&i| vals[i]).collect(), out)
}

/// Number of eigenvalues strictly below `x` (Sturm count).
fn sturm_count(t: &TridiagonalMatrix, x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..t.dim() {
        let e2 = if i == 0 { 0.0 } else { t.offdiagonal[i - 1].powi(2) };
        q = t.diagonal[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (t.diagonal[i].abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn solve_tridiagonal(t: &TridiagonalMatrix, shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = t.dim();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let tiny = 1e-300;
    let mut denom = t.diagonal[0] - shift;
    if denom.abs() < tiny {
        denom = tiny;
    }
    if n > 1 {
        c[0] = t.offdiagonal[0] / denom;
    }
    d[0] = rhs[0] / denom;
    for i in 1..n {
        let sub = t.offdiagonal[i - 1];
        let mut denom = t.diagonal[i] - shift - sub * c[i - 1];
        if denom.abs() < tiny {
            denom = tiny;
        }
        if i + 1 < n {
            c[i] = t.offdiagonal[i] / denom;
        }
        d[i] = (rhs[i] - sub * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// Sturm bisection for eigenvalues plus inverse iteration for vectors;
/// vectors within a cluster are re-orthogonalised by Gram-Schmidt.
pub fn bisection_inverse_iteration(t: &TridiagonalMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let n = t.dim();
    if n == 0 {
        return Ok((vec![], DenseMatrix::zeros(0, 0)));
    }
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r =
            if i > 0 { t.offdiagonal[i - 1].abs() } else { 0.0 } + if i + 1 < n { t.offdiagonal[i].abs() } else { 0.0 };
        lo = lo.min(t.diagonal[i] - r);
        hi = hi.max(t.diagonal[i] + r);
    }
    let span = (hi - lo).max(1.0);
    let mut vals = Vec::with_capacity(n);
    for idx in 0..n {
        let (mut a, mut b) = (lo - 1e-12 * span, hi + 1e-12 * span);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if sturm_count(t, mid) > idx {
                b = mid;
            } else {
                a = mid;
            }
            if b - a <= 4.0 * f64::EPSILON * span {
                break;
            }
        }
        vals.push(0.5 * (a + b));
    }

    let mut vecs = DenseMatrix::zeros(n, n);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (c, &lambda) in vals.iter().enumerate() {
        let perturb = 1e-10 * span;
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7 + c * 3) % 11) as f64).collect();
        normalize(&mut v);
        for _ in 0..4 {
            v = solve_tridiagonal(t, lambda + perturb, &v);
            for prev in basis
                .iter()
                .zip(&vals)
                .filter(|(_, &pv)| (pv - lambda).abs() < 1e-6 * span)
            {
                let dot: f64 = prev.0.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(prev.0).for_each(|(x, p)| *x -= dot * p);
            }
            normalize(&mut v);
        }
        for r in 0..n {
            vecs[(r, c)] = v[r];
        }
        basis.push(v);
    }
    Ok((vals, vecs))
}
