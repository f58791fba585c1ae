//! The Heun operator `T = {A, A*} + mu A* + nu A` on each module, tuned to
//! commute with both the subsystem projector and the filled-level projector,
//! and the correlation spectrum read out from its eigenvectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, tridiagonal_eigen, DenseMatrix, TridiagonalMatrix};
use crate::scheme::GraphSpec;
use crate::specfn::HalfInt;
use crate::spectral::{theta, CorrelationSpectrum, FillingSpec, SubsystemSpec};
use crate::terwilliger::{
    enumerate_modules, exact_block_eigenvalues, module_correlation_block, total_projection, ModuleLabel,
};

/// Relative gap below which two eigenvalues of `T` are treated as a cluster.
pub const CLUSTER_TOL: f64 = 1e-8;

/// `theta*_{m1,m2} = -(n-1)(n-2k)^2/(4k(n-k)) + n(n-1)/(2k(n-k)) (m1 - m2)`.
pub fn dual_eigenvalue(m1: HalfInt, m2: HalfInt, spec: &GraphSpec) -> Result<f64> {
    if m1 + m2 != total_projection(spec) {
        return Err(Error::InvalidArgument(format!(
            "m1 + m2 = {} but must be {}",
            m1 + m2,
            total_projection(spec)
        )));
    }
    Ok(dual_eigenvalue_unchecked(m1, m2, spec))
}

fn dual_eigenvalue_unchecked(m1: HalfInt, m2: HalfInt, spec: &GraphSpec) -> f64 {
    let (n, k) = (spec.n() as f64, spec.k() as f64);
    let kk = k * (n - k);
    -(n - 1.0) * (n - 2.0 * k).powi(2) / (4.0 * kk) + n * (n - 1.0) / (2.0 * kk) * (m1 - m2).value()
}

/// `theta*` at the row `m1` of a module (`m2 = n/2 - k - m1`).
fn dual_at(m1: HalfInt, spec: &GraphSpec) -> f64 {
    dual_eigenvalue_unchecked(m1, total_projection(spec) - m1, spec)
}

/// `A*` on a module: diagonal in the `m1` basis.
pub fn module_dual_diagonal(label: &ModuleLabel, spec: &GraphSpec) -> Result<Vec<f64>> {
    Ok(label.m1_range.iter().map(|&m1| dual_at(m1, spec)).collect())
}

fn check_row(label: &ModuleLabel, m1: HalfInt) -> Result<()> {
    if label.m1_range.contains(&m1) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!(
            "m1 = {m1} outside module ({}, {})",
            label.j1, label.j2
        )))
    }
}

/// `a_{m1}` (coupling `m1` to `m1 - 1`) and `b_{m1}` of the action of `A`.
/// `a` vanishes at the lowest admissible `m1`.
pub fn tridiagonal_a_coefficients(label: &ModuleLabel, m1: HalfInt, spec: &GraphSpec) -> Result<(f64, f64)> {
    check_row(label, m1)?;
    let m2 = total_projection(spec) - m1;
    let (j1, j2) = (label.j1.value(), label.j2.value());
    let (x1, x2) = (m1.value(), m2.value());
    let radicand = (j1 + x1) * (j1 - x1 + 1.0) * (j2 - x2) * (j2 + x2 + 1.0);
    let a = radicand.max(0.0).sqrt();
    let b = label.j1.casimir() + label.j2.casimir() - x1 * x1 - x2 * x2 - spec.n() as f64 / 2.0;
    Ok((a, b))
}

/// `A` on a module in the `m1` basis, rows ordered as `label.m1_range`.
pub fn module_adjacency_action(label: &ModuleLabel, spec: &GraphSpec) -> Result<TridiagonalMatrix> {
    let coeffs = label
        .m1_range
        .iter()
        .map(|&m1| tridiagonal_a_coefficients(label, m1, spec))
        .collect::<Result<Vec<_>>>()?;
    let diagonal = coeffs.iter().map(|c| c.1).collect();
    // row r holds m1, row r + 1 holds m1 - 1
    let offdiagonal = coeffs.iter().take(label.dim().saturating_sub(1)).map(|c| c.0).collect();
    TridiagonalMatrix::new(diagonal, offdiagonal)
}

/// `a*_j` (coupling `j` to `j - 1`) and `b*_j` of the action of `A*` in the
/// eigenbasis of `A`. `a*` vanishes at the lowest level of the module.
pub fn tridiagonal_astar_coefficients(j: HalfInt, label: &ModuleLabel, spec: &GraphSpec) -> Result<(f64, f64)> {
    let levels = label.levels(spec);
    if !levels.contains(&j) {
        return Err(Error::OutOfRange(format!(
            "j = {j} outside module ({}, {})",
            label.j1, label.j2
        )));
    }
    let (n, k) = (spec.n() as f64, spec.k() as f64);
    let (j1, j2, jv) = (label.j1.value(), label.j2.value(), j.value());
    let m = total_projection(spec).value();
    let a_star = if j == levels[0] {
        0.0
    } else {
        let num = (jv * jv - m * m) * (jv * jv - (j1 - j2).powi(2)) * ((j1 + j2 + 1.0).powi(2) - jv * jv);
        let den = (4.0 * jv * jv - 1.0) * 4.0 * jv * jv;
        n * (n - 1.0) / (k * (n - k)) * (num / den).max(0.0).sqrt()
    };
    let ratio = if label.j1 == label.j2 {
        0.0
    } else {
        (j1 + j2 + 1.0) * (j1 - j2) / (2.0 * jv * (jv + 1.0))
    };
    let b_star =
        -(n - 1.0) * (n - 2.0 * k) / (2.0 * k) + n * (n - 1.0) * (n - 2.0 * k) / (2.0 * k * (n - k)) * (0.5 + ratio);
    Ok((a_star, b_star))
}

/// `A*` on a module in the eigenbasis of `A`, levels ascending.
pub fn module_dual_action_jbasis(label: &ModuleLabel, spec: &GraphSpec) -> Result<TridiagonalMatrix> {
    let coeffs = label
        .levels(spec)
        .into_iter()
        .map(|j| tridiagonal_astar_coefficients(j, label, spec))
        .collect::<Result<Vec<_>>>()?;
    let diagonal = coeffs.iter().map(|c| c.1).collect();
    let offdiagonal = coeffs.iter().skip(1).map(|c| c.0).collect();
    TridiagonalMatrix::new(diagonal, offdiagonal)
}

/// Cutoffs of a ball subsystem `{0..N}` and a bottom filling
/// `{n/2-k..j0}`, with the matching `mu` and `nu`.
///
/// `j0 = n/2 - k - 1` encodes the empty filling and `j0 = n/2` the full one;
/// `N = k` is the whole graph. At those ends the corresponding commutation
/// condition is vacuous and the same closed forms are used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeunSpec {
    pub cutoff: usize,
    pub j0: HalfInt,
    pub mu: f64,
    pub nu: f64,
}

impl HeunSpec {
    pub fn new(spec: &GraphSpec, cutoff: usize, j0: HalfInt) -> Result<Self> {
        let (n, k) = (spec.n() as i64, spec.k() as i64);
        if cutoff > spec.k() {
            return Err(Error::InvalidArgument(format!("cutoff {cutoff} exceeds diameter {k}")));
        }
        let lowest = HalfInt::from_twice(n - 2 * k);
        if !j0.same_parity(lowest) || j0 < lowest - HalfInt::from_int(1) || j0.twice() > n {
            return Err(Error::InvalidArgument(format!(
                "{j0} is not a filling cutoff for J({n}, {k})"
            )));
        }
        let one = HalfInt::from_int(1);
        let mu = -theta(spec, j0 + one) - theta(spec, j0);
        let top = HalfInt::from_twice(n - k);
        let nn = HalfInt::from_int(cutoff as i64);
        let inner = dual_at(top - nn, spec);
        let outer = dual_at(top - nn - one, spec);
        let nu = -(outer + inner);
        Ok(Self { cutoff, j0, mu, nu })
    }

    /// Recognise a ball subsystem and a bottom filling.
    pub fn from_sets(spec: &GraphSpec, filling: &FillingSpec, sub: &SubsystemSpec) -> Result<Self> {
        let cutoff = sub
            .ball_radius()
            .ok_or_else(|| Error::InvalidArgument("the Heun route needs distances 0..=N".into()))?;
        let j0 = if filling.is_empty() {
            HalfInt::from_twice(spec.n() as i64 - 2 * spec.k() as i64 - 2)
        } else {
            filling
                .contiguous_top(spec)
                .ok_or_else(|| Error::InvalidArgument("the Heun route needs the lowest levels filled".into()))?
        };
        Self::new(spec, cutoff, j0)
    }

    /// Same cutoffs with shifted parameters; breaks the commutation.
    pub fn perturbed(self, d_mu: f64, d_nu: f64) -> Self {
        Self {
            mu: self.mu + d_mu,
            nu: self.nu + d_nu,
            ..self
        }
    }

    pub fn filling(&self, spec: &GraphSpec) -> FillingSpec {
        let (n, k) = (spec.n() as i64, spec.k() as i64);
        let count = ((self.j0.twice() - (n - 2 * k)) / 2 + 1) as usize;
        FillingSpec::lowest(spec, count).expect("validated cutoff")
    }

    pub fn subsystem(&self, spec: &GraphSpec) -> SubsystemSpec {
        SubsystemSpec::ball(spec, self.cutoff).expect("validated cutoff")
    }
}

/// `T` on a module in the `m1` basis.
pub fn build_t(label: &ModuleLabel, hs: &HeunSpec, spec: &GraphSpec) -> Result<TridiagonalMatrix> {
    let a = module_adjacency_action(label, spec)?;
    let duals = module_dual_diagonal(label, spec)?;
    let diagonal = (0..label.dim())
        .map(|r| hs.nu * a.diagonal[r] + hs.mu * duals[r] + 2.0 * a.diagonal[r] * duals[r])
        .collect();
    let offdiagonal = (0..label.dim().saturating_sub(1))
        .map(|r| {
            let s = duals[r] + duals[r + 1];
            a.offdiagonal[r] * (s + hs.nu)
        })
        .collect();
    TridiagonalMatrix::new(diagonal, offdiagonal)
}

/// `T` on a module in the eigenbasis of `A`, levels ascending.
pub fn build_t_jbasis(label: &ModuleLabel, hs: &HeunSpec, spec: &GraphSpec) -> Result<TridiagonalMatrix> {
    let s = module_dual_action_jbasis(label, spec)?;
    let thetas: Vec<f64> = label.levels(spec).iter().map(|&j| theta(spec, j)).collect();
    let diagonal = (0..thetas.len())
        .map(|r| hs.mu * s.diagonal[r] + hs.nu * thetas[r] + 2.0 * s.diagonal[r] * thetas[r])
        .collect();
    let offdiagonal = (0..thetas.len().saturating_sub(1))
        .map(|r| {
            let sum = thetas[r] + thetas[r + 1];
            s.offdiagonal[r] * (sum + hs.mu)
        })
        .collect();
    TridiagonalMatrix::new(diagonal, offdiagonal)
}

/// Number of leading module rows inside the ball of radius `cutoff`.
fn rows_within(label: &ModuleLabel, cutoff: usize, spec: &GraphSpec) -> usize {
    label.distances(spec).iter().filter(|&&d| d <= cutoff).count()
}

/// Off-diagonal entry of `T` joining the last row inside the ball to the
/// first row outside it, if the module straddles the boundary.
pub fn subsystem_cut_entry(label: &ModuleLabel, hs: &HeunSpec, spec: &GraphSpec) -> Result<Option<f64>> {
    let r = rows_within(label, hs.cutoff, spec);
    if r == 0 || r == label.dim() {
        return Ok(None);
    }
    Ok(Some(build_t(label, hs, spec)?.offdiagonal[r - 1]))
}

/// Off-diagonal entry of `T` (level basis) joining `j0` and `j0 + 1`, if
/// both are levels of the module.
pub fn filling_cut_entry(label: &ModuleLabel, hs: &HeunSpec, spec: &GraphSpec) -> Result<Option<f64>> {
    let levels = label.levels(spec);
    match levels.iter().position(|&j| j == hs.j0) {
        Some(p) if p + 1 < levels.len() => Ok(Some(build_t_jbasis(label, hs, spec)?.offdiagonal[p])),
        _ => Ok(None),
    }
}

/// `max |[C, T]|` on the whole module, with `C = pi_SV pi_SE pi_SV` for the
/// cutoffs of `hs`.
pub fn commutant_residual(label: &ModuleLabel, hs: &HeunSpec, spec: &GraphSpec) -> Result<f64> {
    let t = build_t(label, hs, spec)?.to_dense();
    let g = label.cg_matrix(spec)?;
    let filling = hs.filling(spec);
    let levels = label.levels(spec);
    let inside = label.distances(spec);
    let dim = label.dim();
    let mut c = DenseMatrix::zeros(dim, dim);
    for r in 0..dim {
        for s in 0..dim {
            if inside[r] <= hs.cutoff && inside[s] <= hs.cutoff {
                c[(r, s)] = levels
                    .iter()
                    .enumerate()
                    .filter(|(_, &j)| filling.contains(j))
                    .map(|(col, _)| g[(r, col)] * g[(s, col)])
                    .sum();
            }
        }
    }
    Ok(c.commutator(&t).max_abs())
}

/// Correlation eigenvalues of one module copy, read out from the
/// eigenvectors of `T` restricted to the ball.
pub fn module_spectrum_via_heun(label: &ModuleLabel, hs: &HeunSpec, spec: &GraphSpec) -> Result<Vec<f64>> {
    let r = rows_within(label, hs.cutoff, spec);
    if r == 0 {
        return Ok(Vec::new());
    }
    if let Some(vals) = exact_block_eigenvalues(label, &hs.filling(spec), &hs.subsystem(spec), spec) {
        return Ok(vals);
    }
    let t = build_t(label, hs, spec)?.leading(r);
    let (vals, vecs) = tridiagonal_eigen(&t)?;
    let c = module_correlation_block(label, &hs.filling(spec), &hs.subsystem(spec), spec)?.matrix;

    let scale = vals.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let mut out = Vec::with_capacity(r);
    let mut start = 0;
    while start < r {
        let mut end = start + 1;
        while end < r && vals[end] - vals[end - 1] < CLUSTER_TOL * scale {
            end += 1;
        }
        if end - start == 1 {
            out.push(c.quadratic_form(&vecs.column(start)));
        } else {
            // project C onto the cluster and diagonalise there
            let width = end - start;
            let mut p = DenseMatrix::zeros(width, width);
            for a in 0..width {
                let va = vecs.column(start + a);
                for b in a..width {
                    let vb = vecs.column(start + b);
                    let cv: f64 = (0..r)
                        .map(|x| va[x] * (0..r).map(|y| c[(x, y)] * vb[y]).sum::<f64>())
                        .sum();
                    p[(a, b)] = cv;
                    p[(b, a)] = cv;
                }
            }
            out.extend(symmetric_eigen(&p)?.0);
        }
        start = end;
    }
    Ok(out)
}

/// Correlation spectrum for the cutoffs of `hs`, merged over modules.
pub fn spectrum_via_heun(spec: &GraphSpec, hs: &HeunSpec) -> Result<CorrelationSpectrum> {
    let mut weighted = Vec::new();
    for label in enumerate_modules(spec) {
        for v in module_spectrum_via_heun(&label, hs, spec)? {
            weighted.push((v, label.degeneracy));
        }
    }
    CorrelationSpectrum::from_weighted(weighted)
}
