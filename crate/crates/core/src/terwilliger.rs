//! Decomposition of the vertex space into irreducible modules `V_{j1,j2}` of
//! the Terwilliger algebra relative to the base vertex.
//!
//! Inside a module the basis vectors are labelled by `m1`; the vector with
//! label `m1` is supported on the neighborhood at distance
//! `i = (n-k)/2 - m1`. Everything here works with module-sized objects only.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heun::{module_adjacency_action, module_dual_diagonal};
use crate::linalg::{symmetric_eigenvalues, DenseMatrix};
use crate::scheme::GraphSpec;
use crate::specfn::{binomial, clebsch_gordan, clebsch_gordan_squared_exact, j_min, m1_interval, HalfInt};
use crate::spectral::{is_level, CorrelationSpectrum, FillingSpec, SubsystemSpec};

/// An irreducible module class with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleLabel {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub degeneracy: u64,
    /// Admissible `m1`, highest first, i.e. by increasing distance.
    pub m1_range: Vec<HalfInt>,
}

/// `m = n/2 - k`, the total projection shared by every module.
pub fn total_projection(spec: &GraphSpec) -> HalfInt {
    HalfInt::from_twice(spec.n() as i64 - 2 * spec.k() as i64)
}

/// Multiplicity of spin `j` in the `count`-fold tensor power of spin 1/2:
/// `(2j+1)/(count+1) C(count+1, count/2 - j)`.
fn spin_multiplicity(count: usize, j: HalfInt) -> u64 {
    let diff = count as i64 - j.twice();
    if j.twice() < 0 || diff < 0 || diff % 2 != 0 {
        return 0;
    }
    let lower = diff / 2;
    let num = (j.twice() as u128 + 1) * binomial(count as u64 + 1, lower as u64);
    (num / (count as u128 + 1)) as u64
}

/// `D_{j1,j2}`.
pub fn module_degeneracy(j1: HalfInt, j2: HalfInt, spec: &GraphSpec) -> u64 {
    spin_multiplicity(spec.n() - spec.k(), j1) * spin_multiplicity(spec.k(), j2)
}

impl ModuleLabel {
    pub fn new(j1: HalfInt, j2: HalfInt, spec: &GraphSpec) -> Result<Self> {
        let degeneracy = module_degeneracy(j1, j2, spec);
        let m = total_projection(spec);
        let (lo, hi) = m1_interval(j1, j2, m).unzip();
        if degeneracy == 0 || lo.is_none() {
            return Err(Error::InvalidArgument(format!(
                "({j1}, {j2}) is not a module of J({}, {})",
                spec.n(),
                spec.k()
            )));
        }
        let mut m1_range: Vec<HalfInt> = lo.unwrap().range_to(hi.unwrap()).collect();
        m1_range.reverse();
        Ok(Self {
            j1,
            j2,
            degeneracy,
            m1_range,
        })
    }

    pub fn dim(&self) -> usize {
        self.m1_range.len()
    }

    /// Distance from the base vertex of the row labelled `m1`.
    pub fn distance_of(&self, m1: HalfInt, spec: &GraphSpec) -> usize {
        ((spec.n() - spec.k()) as i64 - m1.twice()) as usize / 2
    }

    /// Distances covered by the module, one per row.
    pub fn distances(&self, spec: &GraphSpec) -> Vec<usize> {
        self.m1_range.iter().map(|&m1| self.distance_of(m1, spec)).collect()
    }

    /// Row index of the basis vector at distance `i`.
    pub fn row_at_distance(&self, i: usize, spec: &GraphSpec) -> Option<usize> {
        let first = self.distance_of(self.m1_range[0], spec);
        (i >= first && i - first < self.dim()).then(|| i - first)
    }

    /// Levels `j` realised in the module, ascending.
    pub fn levels(&self, spec: &GraphSpec) -> Vec<HalfInt> {
        j_min(self.j1, self.j2, total_projection(spec))
            .range_to(self.j1 + self.j2)
            .collect()
    }

    pub fn contains_level(&self, j: HalfInt, spec: &GraphSpec) -> bool {
        self.levels(spec).contains(&j)
    }

    /// `c^j_{m1}` for the row `m1`.
    pub fn cg(&self, j: HalfInt, m1: HalfInt, spec: &GraphSpec) -> Result<f64> {
        let m = total_projection(spec);
        clebsch_gordan(j, m, self.j1, m1, self.j2, m - m1)
    }

    /// Change of basis: rows follow `m1_range`, columns `levels()`.
    pub fn cg_matrix(&self, spec: &GraphSpec) -> Result<DenseMatrix> {
        let levels = self.levels(spec);
        let mut g = DenseMatrix::zeros(self.dim(), levels.len());
        for (r, &m1) in self.m1_range.iter().enumerate() {
            for (c, &j) in levels.iter().enumerate() {
                g[(r, c)] = self.cg(j, m1, spec)?;
            }
        }
        Ok(g)
    }
}

/// Every module class, ordered by decreasing `j1` then decreasing `j2`.
pub fn enumerate_modules(spec: &GraphSpec) -> Vec<ModuleLabel> {
    let (nk, k) = ((spec.n() - spec.k()) as i64, spec.k() as i64);
    let mut out = Vec::new();
    for t1 in (0..=nk).rev().step_by(2) {
        for t2 in (0..=k).rev().step_by(2) {
            if let Ok(label) = ModuleLabel::new(HalfInt::from_twice(t1), HalfInt::from_twice(t2), spec) {
                out.push(label);
            }
        }
    }
    out
}

/// `D_j`: number of modules containing level `j`, counted with multiplicity.
pub fn level_degeneracy(j: HalfInt, spec: &GraphSpec) -> Result<u64> {
    if !is_level(spec, j) {
        return Err(Error::OutOfRange(format!(
            "{j} is not an energy level of J({}, {})",
            spec.n(),
            spec.k()
        )));
    }
    Ok(enumerate_modules(spec)
        .iter()
        .filter(|l| l.contains_level(j, spec))
        .map(|l| l.degeneracy)
        .sum())
}

/// Restriction of the chopped correlation matrix to one copy of a module.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleBlock {
    pub label: ModuleLabel,
    /// `m1` of each retained row.
    pub rows: Vec<HalfInt>,
    pub distances: Vec<usize>,
    pub matrix: DenseMatrix,
}

impl ModuleBlock {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// `[C]_{m1, m1'} = sum_{j in SE} c^j_{m1} c^j_{m1'}` over rows in `SD`.
pub fn module_correlation_block(
    label: &ModuleLabel,
    filling: &FillingSpec,
    sub: &SubsystemSpec,
    spec: &GraphSpec,
) -> Result<ModuleBlock> {
    let (rows, distances): (Vec<HalfInt>, Vec<usize>) = label
        .m1_range
        .iter()
        .map(|&m1| (m1, label.distance_of(m1, spec)))
        .filter(|&(_, d)| sub.contains(d))
        .unzip();
    let occupied: Vec<HalfInt> = label
        .levels(spec)
        .into_iter()
        .filter(|&j| filling.contains(j))
        .collect();
    let mut g = DenseMatrix::zeros(rows.len(), occupied.len());
    for (r, &m1) in rows.iter().enumerate() {
        for (c, &j) in occupied.iter().enumerate() {
            g[(r, c)] = label.cg(j, m1, spec)?;
        }
    }
    let mut matrix = DenseMatrix::zeros(rows.len(), rows.len());
    for r in 0..rows.len() {
        for s in r..rows.len() {
            let v: f64 = (0..occupied.len()).map(|c| g[(r, c)] * g[(s, c)]).sum();
            matrix[(r, s)] = v;
            matrix[(s, r)] = v;
        }
    }
    Ok(ModuleBlock {
        label: label.clone(),
        rows,
        distances,
        matrix,
    })
}

/// The single eigenvalue contributed by a module to the neighborhood at
/// distance `i`: `sum_{j in SE} (c^j_{m1})^2` with `m1 = (n-k)/2 - i`.
///
/// The sum is formed exactly and rounded once. Degeneracies reach the
/// millions at `n = 30`, so rounding noise in the coefficients would
/// otherwise show up in the entropy, e.g. between neighborhoods `i` and
/// `k - i` that are equivalent when `k = n/2`.
pub fn single_neighborhood_eigenvalue(
    label: &ModuleLabel,
    i: usize,
    filling: &FillingSpec,
    spec: &GraphSpec,
) -> Result<f64> {
    let row = label
        .row_at_distance(i, spec)
        .ok_or_else(|| Error::InvalidArgument(format!("module ({}, {}) misses distance {i}", label.j1, label.j2)))?;
    let m1 = label.m1_range[row];
    let m = total_projection(spec);
    let mut lambda = BigRational::zero();
    for j in label.levels(spec) {
        if filling.contains(j) {
            lambda += clebsch_gordan_squared_exact(j, m, label.j1, m1, label.j2, m - m1)?;
        }
    }
    Ok(lambda.to_f64().unwrap_or(f64::NAN))
}

/// Spectrum for the single neighborhood at distance `i`: one eigenvalue per
/// module touching it, repeated `D_{j1,j2}` times.
pub fn single_neighborhood_spectrum(spec: &GraphSpec, filling: &FillingSpec, i: usize) -> Result<CorrelationSpectrum> {
    let mut weighted = Vec::new();
    for label in enumerate_modules(spec) {
        if label.row_at_distance(i, spec).is_some() {
            weighted.push((
                single_neighborhood_eigenvalue(&label, i, filling, spec)?,
                label.degeneracy,
            ));
        }
    }
    CorrelationSpectrum::from_weighted(weighted)
}

/// Block eigenvalues known without diagonalizing: the subsystem covers the
/// whole module (one eigenvalue per level, 1 if filled), or the filling
/// holds none or all of its levels. `None` otherwise.
///
/// Rounding noise of order 1e-16 around 0 and 1 costs about 4e-14 of
/// entropy per mode, which the degeneracies at `n = 30` blow up to 1e-5.
pub fn exact_block_eigenvalues(
    label: &ModuleLabel,
    filling: &FillingSpec,
    sub: &SubsystemSpec,
    spec: &GraphSpec,
) -> Option<Vec<f64>> {
    let rows = label.distances(spec).into_iter().filter(|&d| sub.contains(d)).count();
    let levels = label.levels(spec);
    let filled = levels.iter().filter(|&&j| filling.contains(j)).count();
    if rows == label.dim() {
        Some(
            levels
                .iter()
                .map(|&j| if filling.contains(j) { 1.0 } else { 0.0 })
                .collect(),
        )
    } else if filled == 0 {
        Some(vec![0.0; rows])
    } else if filled == levels.len() {
        Some(vec![1.0; rows])
    } else {
        None
    }
}

/// Spectrum of the chopped correlation matrix from the module blocks, each
/// eigenvalue repeated `D_{j1,j2}` times.
pub fn assemble_spectrum(spec: &GraphSpec, filling: &FillingSpec, sub: &SubsystemSpec) -> Result<CorrelationSpectrum> {
    let mut weighted = Vec::new();
    for label in enumerate_modules(spec) {
        if let Some(vals) = exact_block_eigenvalues(&label, filling, sub, spec) {
            weighted.extend(vals.into_iter().map(|v| (v, label.degeneracy)));
            continue;
        }
        let block = module_correlation_block(&label, filling, sub, spec)?;
        if block.dim() == 0 {
            continue;
        }
        for v in symmetric_eigenvalues(&block.matrix)? {
            weighted.push((v, label.degeneracy));
        }
    }
    CorrelationSpectrum::from_weighted(weighted)
}

/// Structure constants of the Hahn-algebra relations
///
/// `[K2, K3] = a {K1, K2} + b K2 + c1 K1 + d1`,
/// `[K3, K1] = a K1^2 + b K1 + c2 K2 + d2`,
///
/// with `K1 = 2k(n-k)/(n(n-1)) A*`, `K2 = A`, `K3 = [K1, K2]`. The central
/// terms `d1, d2` depend on the module through `j1(j1+1)` and `j2(j2+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HahnConstants {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
    /// `d1 = -b c1 / 4 + d1_casimir (j1^2 - j2^2)`.
    pub d1_casimir: f64,
    n: f64,
}

impl HahnConstants {
    /// Constants in their usual published form. `c1` and `d1` are only
    /// right for `k = n/2`.
    pub fn published(spec: &GraphSpec) -> Self {
        let (n, s) = (spec.n() as f64, (spec.n() - 2 * spec.k()) as f64);
        Self {
            a: -2.0,
            b: -2.0 * s * s / n,
            c1: -s - 2.0 * n,
            c2: -4.0,
            d1_casimir: s,
            n,
        }
    }

    /// Constants valid for every `k`; they coincide with [`published`]
    /// when `k = n/2`.
    ///
    /// [`published`]: HahnConstants::published
    pub fn general(spec: &GraphSpec) -> Self {
        let s = (spec.n() - 2 * spec.k()) as f64;
        let n = spec.n() as f64;
        Self {
            c1: -s * s - 2.0 * n,
            d1_casimir: 2.0 * s,
            ..Self::published(spec)
        }
    }

    pub fn d1(&self, j1: HalfInt, j2: HalfInt) -> f64 {
        -self.b * self.c1 / 4.0 + self.d1_casimir * (j1.casimir() - j2.casimir())
    }

    pub fn d2(&self, j1: HalfInt, j2: HalfInt) -> f64 {
        -2.0 * self.n + 4.0 * (j1.casimir() + j2.casimir()) - self.b * self.b / 8.0 + self.b * self.n / 4.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HahnModuleResidual {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub h2: f64,
    pub h3: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HahnReport {
    pub modules: Vec<HahnModuleResidual>,
}

impl HahnReport {
    pub fn max_h2(&self) -> f64 {
        self.modules.iter().map(|r| r.h2).fold(0.0, f64::max)
    }

    pub fn max_h3(&self) -> f64 {
        self.modules.iter().map(|r| r.h3).fold(0.0, f64::max)
    }

    pub fn max_residual(&self) -> f64 {
        self.max_h2().max(self.max_h3())
    }
}

/// Max-norm residuals of the two nontrivial Hahn relations on every module.
/// The first relation defines `K3` and holds by construction.
pub fn check_hahn_algebra(spec: &GraphSpec, constants: &HahnConstants) -> Result<HahnReport> {
    let scale = 2.0 * (spec.k() * (spec.n() - spec.k())) as f64 / (spec.n() * (spec.n() - 1)) as f64;
    let modules = enumerate_modules(spec)
        .iter()
        .map(|label| {
            let k1 = DenseMatrix::from_diagonal(&module_dual_diagonal(label, spec)?).scale(scale);
            let k2 = module_adjacency_action(label, spec)?.to_dense();
            let k3 = k1.commutator(&k2);
            let id = DenseMatrix::identity(label.dim());
            let c = constants;

            let lhs2 = k2.commutator(&k3);
            let rhs2 = k1
                .anticommutator(&k2)
                .scale(c.a)
                .add(&k2.scale(c.b))
                .add(&k1.scale(c.c1))
                .add(&id.scale(c.d1(label.j1, label.j2)));
            let lhs3 = k3.commutator(&k1);
            let rhs3 = k1
                .matmul(&k1)
                .scale(c.a)
                .add(&k1.scale(c.b))
                .add(&k2.scale(c.c2))
                .add(&id.scale(c.d2(label.j1, label.j2)));
            Ok(HahnModuleResidual {
                j1: label.j1,
                j2: label.j2,
                h2: lhs2.sub(&rhs2).max_abs(),
                h3: lhs3.sub(&rhs3).max_abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HahnReport { modules })
}
