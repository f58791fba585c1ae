//! Single-particle energies, ground-state filling, and the dense oracle for
//! the chopped correlation matrix.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, symmetric_eigenvalues, DenseMatrix};
use crate::scheme::{adjacency_from_vertices, distance, enumerate_vertices, GraphSpec, Vertex};
use crate::specfn::{binomial, dual_hahn_coefficients, dual_hahn_node, hyp2f1_terminating, DualHahnParams, HalfInt};
use crate::terwilliger::level_degeneracy;

/// Correlation eigenvalues within this distance below 0 (above 1) are
/// clamped; anything further out is an error.
pub const CLAMP_TOL: f64 = 1e-6;

/// Absolute tolerance for merging correlation eigenvalues into one entry.
pub const GROUPING_TOL: f64 = 1e-8;

/// Default threshold for treating an energy as negative.
pub const DEFAULT_FILL_TOL: f64 = 1e-12;

/// Level labels `n/2 - k, ..., n/2`, ascending.
pub fn levels(spec: &GraphSpec) -> Vec<HalfInt> {
    let (n, k) = (spec.n() as i64, spec.k() as i64);
    HalfInt::from_twice(n - 2 * k)
        .range_to(HalfInt::from_twice(n))
        .collect()
}

pub fn is_level(spec: &GraphSpec, j: HalfInt) -> bool {
    let (n, k) = (spec.n() as i64, spec.k() as i64);
    j.twice() >= n - 2 * k && j.twice() <= n && j.same_parity(HalfInt::from_twice(n))
}

/// Eigenvalue `theta_j = j(j+1) - (n-2k)^2/4 - n/2` of the adjacency matrix.
pub fn theta(spec: &GraphSpec, j: HalfInt) -> f64 {
    let (n, k) = (spec.n() as f64, spec.k() as f64);
    j.casimir() - (n - 2.0 * k).powi(2) / 4.0 - n / 2.0
}

/// Hopping amplitudes `alpha_0, ..., alpha_k` indexed by distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoppingProfile {
    alphas: Vec<f64>,
}

impl HoppingProfile {
    pub fn new(spec: &GraphSpec, alphas: Vec<f64>) -> Result<Self> {
        if alphas.len() != spec.k() + 1 {
            return Err(Error::InvalidArgument(format!(
                "need {} hopping amplitudes, got {}",
                spec.k() + 1,
                alphas.len()
            )));
        }
        if alphas.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidArgument("hopping amplitudes must be finite".into()));
        }
        Ok(Self { alphas })
    }

    /// Pads a shorter list with zeros.
    pub fn padded(spec: &GraphSpec, mut alphas: Vec<f64>) -> Result<Self> {
        if alphas.len() > spec.k() + 1 {
            return Err(Error::InvalidArgument(format!(
                "{} hopping amplitudes given but the diameter is {}",
                alphas.len(),
                spec.k()
            )));
        }
        alphas.resize(spec.k() + 1, 0.0);
        Self::new(spec, alphas)
    }

    pub fn nearest_neighbor(spec: &GraphSpec) -> Self {
        let mut alphas = vec![0.0; spec.k() + 1];
        alphas[1] = 1.0;
        Self { alphas }
    }

    /// `alpha_i = exp(-c i)`.
    pub fn exponential(spec: &GraphSpec, c: f64) -> Self {
        Self {
            alphas: (0..=spec.k()).map(|i| (-c * i as f64).exp()).collect(),
        }
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub j: HalfInt,
    pub theta: f64,
    pub omega: f64,
    pub degeneracy: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyTable {
    pub levels: Vec<EnergyLevel>,
}

impl EnergyTable {
    pub fn omega(&self, j: HalfInt) -> Option<f64> {
        self.levels.iter().find(|l| l.j == j).map(|l| l.omega)
    }

    /// Whether `omega` is strictly increasing in `j`.
    pub fn strictly_increasing(&self) -> bool {
        self.levels.windows(2).all(|w| w[0].omega < w[1].omega)
    }
}

/// Parameters of the distance-`i` expansion `A_i = (-1)^i C(k,i) R_i(A + k; 0, n-2k, k)`.
pub fn distance_polynomial_params(spec: &GraphSpec) -> DualHahnParams {
    DualHahnParams::new(0.0, (spec.n() - 2 * spec.k()) as f64, spec.k())
}

/// Scalar factor `(-1)^i C(k, i)` in front of `R_i`.
pub fn distance_polynomial_prefactor(i: usize, spec: &GraphSpec) -> f64 {
    let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * binomial(spec.k() as u64, i as u64) as f64
}

/// Eigenvalue of `A_i` on the level-`j` eigenspace.
pub fn distance_eigenvalue(i: usize, spec: &GraphSpec, j: HalfInt) -> Result<f64> {
    let p = distance_polynomial_params(spec);
    let r = crate::specfn::dual_hahn(i, theta(spec, j) + spec.k() as f64, &p)?;
    Ok(distance_polynomial_prefactor(i, spec) * r)
}

/// [`distance_eigenvalue`] in exact integer arithmetic, as the Eberlein sum
/// `sum_t (-1)^t C(p,t) C(k-p,i-t) C(n-k-p,i-t)` with `p = n/2 - j`.
pub fn distance_eigenvalue_exact(i: usize, spec: &GraphSpec, j: HalfInt) -> Result<i128> {
    if !is_level(spec, j) {
        return Err(Error::OutOfRange(format!(
            "{j} is not an energy level of J({}, {})",
            spec.n(),
            spec.k()
        )));
    }
    let (n, k) = (spec.n() as u64, spec.k() as u64);
    let p = ((spec.n() as i64 - j.twice()) / 2) as u64;
    let i = i as u64;
    Ok((0..=i.min(p))
        .map(|t| {
            let term = (binomial(p, t) * binomial(k - p, i - t) * binomial(n - k - p, i - t)) as i128;
            if t % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum())
}

/// `A_i` as the matrix polynomial `(-1)^i C(k,i) R_i(A + k)` in the
/// adjacency matrix.
pub fn distance_matrix_polynomial(i: usize, spec: &GraphSpec, adjacency: &DenseMatrix) -> Result<DenseMatrix> {
    let p = distance_polynomial_params(spec);
    let coeffs = dual_hahn_coefficients(i, &p)?;
    let shifted = adjacency.shift(spec.k() as f64);
    let size = adjacency.rows();
    let mut sum = DenseMatrix::zeros(size, size);
    let mut prod = DenseMatrix::identity(size);
    for (m, t) in coeffs.iter().enumerate() {
        if m > 0 {
            let factor = shifted.scale(-1.0).shift(dual_hahn_node(m - 1, &p));
            prod = prod.matmul(&factor);
        }
        sum = sum.add(&prod.scale(*t));
    }
    Ok(sum.scale(distance_polynomial_prefactor(i, spec)))
}

/// `max_i |A_i - (-1)^i C(k,i) R_i(A + k)|` over all distances.
pub fn distance_polynomial_residual(spec: &GraphSpec, cap: u64) -> Result<f64> {
    let vertices = enumerate_vertices(spec, cap)?;
    let adjacency = adjacency_from_vertices(1, spec, &vertices);
    let mut worst: f64 = 0.0;
    for i in 0..=spec.k() {
        let direct = adjacency_from_vertices(i, spec, &vertices);
        let poly = distance_matrix_polynomial(i, spec, &adjacency)?;
        worst = worst.max(direct.sub(&poly).max_abs());
    }
    Ok(worst)
}

/// Energies `Omega_j = sum_i alpha_i (-1)^i C(k,i) R_i(theta_j + k)`.
pub fn energy_table(spec: &GraphSpec, hop: &HoppingProfile) -> Result<EnergyTable> {
    if hop.alphas.len() != spec.k() + 1 {
        return Err(Error::InvalidArgument("hopping profile does not match graph".into()));
    }
    // the sum cancels heavily for slowly decaying hopping, so it is formed
    // exactly from the integer eigenvalues and rounded once
    let levels = levels(spec)
        .into_iter()
        .map(|j| {
            let mut omega = BigRational::zero();
            for (i, &alpha) in hop.alphas.iter().enumerate() {
                if alpha != 0.0 {
                    let a = BigRational::from_float(alpha)
                        .ok_or_else(|| Error::InvalidArgument(format!("hopping amplitude {alpha} is not finite")))?;
                    omega += a * BigInt::from(distance_eigenvalue_exact(i, spec, j)?);
                }
            }
            Ok(EnergyLevel {
                j,
                theta: theta(spec, j),
                omega: omega.to_f64().unwrap_or(f64::NAN),
                degeneracy: level_degeneracy(j, spec)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnergyTable { levels })
}

/// Energies for `alpha_i = e^{-ci}` through the dual Hahn generating
/// function `(1 - e^{-c})^{n/2 - j} 2F1(n/2-k-j, -n/2+k-j; 1; e^{-c})`.
pub fn energy_exponential(spec: &GraphSpec, c: f64) -> Result<EnergyTable> {
    if c.is_nan() || c < 0.0 {
        return Err(Error::InvalidArgument(format!("decay rate must be >= 0, got {c}")));
    }
    let z = (-c).exp();
    let (n, k) = (spec.n() as i64, spec.k() as i64);
    let levels = levels(spec)
        .into_iter()
        .map(|j| {
            // n/2 - k - j and n/2 - j are integers for every level
            let a_neg = (n - 2 * k - j.twice()) / 2;
            let power = ((n - j.twice()) / 2) as i32;
            let b = (-(n - 2 * k) - j.twice()) as f64 / 2.0;
            let omega = (-(-c).exp_m1()).powi(power) * hyp2f1_terminating(a_neg, b, 1.0, z)?;
            Ok(EnergyLevel {
                j,
                theta: theta(spec, j),
                omega,
                degeneracy: level_degeneracy(j, spec)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnergyTable { levels })
}

/// Occupied single-particle levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingSpec {
    occupied: BTreeSet<HalfInt>,
}

impl FillingSpec {
    pub fn new(spec: &GraphSpec, occupied: impl IntoIterator<Item = HalfInt>) -> Result<Self> {
        let occupied: BTreeSet<HalfInt> = occupied.into_iter().collect();
        if let Some(bad) = occupied.iter().find(|&&j| !is_level(spec, j)) {
            return Err(Error::InvalidArgument(format!(
                "{bad} is not an energy level of J({}, {})",
                spec.n(),
                spec.k()
            )));
        }
        Ok(Self { occupied })
    }

    pub fn empty() -> Self {
        Self {
            occupied: BTreeSet::new(),
        }
    }

    pub fn all(spec: &GraphSpec) -> Self {
        Self {
            occupied: levels(spec).into_iter().collect(),
        }
    }

    /// The `count` lowest labels `n/2 - k, ..., n/2 - k + count - 1`.
    pub fn lowest(spec: &GraphSpec, count: usize) -> Result<Self> {
        if count > spec.k() + 1 {
            return Err(Error::InvalidArgument(format!(
                "cannot fill {count} of {} levels",
                spec.k() + 1
            )));
        }
        Ok(Self {
            occupied: levels(spec).into_iter().take(count).collect(),
        })
    }

    /// `{n/2 - k, ..., j0}`.
    pub fn up_to(spec: &GraphSpec, j0: HalfInt) -> Result<Self> {
        if !is_level(spec, j0) {
            return Err(Error::InvalidArgument(format!("{j0} is not an energy level")));
        }
        Ok(Self {
            occupied: levels(spec).into_iter().filter(|&j| j <= j0).collect(),
        })
    }

    pub fn complement(&self, spec: &GraphSpec) -> Self {
        Self {
            occupied: levels(spec)
                .into_iter()
                .filter(|j| !self.occupied.contains(j))
                .collect(),
        }
    }

    pub fn contains(&self, j: HalfInt) -> bool {
        self.occupied.contains(&j)
    }

    pub fn iter(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.occupied.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupied.is_empty()
    }

    /// `Some(j0)` when the filling is `{n/2 - k, ..., j0}`.
    pub fn contiguous_top(&self, spec: &GraphSpec) -> Option<HalfInt> {
        let top = *self.occupied.iter().next_back()?;
        (FillingSpec::up_to(spec, top).ok()? == *self).then_some(top)
    }

    /// Number of occupied modes `sum_{j in SE} D_j`.
    pub fn mode_count(&self, spec: &GraphSpec) -> Result<u64> {
        self.iter().map(|j| level_degeneracy(j, spec)).sum()
    }
}

/// Ground state: all levels with `Omega_j < -1e-12`.
pub fn fill_ground_state(table: &EnergyTable) -> FillingSpec {
    fill_ground_state_with(table, DEFAULT_FILL_TOL, false)
}

/// Ground-state filling with explicit tolerance; `include_zero` also fills
/// levels with `|Omega_j| <= tol`.
pub fn fill_ground_state_with(table: &EnergyTable, tol: f64, include_zero: bool) -> FillingSpec {
    let occupied = table
        .levels
        .iter()
        .filter(|l| l.omega < -tol || (include_zero && l.omega.abs() <= tol))
        .map(|l| l.j)
        .collect();
    FillingSpec { occupied }
}

/// Subsystem: the neighborhoods of `x0` at the listed distances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemSpec {
    distances: BTreeSet<usize>,
    x0: Vertex,
}

impl SubsystemSpec {
    pub fn new(spec: &GraphSpec, distances: impl IntoIterator<Item = usize>, x0: Vertex) -> Result<Self> {
        let distances: BTreeSet<usize> = distances.into_iter().collect();
        if distances.is_empty() {
            return Err(Error::InvalidArgument("subsystem needs at least one distance".into()));
        }
        if let Some(&d) = distances.iter().find(|&&d| d > spec.k()) {
            return Err(Error::InvalidArgument(format!(
                "distance {d} exceeds diameter {}",
                spec.k()
            )));
        }
        Ok(Self { distances, x0 })
    }

    /// Distances with the default base vertex.
    pub fn distances(spec: &GraphSpec, distances: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(spec, distances, spec.default_base_vertex())
    }

    /// `{0, ..., cutoff}`.
    pub fn ball(spec: &GraphSpec, cutoff: usize) -> Result<Self> {
        Self::distances(spec, 0..=cutoff)
    }

    pub fn with_base_vertex(mut self, x0: Vertex) -> Self {
        self.x0 = x0;
        self
    }

    pub fn x0(&self) -> &Vertex {
        &self.x0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.distances.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.distances.iter().copied()
    }

    pub fn max_distance(&self) -> usize {
        *self.distances.iter().next_back().expect("nonempty")
    }

    /// Complementary distances; `None` if the subsystem is the whole graph.
    pub fn complement(&self, spec: &GraphSpec) -> Option<Self> {
        let rest: BTreeSet<usize> = (0..=spec.k()).filter(|d| !self.distances.contains(d)).collect();
        (!rest.is_empty()).then(|| Self {
            distances: rest,
            x0: self.x0.clone(),
        })
    }

    /// Whether the distances form one run of consecutive integers.
    pub fn is_contiguous(&self) -> bool {
        let lo = *self.distances.iter().next().expect("nonempty");
        self.max_distance() - lo + 1 == self.distances.len()
    }

    /// `Some(N)` when the distances are `{0, ..., N}`.
    pub fn ball_radius(&self) -> Option<usize> {
        (self.is_contiguous() && self.distances.contains(&0)).then(|| self.max_distance())
    }

    /// `|SV|`.
    pub fn size(&self, spec: &GraphSpec) -> u64 {
        self.iter().map(|i| spec.neighborhood_size(i)).sum()
    }
}

/// One distinct correlation eigenvalue and its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub lambda: f64,
    pub multiplicity: u64,
}

/// Grouped spectrum of a chopped correlation matrix, ascending in `lambda`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CorrelationSpectrum {
    entries: Vec<SpectrumEntry>,
}

/// Clamp an eigenvalue of a product of projectors onto `[0, 1]`.
pub fn clamp_eigenvalue(v: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else if (-CLAMP_TOL..0.0).contains(&v) {
        Ok(0.0)
    } else if v > 1.0 && v <= 1.0 + CLAMP_TOL {
        Ok(1.0)
    } else {
        Err(Error::SpectrumRange(v))
    }
}

impl CorrelationSpectrum {
    pub fn from_eigenvalues(values: impl IntoIterator<Item = f64>) -> Result<Self> {
        Self::from_weighted(values.into_iter().map(|v| (v, 1)))
    }

    /// Clamp, sort and merge `(lambda, multiplicity)` pairs.
    pub fn from_weighted(values: impl IntoIterator<Item = (f64, u64)>) -> Result<Self> {
        let mut vals = values
            .into_iter()
            .filter(|&(_, m)| m > 0)
            .map(|(v, m)| clamp_eigenvalue(v).map(|v| (v, m)))
            .collect::<Result<Vec<_>>>()?;
        vals.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        let mut anchor = f64::NEG_INFINITY;
        let mut weighted = 0.0;
        for (v, m) in vals {
            match entries.last_mut() {
                Some(last) if v - anchor <= GROUPING_TOL => {
                    weighted += v * m as f64;
                    last.multiplicity += m;
                    last.lambda = weighted / last.multiplicity as f64;
                }
                _ => {
                    anchor = v;
                    weighted = v * m as f64;
                    entries.push(SpectrumEntry {
                        lambda: v,
                        multiplicity: m,
                    });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Largest pairwise difference after matching both spectra as sorted
    /// multisets; `None` when the total multiplicities differ.
    pub fn max_discrepancy(&self, other: &CorrelationSpectrum) -> Option<f64> {
        if self.total_multiplicity() != other.total_multiplicity() {
            return None;
        }
        let mut worst: f64 = 0.0;
        let (mut a, mut b) = (self.entries.iter(), other.entries.iter());
        let (mut ca, mut cb) = (a.next().copied(), b.next().copied());
        while let (Some(mut ea), Some(mut eb)) = (ca, cb) {
            worst = worst.max((ea.lambda - eb.lambda).abs());
            let take = ea.multiplicity.min(eb.multiplicity);
            ea.multiplicity -= take;
            eb.multiplicity -= take;
            ca = if ea.multiplicity == 0 {
                a.next().copied()
            } else {
                Some(ea)
            };
            cb = if eb.multiplicity == 0 {
                b.next().copied()
            } else {
                Some(eb)
            };
        }
        Some(worst)
    }

    /// Entries with `tol < lambda < 1 - tol`.
    pub fn nontrivial(&self, tol: f64) -> CorrelationSpectrum {
        CorrelationSpectrum {
            entries: self
                .entries
                .iter()
                .filter(|e| e.lambda > tol && e.lambda < 1.0 - tol)
                .copied()
                .collect(),
        }
    }
}

/// Dense eigendecomposition of `J(n, k)` kept around for building
/// chopped correlation matrices at oracle scale.
#[derive(Debug, Clone)]
pub struct DenseOracle {
    spec: GraphSpec,
    vertices: Vec<Vertex>,
    projectors: BTreeMap<HalfInt, DenseMatrix>,
}

impl DenseOracle {
    pub fn new(spec: &GraphSpec, cap: u64) -> Result<Self> {
        let vertices = enumerate_vertices(spec, cap)?;
        let adjacency = adjacency_from_vertices(1, spec, &vertices);
        let (vals, vecs) = symmetric_eigen(&adjacency)?;

        let lv = levels(spec);
        let thetas: Vec<f64> = lv.iter().map(|&j| theta(spec, j)).collect();
        let spread = thetas.last().unwrap() - thetas.first().unwrap();
        let tol = 1e-6 * spread.max(1.0);
        let mut groups: BTreeMap<HalfInt, Vec<usize>> = lv.iter().map(|&j| (j, Vec::new())).collect();
        for (c, &v) in vals.iter().enumerate() {
            let hits: Vec<usize> = (0..thetas.len()).filter(|&t| (v - thetas[t]).abs() <= tol).collect();
            match hits.as_slice() {
                [t] => groups.get_mut(&lv[*t]).unwrap().push(c),
                _ => return Err(Error::Grouping { value: v }),
            }
        }

        let size = vertices.len();
        let projectors = groups
            .into_iter()
            .map(|(j, cols)| {
                let mut e = DenseMatrix::zeros(size, size);
                for r in 0..size {
                    for s in r..size {
                        let v: f64 = cols.iter().map(|&c| vecs[(r, c)] * vecs[(s, c)]).sum();
                        e[(r, s)] = v;
                        e[(s, r)] = v;
                    }
                }
                (j, e)
            })
            .collect();
        Ok(Self {
            spec: *spec,
            vertices,
            projectors,
        })
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn projectors(&self) -> &BTreeMap<HalfInt, DenseMatrix> {
        &self.projectors
    }

    pub fn projector(&self, j: HalfInt) -> Option<&DenseMatrix> {
        self.projectors.get(&j)
    }

    /// `pi_SE = sum_{j in SE} E_j`.
    pub fn filled_projector(&self, filling: &FillingSpec) -> DenseMatrix {
        let size = self.vertices.len();
        let mut p = DenseMatrix::zeros(size, size);
        for j in filling.iter() {
            p = p.add(&self.projectors[&j]);
        }
        p
    }

    /// Canonical-order vertex indices of the subsystem.
    pub fn subsystem_indices(&self, sub: &SubsystemSpec) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|x| sub.contains(distance(sub.x0(), x, &self.spec)))
            .map(|x| x.index)
            .collect()
    }

    /// `C = pi_SV pi_SE pi_SV` restricted to the rows and columns of `SV`.
    pub fn chopped_correlation(&self, filling: &FillingSpec, sub: &SubsystemSpec) -> DenseMatrix {
        let idx = self.subsystem_indices(sub);
        self.filled_projector(filling).principal_submatrix(&idx)
    }
}

/// Eigenprojectors `E_j` of the adjacency matrix.
pub fn eigenprojectors_oracle(spec: &GraphSpec, cap: u64) -> Result<BTreeMap<HalfInt, DenseMatrix>> {
    Ok(DenseOracle::new(spec, cap)?.projectors)
}

pub fn chopped_correlation_oracle(
    spec: &GraphSpec,
    filling: &FillingSpec,
    sub: &SubsystemSpec,
    cap: u64,
) -> Result<DenseMatrix> {
    Ok(DenseOracle::new(spec, cap)?.chopped_correlation(filling, sub))
}

/// Grouped spectrum of a dense chopped correlation matrix.
pub fn spectrum_oracle(c: &DenseMatrix) -> Result<CorrelationSpectrum> {
    CorrelationSpectrum::from_eigenvalues(symmetric_eigenvalues(c)?)
}
