//! Combinatorial construction of the Johnson graph `J(n, k)`.
//!
//! Vertices are the `k`-subsets of `{1..n}` in colexicographic order; that
//! order is the row/column labelling of every dense matrix in the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::specfn::binomial;

/// Default bound on `C(n, k)` for anything that builds `|X| x |X|` matrices.
pub const DEFAULT_DENSE_CAP: u64 = 20_000;

/// Environment variable overriding [`DEFAULT_DENSE_CAP`].
pub const DENSE_CAP_ENV: &str = "JE_DENSE_CAP";

/// Largest `n` supported (vertices are stored as 64-bit masks).
pub const MAX_N: usize = 62;

/// Dense cap from the environment, falling back to the default.
pub fn dense_cap_from_env() -> u64 {
    std::env::var(DENSE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DENSE_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphSpec {
    n: usize,
    k: usize,
}

impl GraphSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || 2 * k > n || n > MAX_N {
            return Err(Error::InvalidGraph { n, k });
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn diameter(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> u64 {
        binomial(self.n as u64, self.k as u64) as u64
    }

    /// `|{x : d(x0, x) = i}| = C(k, i) C(n-k, i)`.
    pub fn neighborhood_size(&self, i: usize) -> u64 {
        (binomial(self.k as u64, i as u64) * binomial((self.n - self.k) as u64, i as u64)) as u64
    }

    /// Valency `k (n - k)`.
    pub fn valency(&self) -> usize {
        self.k * (self.n - self.k)
    }

    pub fn check_dense(&self, cap: u64) -> Result<()> {
        let requested = self.vertex_count();
        if requested > cap {
            return Err(Error::Capacity { requested, cap });
        }
        Ok(())
    }

    /// The colex-first vertex `{1, ..., k}`.
    pub fn default_base_vertex(&self) -> Vertex {
        Vertex {
            subset: (1..=self.k).collect(),
            index: 0,
        }
    }

    /// `{n-k+1, ..., n}`, the colex-last vertex.
    pub fn last_vertex(&self) -> Vertex {
        let subset: Vec<usize> = (self.n - self.k + 1..=self.n).collect();
        Vertex {
            index: (self.vertex_count() - 1) as usize,
            subset,
        }
    }

    pub fn vertex(&self, subset: Vec<usize>) -> Result<Vertex> {
        let ok = subset.len() == self.k
            && subset.windows(2).all(|w| w[0] < w[1])
            && subset.iter().all(|&e| (1..=self.n).contains(&e));
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "{subset:?} is not a sorted {}-subset of 1..={}",
                self.k, self.n
            )));
        }
        let index = rank(&subset) as usize;
        Ok(Vertex { subset, index })
    }

    pub fn unrank(&self, index: u64) -> Result<Vertex> {
        if index >= self.vertex_count() {
            return Err(Error::OutOfRange(format!("vertex index {index}")));
        }
        let mut rest = index;
        let mut subset = vec![0; self.k];
        let mut top = self.n;
        for slot in (0..self.k).rev() {
            // largest c with C(c - 1, slot + 1) <= rest
            let mut c = top;
            while binomial((c - 1) as u64, (slot + 1) as u64) as u64 > rest {
                c -= 1;
            }
            subset[slot] = c;
            rest -= binomial((c - 1) as u64, (slot + 1) as u64) as u64;
            top = c - 1;
        }
        Ok(Vertex {
            subset,
            index: index as usize,
        })
    }
}

/// Colex rank of a sorted subset of `{1..n}`: `sum_i C(c_i - 1, i)`.
pub fn rank(subset: &[usize]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial((c - 1) as u64, (i + 1) as u64) as u64)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub subset: Vec<usize>,
    pub index: usize,
}

impl Vertex {
    fn mask(&self) -> u64 {
        self.subset.iter().fold(0u64, |m, &e| m | 1 << (e - 1))
    }
}

/// All vertices in colex order, i.e. ascending order of the bitmask
/// `sum 2^(e-1)`.
pub fn enumerate_vertices(spec: &GraphSpec, cap: u64) -> Result<Vec<Vertex>> {
    spec.check_dense(cap)?;
    let (n, k) = (spec.n, spec.k);
    let total = spec.vertex_count() as usize;
    let mut out = Vec::with_capacity(total);
    let mut mask: u64 = (1u64 << k) - 1;
    for index in 0..total {
        let subset = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        out.push(Vertex { subset, index });
        // Gosper's hack: next larger integer with the same popcount
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(out)
}

/// `d(x, y) = k - |x ∩ y|`.
pub fn distance(x: &Vertex, y: &Vertex, spec: &GraphSpec) -> usize {
    spec.k - (x.mask() & y.mask()).count_ones() as usize
}

/// Distance matrix `A_i` (0/1 entries).
pub fn adjacency_matrix(i: usize, spec: &GraphSpec, cap: u64) -> Result<DenseMatrix> {
    if i > spec.k {
        return Err(Error::OutOfRange(format!("distance {i} > diameter {}", spec.k)));
    }
    let verts = enumerate_vertices(spec, cap)?;
    Ok(adjacency_from_vertices(i, spec, &verts))
}

pub(crate) fn adjacency_from_vertices(i: usize, spec: &GraphSpec, verts: &[Vertex]) -> DenseMatrix {
    let masks: Vec<u64> = verts.iter().map(Vertex::mask).collect();
    let n = verts.len();
    let mut a = DenseMatrix::zeros(n, n);
    for r in 0..n {
        for c in r..n {
            if spec.k - (masks[r] & masks[c]).count_ones() as usize == i {
                a[(r, c)] = 1.0;
                a[(c, r)] = 1.0;
            }
        }
    }
    a
}

/// Eigenvalue of the dual adjacency matrix on a vertex at distance `d`
/// from the base vertex: `n - 1 - n(n-1)/(k(n-k)) d`.
pub fn dual_adjacency_value(d: usize, spec: &GraphSpec) -> f64 {
    let (n, k) = (spec.n as f64, spec.k as f64);
    n - 1.0 - n * (n - 1.0) / (k * (n - k)) * d as f64
}

/// Diagonal dual adjacency matrix `A*` relative to `x0`.
pub fn dual_adjacency_matrix(x0: &Vertex, spec: &GraphSpec, cap: u64) -> Result<DenseMatrix> {
    let verts = enumerate_vertices(spec, cap)?;
    let diag: Vec<f64> = verts
        .iter()
        .map(|x| dual_adjacency_value(distance(x0, x, spec), spec))
        .collect();
    Ok(DenseMatrix::from_diagonal(&diag))
}

/// Diagonal projector `E*_i` onto the `i`-th neighborhood of `x0`.
pub fn neighborhood_projector(x0: &Vertex, i: usize, spec: &GraphSpec, cap: u64) -> Result<DenseMatrix> {
    if i > spec.k {
        return Err(Error::OutOfRange(format!("distance {i} > diameter {}", spec.k)));
    }
    let verts = enumerate_vertices(spec, cap)?;
    let diag: Vec<f64> = verts
        .iter()
        .map(|x| if distance(x0, x, spec) == i { 1.0 } else { 0.0 })
        .collect();
    Ok(DenseMatrix::from_diagonal(&diag))
}

/// Indicator tuple of `x` in `{0,1}^n`.
pub fn embed_in_hypercube(x: &Vertex, spec: &GraphSpec) -> Vec<u8> {
    let mut v = vec![0u8; spec.n];
    for &e in &x.subset {
        v[e - 1] = 1;
    }
    v
}

pub fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}
