//! Von Neumann entanglement entropy of a correlation spectrum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheme::GraphSpec;
use crate::spectral::{CorrelationSpectrum, SubsystemSpec};

/// Binary entropy `-(x ln x + (1-x) ln(1-x))` in nats, zero at the ends.
pub fn mode_entropy(lambda: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::SpectrumRange(lambda));
    }
    if lambda == 0.0 || lambda == 1.0 {
        return Ok(0.0);
    }
    Ok(-(lambda * lambda.ln() + (1.0 - lambda) * (1.0 - lambda).ln()))
}

/// `S = sum_lambda D_lambda h(lambda)` in nats.
pub fn von_neumann(spectrum: &CorrelationSpectrum) -> Result<f64> {
    spectrum
        .entries()
        .iter()
        .map(|e| mode_entropy(e.lambda).map(|s| s * e.multiplicity as f64))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    /// Entropy in nats.
    pub entropy: f64,
    pub subsystem_size: u64,
    /// Sites at the largest distance for contiguous subsystems, else `|SV|`.
    pub boundary_size: u64,
    pub ratio_subsystem: f64,
    pub ratio_boundary: f64,
    /// Edges joining `SV` to its complement.
    pub cut_edges: u64,
    /// `S / cut_edges`, zero when nothing is cut.
    pub ratio_cut_edges: f64,
}

impl EntropyReport {
    /// Entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        self.entropy / std::f64::consts::LN_2
    }

    /// `S <= |SV| ln 2`, with a little slack for rounding.
    pub fn within_bound(&self) -> bool {
        self.entropy <= self.subsystem_size as f64 * std::f64::consts::LN_2 * (1.0 + 1e-12)
    }
}

/// `|dSV|`: the outermost neighborhood of a contiguous subsystem, or the
/// whole subsystem otherwise.
pub fn boundary_size(spec: &GraphSpec, sub: &SubsystemSpec) -> u64 {
    if sub.is_contiguous() {
        spec.neighborhood_size(sub.max_distance())
    } else {
        sub.size(spec)
    }
}

/// Number of edges between `SV` and `X \\ SV`. A vertex at distance `d`
/// has `d^2` neighbors at `d - 1` and `(k-d)(n-k-d)` at `d + 1`.
pub fn cut_edges(spec: &GraphSpec, sub: &SubsystemSpec) -> u64 {
    let (n, k) = (spec.n() as u64, spec.k() as u64);
    sub.iter()
        .map(|d| {
            let du = d as u64;
            let inner = if d > 0 && !sub.contains(d - 1) { du * du } else { 0 };
            let outer = if d < spec.k() && !sub.contains(d + 1) {
                (k - du) * (n - k - du)
            } else {
                0
            };
            spec.neighborhood_size(d) * (inner + outer)
        })
        .sum()
}

pub fn report(spec: &GraphSpec, sub: &SubsystemSpec, spectrum: &CorrelationSpectrum) -> Result<EntropyReport> {
    let entropy = von_neumann(spectrum)?;
    let subsystem_size = sub.size(spec);
    let boundary_size = boundary_size(spec, sub);
    let cut = cut_edges(spec, sub);
    Ok(EntropyReport {
        entropy,
        subsystem_size,
        boundary_size,
        ratio_subsystem: entropy / subsystem_size as f64,
        ratio_boundary: entropy / boundary_size as f64,
        cut_edges: cut,
        ratio_cut_edges: if cut == 0 { 0.0 } else { entropy / cut as f64 },
    })
}
