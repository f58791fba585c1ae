//! Self-check battery run by `jfe verify`.

use serde::Serialize;

use crate::entropy::von_neumann;
use crate::error::Result;
use crate::heun::{commutant_residual, filling_cut_entry, spectrum_via_heun, subsystem_cut_entry, HeunSpec};
use crate::linalg::DenseMatrix;
use crate::scheme::{distance, embed_in_hypercube, enumerate_vertices, hamming, GraphSpec};
use crate::specfn::HalfInt;
use crate::spectral::{
    distance_polynomial_residual, energy_exponential, energy_table, levels, spectrum_oracle, DenseOracle, FillingSpec,
    HoppingProfile, SubsystemSpec,
};
use crate::terwilliger::{
    assemble_spectrum, check_hahn_algebra, enumerate_modules, level_degeneracy, single_neighborhood_spectrum,
    HahnConstants,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub worst: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub quick: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, worst: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed: worst.is_finite() && worst <= tolerance,
        worst,
        tolerance,
    }
}

/// A check whose value must exceed the threshold (negative controls).
fn check_above(name: &str, value: f64, threshold: f64) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed: value > threshold,
        worst: value,
        tolerance: threshold,
    }
}

fn max_of(mut values: impl Iterator<Item = Result<f64>>) -> Result<f64> {
    values.try_fold(0.0, |m: f64, v| Ok(m.max(v?)))
}

fn scheme_identities(specs: &[GraphSpec], cap: u64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for spec in specs {
        let verts = enumerate_vertices(spec, cap)?;
        for x in &verts {
            let mut neighbors = 0;
            for y in &verts {
                let d = distance(x, y, spec);
                if d == 1 {
                    neighbors += 1;
                }
                let embedded = hamming(&embed_in_hypercube(x, spec), &embed_in_hypercube(y, spec));
                worst = worst.max((embedded as f64 - 2.0 * d as f64).abs());
            }
            worst = worst.max((neighbors as f64 - spec.valency() as f64).abs());
        }
    }
    Ok(worst)
}

fn cg_orthonormality(specs: &[GraphSpec]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for spec in specs {
        for label in enumerate_modules(spec) {
            let g = label.cg_matrix(spec)?;
            let id = DenseMatrix::identity(label.dim());
            worst = worst.max(g.transpose().matmul(&g).sub(&id).max_abs());
            worst = worst.max(g.matmul(&g.transpose()).sub(&id).max_abs());
        }
    }
    Ok(worst)
}

fn completeness(max_n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for n in 2..=max_n {
        for k in 1..=n / 2 {
            let spec = GraphSpec::new(n, k).expect("valid");
            let total: u64 = enumerate_modules(&spec)
                .iter()
                .map(|l| l.dim() as u64 * l.degeneracy)
                .sum();
            worst = worst.max((total as f64 - spec.vertex_count() as f64).abs());
        }
    }
    worst
}

fn degeneracy_vs_trace(specs: &[GraphSpec], cap: u64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for spec in specs {
        let oracle = DenseOracle::new(spec, cap)?;
        for (&j, e) in oracle.projectors() {
            worst = worst.max((e.trace() - level_degeneracy(j, spec)? as f64).abs());
        }
    }
    Ok(worst)
}

fn energy_forms(specs: &[GraphSpec]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for spec in specs {
        for c in [0.1, 1.0, 5.0] {
            let closed = energy_exponential(spec, c)?;
            let series = energy_table(spec, &HoppingProfile::exponential(spec, c))?;
            for (a, b) in closed.levels.iter().zip(&series.levels) {
                worst = worst.max((a.omega - b.omega).abs() / b.omega.abs().max(1e-300));
            }
            if !closed.strictly_increasing() {
                worst = f64::INFINITY;
            }
        }
    }
    Ok(worst)
}

/// Oracle, modules and Heun spectra over every ball and bottom filling.
fn route_agreement(specs: &[GraphSpec], cap: u64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for spec in specs {
        let oracle = DenseOracle::new(spec, cap)?;
        for cutoff in 0..=spec.k() {
            for j0 in levels(spec) {
                let hs = HeunSpec::new(spec, cutoff, j0)?;
                let (filling, sub) = (hs.filling(spec), hs.subsystem(spec));
                let dense = spectrum_oracle(&oracle.chopped_correlation(&filling, &sub))?;
                let modules = assemble_spectrum(spec, &filling, &sub)?;
                let heun = spectrum_via_heun(spec, &hs)?;
                for gap in [dense.max_discrepancy(&modules), dense.max_discrepancy(&heun)] {
                    worst = worst.max(gap.unwrap_or(f64::INFINITY));
                }
            }
        }
    }
    Ok(worst)
}

fn hahn_residuals(specs: &[GraphSpec]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for spec in specs {
        worst = worst.max(check_hahn_algebra(spec, &HahnConstants::general(spec))?.max_residual());
    }
    Ok(worst)
}

/// Largest `[C, T]` residual, largest cut entry, and the smallest residual
/// seen with `mu` shifted by one.
fn heun_commutation(specs: &[GraphSpec]) -> Result<(f64, f64, f64)> {
    let mut worst: f64 = 0.0;
    let mut cuts: f64 = 0.0;
    let mut control = f64::INFINITY;
    for spec in specs {
        for cutoff in 0..spec.k() {
            for j0 in levels(spec).into_iter().take(spec.k()) {
                let hs = HeunSpec::new(spec, cutoff, j0)?;
                let mut perturbed: f64 = 0.0;
                for label in enumerate_modules(spec) {
                    worst = worst.max(commutant_residual(&label, &hs, spec)?);
                    let pair = [
                        subsystem_cut_entry(&label, &hs, spec)?,
                        filling_cut_entry(&label, &hs, spec)?,
                    ];
                    for v in pair.into_iter().flatten() {
                        cuts = cuts.max(v.abs());
                    }
                    perturbed = perturbed.max(commutant_residual(&label, &hs.perturbed(1.0, 0.0), spec)?);
                }
                // at cutoff 0 each module meets the ball in one row, so any T commutes
                if cutoff >= 1 {
                    control = control.min(perturbed);
                }
            }
        }
    }
    Ok((worst, cuts, control))
}

/// Fixed grid of fillings and distance sets; `|S(SV) - S(X \ SV)|`.
fn purity_duality(specs: &[GraphSpec]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for spec in specs {
        let k = spec.k();
        let subsets: Vec<Vec<usize>> = vec![vec![0], vec![1], (0..=k / 2).collect(), vec![0, k], vec![1, k - 1]];
        for sd in subsets {
            let sub = SubsystemSpec::distances(spec, sd)?;
            let Some(rest) = sub.complement(spec) else { continue };
            for count in 1..=k {
                let filling = FillingSpec::lowest(spec, count)?;
                let a = von_neumann(&assemble_spectrum(spec, &filling, &sub)?)?;
                let b = von_neumann(&assemble_spectrum(spec, &filling, &rest)?)?;
                worst = worst.max((a - b).abs());
            }
        }
    }
    Ok(worst)
}

fn mirror_symmetry(spec: &GraphSpec) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for count in 1..=spec.k() + 1 {
        let filling = FillingSpec::lowest(spec, count)?;
        for i in 0..=spec.k() / 2 {
            let a = von_neumann(&single_neighborhood_spectrum(spec, &filling, i)?)?;
            let b = von_neumann(&single_neighborhood_spectrum(spec, &filling, spec.k() - i)?)?;
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

/// Run the battery. `quick` restricts to the smallest graphs.
pub fn run_battery(quick: bool, cap: u64) -> Result<VerifyReport> {
    let g = |n, k| GraphSpec::new(n, k).expect("valid");
    let halves: Vec<GraphSpec> = if quick {
        vec![g(4, 2), g(6, 3)]
    } else {
        vec![g(4, 2), g(6, 3), g(8, 4)]
    };
    let mixed: Vec<GraphSpec> = if quick {
        vec![g(5, 2), g(7, 3)]
    } else {
        vec![g(5, 2), g(7, 3), g(9, 2), g(10, 4)]
    };
    let all: Vec<GraphSpec> = halves.iter().chain(&mixed).copied().collect();

    let mut checks = vec![
        check("scheme_identities", scheme_identities(&all, cap)?, 0.0),
        check(
            "distance_polynomials",
            max_of(all.iter().map(|s| distance_polynomial_residual(s, cap)))?,
            1e-8,
        ),
        check("cg_orthonormality", cg_orthonormality(&all)?, 1e-12),
        check("module_completeness", completeness(if quick { 12 } else { 30 }), 0.0),
        check("degeneracy_vs_trace", degeneracy_vs_trace(&all, cap)?, 1e-8),
        check("energy_forms", energy_forms(&all)?, 1e-9),
        check("route_agreement", route_agreement(&all, cap)?, 1e-8),
        check("hahn_algebra", hahn_residuals(&all)?, 1e-8),
        check(
            "hahn_algebra_published_constants",
            max_of(
                halves
                    .iter()
                    .map(|s| check_hahn_algebra(s, &HahnConstants::published(s)).map(|r| r.max_residual())),
            )?,
            1e-8,
        ),
    ];
    let (residual, cuts, control) = heun_commutation(&halves)?;
    checks.push(check("heun_commutation", residual, 1e-9));
    checks.push(check("heun_cut_entries", cuts, 0.0));
    checks.push(check_above("heun_negative_control", control, 1e-3));
    checks.push(check("purity_duality", purity_duality(&all)?, 1e-7));
    let mirror = if quick { g(12, 6) } else { g(30, 15) };
    checks.push(check("mirror_symmetry", mirror_symmetry(&mirror)?, 1e-8));
    Ok(VerifyReport { quick, checks })
}

/// `HalfInt` labels of the module chains shown in the half-chain sweep.
pub fn default_chain_modules() -> Vec<(HalfInt, HalfInt)> {
    vec![
        (HalfInt::from_twice(13), HalfInt::from_twice(15)),
        (HalfInt::from_twice(15), HalfInt::from_twice(15)),
    ]
}
