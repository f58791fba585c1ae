//! Route dispatch and the parameter sweeps behind the figure data.

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{mode_entropy, report, von_neumann, EntropyReport};
use crate::error::{Error, Result};
use crate::heun::{spectrum_via_heun, HeunSpec};
use crate::linalg::symmetric_eigenvalues;
use crate::output::{Row, Table};
use crate::scheme::GraphSpec;
use crate::specfn::HalfInt;
use crate::spectral::{levels, spectrum_oracle, CorrelationSpectrum, DenseOracle, FillingSpec, SubsystemSpec};
use crate::terwilliger::{
    assemble_spectrum, level_degeneracy, module_correlation_block, single_neighborhood_spectrum, ModuleLabel,
};

/// How the correlation spectrum is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Oracle,
    Modules,
    Heun,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Oracle, Route::Modules, Route::Heun];

    pub fn name(self) -> &'static str {
        match self {
            Route::Oracle => "oracle",
            Route::Modules => "modules",
            Route::Heun => "heun",
        }
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Route::Oracle),
            "modules" => Ok(Route::Modules),
            "heun" => Ok(Route::Heun),
            _ => Err(Error::InvalidArgument(format!("unknown route '{s}'"))),
        }
    }
}

/// Correlation spectrum along one route.
pub fn spectrum(
    route: Route,
    spec: &GraphSpec,
    filling: &FillingSpec,
    sub: &SubsystemSpec,
    dense_cap: u64,
) -> Result<CorrelationSpectrum> {
    match route {
        Route::Oracle => {
            let oracle = DenseOracle::new(spec, dense_cap)?;
            spectrum_oracle(&oracle.chopped_correlation(filling, sub))
        }
        Route::Modules => assemble_spectrum(spec, filling, sub),
        Route::Heun => spectrum_via_heun(spec, &HeunSpec::from_sets(spec, filling, sub)?),
    }
}

/// Which lowest levels to fill in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FillRule {
    /// Exactly this many `j`-labels.
    Levels(usize),
    /// `max(1, ceil(f (k+1)))` labels.
    LevelFraction(f64),
    /// Fewest labels holding at least `f C(n,k)` modes.
    ModeFraction(f64),
}

impl Default for FillRule {
    fn default() -> Self {
        FillRule::LevelFraction(0.1)
    }
}

impl FillRule {
    pub fn level_count(&self, spec: &GraphSpec) -> Result<usize> {
        let total = spec.k() + 1;
        let count = match *self {
            FillRule::Levels(l) => l,
            FillRule::LevelFraction(f) => {
                check_fraction(f)?;
                ((f * total as f64).ceil() as usize).max(1)
            }
            FillRule::ModeFraction(f) => {
                check_fraction(f)?;
                let target = f * spec.vertex_count() as f64;
                let mut acc = 0u64;
                let mut count = total;
                for (idx, j) in levels(spec).into_iter().enumerate() {
                    acc += level_degeneracy(j, spec)?;
                    if acc as f64 >= target {
                        count = idx + 1;
                        break;
                    }
                }
                count.max(1)
            }
        };
        if count > total {
            return Err(Error::InvalidArgument(format!("cannot fill {count} of {total} levels")));
        }
        Ok(count)
    }

    pub fn resolve(&self, spec: &GraphSpec) -> Result<FillingSpec> {
        FillingSpec::lowest(spec, self.level_count(spec)?)
    }
}

fn check_fraction(f: f64) -> Result<()> {
    if (0.0..=1.0).contains(&f) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("fraction {f} outside [0, 1]")))
    }
}

fn report_row(row: Row, rep: &EntropyReport) -> Row {
    row.with("entropy", rep.entropy)
        .with("sv_size", rep.subsystem_size)
        .with("boundary_size", rep.boundary_size)
        .with("ratio_sv", rep.ratio_subsystem)
        .with("ratio_boundary", rep.ratio_boundary)
        .with("cut_edges", rep.cut_edges)
        .with("ratio_cut_edges", rep.ratio_cut_edges)
}

/// Entropy of single neighborhoods `i = k/2, k/4, k/8` on `J(n, n/2)` as a
/// function of `n`.
pub fn fig2a(ns: &[usize], rule: FillRule) -> Result<Table> {
    let mut grid = Vec::new();
    for &n in ns {
        let k = n / 2;
        let mut seen = Vec::new();
        for (label, i) in [("k/2", k / 2), ("k/4", k / 4), ("k/8", k / 8)] {
            if !seen.contains(&i) {
                seen.push(i);
                grid.push((n, label, i));
            }
        }
    }
    let rows = grid
        .par_iter()
        .map(|&(n, label, i)| {
            let spec = GraphSpec::new(n, n / 2)?;
            let filling = rule.resolve(&spec)?;
            let sub = SubsystemSpec::distances(&spec, [i])?;
            let rep = report(&spec, &sub, &single_neighborhood_spectrum(&spec, &filling, i)?)?;
            let row = Row::new()
                .with("n", n)
                .with("k", spec.k())
                .with("neighborhood", label)
                .with("i", i)
                .with("levels_filled", filling.len())
                .with("modes_filled", filling.mode_count(&spec)?);
            Ok(report_row(row, &rep))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::new(rows))
}

/// `S / |SV|` for single neighborhoods over the grid `(i, |SE|)`.
pub fn fig2b(spec: &GraphSpec) -> Result<Table> {
    let grid: Vec<(usize, usize)> = (0..=spec.k())
        .flat_map(|i| (1..=spec.k() + 1).map(move |l| (i, l)))
        .collect();
    let rows = grid
        .par_iter()
        .map(|&(i, l)| {
            let filling = FillingSpec::lowest(spec, l)?;
            let sub = SubsystemSpec::distances(spec, [i])?;
            let rep = report(spec, &sub, &single_neighborhood_spectrum(spec, &filling, i)?)?;
            let row = Row::new()
                .with("n", spec.n())
                .with("k", spec.k())
                .with("i", i)
                .with("levels_filled", l);
            Ok(report_row(row, &rep))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::new(rows))
}

fn ball_row(spec: &GraphSpec, filling: &FillingSpec, cutoff: usize, route: Route, cap: u64) -> Result<Row> {
    let sub = SubsystemSpec::ball(spec, cutoff)?;
    let rep = report(spec, &sub, &spectrum(route, spec, filling, &sub, cap)?)?;
    let row = Row::new()
        .with("n", spec.n())
        .with("k", spec.k())
        .with("cutoff", cutoff)
        .with("levels_filled", filling.len());
    Ok(report_row(row, &rep))
}

/// `S / |dSV|` for balls of radius `N < k` on `J(n, k)` over a range of `k`.
pub fn fig3a(n: usize, ks: &[usize], rule: FillRule, route: Route, cap: u64) -> Result<Table> {
    let grid: Vec<(usize, usize)> = ks.iter().flat_map(|&k| (0..k).map(move |c| (k, c))).collect();
    let rows = grid
        .par_iter()
        .map(|&(k, cutoff)| {
            let spec = GraphSpec::new(n, k)?;
            ball_row(&spec, &rule.resolve(&spec)?, cutoff, route, cap)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::new(rows))
}

/// `S / |dSV|` for balls of radius `N < k` over the number of filled levels.
pub fn fig3b(spec: &GraphSpec, level_counts: &[usize], route: Route, cap: u64) -> Result<Table> {
    let grid: Vec<(usize, usize)> = level_counts
        .iter()
        .flat_map(|&l| (0..spec.k()).map(move |c| (l, c)))
        .collect();
    let rows = grid
        .par_iter()
        .map(|&(l, cutoff)| ball_row(spec, &FillingSpec::lowest(spec, l)?, cutoff, route, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::new(rows))
}

/// Entropy of the first `len` sites of a single module chain, and of its
/// last site alone.
pub fn fig4(spec: &GraphSpec, modules: &[(HalfInt, HalfInt)], rule: FillRule) -> Result<Table> {
    let filling = rule.resolve(spec)?;
    let mut rows = Vec::new();
    for &(j1, j2) in modules {
        let label = ModuleLabel::new(j1, j2, spec)?;
        let distances = label.distances(spec);
        for len in 1..=label.dim() {
            let chain = SubsystemSpec::distances(spec, distances[..len].iter().copied())?;
            let block = module_correlation_block(&label, &filling, &chain, spec)?;
            let chain_s = von_neumann(&CorrelationSpectrum::from_eigenvalues(symmetric_eigenvalues(
                &block.matrix,
            )?)?)?;
            let edge = block.matrix[(len - 1, len - 1)];
            let edge_s = mode_entropy(crate::spectral::clamp_eigenvalue(edge)?)?;
            rows.push(
                Row::new()
                    .with("n", spec.n())
                    .with("k", spec.k())
                    .with_half("j1", j1)
                    .with_half("j2", j2)
                    .with("levels_filled", filling.len())
                    .with("length", len)
                    .with("last_distance", distances[len - 1])
                    .with("entropy_chain", chain_s)
                    .with("entropy_boundary", edge_s),
            );
        }
    }
    Ok(Table::new(rows))
}
