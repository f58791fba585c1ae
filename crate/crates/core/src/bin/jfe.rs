//! `jfe`: entanglement entropy of free fermions on Johnson graphs.
//!
//! Exit codes: 0 ok, 1 failed check or route disagreement, 2 bad
//! configuration, 3 dense capacity exceeded.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use johnson_fermions::entropy::report;
use johnson_fermions::heun::HeunSpec;
use johnson_fermions::output::{Format, Row, Table};
use johnson_fermions::scheme::dense_cap_from_env;
use johnson_fermions::spectral::{
    energy_exponential, energy_table, fill_ground_state_with, EnergyTable, DEFAULT_FILL_TOL,
};
use johnson_fermions::sweep::{self, FillRule, Route};
use johnson_fermions::verify::{default_chain_modules, run_battery};
use johnson_fermions::{CorrelationSpectrum, Error, FillingSpec, GraphSpec, HalfInt, HoppingProfile, SubsystemSpec};

/// Tolerance on the largest eigenvalue difference between routes.
const ROUTE_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "jfe",
    version,
    about = "Free-fermion entanglement entropy on Johnson graphs J(n,k)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single-particle levels, energies, degeneracies and the filling.
    Energies(EnergiesArgs),
    /// Entanglement entropy of one subsystem.
    Entropy(EntropyArgs),
    /// Parameter sweeps for the figure data.
    #[command(subcommand)]
    Sweep(SweepCommand),
    /// Run the self-check battery.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct HoppingArgs {
    /// Hopping amplitudes alpha_0,alpha_1,... by distance (missing ones are 0).
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        conflicts_with = "exp_hopping"
    )]
    alpha: Option<Vec<f64>>,
    /// Exponential hopping alpha_i = exp(-c i).
    #[arg(long, value_name = "C")]
    exp_hopping: Option<f64>,
}

#[derive(Args)]
struct FillArgs {
    /// Explicit occupied levels, e.g. 0,1 or 1.5,2.5.
    #[arg(long, value_delimiter = ',')]
    se: Option<Vec<HalfInt>>,
    /// Fill this many lowest levels.
    #[arg(long, conflicts_with = "se")]
    fill_levels: Option<usize>,
    /// Fill the lowest max(1, ceil(f (k+1))) levels.
    #[arg(long, conflicts_with_all = ["se", "fill_levels"])]
    fill_fraction: Option<f64>,
    /// Read --fill-fraction as a fraction of all C(n,k) modes instead.
    #[arg(long, requires = "fill_fraction")]
    fill_weighted: bool,
    /// Also fill levels whose energy is zero within the tolerance.
    #[arg(long)]
    include_zero: bool,
    #[arg(long, default_value_t = DEFAULT_FILL_TOL)]
    fill_tol: f64,
}

impl FillArgs {
    fn explicit_rule(&self) -> Option<FillRule> {
        if let Some(l) = self.fill_levels {
            Some(FillRule::Levels(l))
        } else {
            self.fill_fraction.map(|f| {
                if self.fill_weighted {
                    FillRule::ModeFraction(f)
                } else {
                    FillRule::LevelFraction(f)
                }
            })
        }
    }

    /// Explicit set, then level rules, then the ground state of `table`.
    fn resolve(&self, spec: &GraphSpec, table: &EnergyTable) -> Result<FillingSpec, Error> {
        if let Some(se) = &self.se {
            return FillingSpec::new(spec, se.iter().copied());
        }
        match self.explicit_rule() {
            Some(rule) => rule.resolve(spec),
            None => Ok(fill_ground_state_with(table, self.fill_tol, self.include_zero)),
        }
    }

    fn sweep_rule(&self) -> FillRule {
        self.explicit_rule().unwrap_or_default()
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print tuning parameters and fillings to stderr.
    #[arg(long)]
    diagnostics: bool,
}

impl OutputArgs {
    fn format(&self) -> Format {
        match self.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }

    fn emit(&self, table: &Table) -> Result<(), CliError> {
        let text = table.render(self.format());
        match &self.output {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path).map_err(CliError::Io)?);
                w.write_all(text.as_bytes()).map_err(CliError::Io)?;
                w.flush().map_err(CliError::Io)
            }
            None => io::stdout().write_all(text.as_bytes()).map_err(CliError::Io),
        }
    }
}

#[derive(Args)]
struct EnergiesArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    hopping: HoppingArgs,
    #[command(flatten)]
    fill: FillArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Oracle,
    Modules,
    Heun,
    All,
}

#[derive(Args)]
struct EntropyArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    hopping: HoppingArgs,
    #[command(flatten)]
    fill: FillArgs,
    /// Distances of the subsystem: a list 0,2,3 or a range a..b (inclusive).
    #[arg(long, value_parser = parse_distances, conflicts_with = "cutoff")]
    distances: Option<IndexList>,
    /// Ball subsystem with distances 0..=N.
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long, value_enum, default_value = "modules")]
    route: RouteArg,
    /// Base vertex for the dense route, e.g. 3,4.
    #[arg(long, value_delimiter = ',')]
    x0: Option<Vec<usize>>,
    /// Largest C(n,k) the dense route may build (default: $JE_DENSE_CAP or 20000).
    #[arg(long)]
    dense_cap: Option<u64>,
    /// Also report the entropy in bits.
    #[arg(long)]
    bits: bool,
    /// Emit the grouped spectrum instead of the summary.
    #[arg(long)]
    spectrum: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Subcommand)]
enum SweepCommand {
    /// Single neighborhoods i = k/2, k/4, k/8 on J(n, n/2) against n.
    Fig2a(Fig2aArgs),
    /// S/|SV| for single neighborhoods over (i, filled levels).
    Fig2b(Fig2bArgs),
    /// S/|dSV| for balls over (k, N) on J(n, k).
    Fig3a(Fig3aArgs),
    /// S/|dSV| for balls over (filled levels, N).
    Fig3b(Fig3bArgs),
    /// Half-chain entropies inside single modules.
    Fig4(Fig4Args),
}

#[derive(Args)]
struct Fig2aArgs {
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 30)]
    n_max: usize,
    #[command(flatten)]
    fill: FillArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct Fig2bArgs {
    #[arg(long, default_value_t = 30)]
    n: usize,
    #[arg(long, default_value_t = 15)]
    k: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct Fig3aArgs {
    #[arg(long, default_value_t = 30)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    #[arg(long, default_value_t = 15)]
    k_max: usize,
    #[arg(long, value_enum, default_value = "heun")]
    route: RouteArg,
    #[arg(long)]
    dense_cap: Option<u64>,
    #[command(flatten)]
    fill: FillArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct Fig3bArgs {
    #[arg(long, default_value_t = 30)]
    n: usize,
    #[arg(long, default_value_t = 15)]
    k: usize,
    /// Numbers of filled levels: list or range (default 1..k+1).
    #[arg(long, value_parser = parse_distances)]
    levels: Option<IndexList>,
    #[arg(long, value_enum, default_value = "heun")]
    route: RouteArg,
    #[arg(long)]
    dense_cap: Option<u64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct Fig4Args {
    #[arg(long, default_value_t = 30)]
    n: usize,
    #[arg(long, default_value_t = 15)]
    k: usize,
    /// Module labels j1:j2, comma separated (default 6.5:7.5,7.5:7.5).
    #[arg(long, value_delimiter = ',', value_parser = parse_module)]
    modules: Option<Vec<(HalfInt, HalfInt)>>,
    #[command(flatten)]
    fill: FillArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Only the small graphs.
    #[arg(long)]
    quick: bool,
    #[arg(long)]
    dense_cap: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A list `0,2,3` or an inclusive range `a..b`.
#[derive(Clone, Debug)]
struct IndexList(Vec<usize>);

fn parse_distances(s: &str) -> Result<IndexList, String> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
        let b: usize = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
        if a > b {
            return Err(format!("empty range {s}"));
        }
        return Ok(IndexList((a..=b).collect()));
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t}: {e}")))
        .collect::<Result<_, _>>()
        .map(IndexList)
}

fn parse_module(s: &str) -> Result<(HalfInt, HalfInt), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected j1:j2, got {s}"))?;
    let half = |t: &str| t.trim().parse::<HalfInt>().map_err(|e| e.to_string());
    Ok((half(a)?, half(b)?))
}

enum CliError {
    Lib(Error),
    Io(io::Error),
    /// A check or a route comparison failed; the output was still written.
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Capacity { .. }) => 3,
            CliError::Lib(Error::InvalidGraph { .. } | Error::InvalidArgument(_) | Error::OutOfRange(_)) => 2,
            CliError::Io(_) => 2,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Io(e) => format!("i/o error: {e}"),
            CliError::Failed(m) => m.clone(),
        }
    }
}

fn energies_for(spec: &GraphSpec, hopping: &HoppingArgs) -> Result<EnergyTable, Error> {
    match (hopping.exp_hopping, &hopping.alpha) {
        (Some(c), _) => energy_exponential(spec, c),
        (None, Some(alpha)) => energy_table(spec, &HoppingProfile::padded(spec, alpha.clone())?),
        (None, None) => energy_table(spec, &HoppingProfile::nearest_neighbor(spec)),
    }
}

fn cmd_energies(args: &EnergiesArgs) -> Result<(), CliError> {
    let spec = GraphSpec::new(args.graph.n, args.graph.k)?;
    let table = energies_for(&spec, &args.hopping)?;
    let filling = args.fill.resolve(&spec, &table)?;
    let rows = table
        .levels
        .iter()
        .map(|l| {
            Row::new()
                .with("n", spec.n())
                .with("k", spec.k())
                .with_half("j", l.j)
                .with("theta", l.theta)
                .with("omega", l.omega)
                .with("degeneracy", l.degeneracy)
                .with("occupied", filling.contains(l.j))
        })
        .collect();
    args.out.emit(&Table::new(rows))
}

fn cmd_entropy(args: &EntropyArgs) -> Result<(), CliError> {
    let spec = GraphSpec::new(args.graph.n, args.graph.k)?;
    let table = energies_for(&spec, &args.hopping)?;
    let filling = args.fill.resolve(&spec, &table)?;
    let distances = match (&args.distances, args.cutoff) {
        (Some(d), _) => d.0.clone(),
        (None, Some(c)) => (0..=c).collect(),
        (None, None) => return Err(Error::InvalidArgument("give --distances or --cutoff".into()).into()),
    };
    let mut sub = SubsystemSpec::distances(&spec, distances)?;
    if let Some(x0) = &args.x0 {
        sub = sub.with_base_vertex(spec.vertex(x0.clone())?);
    }
    let cap = args.dense_cap.unwrap_or_else(dense_cap_from_env);

    let heun_spec = HeunSpec::from_sets(&spec, &filling, &sub);
    if args.out.diagnostics {
        let occupied: Vec<String> = filling.iter().map(|j| j.to_string()).collect();
        eprintln!(
            "filling: {{{}}} ({} modes)",
            occupied.join(", "),
            filling.mode_count(&spec)?
        );
        match &heun_spec {
            Ok(hs) => eprintln!(
                "heun: N = {}, j0 = {}, mu = {}, nu = {}",
                hs.cutoff, hs.j0, hs.mu, hs.nu
            ),
            Err(e) => eprintln!("heun: not applicable ({e})"),
        }
    }

    let routes: Vec<Route> = match args.route {
        RouteArg::Oracle => vec![Route::Oracle],
        RouteArg::Modules => vec![Route::Modules],
        RouteArg::Heun => vec![Route::Heun],
        RouteArg::All if heun_spec.is_ok() => Route::ALL.to_vec(),
        RouteArg::All => {
            eprintln!("note: skipping the heun route (needs distances 0..=N and a bottom filling)");
            vec![Route::Oracle, Route::Modules]
        }
    };
    let spectra: Vec<(Route, CorrelationSpectrum)> = routes
        .iter()
        .map(|&r| sweep::spectrum(r, &spec, &filling, &sub, cap).map(|s| (r, s)))
        .collect::<Result<_, _>>()?;

    let discrepancy = spectra
        .iter()
        .skip(1)
        .map(|(_, s)| s.max_discrepancy(&spectra[0].1).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);

    let mut out = Table::default();
    for (route, sp) in &spectra {
        if args.spectrum {
            for e in sp.entries() {
                out.push(
                    Row::new()
                        .with("route", route.name())
                        .with("lambda", e.lambda)
                        .with("multiplicity", e.multiplicity),
                );
            }
            continue;
        }
        let rep = report(&spec, &sub, sp)?;
        let mut row = Row::new()
            .with("route", route.name())
            .with("n", spec.n())
            .with("k", spec.k())
            .with("levels_filled", filling.len())
            .with("sv_size", rep.subsystem_size)
            .with("boundary_size", rep.boundary_size)
            .with("entropy", rep.entropy);
        if args.bits {
            row = row.with("entropy_bits", rep.entropy_bits());
        }
        row = row
            .with("ratio_sv", rep.ratio_subsystem)
            .with("ratio_boundary", rep.ratio_boundary)
            .with("cut_edges", rep.cut_edges)
            .with("ratio_cut_edges", rep.ratio_cut_edges);
        if spectra.len() > 1 {
            row = row.with("max_discrepancy", discrepancy);
        }
        out.push(row);
    }
    args.out.emit(&out)?;
    if discrepancy > ROUTE_TOL {
        return Err(CliError::Failed(format!("routes disagree by {discrepancy:e}")));
    }
    Ok(())
}

fn single_route(route: RouteArg) -> Result<Route, Error> {
    match route {
        RouteArg::Oracle => Ok(Route::Oracle),
        RouteArg::Modules => Ok(Route::Modules),
        RouteArg::Heun => Ok(Route::Heun),
        RouteArg::All => Err(Error::InvalidArgument("sweeps take a single route".into())),
    }
}

fn cmd_sweep(cmd: &SweepCommand) -> Result<(), CliError> {
    let (table, out) = match cmd {
        SweepCommand::Fig2a(a) => {
            if a.n_min < 2 || a.n_min > a.n_max {
                return Err(Error::InvalidArgument(format!("bad n range {}..{}", a.n_min, a.n_max)).into());
            }
            let ns: Vec<usize> = (a.n_min..=a.n_max).filter(|n| n % 2 == 0).collect();
            (sweep::fig2a(&ns, a.fill.sweep_rule())?, &a.out)
        }
        SweepCommand::Fig2b(a) => (sweep::fig2b(&GraphSpec::new(a.n, a.k)?)?, &a.out),
        SweepCommand::Fig3a(a) => {
            let cap = a.dense_cap.unwrap_or_else(dense_cap_from_env);
            let ks: Vec<usize> = (a.k_min.max(1)..=a.k_max.min(a.n / 2)).collect();
            (
                sweep::fig3a(a.n, &ks, a.fill.sweep_rule(), single_route(a.route)?, cap)?,
                &a.out,
            )
        }
        SweepCommand::Fig3b(a) => {
            let spec = GraphSpec::new(a.n, a.k)?;
            let cap = a.dense_cap.unwrap_or_else(dense_cap_from_env);
            let levels = a
                .levels
                .as_ref()
                .map_or_else(|| (1..=spec.k() + 1).collect(), |l| l.0.clone());
            (sweep::fig3b(&spec, &levels, single_route(a.route)?, cap)?, &a.out)
        }
        SweepCommand::Fig4(a) => {
            let spec = GraphSpec::new(a.n, a.k)?;
            let modules = a.modules.clone().unwrap_or_else(default_chain_modules);
            (sweep::fig4(&spec, &modules, a.fill.sweep_rule())?, &a.out)
        }
    };
    out.emit(&table)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let cap = args.dense_cap.unwrap_or_else(dense_cap_from_env);
    let rep = run_battery(args.quick, cap)?;
    let text = match args.format {
        FormatArg::Json => serde_json::to_string_pretty(&rep).expect("report serializes") + "\n",
        FormatArg::Csv => Table::new(
            rep.checks
                .iter()
                .map(|c| {
                    Row::new()
                        .with("check", c.name.as_str())
                        .with("passed", c.passed)
                        .with("worst", c.worst)
                        .with("tolerance", c.tolerance)
                })
                .collect(),
        )
        .to_csv(),
    };
    match &args.output {
        Some(p) => std::fs::write(p, text).map_err(CliError::Io)?,
        None => io::stdout().write_all(text.as_bytes()).map_err(CliError::Io)?,
    }
    if rep.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = rep
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        Err(CliError::Failed(format!("failed checks: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Energies(a) => cmd_energies(a),
        Command::Entropy(a) => cmd_entropy(a),
        Command::Sweep(c) => cmd_sweep(c),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("jfe: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
