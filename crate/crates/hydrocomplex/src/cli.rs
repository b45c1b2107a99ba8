//! Command-line front end: single-state reports, family sweeps in CSV
//! form (the plot-data generator), and the closed-form-vs-oracle
//! consistency report.
//!
//! Exit codes: 0 on success, 2 for invalid states or flags, 3 when the
//! quadrature cannot reach the requested accuracy.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::complexity::{self, BoundOutcome};
use crate::measures::{self, MeasureSet, PrintedForm, Provenance, Space, VarianceValue};
use crate::oracle::{
    oracle_disequilibrium, oracle_entropy, oracle_fisher, oracle_moment, oracle_normalization,
    oracle_variance, OracleError,
};
use crate::quad::{Measured, QuadError, QuadratureSpec};
use crate::states::{battery, derived_params, HyperState, NuclearCharge, StateError};

const CSV_HEADER: &str = "D,n,mu,Z,space,measure,value,err_estimate,error\n";

#[derive(Parser)]
#[command(
    name = "hydrocomplex",
    version,
    about = "Information-theoretic measures and complexity products of D-dimensional hydrogenic states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Optional key=value file tuning the quadrature
    /// (keys: rel_tol, abs_tol, max_panels, tail_cut).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Target relative quadrature error; overrides the config file.
    #[arg(long, global = true, value_name = "TOL")]
    rel_tol: Option<f64>,

    /// Absolute quadrature error floor; overrides the config file.
    #[arg(long, global = true, value_name = "TOL")]
    abs_tol: Option<f64>,

    /// Panel budget per integral; overrides the config file.
    #[arg(long, global = true, value_name = "N")]
    max_panels: Option<usize>,

    /// Tail truncation threshold; overrides the config file.
    #[arg(long, global = true, value_name = "FRAC")]
    tail_cut: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Measures, complexity products and bound checks for one state.
    Compute(ComputeArgs),
    /// CSV sweep over a state family; rows are computed in parallel but
    /// emitted in a fixed order (dimension major, n minor).
    Sweep(SweepArgs),
    /// Closed forms against the quadrature oracle, plus the known
    /// inconsistencies of the quoted expressions.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Spatial dimension (at least 2).
    #[arg(long = "D", value_name = "DIM")]
    d: usize,

    /// Principal quantum number.
    #[arg(long)]
    n: u32,

    /// Comma-separated chain mu_1,...,mu_{D-1}.
    #[arg(
        long,
        value_delimiter = ',',
        value_name = "LIST",
        required_unless_present = "circular",
        conflicts_with = "circular"
    )]
    mu: Option<Vec<u32>>,

    /// Shorthand for the circular chain (n-1, ..., n-1).
    #[arg(long)]
    circular: bool,

    /// Nuclear charge.
    #[arg(long = "Z", value_name = "CHARGE", default_value_t = 1.0)]
    z: f64,

    #[arg(long, value_enum, default_value_t = SpaceChoice::Both)]
    space: SpaceChoice,

    #[arg(long, value_enum, default_value_t = OutFormat::Table)]
    out: OutFormat,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated list of dimensions.
    #[arg(long = "D", value_delimiter = ',', required = true, value_name = "LIST")]
    dims: Vec<usize>,

    /// Lowest principal quantum number.
    #[arg(long, default_value_t = 1, value_name = "N")]
    n_min: u32,

    /// Highest principal quantum number (inclusive).
    #[arg(long, value_name = "N")]
    n_max: u32,

    /// Fixed chain applied at every (D, n); the default family is circular.
    #[arg(long, value_delimiter = ',', value_name = "LIST", conflicts_with = "circular")]
    mu: Option<Vec<u32>>,

    /// Sweep the circular family (the default when --mu is absent).
    #[arg(long)]
    circular: bool,

    /// Nuclear charge.
    #[arg(long = "Z", value_name = "CHARGE", default_value_t = 1.0)]
    z: f64,

    /// Comma-separated spaces to evaluate.
    #[arg(long, value_delimiter = ',', value_enum, default_value = "position")]
    spaces: Vec<SpaceArg>,

    /// Comma-separated measures to evaluate.
    #[arg(long, value_delimiter = ',', value_enum, default_value = "lmc")]
    measures: Vec<MeasureKind>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Comma-separated list of dimensions for the state battery.
    #[arg(long = "D", value_delimiter = ',', default_value = "3", value_name = "LIST")]
    dims: Vec<usize>,

    /// Highest principal quantum number in the battery.
    #[arg(long, default_value_t = 2, value_name = "N")]
    n: u32,

    /// Relative deviation below which a comparison counts as agreement.
    #[arg(long, default_value_t = 1e-6, value_name = "TOL")]
    tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceChoice {
    Position,
    Momentum,
    Both,
}

impl SpaceChoice {
    fn spaces(self) -> Vec<Space> {
        match self {
            SpaceChoice::Position => vec![Space::Position],
            SpaceChoice::Momentum => vec![Space::Momentum],
            SpaceChoice::Both => vec![Space::Position, Space::Momentum],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    Position,
    Momentum,
}

impl From<SpaceArg> for Space {
    fn from(arg: SpaceArg) -> Self {
        match arg {
            SpaceArg::Position => Space::Position,
            SpaceArg::Momentum => Space::Momentum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureKind {
    Lmc,
    Fs,
    Cr,
    Shannon,
    Fisher,
    Variance,
    Disequilibrium,
}

impl MeasureKind {
    const ALL: [MeasureKind; 7] = [
        MeasureKind::Disequilibrium,
        MeasureKind::Shannon,
        MeasureKind::Fisher,
        MeasureKind::Variance,
        MeasureKind::Lmc,
        MeasureKind::Fs,
        MeasureKind::Cr,
    ];

    fn name(self) -> &'static str {
        match self {
            MeasureKind::Lmc => "lmc",
            MeasureKind::Fs => "fs",
            MeasureKind::Cr => "cr",
            MeasureKind::Shannon => "shannon",
            MeasureKind::Fisher => "fisher",
            MeasureKind::Variance => "variance",
            MeasureKind::Disequilibrium => "disequilibrium",
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    InvalidState(StateError),
    Accuracy(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::InvalidState(_) => 2,
            CliError::Accuracy(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::InvalidState(e) => write!(f, "invalid state: {e}"),
            CliError::Accuracy(msg) => write!(f, "accuracy failure: {msg}"),
        }
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        CliError::InvalidState(e)
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        CliError::Accuracy(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Accuracy(e.to_string())
    }
}

/// Parses the command line, runs a subcommand, maps errors to exit codes.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let quad = match quadrature_from(&cli) {
        Ok(q) => q,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let outcome = match &cli.command {
        Command::Compute(args) => cmd_compute(args, &quad),
        Command::Sweep(args) => cmd_sweep(args, &quad),
        Command::Validate(args) => cmd_validate(args, &quad),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn quadrature_from(cli: &Cli) -> Result<QuadratureSpec, CliError> {
    let mut quad = QuadratureSpec::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        apply_config(&mut quad, &text).map_err(CliError::Usage)?;
    }
    if let Some(v) = cli.rel_tol {
        quad.rel_tol = v;
    }
    if let Some(v) = cli.abs_tol {
        quad.abs_tol = v;
    }
    if let Some(v) = cli.max_panels {
        quad.max_panels = v;
    }
    if let Some(v) = cli.tail_cut {
        quad.tail_cut = v;
    }
    Ok(quad)
}

fn apply_config(quad: &mut QuadratureSpec, text: &str) -> Result<(), String> {
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {lineno}: expected key=value, got {line:?}"))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "rel_tol" | "abs_tol" | "tail_cut" => {
                let parsed: f64 = value.parse().map_err(|_| {
                    format!("config line {lineno}: {key} expects a number, got {value:?}")
                })?;
                match key {
                    "rel_tol" => quad.rel_tol = parsed,
                    "abs_tol" => quad.abs_tol = parsed,
                    _ => quad.tail_cut = parsed,
                }
            }
            "max_panels" => {
                quad.max_panels = value.parse().map_err(|_| {
                    format!("config line {lineno}: max_panels expects an integer, got {value:?}")
                })?;
            }
            _ => return Err(format!("config line {lineno}: unknown key {key:?}")),
        }
    }
    Ok(())
}

/// 15 significant digits: stable across runs and precise enough that
/// closed-form identities survive a round trip through the output.
fn sci(v: f64) -> String {
    format!("{v:.14e}")
}

fn mu_text(mu: &[u32]) -> String {
    let parts: Vec<String> = mu.iter().map(u32::to_string).collect();
    parts.join(";")
}

/// Canonical variance: the closed expression where it is trustworthy,
/// radial moments of the density otherwise.
fn canonical_variance(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    quad: &QuadratureSpec,
) -> Result<Measured, CliError> {
    match measures::variance(state, z, space) {
        VarianceValue::Closed(v) => Ok(Measured::exact(v)),
        VarianceValue::PrintedOnly(_) => Ok(oracle_variance(state, z, space, quad)?),
    }
}

struct SpaceReport {
    space: Space,
    set: MeasureSet,
    disequilibrium: Measured,
    shannon: Measured,
    variance: Measured,
    triple: complexity::ComplexityTriple,
}

fn space_report(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    quad: &QuadratureSpec,
) -> Result<SpaceReport, CliError> {
    let triple = complexity::complexity_triple(state, z, space, quad)?;
    let disequilibrium = measures::disequilibrium(state, z, space, quad)?;
    let shannon = measures::shannon_entropy(state, z, space, quad)?;
    let variance = canonical_variance(state, z, space, quad)?;
    let set = MeasureSet {
        // Closed-route densities are normalized by construction.
        normalization: 1.0,
        disequilibrium: disequilibrium.value,
        shannon: shannon.value,
        fisher: measures::fisher_information(state, z, space),
        variance: variance.value,
        provenance: Provenance::ClosedForm,
    };
    Ok(SpaceReport {
        space,
        set,
        disequilibrium,
        shannon,
        variance,
        triple,
    })
}

fn cmd_compute(args: &ComputeArgs, quad: &QuadratureSpec) -> Result<(), CliError> {
    let state = if let Some(mu) = &args.mu {
        HyperState::new(args.d, args.n, mu)?
    } else {
        HyperState::circular(args.d, args.n)?
    };
    let z = NuclearCharge::new(args.z)?;
    let spaces = args.space.spaces();
    let reports: Vec<SpaceReport> = spaces
        .iter()
        .map(|&s| space_report(&state, z, s, quad))
        .collect::<Result<_, _>>()?;
    let text = match args.out {
        OutFormat::Json => {
            let mut s = to_json_string(&compute_json(&state, z, &reports));
            s.push('\n');
            s
        }
        OutFormat::Csv => compute_csv(&state, z, &spaces, quad),
        OutFormat::Table => compute_table(&state, z, &reports),
    };
    print!("{text}");
    Ok(())
}

fn bound_json(b: BoundOutcome) -> Value {
    json!({
        "bound": b.bound,
        "value": b.value,
        "satisfied": b.satisfied,
        "asserted": b.asserted,
    })
}

fn compute_json(state: &HyperState, z: NuclearCharge, reports: &[SpaceReport]) -> Value {
    let params = derived_params(state, z);
    let mut measures_map = Map::new();
    let mut complexities = Map::new();
    let mut bounds = Map::new();
    for r in reports {
        let key = r.space.to_string();
        measures_map.insert(
            key.clone(),
            json!({
                "provenance": r.set.provenance.to_string(),
                "normalization": r.set.normalization,
                "disequilibrium": r.set.disequilibrium,
                "shannon": r.set.shannon,
                "fisher": r.set.fisher,
                "variance": r.set.variance,
            }),
        );
        complexities.insert(
            key.clone(),
            json!({
                "lmc": {
                    "value": r.triple.lmc.value,
                    "err_estimate": r.triple.lmc.error_estimate,
                },
                "fisher_shannon": {
                    "value": r.triple.fisher_shannon.value,
                    "err_estimate": r.triple.fisher_shannon.error_estimate,
                },
                "cramer_rao": {
                    "value": r.triple.cramer_rao.value,
                    "err_estimate": r.triple.cramer_rao.error_estimate,
                },
            }),
        );
        bounds.insert(
            key,
            json!({
                "lmc": bound_json(r.triple.bounds.lmc),
                "fisher_shannon": bound_json(r.triple.bounds.fisher_shannon),
                "cramer_rao": bound_json(r.triple.bounds.cramer_rao),
            }),
        );
    }
    json!({
        "state": {
            "D": state.dimension(),
            "n": state.n(),
            "mu": state.mu(),
            "circular": state.is_circular(),
            "Z": z.value(),
        },
        "params": {
            "eta": params.eta,
            "L": params.big_l,
            "lambda": params.lambda,
            "energy": params.energy,
        },
        "measures": measures_map,
        "complexities": complexities,
        "bounds": bounds,
    })
}

/// Compact JSON with every float printed to 15 significant digits.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.14e}")
    }
}

fn to_json_string(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    String::from_utf8(out).expect("serialized JSON is UTF-8")
}

fn csv_line(
    d: usize,
    n: u32,
    mu: &str,
    z: f64,
    space: Space,
    kind: MeasureKind,
    outcome: &Result<Measured, String>,
) -> String {
    match outcome {
        Ok(m) => format!(
            "{d},{n},{mu},{z},{space},{},{},{},\n",
            kind.name(),
            sci(m.value),
            sci(m.error_estimate)
        ),
        // The error text lands in one cell; commas would split it.
        Err(e) => format!(
            "{d},{n},{mu},{z},{space},{},,,{}\n",
            kind.name(),
            e.replace(',', ";")
        ),
    }
}

fn measure_value(
    state: &HyperState,
    z: NuclearCharge,
    space: Space,
    kind: MeasureKind,
    quad: &QuadratureSpec,
) -> Result<Measured, String> {
    match kind {
        MeasureKind::Lmc => complexity::lmc(state, z, space, quad).map_err(|e| e.to_string()),
        MeasureKind::Fs => {
            complexity::fisher_shannon(state, z, space, quad).map_err(|e| e.to_string())
        }
        MeasureKind::Cr => {
            complexity::cramer_rao(state, z, space, quad).map_err(|e| e.to_string())
        }
        MeasureKind::Shannon => {
            measures::shannon_entropy(state, z, space, quad).map_err(|e| e.to_string())
        }
        MeasureKind::Fisher => Ok(Measured::exact(measures::fisher_information(
            state, z, space,
        ))),
        MeasureKind::Variance => {
            canonical_variance(state, z, space, quad).map_err(|e| e.to_string())
        }
        MeasureKind::Disequilibrium => {
            measures::disequilibrium(state, z, space, quad).map_err(|e| e.to_string())
        }
    }
}

fn compute_csv(
    state: &HyperState,
    z: NuclearCharge,
    spaces: &[Space],
    quad: &QuadratureSpec,
) -> String {
    let mu = mu_text(state.mu());
    let mut out = String::from(CSV_HEADER);
    for &space in spaces {
        for kind in MeasureKind::ALL {
            let outcome = measure_value(state, z, space, kind, quad);
            out.push_str(&csv_line(
                state.dimension(),
                state.n(),
                &mu,
                z.value(),
                space,
                kind,
                &outcome,
            ));
        }
    }
    out
}

fn bound_line(name: &str, b: BoundOutcome) -> String {
    let status = if b.satisfied {
        "satisfied"
    } else if b.asserted {
        "VIOLATED"
    } else {
        "below (informational)"
    };
    format!("  {name:<16} >= {:<22} {status}\n", b.bound)
}

fn compute_table(state: &HyperState, z: NuclearCharge, reports: &[SpaceReport]) -> String {
    let params = derived_params(state, z);
    let circular = if state.is_circular() { " circular" } else { "" };
    let mu: Vec<String> = state.mu().iter().map(u32::to_string).collect();
    let mut out = format!(
        "state: D={} n={} mu=[{}] Z={}{circular}\n",
        state.dimension(),
        state.n(),
        mu.join(","),
        z.value()
    );
    out.push_str(&format!(
        "eta={} L={} lambda={} energy={}\n",
        params.eta, params.big_l, params.lambda, params.energy
    ));
    for r in reports {
        out.push_str(&format!("\n{} space ({})\n", r.space, r.set.provenance));
        out.push_str(&format!(
            "  {:<16} {:<22} {}\n",
            "quantity", "value", "err_estimate"
        ));
        let mut line = |name: &str, m: Measured| {
            out.push_str(&format!(
                "  {name:<16} {:<22} {:.1e}\n",
                m.value, m.error_estimate
            ));
        };
        line("normalization", Measured::exact(r.set.normalization));
        line("disequilibrium", r.disequilibrium);
        line("shannon", r.shannon);
        line("fisher", Measured::exact(r.set.fisher));
        line("variance", r.variance);
        line("lmc", r.triple.lmc);
        line("fisher_shannon", r.triple.fisher_shannon);
        line("cramer_rao", r.triple.cramer_rao);
        out.push_str(&format!("\nbounds ({})\n", r.space));
        out.push_str(&bound_line("lmc", r.triple.bounds.lmc));
        out.push_str(&bound_line("fisher_shannon", r.triple.bounds.fisher_shannon));
        out.push_str(&bound_line("cramer_rao", r.triple.bounds.cramer_rao));
    }
    out
}

enum Family {
    Circular,
    Explicit(Vec<u32>),
}

impl Family {
    fn state(&self, d: usize, n: u32) -> Result<HyperState, StateError> {
        match self {
            Family::Circular => HyperState::circular(d, n),
            Family::Explicit(mu) => HyperState::new(d, n, mu),
        }
    }

    fn label(&self) -> String {
        match self {
            Family::Circular => "circular".to_string(),
            Family::Explicit(mu) => mu_text(mu),
        }
    }
}

fn cmd_sweep(args: &SweepArgs, quad: &QuadratureSpec) -> Result<(), CliError> {
    if args.n_min == 0 {
        return Err(CliError::Usage("--n-min must be at least 1".to_string()));
    }
    if args.n_min > args.n_max {
        return Err(CliError::Usage(format!(
            "--n-min {} exceeds --n-max {}",
            args.n_min, args.n_max
        )));
    }
    let family = match &args.mu {
        Some(mu) => Family::Explicit(mu.clone()),
        None => Family::Circular,
    };
    let z = NuclearCharge::new(args.z)?;

    let mut items = Vec::new();
    for &d in &args.dims {
        for n in args.n_min..=args.n_max {
            for &space in &args.spaces {
                for &kind in &args.measures {
                    items.push((d, n, Space::from(space), kind));
                }
            }
        }
    }

    // Parallel evaluation; collect preserves the item order, so the
    // output does not depend on scheduling.
    let lines: Vec<String> = items
        .par_iter()
        .map(|&(d, n, space, kind)| match family.state(d, n) {
            Ok(state) => {
                let outcome = measure_value(&state, z, space, kind, quad);
                csv_line(d, n, &mu_text(state.mu()), z.value(), space, kind, &outcome)
            }
            Err(e) => csv_line(
                d,
                n,
                &family.label(),
                z.value(),
                space,
                kind,
                &Err(e.to_string()),
            ),
        })
        .collect();

    let mut out = String::from(CSV_HEADER);
    for line in &lines {
        out.push_str(line);
    }
    print!("{out}");
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Agree,
    Discrepancy,
    Informational,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Agree => "agree",
            Status::Discrepancy => "discrepancy",
            Status::Informational => "informational",
        })
    }
}

struct ValidationRow {
    state: String,
    quantity: String,
    /// `None` marks a quoted form with no finite value for this state.
    closed: Option<f64>,
    oracle: f64,
    deviation: f64,
    status: Status,
}

fn relative_deviation(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).abs() / a.abs().max(b.abs())
}

fn gate_row(label: &str, quantity: String, closed: f64, oracle: f64, gate: f64) -> ValidationRow {
    let deviation = relative_deviation(closed, oracle);
    ValidationRow {
        state: label.to_string(),
        quantity,
        closed: Some(closed),
        oracle,
        deviation,
        status: if deviation <= gate {
            Status::Agree
        } else {
            Status::Discrepancy
        },
    }
}

/// Row for a quoted expression that the canonical route supersedes:
/// misses are tagged `on_miss` instead of failing the gate, and a
/// divergent form is reported as such.
fn printed_row(
    label: &str,
    quantity: String,
    closed: Option<f64>,
    oracle: f64,
    gate: f64,
    on_miss: Status,
) -> ValidationRow {
    match closed {
        Some(c) => {
            let deviation = relative_deviation(c, oracle);
            ValidationRow {
                state: label.to_string(),
                quantity,
                closed,
                oracle,
                deviation,
                status: if deviation <= gate { Status::Agree } else { on_miss },
            }
        }
        None => ValidationRow {
            state: label.to_string(),
            quantity,
            closed: None,
            oracle,
            deviation: f64::INFINITY,
            status: Status::Informational,
        },
    }
}

fn validation_rows(
    state: &HyperState,
    gate: f64,
    quad: &QuadratureSpec,
) -> Result<Vec<ValidationRow>, CliError> {
    let z = NuclearCharge::new(1.0).expect("unit charge is valid");
    let label = format!("D={} n={} mu={}", state.dimension(), state.n(), mu_text(state.mu()));
    let d = state.dimension() as f64;
    let mut rows = Vec::new();
    for space in [Space::Position, Space::Momentum] {
        let norm = oracle_normalization(state, space, quad)?;
        let deseq = oracle_disequilibrium(state, z, space, quad)?;
        let entropy = oracle_entropy(state, z, space, quad)?;
        let fisher = oracle_fisher(state, z, space, quad)?;
        let variance = oracle_variance(state, z, space, quad)?;

        rows.push(gate_row(
            &label,
            format!("normalization/{space}"),
            1.0,
            norm.value,
            gate,
        ));
        rows.push(gate_row(
            &label,
            format!("disequilibrium/{space}"),
            measures::disequilibrium(state, z, space, quad)?.value,
            deseq.value,
            gate,
        ));
        rows.push(gate_row(
            &label,
            format!("shannon/{space}"),
            measures::shannon_entropy(state, z, space, quad)?.value,
            entropy.value,
            gate,
        ));
        rows.push(gate_row(
            &label,
            format!("fisher/{space}"),
            measures::fisher_information(state, z, space),
            fisher.value,
            gate,
        ));
        match measures::variance(state, z, space) {
            VarianceValue::Closed(v) => rows.push(gate_row(
                &label,
                format!("variance/{space}"),
                v,
                variance.value,
                gate,
            )),
            VarianceValue::PrintedOnly(v) => rows.push(printed_row(
                &label,
                format!("printed-variance/{space}"),
                Some(v),
                variance.value,
                gate,
                Status::Discrepancy,
            )),
        }

        let printed = match measures::printed_disequilibrium(state, z, space, quad)? {
            PrintedForm::Value(m) => Some(m.value),
            PrintedForm::Divergent => None,
        };
        rows.push(printed_row(
            &label,
            format!("printed-disequilibrium/{space}"),
            printed,
            deseq.value,
            gate,
            Status::Informational,
        ));

        if space == Space::Momentum {
            let p1 = oracle_moment(state, z, space, 1, quad)?;
            rows.push(printed_row(
                &label,
                "printed-momentum-expectation".to_string(),
                Some(measures::printed_momentum_expectation(state, z)),
                p1.value,
                gate,
                Status::Discrepancy,
            ));
        }

        let cr = complexity::cramer_rao(state, z, space, quad)?;
        rows.push(printed_row(
            &label,
            format!("printed-cramer-rao/{space}"),
            Some(complexity::printed_cramer_rao(state, space)),
            cr.value,
            gate,
            Status::Informational,
        ));
        rows.push(ValidationRow {
            state: label.clone(),
            quantity: format!("cramer-rao-bound/{space}"),
            closed: Some(cr.value),
            oracle: d * d,
            deviation: relative_deviation(cr.value, d * d),
            status: Status::Informational,
        });
    }
    Ok(rows)
}

fn validation_table(rows: &[ValidationRow], gate: f64) -> String {
    let mut out = format!(
        "{:<22} {:<34} {:>22} {:>22} {:>10}  {}\n",
        "state", "quantity", "closed", "oracle", "deviation", "status"
    );
    for row in rows {
        let closed = row
            .closed
            .map_or_else(|| "divergent".to_string(), sci);
        let deviation = if row.deviation.is_finite() {
            format!("{:.1e}", row.deviation)
        } else {
            "inf".to_string()
        };
        out.push_str(&format!(
            "{:<22} {:<34} {:>22} {:>22} {:>10}  {}\n",
            row.state,
            row.quantity,
            closed,
            sci(row.oracle),
            deviation,
            row.status
        ));
    }
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    out.push_str(&format!(
        "\n{} agree, {} discrepancy, {} informational ({} rows, gate {:.1e})\n",
        count(Status::Agree),
        count(Status::Discrepancy),
        count(Status::Informational),
        rows.len(),
        gate
    ));
    out
}

fn cmd_validate(args: &ValidateArgs, quad: &QuadratureSpec) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".to_string()));
    }
    for &d in &args.dims {
        if d < 2 {
            return Err(CliError::Usage(format!(
                "dimension must be at least 2, got {d}"
            )));
        }
    }
    let mut rows = Vec::new();
    for state in battery(&args.dims, args.n) {
        rows.extend(validation_rows(&state, args.tol, quad)?);
    }
    print!("{}", validation_table(&rows, args.tol));
    Ok(())
}
