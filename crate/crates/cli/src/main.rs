//! Command-line front end: reproducible experiments over the schemes and
//! region polytopes, with machine-readable outputs.
//!
//! Text and CSV outputs start with a `#` provenance comment (version, seed,
//! config hash); JSON outputs carry the same data in a `provenance` field.
//! Exit codes: 0 success, 1 usage error, 2 guard/limit error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use sdof_core::{
    analytic_slope, blind_span_check, build_blind_plan, build_helper_plan, build_mac_plan,
    default_gamma, extreme_points, ic_region, is_redundant, kg_bound_check, leakage_exact,
    leakage_groups, mac_region, min_distance_oracle, pam_params, rate_lower_bound,
    receiver_constellation, sample_alphas, sample_channel, sdof_sweep, secrecy_rate_lb,
    transmit_and_decode, BlindSpanReport, ChannelInstance, ChannelKind, Error as CoreError,
    MeasureConfig, PamParams, Rational, Receiver, RegionSpec, RowLabel, SchemeKind, SignalPlan,
    SimConfig, SimReport, SweepConfig,
};

#[derive(Parser)]
#[command(name = "sdof", version, about = "Alignment-based secrecy schemes and s.d.o.f. region toolkit")]
struct Cli {
    /// Seed for every random draw in the command.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the payload to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Flat key = value TOML file mirroring the command's flags; explicit
    /// flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a region's inequalities, vertices, and maximum sum.
    Region(RegionArgs),
    /// Emit a region's vertex set as JSON.
    Vertices(VerticesArgs),
    /// Exact leakage of jamming-protected constellation groups.
    Leakage(LeakageArgs),
    /// Brute-force minimum distance of a coefficient set.
    Oracle(OracleArgs),
    /// Single-point Monte Carlo decode with rate/leakage accounting.
    Simulate(SimulateArgs),
    /// Power sweep to CSV with a fitted slope footer.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Mac,
    Ic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    Helper,
    Mac,
    Blind,
}

impl From<Scheme> for SchemeKind {
    fn from(s: Scheme) -> SchemeKind {
        match s {
            Scheme::Helper => SchemeKind::HelperAligned,
            Scheme::Mac => SchemeKind::MacAligned,
            Scheme::Blind => SchemeKind::BlindCJ,
        }
    }
}

#[derive(Args, Debug)]
struct RegionArgs {
    /// Region family.
    #[arg(long, value_enum)]
    family: Option<Family>,

    /// Number of users K.
    #[arg(long)]
    k: Option<usize>,

    /// Check feasibility of a comma-separated rational point, e.g. 3/5,3/5,0,0.
    #[arg(long, value_name = "POINT")]
    check: Option<String>,

    /// Report per-row redundancy (nonnegativity rows are structural and
    /// skipped).
    #[arg(long)]
    redundancy: bool,
}

#[derive(Args, Debug)]
struct VerticesArgs {
    #[arg(long, value_enum)]
    family: Option<Family>,

    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
struct LeakageArgs {
    /// Constellation half-width Q.
    #[arg(long)]
    q: Option<u64>,

    /// Comma-separated group sizes, one per eavesdropper dimension.
    #[arg(long, value_name = "SIZES")]
    groups: Option<String>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Comma-separated real dimension coefficients.
    #[arg(long, value_name = "LIST")]
    dims: Option<String>,

    #[arg(long)]
    q: Option<u64>,

    /// Constellation scale a.
    #[arg(long)]
    a: Option<f64>,

    /// Check the lower bound k_delta * a / Q^(L-1+delta) (needs --k-delta).
    #[arg(long)]
    delta: Option<f64>,

    #[arg(long = "k-delta")]
    k_delta: Option<f64>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    scheme: Option<Scheme>,

    /// Helper count (helper/blind schemes).
    #[arg(long)]
    m: Option<usize>,

    /// User count (mac scheme).
    #[arg(long)]
    k: Option<usize>,

    /// Transmit power.
    #[arg(long)]
    p: Option<f64>,

    #[arg(long)]
    delta: Option<f64>,

    /// Power normalizer; defaults to the plan's peak-symbol budget.
    #[arg(long)]
    gamma: Option<f64>,

    #[arg(long)]
    trials: Option<u64>,

    /// Receiver noise variance.
    #[arg(long)]
    noise: Option<f64>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum)]
    scheme: Option<Scheme>,

    #[arg(long)]
    m: Option<usize>,

    #[arg(long)]
    k: Option<usize>,

    #[arg(long)]
    delta: Option<f64>,

    /// Power grid: geometric range start..stop:xFACTOR (e.g. 1e4..1e12:x100)
    /// or a comma-separated list.
    #[arg(long, value_name = "RANGE")]
    p: Option<String>,

    #[arg(long)]
    gamma: Option<f64>,

    /// Measure error rates by Monte Carlo instead of the error-free bound.
    #[arg(long)]
    measure: bool,

    #[arg(long)]
    trials: Option<u64>,

    #[arg(long)]
    noise: Option<f64>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Guard(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        if e.is_guard() {
            CliError::Guard(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let table = load_config(&cli.config)?;
    let seed = cli
        .seed
        .or_else(|| table.as_ref().and_then(|t| get_u64(t, "seed")))
        .unwrap_or(0);
    let payload = match cli.command {
        Command::Region(args) => cmd_region(args, table.as_ref(), seed)?,
        Command::Vertices(args) => cmd_vertices(args, table.as_ref(), seed)?,
        Command::Leakage(args) => cmd_leakage(args, table.as_ref(), seed)?,
        Command::Oracle(args) => cmd_oracle(args, table.as_ref(), seed)?,
        Command::Simulate(args) => cmd_simulate(args, table.as_ref(), seed)?,
        Command::Sweep(args) => cmd_sweep(args, table.as_ref(), seed)?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, payload)?,
        None => print!("{payload}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Config file handling: a flat TOML table whose keys mirror the long flags.

fn load_config(path: &Option<PathBuf>) -> CliResult<Option<toml::Table>> {
    let Some(path) = path else { return Ok(None) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| usage(format!("bad config {}: {e}", path.display())))?;
    Ok(Some(table))
}

fn get_value<'a>(table: &'a toml::Table, key: &str) -> Option<&'a toml::Value> {
    table
        .get(key)
        .or_else(|| table.get(&key.replace('-', "_")))
}

fn get_u64(table: &toml::Table, key: &str) -> Option<u64> {
    get_value(table, key).and_then(|v| v.as_integer()).map(|i| i as u64)
}

fn get_usize(table: &toml::Table, key: &str) -> Option<usize> {
    get_value(table, key).and_then(|v| v.as_integer()).map(|i| i as usize)
}

fn get_f64(table: &toml::Table, key: &str) -> Option<f64> {
    get_value(table, key).and_then(|v| match v {
        toml::Value::Float(f) => Some(*f),
        toml::Value::Integer(i) => Some(*i as f64),
        _ => None,
    })
}

fn get_string(table: &toml::Table, key: &str) -> Option<String> {
    get_value(table, key).and_then(|v| v.as_str()).map(str::to_owned)
}

fn get_bool(table: &toml::Table, key: &str) -> Option<bool> {
    get_value(table, key).and_then(|v| v.as_bool())
}

macro_rules! fill {
    ($opt:expr, $table:expr, $getter:ident, $key:literal) => {
        if $opt.is_none() {
            if let Some(t) = $table {
                $opt = $getter(t, $key);
            }
        }
    };
}

// ---------------------------------------------------------------------------
// Provenance

#[derive(Debug, Clone, Serialize)]
struct Provenance {
    version: String,
    command: String,
    seed: u64,
    config_hash: String,
}

impl Provenance {
    fn new(command: &str, seed: u64, canonical: &str) -> Provenance {
        let digest = Sha256::digest(canonical.as_bytes());
        let hash: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();
        Provenance {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            seed,
            config_hash: hash,
        }
    }

    fn comment(&self) -> String {
        format!(
            "# sdof v{} cmd={} seed={} cfg={}",
            self.version, self.command, self.seed, self.config_hash
        )
    }
}

// ---------------------------------------------------------------------------
// Shared parsing helpers

fn parse_rational_point(text: &str) -> CliResult<Vec<Rational>> {
    text.split(',')
        .map(|s| Rational::from_str(s.trim()).map_err(usage))
        .collect()
}

fn parse_f64_list(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| usage(format!("bad number {s:?}: {e}")))
        })
        .collect()
}

fn parse_usize_list(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| usage(format!("bad integer {s:?}: {e}")))
        })
        .collect()
}

/// Power grids are either `start..stop:xFACTOR` (geometric, inclusive) or an
/// explicit comma list.
fn parse_power_grid(text: &str) -> CliResult<Vec<f64>> {
    if let Some((range, factor)) = text.split_once(":x") {
        let (start, stop) = range
            .split_once("..")
            .ok_or_else(|| usage(format!("bad power range {text:?}: expected start..stop:xFACTOR")))?;
        let start: f64 = start
            .trim()
            .parse()
            .map_err(|e| usage(format!("bad range start: {e}")))?;
        let stop: f64 = stop
            .trim()
            .parse()
            .map_err(|e| usage(format!("bad range stop: {e}")))?;
        let factor: f64 = factor
            .trim()
            .parse()
            .map_err(|e| usage(format!("bad range factor: {e}")))?;
        let valid = factor.is_finite() && factor > 1.0 && start.is_finite() && start > 0.0 && stop >= start;
        if !valid {
            return Err(usage(format!("bad power range {text:?}")));
        }
        let mut grid = Vec::new();
        let mut p = start;
        while p <= stop * (1.0 + 1e-9) {
            grid.push(p);
            p *= factor;
        }
        Ok(grid)
    } else {
        parse_f64_list(text)
    }
}

fn region_for(family: Family, k: usize) -> CliResult<RegionSpec> {
    Ok(match family {
        Family::Mac => mac_region(k)?,
        Family::Ic => ic_region(k)?,
    })
}

fn family_name(family: Family) -> &'static str {
    match family {
        Family::Mac => "mac",
        Family::Ic => "ic",
    }
}

fn format_point(point: &[Rational]) -> String {
    let coords: Vec<String> = point.iter().map(Rational::to_string).collect();
    format!("({})", coords.join(", "))
}

fn label_name(label: RowLabel) -> String {
    match label {
        RowLabel::Secrecy(i) => format!("secrecy({})", i + 1),
        RowLabel::Pairwise(i, j) => format!("pairwise({},{})", i + 1, j + 1),
        RowLabel::Nonneg(i) => format!("nonneg({})", i + 1),
    }
}

// ---------------------------------------------------------------------------
// region

fn cmd_region(mut args: RegionArgs, table: Option<&toml::Table>, seed: u64) -> CliResult<String> {
    fill!(args.k, table, get_usize, "k");
    fill!(args.check, table, get_string, "check");
    if args.family.is_none() {
        if let Some(name) = table.and_then(|t| get_string(t, "family")) {
            args.family = Some(
                Family::from_str(&name, true).map_err(|e| usage(format!("bad family: {e}")))?,
            );
        }
    }
    if !args.redundancy {
        args.redundancy = table.and_then(|t| get_bool(t, "redundancy")).unwrap_or(false);
    }
    let family = args.family.ok_or_else(|| usage("--family is required"))?;
    let k = args.k.ok_or_else(|| usage("--k is required"))?;

    let spec = region_for(family, k)?;
    let ex = extreme_points(&spec)?;
    let (max_sum, optima) = ex
        .sum_optima()
        .ok_or_else(|| usage("region is empty"))?;

    let provenance = Provenance::new("region", seed, &format!("{args:?} seed={seed}"));
    let mut out = String::new();
    writeln!(out, "{}", provenance.comment()).unwrap();
    writeln!(
        out,
        "family={} K={k} n={} rows={}",
        family_name(family),
        spec.n,
        spec.num_rows()
    )
    .unwrap();
    writeln!(out, "rows:").unwrap();
    for (i, row) in spec.rows.iter().enumerate() {
        writeln!(out, "  [{i:>2}] {:<16} {}", label_name(row.label), row.render()).unwrap();
    }
    writeln!(out, "vertices ({}):", ex.len()).unwrap();
    for point in ex.iter() {
        writeln!(out, "  {}", format_point(point)).unwrap();
    }
    let optima_text: Vec<String> = optima.iter().map(|p| format_point(p)).collect();
    writeln!(out, "max_sum={max_sum} at {}", optima_text.join(", ")).unwrap();

    if let Some(check) = &args.check {
        let point = parse_rational_point(check)?;
        if point.len() != spec.n {
            return Err(usage(format!(
                "check point has {} coordinates, region has {}",
                point.len(),
                spec.n
            )));
        }
        match spec.first_violation(&point) {
            Some(row) => writeln!(
                out,
                "check {}: infeasible: violates {}",
                format_point(&point),
                spec.rows[row].render()
            )
            .unwrap(),
            None => {
                let tight = spec.tight_rows(&point);
                let tight_text: Vec<String> =
                    tight.iter().map(|&r| spec.rows[r].render()).collect();
                writeln!(
                    out,
                    "check {}: feasible (tight: {})",
                    format_point(&point),
                    if tight_text.is_empty() {
                        "none".to_string()
                    } else {
                        tight_text.join("; ")
                    }
                )
                .unwrap();
            }
        }
    }

    if args.redundancy {
        writeln!(out, "redundancy (nonnegativity rows are structural, skipped):").unwrap();
        let mut pairwise_total = 0usize;
        let mut pairwise_redundant = 0usize;
        for (i, row) in spec.rows.iter().enumerate() {
            if matches!(row.label, RowLabel::Nonneg(_)) {
                continue;
            }
            let redundant = is_redundant(&spec, i)?;
            if matches!(row.label, RowLabel::Pairwise(..)) {
                pairwise_total += 1;
                pairwise_redundant += usize::from(redundant);
            }
            writeln!(
                out,
                "  [{i:>2}] {}: {}",
                row.render(),
                if redundant { "redundant" } else { "non-redundant" }
            )
            .unwrap();
        }
        if pairwise_total > 0 {
            if pairwise_redundant == pairwise_total {
                writeln!(out, "pairwise rows: all redundant").unwrap();
            } else {
                writeln!(
                    out,
                    "pairwise rows: {} of {pairwise_total} non-redundant",
                    pairwise_total - pairwise_redundant
                )
                .unwrap();
            }
        }
    }

    Ok(out)
}

// ---------------------------------------------------------------------------
// vertices

#[derive(Serialize)]
struct VerticesOut {
    provenance: Provenance,
    family: String,
    k: usize,
    region: RegionSpec,
    count: usize,
    vertices: Vec<Vec<Rational>>,
    max_sum: Rational,
    sum_optima: Vec<Vec<Rational>>,
}

fn cmd_vertices(mut args: VerticesArgs, table: Option<&toml::Table>, seed: u64) -> CliResult<String> {
    fill!(args.k, table, get_usize, "k");
    if args.family.is_none() {
        if let Some(name) = table.and_then(|t| get_string(t, "family")) {
            args.family = Some(
                Family::from_str(&name, true).map_err(|e| usage(format!("bad family: {e}")))?,
            );
        }
    }
    let family = args.family.ok_or_else(|| usage("--family is required"))?;
    let k = args.k.ok_or_else(|| usage("--k is required"))?;

    let spec = region_for(family, k)?;
    let ex = extreme_points(&spec)?;
    let (max_sum, sum_optima) = ex.sum_optima().ok_or_else(|| usage("region is empty"))?;
    let out = VerticesOut {
        provenance: Provenance::new("vertices", seed, &format!("{args:?} seed={seed}")),
        family: family_name(family).to_string(),
        k,
        count: ex.len(),
        vertices: ex.iter().cloned().collect(),
        region: spec,
        max_sum,
        sum_optima,
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
}

// ---------------------------------------------------------------------------
// leakage

fn cmd_leakage(mut args: LeakageArgs, table: Option<&toml::Table>, seed: u64) -> CliResult<String> {
    fill!(args.q, table, get_u64, "q");
    fill!(args.groups, table, get_string, "groups");
    let q = args.q.ok_or_else(|| usage("--q is required"))?;
    let groups_text = args.groups.clone().ok_or_else(|| usage("--groups is required"))?;
    let groups = parse_usize_list(&groups_text)?;

    let provenance = Provenance::new("leakage", seed, &format!("{args:?} seed={seed}"));
    let mut out = String::new();
    writeln!(out, "{}", provenance.comment()).unwrap();
    writeln!(out, "q={q}").unwrap();
    writeln!(out, "{:<7} {:<6} {:<14} {:<14}", "group", "size", "leakage_bits", "cap_bits").unwrap();
    let mut total = 0.0;
    for (i, &m) in groups.iter().enumerate() {
        let leak = leakage_exact(q, &[m])?;
        let cap = (((2 * m as u64 * q + 1) as f64) / ((2 * q + 1) as f64)).log2();
        writeln!(out, "{:<7} {:<6} {:<14.6} {:<14.6}", i + 1, m, leak, cap).unwrap();
        total += leak;
    }
    writeln!(out, "total leakage_bits={total:.6}").unwrap();
    Ok(out)
}

// ---------------------------------------------------------------------------
// oracle

fn cmd_oracle(mut args: OracleArgs, table: Option<&toml::Table>, seed: u64) -> CliResult<String> {
    fill!(args.dims, table, get_string, "dims");
    fill!(args.q, table, get_u64, "q");
    fill!(args.a, table, get_f64, "a");
    fill!(args.delta, table, get_f64, "delta");
    fill!(args.k_delta, table, get_f64, "k-delta");
    let dims_text = args.dims.clone().ok_or_else(|| usage("--dims is required"))?;
    let dims = parse_f64_list(&dims_text)?;
    let q = args.q.ok_or_else(|| usage("--q is required"))?;
    let a = args.a.unwrap_or(1.0);

    let provenance = Provenance::new("oracle", seed, &format!("{args:?} seed={seed}"));
    let mut out = String::new();
    writeln!(out, "{}", provenance.comment()).unwrap();
    writeln!(out, "dims={dims:?} q={q} a={a}").unwrap();
    let d_min = min_distance_oracle(&dims, q, a)?;
    writeln!(out, "d_min={d_min:.6}").unwrap();
    match (args.delta, args.k_delta) {
        (Some(delta), Some(k_delta)) => {
            let kg = kg_bound_check(&dims, q, a, delta, k_delta)?;
            writeln!(
                out,
                "bound: k_delta={k_delta} delta={delta} -> {:.6} holds={}",
                kg.bound, kg.holds
            )
            .unwrap();
        }
        (None, None) => {}
        _ => return Err(usage("--delta and --k-delta go together")),
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// simulate / sweep shared plumbing

fn scheme_size(scheme: Scheme, m: Option<usize>, k: Option<usize>) -> CliResult<usize> {
    match scheme {
        Scheme::Helper | Scheme::Blind => {
            m.ok_or_else(|| usage("--m is required for helper/blind schemes"))
        }
        Scheme::Mac => k.ok_or_else(|| usage("--k is required for the mac scheme")),
    }
}

fn build_plan(
    scheme: Scheme,
    size: usize,
    seed: u64,
) -> CliResult<(ChannelInstance, SignalPlan)> {
    let kind = match scheme {
        Scheme::Helper | Scheme::Blind => ChannelKind::HelperWiretap { m: size },
        Scheme::Mac => ChannelKind::MacWiretap { k: size },
    };
    let channel = sample_channel(kind, seed)?;
    let plan = match scheme {
        Scheme::Helper => build_helper_plan(&channel)?,
        Scheme::Mac => build_mac_plan(&channel)?,
        Scheme::Blind => build_blind_plan(&channel, &sample_alphas(size, seed))?,
    };
    Ok((channel, plan))
}

#[derive(Serialize)]
struct SimulateOut {
    provenance: Provenance,
    scheme: String,
    size: usize,
    channel: ChannelInstance,
    pam: PamParams,
    report: SimReport,
    d_min: f64,
    errors: u64,
    trials: u64,
    noise_var: f64,
    blind_span: Option<BlindSpanReport>,
}

fn cmd_simulate(mut args: SimulateArgs, table: Option<&toml::Table>, seed: u64) -> CliResult<String> {
    fill!(args.m, table, get_usize, "m");
    fill!(args.k, table, get_usize, "k");
    fill!(args.p, table, get_f64, "p");
    fill!(args.delta, table, get_f64, "delta");
    fill!(args.gamma, table, get_f64, "gamma");
    fill!(args.trials, table, get_u64, "trials");
    fill!(args.noise, table, get_f64, "noise");
    if args.scheme.is_none() {
        if let Some(name) = table.and_then(|t| get_string(t, "scheme")) {
            args.scheme = Some(
                Scheme::from_str(&name, true).map_err(|e| usage(format!("bad scheme: {e}")))?,
            );
        }
    }
    let scheme = args.scheme.ok_or_else(|| usage("--scheme is required"))?;
    let size = scheme_size(scheme, args.m, args.k)?;
    let p = args.p.ok_or_else(|| usage("--p is required"))?;
    let delta = args.delta.unwrap_or(0.05);
    let trials = args.trials.unwrap_or(10_000);
    let noise = args.noise.unwrap_or(1.0);

    let provenance = Provenance::new("simulate", seed, &format!("{args:?} seed={seed}"));
    let (channel, plan) = build_plan(scheme, size, seed)?;
    let legit = receiver_constellation(&plan, &channel, Receiver::Legitimate)?;
    let gamma = args.gamma.unwrap_or_else(|| default_gamma(&plan));
    let pam = pam_params(p, legit.dims.len(), delta, gamma)?;
    let noisy = channel.with_noise_var(noise)?;
    let outcome = transmit_and_decode(&SimConfig {
        plan: &plan,
        channel: &noisy,
        pam,
        trials,
        seed,
    })?;
    let (leakage_bits, blind_span) = match scheme {
        Scheme::Blind => (0.0, Some(blind_span_check(&plan, &channel)?)),
        _ => (leakage_exact(pam.q, &leakage_groups(&plan, &channel)?)?, None),
    };
    let rate_lb_bits = rate_lower_bound(pam.q, plan.num_message_streams(), outcome.error_rate);
    let secrecy_rate_bits = secrecy_rate_lb(rate_lb_bits, leakage_bits);
    let report = SimReport {
        p,
        q: pam.q,
        a: pam.a,
        error_rate: outcome.error_rate,
        error_bound: outcome.error_bound,
        rate_lb_bits,
        leakage_bits,
        secrecy_rate_bits,
        normalized_rate: rate_lb_bits / (0.5 * p.log2()),
    };
    let out = SimulateOut {
        provenance,
        scheme: SchemeKind::from(scheme).to_string(),
        size,
        channel: noisy,
        pam,
        report,
        d_min: outcome.d_min,
        errors: outcome.errors,
        trials,
        noise_var: noise,
        blind_span,
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&out).unwrap()))
}

fn cmd_sweep(mut args: SweepArgs, table: Option<&toml::Table>, seed: u64) -> CliResult<String> {
    fill!(args.m, table, get_usize, "m");
    fill!(args.k, table, get_usize, "k");
    fill!(args.delta, table, get_f64, "delta");
    fill!(args.p, table, get_string, "p");
    fill!(args.gamma, table, get_f64, "gamma");
    fill!(args.trials, table, get_u64, "trials");
    fill!(args.noise, table, get_f64, "noise");
    if args.scheme.is_none() {
        if let Some(name) = table.and_then(|t| get_string(t, "scheme")) {
            args.scheme = Some(
                Scheme::from_str(&name, true).map_err(|e| usage(format!("bad scheme: {e}")))?,
            );
        }
    }
    if !args.measure {
        args.measure = table.and_then(|t| get_bool(t, "measure")).unwrap_or(false);
    }
    let scheme = args.scheme.ok_or_else(|| usage("--scheme is required"))?;
    let size = scheme_size(scheme, args.m, args.k)?;
    let delta = args.delta.unwrap_or(0.05);
    let p_text = args.p.clone().ok_or_else(|| usage("--p is required"))?;
    let p_list = parse_power_grid(&p_text)?;
    let measure = args.measure.then(|| MeasureConfig {
        trials: args.trials.unwrap_or(10_000),
        seed,
        noise_var: args.noise.unwrap_or(1.0),
    });

    let provenance = Provenance::new("sweep", seed, &format!("{args:?} seed={seed}"));
    let result = sdof_sweep(&SweepConfig {
        scheme: scheme.into(),
        size,
        delta,
        p_list,
        channel_seed: seed,
        gamma: args.gamma,
        measure,
    })?;

    let mut out = String::new();
    writeln!(out, "{}", provenance.comment()).unwrap();
    writeln!(
        out,
        "# scheme={} size={size} delta={delta} target_slope={:.6}",
        SchemeKind::from(scheme),
        analytic_slope(scheme.into(), size, delta)
    )
    .unwrap();
    if let Some(span) = &result.blind {
        writeln!(
            out,
            "# blind_span eve_jamming_dims={} eve_total_dims={} legit_jamming_dims={} legit_total_dims={}",
            span.eve_jamming_dims, span.eve_total_dims, span.legit_jamming_dims, span.legit_total_dims
        )
        .unwrap();
    }
    writeln!(out, "{}", SimReport::CSV_HEADER).unwrap();
    for report in &result.reports {
        writeln!(out, "{}", report.csv_row()).unwrap();
    }
    writeln!(out, "# fitted_slope,{:.6}", result.slope).unwrap();
    writeln!(out, "# target_slope,{:.6}", result.target_slope).unwrap();
    Ok(out)
}
