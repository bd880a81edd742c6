use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracmom_core::csvio::{read_grid, write_curve, write_grid, Metadata};
use fracmom_core::fracops::identity_suite;
use fracmom_core::reconstruct::abscissae;
use fracmom_core::{make_grid, sample_curve, working_strip, CurveKind, DistributionSpec, Error, Family, GridParams, Method, MomentGrid, Sign};
use log::{info, warn};

mod figures;

/// Complex-order fractional moments and the series that rebuild CFs and densities from them.
#[derive(Debug, Parser)]
#[command(name = "fracmom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the moment grid E[(∓iX)^(-γ_k)], γ_k = ρ + ikΔ, k = -m..m, as CSV.
    Moments(MomentsArgs),
    /// Rebuild the characteristic function from a moment grid (default m = 25).
    ReconstructCf(CurveArgs),
    /// Rebuild the density from a minus-sign moment grid (default m = 15 for Gaussian, 5 otherwise).
    ReconstructPdf(CurveArgs),
    /// Check every fractional operator of the exact CF at zero against its moment (default m = 5).
    Verify(VerifyArgs),
    /// Print the strip of Re γ usable for reconstruction.
    Strip(DistArgs),
    /// Write the curve CSVs behind each figure into a directory.
    ///
    /// file                     curve                     ρ    Δ    m   range
    /// fig3a_uniform_taylor.csv Uniform(a=2) Taylor, order 8    -    -   θ 0.1..10
    /// fig3b_uniform_cf.csv     Uniform(a=2) CF          0.4  0.4  25  θ 0.1..20
    /// fig4_rayleigh_cf.csv     Rayleigh(σ=2) CF (re=4a, im=4b)   0.4  0.4  25  θ 0.1..10
    /// fig5_cauchy_cf.csv       Cauchy CF                0.4  0.4  25  θ 0.1..10
    /// fig6_levy_cf.csv         Lévy CF (re=6a, im=6b)   0.9  0.4  25  θ 0.1..10
    /// fig7_gaussian_pdf.csv    Gaussian(2,1) density    0.4  0.4  15  x -2..6, |x| ≥ 0.1
    /// fig8_cauchy_pdf.csv      Cauchy density           0.4  0.4  5   x -10..10, |x| ≥ 0.1
    /// fig9_levy_pdf.csv        Lévy density             0.4  0.4  5   x 0.1..10
    #[command(verbatim_doc_comment)]
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Args)]
struct DistArgs {
    /// Distribution config: {"family": ..., "params": {...}}.
    #[arg(long, value_name = "PATH", conflicts_with = "family")]
    dist: Option<PathBuf>,
    /// uniform, rayleigh, cauchy, levy or gaussian.
    #[arg(long)]
    family: Option<Family>,
    /// Family parameter, repeatable: a=2, sigma=2, mu=2.
    #[arg(long = "param", value_name = "K=V", requires = "family")]
    params: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodName {
    Closed,
    Quad,
    Mc,
}

#[derive(Debug, Clone, Args)]
struct GridOpts {
    #[arg(long, default_value_t = 0.4)]
    rho: f64,
    #[arg(long, default_value_t = 0.4)]
    delta: f64,
    /// Grid half-width; the grid has 2m+1 moments.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = Sign::Minus)]
    sign: Sign,
    #[arg(long, value_enum, default_value_t = MethodName::Closed)]
    method: MethodName,
    /// Sample count for --method mc.
    #[arg(long, default_value_t = 100_000)]
    n_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct MomentsArgs {
    #[command(flatten)]
    dist: DistArgs,
    #[command(flatten)]
    grid: GridOpts,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[command(flatten)]
    dist: DistArgs,
    #[command(flatten)]
    grid: GridOpts,
    /// Abscissae as lo:hi:count.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    /// Drop abscissae with |x| below this.
    #[arg(long)]
    exclude: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Read the grid from a `moments` CSV instead of building it.
    #[arg(long, value_name = "PATH")]
    grid_in: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    dist: DistArgs,
    #[command(flatten)]
    grid: GridOpts,
    /// Relative deviation allowed per check.
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
}

#[derive(Debug, Args)]
struct FiguresArgs {
    /// Output directory.
    #[arg(long, default_value = "figures")]
    out: PathBuf,
}

/// A message plus the exit status: 1 for bad input, 2 for numerical failure.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Tags a library error with the operation that raised it.
fn during(op: &'static str) -> impl Fn(Error) -> Failure {
    move |err| {
        let code = match err {
            Error::Pole(_) | Error::Domain(_) | Error::Quadrature { .. } | Error::AllSamplesDegenerate => 2,
            Error::Strip { .. } | Error::EmptyStrip(_) | Error::Argument(_) | Error::Unsupported(_) | Error::Parse(_) | Error::Io(_) => 1,
        };
        Failure { code, message: format!("{op}: {err}") }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn resolve_dist(args: &DistArgs) -> CliResult<Option<DistributionSpec>> {
    if let Some(path) = &args.dist {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("reading {}: {e}", path.display())))?;
        return DistributionSpec::from_json(&text).map(Some).map_err(during("parsing distribution config"));
    }
    let Some(family) = args.family else { return Ok(None) };
    let mut params = BTreeMap::new();
    for kv in &args.params {
        let (k, v) = kv.split_once('=').ok_or_else(|| Failure::invalid(format!("--param expects k=v, got {kv:?}")))?;
        let v: f64 = v.trim().parse().map_err(|_| Failure::invalid(format!("--param {k}: {v:?} is not a number")))?;
        params.insert(k.trim().to_string(), v);
    }
    DistributionSpec::from_parts(family, &params).map(Some).map_err(during("distribution parameters"))
}

fn require_dist(args: &DistArgs) -> CliResult<DistributionSpec> {
    resolve_dist(args)?.ok_or_else(|| Failure::invalid("no distribution: pass --dist <file.json> or --family <name> [--param k=v ...]"))
}

/// Builds a grid and the metadata that describes how it was made.
fn build_grid(dist: &DistributionSpec, opts: &GridOpts, default_m: usize) -> CliResult<(MomentGrid, Metadata)> {
    let params = GridParams::new(opts.rho, opts.delta, opts.m.unwrap_or(default_m), opts.sign).map_err(during("grid parameters"))?;
    let method = match opts.method {
        MethodName::Closed => Method::ClosedForm,
        MethodName::Quad => Method::Quadrature,
        MethodName::Mc => Method::MonteCarlo(dist.sample(opts.n_samples, opts.seed).map_err(during("sampling"))?),
    };
    info!("building {} grid for {dist}: ρ = {}, Δ = {}, m = {}", method.name(), params.rho, params.delta, params.m);
    let grid = make_grid(dist, params, &method).map_err(during("building moment grid"))?;
    let mut meta = Metadata::for_grid(&params, Some(dist), method.name());
    if opts.method == MethodName::Mc {
        meta.push("n_samples", opts.n_samples);
        meta.push("seed", opts.seed);
    }
    Ok((grid, meta))
}

/// Writes to a temporary file next to `path` and renames it into place.
fn write_atomic(path: &Path, body: impl FnOnce(&mut BufWriter<&mut File>) -> fracmom_core::Result<()>) -> CliResult<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let io_fail = |e: io::Error| Failure::invalid(format!("writing {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_fail)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        body(&mut w).map_err(during("writing output"))?;
        w.flush().map_err(io_fail)?;
    }
    tmp.persist(path).map_err(|e| io_fail(e.error))?;
    Ok(())
}

fn emit(out: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> fracmom_core::Result<()>) -> CliResult<()> {
    match out {
        Some(path) => write_atomic(path, |w| body(w)),
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w).map_err(during("writing output"))?;
            w.flush().map_err(|e| Failure::invalid(format!("writing stdout: {e}")))
        }
    }
}

fn parse_range(raw: &str) -> CliResult<(f64, f64, usize)> {
    let bad = || Failure::invalid(format!("--range expects lo:hi:count, got {raw:?}"));
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo = parts[0].trim().parse().map_err(|_| bad())?;
    let hi = parts[1].trim().parse().map_err(|_| bad())?;
    let count = parts[2].trim().parse().map_err(|_| bad())?;
    Ok((lo, hi, count))
}

fn run_moments(args: &MomentsArgs) -> CliResult<()> {
    let dist = require_dist(&args.dist)?;
    let (grid, meta) = build_grid(&dist, &args.grid, 25)?;
    emit(args.out.as_deref(), |w| write_grid(w, &grid, &meta))?;
    eprintln!("moments: wrote {} moments for {dist}", grid.values().len());
    Ok(())
}

fn run_curve(args: &CurveArgs, kind: CurveKind) -> CliResult<()> {
    let op = match kind {
        CurveKind::Cf => "reconstruct-cf",
        CurveKind::Pdf => "reconstruct-pdf",
    };
    let (grid, meta, dist) = match &args.grid_in {
        Some(path) => {
            let file = File::open(path).map_err(|e| Failure::invalid(format!("reading {}: {e}", path.display())))?;
            let gf = read_grid(BufReader::new(file)).map_err(during("reading grid"))?;
            let dist = match gf.dist().map_err(during("reading grid"))? {
                Some(d) => {
                    if args.dist.dist.is_some() || args.dist.family.is_some() {
                        warn!("{} names its distribution; ignoring --dist/--family", path.display());
                    }
                    Some(d)
                }
                None => resolve_dist(&args.dist)?,
            };
            (gf.grid, gf.meta, dist)
        }
        None => {
            let dist = require_dist(&args.dist)?;
            let default_m = match (kind, dist.family()) {
                (CurveKind::Cf, _) => 25,
                (CurveKind::Pdf, Family::Gaussian) => 15,
                (CurveKind::Pdf, _) => 5,
            };
            let (grid, meta) = build_grid(&dist, &args.grid, default_m)?;
            (grid, meta, Some(dist))
        }
    };
    let (lo, hi, count) = match &args.range {
        Some(r) => parse_range(r)?,
        None => match kind {
            CurveKind::Cf => (0.1, 20.0, 400),
            CurveKind::Pdf => (-10.0, 10.0, 401),
        },
    };
    let exclude = args.exclude.unwrap_or(0.0);
    let xs = abscissae(lo, hi, count, exclude).map_err(during("abscissae"))?;
    let curve = sample_curve(&grid, kind, &xs, dist.as_ref()).map_err(during(op))?;
    emit(args.out.as_deref(), |w| write_curve(w, &curve, &meta))?;
    match curve.max_abs_err() {
        Some(e) => eprintln!("{op}: {} points, max abs err {e:.6e}", curve.len()),
        None => eprintln!("{op}: {} points, no exact reference", curve.len()),
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> CliResult<()> {
    let dist = require_dist(&args.dist)?;
    let params = GridParams::new(args.grid.rho, args.grid.delta, args.grid.m.unwrap_or(5), args.grid.sign).map_err(during("grid parameters"))?;
    let checks = identity_suite(&dist, &params).map_err(during("verify"))?;
    if checks.is_empty() {
        return Err(Failure::invalid(format!("verify: no operator applies to {dist} at ρ = {}", params.rho)));
    }
    println!("verify {dist}: ρ = {}, Δ = {}, m = {}, tolerance {:e}", params.rho, params.delta, params.m, args.tol);
    println!("{:<18} {:>6} {:>14}  status", "operator", "checks", "max rel dev");
    let mut worst: f64 = 0.0;
    let mut failed = Vec::new();
    let mut ops: Vec<_> = checks.iter().map(|c| c.operator).collect();
    ops.dedup();
    for op in ops {
        let rows: Vec<_> = checks.iter().filter(|c| c.operator == op).collect();
        let dev = rows.iter().map(|c| c.rel_deviation).fold(0.0, f64::max);
        let ok = dev <= args.tol;
        worst = worst.max(dev);
        if !ok {
            failed.push(op.to_string());
        }
        println!("{:<18} {:>6} {:>14.3e}  {}", op.as_str(), rows.len(), dev, if ok { "pass" } else { "FAIL" });
    }
    println!("max deviation {worst:.3e}");
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::numerical(format!("verify: {} exceeded {:e}", failed.join(", "), args.tol)))
    }
}

fn run_strip(args: &DistArgs) -> CliResult<()> {
    let dist = require_dist(args)?;
    let strip = working_strip(&dist).map_err(during("strip"))?;
    info!("moment strip of {dist}: {}", dist.moment_strip());
    println!("{strip}");
    Ok(())
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Moments(a) => run_moments(a),
        Command::ReconstructCf(a) => run_curve(a, CurveKind::Cf),
        Command::ReconstructPdf(a) => run_curve(a, CurveKind::Pdf),
        Command::Verify(a) => run_verify(a),
        Command::Strip(a) => run_strip(a),
        Command::Figures(a) => figures::run(&a.out),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FRACMOM_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("fracmom: {f}");
            ExitCode::from(f.code)
        }
    }
}
