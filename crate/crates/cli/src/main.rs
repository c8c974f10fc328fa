//! `rbm`: maximum rainbow matching from the command line.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 no applicable method,
//! 3 input error. Failures print one `error: <kind>: <message>` line on stderr.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rbm_core::analysis::analyze;
use rbm_core::approx::{approx_mrbm, LocalSearchConfig};
use rbm_core::corpus::{random_instance, Class};
use rbm_core::exact::{
    oracle_mrbm, solve_auto, solve_p5_forest_fpt, solve_p7_forest, solve_p7_tree, solve_star_triangle, BannedColorSet,
    SolveError, SolveOptions, SolveResult, DEFAULT_ORACLE_CAP,
};
use rbm_core::gadgets::{
    apply_stage, build_from_named, resolve_chain, verify_certificate, CubicSource, Gadget, GadgetCertificate,
    GadgetError, SourceKind, StageInput, Target,
};
use rbm_core::graph::{
    parse_instance, parse_solution, serialize_instance, serialize_solution, validate_solution, Verdict,
};
use rbm_core::report::Report;
use rbm_core::ColoredGraph;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "rbm", version, about = "Maximum rainbow matching toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact maximum rainbow matching
    Solve(SolveArgs),
    /// Local-search approximation
    Approx(ApproxArgs),
    /// Structure report used for solver dispatch
    Analyze(AnalyzeArgs),
    /// Generate a gadget instance with its certificate
    Gen(GenArgs),
    /// Check a solution or a gadget certificate
    Verify(VerifyArgs),
    /// Branch-and-bound oracle
    Oracle(OracleArgs),
    /// Seeded random instances
    Corpus(CorpusArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Brute,
    P4,
    P5fpt,
    P7tree,
    P7forest,
}

#[derive(Args)]
struct CapArg {
    /// Oracle size cap (edges)
    #[arg(long, value_name = "M")]
    cap: Option<usize>,
}

impl CapArg {
    fn resolve(&self) -> usize {
        match self.cap {
            Some(m) if m != DEFAULT_ORACLE_CAP => {
                eprintln!("warning: oracle cap set to {m} (default {DEFAULT_ORACLE_CAP})");
                m
            }
            Some(m) => m,
            None => DEFAULT_ORACLE_CAP,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    #[command(flatten)]
    cap: CapArg,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    /// Write the solution to P and the report to P.report
    #[arg(long, value_name = "P")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ApproxArgs {
    input: PathBuf,
    /// Largest number of solution edges removed by one swap
    #[arg(long = "swap", default_value_t = 2, value_name = "T")]
    swap: usize,
    /// Also run the oracle and report the optimum
    #[arg(long)]
    compare_oracle: bool,
    #[command(flatten)]
    cap: CapArg,
    #[arg(long, value_name = "P")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    input: PathBuf,
    #[arg(long, value_name = "P")]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["named", "input"]))]
struct GenArgs {
    #[arg(long)]
    target: String,
    /// Catalog source graph
    #[arg(long)]
    named: Option<String>,
    /// Input of the target stage read from a file
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the instance to P and the certificate to P.cert
    #[arg(long, value_name = "P")]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("check").required(true).args(["solution", "cert"]))]
struct VerifyArgs {
    input: PathBuf,
    #[arg(long)]
    solution: Option<PathBuf>,
    #[arg(long)]
    cert: Option<PathBuf>,
    #[command(flatten)]
    cap: CapArg,
    #[arg(long, value_name = "P")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    input: PathBuf,
    #[command(flatten)]
    cap: CapArg,
    #[arg(long, value_name = "P")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value = "general")]
    class: String,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 25)]
    max_edges: usize,
    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("verification: {0}")]
    Verification(String),
    #[error("no-method: {0}")]
    NoMethod(String),
    #[error("input: {0}")]
    Input(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::NoMethod(_) => 2,
            CliError::Input(_) => 3,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::UnknownColor(_) | SolveError::ThreadPool(_) => CliError::Input(e.to_string()),
            _ => CliError::NoMethod(e.to_string()),
        }
    }
}

impl From<GadgetError> for CliError {
    fn from(e: GadgetError) -> Self {
        match e {
            GadgetError::Solve(s) => s.into(),
            GadgetError::ClaimFailed { .. }
            | GadgetError::BackMap(_)
            | GadgetError::Mismatch { .. }
            | GadgetError::KindMismatch { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ColoredGraph> {
    parse_instance(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn comment(report: &Report) -> String {
    report.to_string().lines().map(|l| format!("c {l}\n")).collect()
}

/// Prints `body` followed by the report as comment lines, or writes `body`
/// to `out` and the report next to it.
fn emit(out: Option<&Path>, body: &str, report: &Report, suffix: &str) -> Result<()> {
    match out {
        Some(p) => {
            write(p, body)?;
            write(&with_suffix(p, suffix), &report.to_string())
        }
        None => {
            print!("{body}{}", comment(report));
            Ok(())
        }
    }
}

fn emit_report(out: Option<&Path>, report: &Report) -> Result<()> {
    match out {
        Some(p) => write(p, &report.to_string()),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}

fn cmd_solve(a: &SolveArgs) -> Result<()> {
    let opts = SolveOptions { oracle_cap: a.cap.resolve(), threads: a.threads as usize, ..SolveOptions::default() };
    let g = load(&a.input)?;
    let none = BannedColorSet::new();
    let r: SolveResult = match a.method {
        MethodArg::Auto => solve_auto(&g, &opts)?,
        MethodArg::Brute => oracle_mrbm(&g, &none, &opts)?,
        MethodArg::P4 => solve_star_triangle(&g, &none)?,
        MethodArg::P5fpt => solve_p5_forest_fpt(&g, &opts)?,
        MethodArg::P7tree => solve_p7_tree(&g, &opts)?,
        MethodArg::P7forest => solve_p7_forest(&g, &opts)?,
    };
    emit(a.out.as_deref(), &serialize_solution(&g, &r.matching), &r.to_report(), ".report")
}

fn cmd_oracle(a: &OracleArgs) -> Result<()> {
    let opts = SolveOptions { oracle_cap: a.cap.resolve(), ..SolveOptions::default() };
    let g = load(&a.input)?;
    let r = oracle_mrbm(&g, &BannedColorSet::new(), &opts)?;
    emit(a.out.as_deref(), &serialize_solution(&g, &r.matching), &r.to_report(), ".report")
}

fn cmd_approx(a: &ApproxArgs) -> Result<()> {
    let cap = a.cap.resolve();
    let g = load(&a.input)?;
    let r = approx_mrbm(&g, &LocalSearchConfig { swap_size: a.swap, max_passes: None });
    let mut report = r.to_report();
    if a.compare_oracle {
        let opts = SolveOptions { oracle_cap: cap, ..SolveOptions::default() };
        match oracle_mrbm(&g, &BannedColorSet::new(), &opts) {
            Ok(o) => {
                report.push("oracle_optimum", o.size());
                report.push("ratio_to_oracle", format!("{}/{}", r.matching.len(), o.size()));
            }
            Err(e) => report.push("oracle_optimum", format!("unavailable ({e})")),
        }
    }
    emit(a.out.as_deref(), &serialize_solution(&g, &r.matching), &report, ".report")
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<()> {
    let g = load(&a.input)?;
    emit_report(a.out.as_deref(), &analyze(&g).to_report())
}

fn cmd_gen(a: &GenArgs) -> Result<()> {
    let target: Target = a.target.parse()?;
    let gadget: Gadget = match (&a.named, &a.input) {
        (Some(name), _) => build_from_named(name, target)?.1,
        (None, Some(path)) => {
            let g = load(path)?;
            let input = match target.input_stage() {
                None => StageInput::Cubic(CubicSource::from_colored(&g)?),
                Some(_) => StageInput::Colored(g),
            };
            let mut gadget = apply_stage(target, &input)?;
            gadget.certificate.source = path.display().to_string();
            gadget
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    emit(a.out.as_deref(), &serialize_instance(&gadget.graph), &gadget.certificate.to_report(), ".cert")
}

/// Rebuilds the certificate's source: a catalog chain, or else a file path
/// taken as given or relative to the certificate.
fn certificate_source(cert: &GadgetCertificate, cert_path: &Path) -> Result<StageInput> {
    if let Some(r) = resolve_chain(&cert.source) {
        return Ok(r?);
    }
    let given = PathBuf::from(&cert.source);
    let path = if given.exists() || given.is_absolute() {
        given
    } else {
        cert_path.parent().unwrap_or(Path::new("")).join(&given)
    };
    let g = load(&path)?;
    Ok(match cert.source_kind {
        SourceKind::CubicMis => StageInput::Cubic(CubicSource::from_colored(&g)?),
        _ => StageInput::Colored(g),
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<()> {
    let g = load(&a.input)?;
    let mut report = Report::new();
    if let Some(path) = &a.solution {
        let ids = parse_solution(&g, &read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let verdict = validate_solution(&g, &ids).map_err(|e| CliError::Input(e.to_string()))?;
        report.push("size", ids.len());
        match verdict {
            Verdict::Ok => report.push("verdict", "ok"),
            Verdict::Violations(vs) => {
                report.push("verdict", "violations");
                let mut listing = String::new();
                for v in &vs {
                    let (x, y) = (g.edge(v.first), g.edge(v.second));
                    report.push("violation", format!("{} {}-{} {}-{}", v.kind, x.u + 1, x.v + 1, y.u + 1, y.v + 1));
                    write!(
                        listing,
                        "{}{} on edges {}-{} and {}-{}",
                        if listing.is_empty() { "" } else { "; " },
                        v.kind,
                        x.u + 1,
                        x.v + 1,
                        y.u + 1,
                        y.v + 1
                    )
                    .unwrap();
                }
                emit_report(a.out.as_deref(), &report)?;
                return Err(CliError::Verification(listing));
            }
        }
    }
    if let Some(path) = &a.cert {
        let text =
            String::from_utf8(read(path)?).map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))?;
        let cert = GadgetCertificate::parse(&text)?;
        let source = certificate_source(&cert, path)?;
        let opts = SolveOptions { oracle_cap: a.cap.resolve(), ..SolveOptions::default() };
        let v = verify_certificate(&source, &g, &cert, &opts)?;
        report.push("certificate", "ok");
        report.push("source_optimum", v.source_opt);
        report.push("output_optimum", v.output_opt);
        report.push("offset", cert.offset);
    }
    emit_report(a.out.as_deref(), &report)
}

fn cmd_corpus(a: &CorpusArgs) -> Result<()> {
    let class: Class = a.class.parse().map_err(CliError::Input)?;
    fs::create_dir_all(&a.out).map_err(|e| CliError::Input(format!("{}: {e}", a.out.display())))?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    for i in 0..a.count {
        let g = random_instance(&mut rng, class, a.max_edges);
        let path = a.out.join(format!("{}-{i:04}.cg", class.as_str()));
        write(&path, &serialize_instance(&g))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Approx(a) => cmd_approx(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Corpus(a) => cmd_corpus(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            eprintln!("error: usage: {}", e.kind());
            return ExitCode::from(3);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
