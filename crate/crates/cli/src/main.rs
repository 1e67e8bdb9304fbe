//! `circtree`: spanning-tree counts, decompositions and growth constants of
//! circulant graphs `C_{βn}(s…, α₁n, …)`.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 invalid spec or
//! arguments, 3 methods disagree, 4 precision or convergence failure,
//! 5 a count is not of the form `c n a²`.

mod output;

use std::fs;
use std::process::ExitCode;

use circtree::arith::{decompose_tau, Decomposition};
use circtree::graph::{build_laplacian, tau_bruteforce};
use circtree::mahler::{asymptotic_constant, convergence_report, MahlerReport};
use circtree::treecount::{tau_corollary1, tau_corollary2, tau_eigenproduct, tau_theorem1};
use circtree::verify::{replay_examples, run_all, Grid};
use circtree::{validate_spec, CirculantSpec, Error, Method, Options, TauResult};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Format, Rendered};

#[derive(Parser, Debug)]
#[command(name = "circtree", version, about = "Spanning trees of circulant graphs with non-fixed jumps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count spanning trees.
    Tau(TauArgs),
    /// Write τ as c·n·a(n)².
    Decompose(TauArgs),
    /// Mahler measures, the growth constant A and the thermodynamic limit.
    Mahler(MahlerArgs),
    /// Sweep the built-in grid through every cross-check.
    Verify(VerifyArgs),
    /// Print the Laplacian matrix as JSON.
    Laplacian(LaplacianArgs),
}

#[derive(Args, Debug)]
struct LaplacianArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Multiplier β of the order βn.
    #[arg(long)]
    beta: i64,
    /// Fixed jumps, comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    s: Vec<i64>,
    /// Coefficients of the jumps α·n, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    alpha: Vec<i64>,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Largest working precision in bits.
    #[arg(long, default_value_t = 1 << 16)]
    precision_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest order handled by the determinant.
    #[arg(long, default_value_t = 4096)]
    bruteforce_cap: u64,
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("ns").required(true).args(["n", "n_range"])))]
struct TauArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    /// Inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<(i64, i64)>,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct MahlerArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Member of the family used for validation; the smallest valid n by default.
    #[arg(long)]
    n: Option<i64>,
    /// Also tabulate τ(n) against the asymptote for n in `a..b`.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<(i64, i64)>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Replay the seven worked examples instead of the grid.
    #[arg(long)]
    examples: bool,
    /// Largest n for the example replay.
    #[arg(long, default_value_t = 8)]
    n_max: u64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Brute,
    Eigen,
    Chebyshev,
    All,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::EmptyJumps
        | Error::NonPositive(_)
        | Error::NotStrictlyIncreasing(_)
        | Error::JumpOutOfRange { .. }
        | Error::Disconnected { .. }
        | Error::InvalidParameter(_)
        | Error::TooLarge { .. }
        | Error::PreconditionFailed(_) => 2,
        Error::PrecisionExhausted { .. } | Error::NoIntegerEnclosed { .. } | Error::NonConvergent { .. } => 4,
        Error::NotPerfectSquare { .. } | Error::UndefinedSquarefree => 5,
        Error::ConstantPolynomial | Error::LemmaViolation(_) => 1,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

fn options(c: &CommonArgs) -> Options {
    let mut o = Options::default();
    o.max_bits = c.precision_max.max(64);
    o.start_bits = o.start_bits.min(o.max_bits);
    o.brute_force_cap = c.bruteforce_cap;
    o
}

fn ns(n: Option<i64>, range: Option<(i64, i64)>) -> Vec<i64> {
    match (n, range) {
        (_, Some((a, b))) => (a..=b).collect(),
        (Some(n), None) => vec![n],
        (None, None) => vec![],
    }
}

fn spec_at(s: &SpecArgs, n: i64) -> Result<CirculantSpec, Failure> {
    validate_spec(s.beta, &s.s, &s.alpha, n).map_err(Failure::from)
}

/// Counts of one spec by the selected methods.
pub struct TauRun {
    pub spec: CirculantSpec,
    pub results: Vec<(Method, Result<TauResult, Error>)>,
    pub agree: bool,
}

impl TauRun {
    pub fn consensus(&self) -> Option<&TauResult> {
        if !self.agree {
            return None;
        }
        self.results.iter().find_map(|(_, r)| r.as_ref().ok())
    }
}

fn run_tau(spec: &CirculantSpec, method: MethodArg, opts: &Options) -> TauRun {
    let mut results = vec![];
    let brute = matches!(method, MethodArg::Brute | MethodArg::All);
    if brute && (spec.m <= opts.brute_force_cap || method == MethodArg::Brute) {
        results.push((Method::BruteForce, tau_bruteforce(spec, opts)));
    }
    if matches!(method, MethodArg::Eigen | MethodArg::All) {
        results.push((Method::EigenProduct, tau_eigenproduct(spec, opts)));
    }
    if matches!(method, MethodArg::Chebyshev | MethodArg::All) {
        results.push((Method::Theorem1, tau_theorem1(spec, opts)));
    }
    if method == MethodArg::All {
        if spec.s_jumps == [1] {
            results.push((Method::Corollary1, tau_corollary1(spec, opts)));
        }
        if spec.s_jumps == [1, 2] {
            results.push((Method::Corollary2, tau_corollary2(spec, opts)));
        }
    }
    let mut values = results.iter().filter_map(|(_, r)| r.as_ref().ok().map(|t| &t.value));
    let agree = match values.next() {
        Some(first) => values.all(|v| v == first) && results.iter().all(|(_, r)| r.is_ok()),
        None => false,
    };
    TauRun { spec: spec.clone(), results, agree }
}

fn first_error(run: &TauRun) -> Option<&Error> {
    run.results.iter().find_map(|(_, r)| r.as_ref().err())
}

fn cmd_tau(args: &TauArgs) -> Result<Rendered, Failure> {
    let opts = options(&args.common);
    let specs = ns(args.n, args.n_range)
        .into_iter()
        .map(|n| spec_at(&args.spec, n))
        .collect::<Result<Vec<_>, _>>()?;
    let runs: Vec<TauRun> = opts.exec.map(&specs, |sp| run_tau(sp, args.method, &opts));
    let rendered = output::tau(&runs, args.common.format);
    for run in &runs {
        if let Some(e) = first_error(run) {
            return Err(Failure { code: exit_code(e), message: format!("{}: {e}", run.spec) }.with_output(rendered));
        }
        if !run.agree {
            return Err(Failure { code: 3, message: format!("{}: methods disagree", run.spec) }.with_output(rendered));
        }
    }
    Ok(rendered)
}

impl Failure {
    /// Prints what was computed before reporting the failure.
    fn with_output(self, rendered: Rendered) -> Failure {
        print!("{}", rendered.text);
        self
    }
}

fn cmd_decompose(args: &TauArgs) -> Result<Rendered, Failure> {
    let opts = options(&args.common);
    let mut rows: Vec<(CirculantSpec, TauResult, Decomposition)> = vec![];
    for n in ns(args.n, args.n_range) {
        let spec = spec_at(&args.spec, n)?;
        let run = run_tau(&spec, args.method, &opts);
        if let Some(e) = first_error(&run) {
            return Err(Failure { code: exit_code(e), message: format!("{spec}: {e}") });
        }
        let tau = run
            .consensus()
            .cloned()
            .ok_or_else(|| Failure { code: 3, message: format!("{spec}: methods disagree") })?;
        let d = decompose_tau(&spec, &tau)?;
        rows.push((spec, tau, d));
    }
    Ok(output::decompositions(&rows, args.common.format))
}

fn smallest_valid(s: &SpecArgs) -> Result<CirculantSpec, Failure> {
    let mut last = None;
    for n in 1..=64 {
        match validate_spec(s.beta, &s.s, &s.alpha, n) {
            Ok(sp) => return Ok(sp),
            Err(e @ (Error::JumpOutOfRange { .. } | Error::Disconnected { .. })) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    Err(last.unwrap_or(Error::EmptyJumps).into())
}

fn cmd_mahler(args: &MahlerArgs) -> Result<Rendered, Failure> {
    let opts = options(&args.common);
    let spec = match args.n {
        Some(n) => spec_at(&args.spec, n)?,
        None => smallest_valid(&args.spec)?,
    };
    let report: MahlerReport = asymptotic_constant(&spec, &opts)?;
    let table = match args.n_range {
        Some((a, b)) => {
            let list: Vec<u64> = (a.max(1)..=b.max(1)).map(|n| n as u64).collect();
            Some(convergence_report(&spec, &list, &opts)?)
        }
        None => None,
    };
    Ok(output::mahler(&spec, &report, table.as_deref(), args.common.format))
}

fn cmd_verify(args: &VerifyArgs) -> Result<Rendered, Failure> {
    let opts = options(&args.common);
    if args.examples {
        let reports = replay_examples(args.n_max, &opts);
        let rendered = output::examples(&reports, args.common.format);
        if let Some(bad) = reports.iter().find(|r| !r.passed) {
            return Err(Failure { code: 1, message: format!("example {} failed", bad.index) }.with_output(rendered));
        }
        return Ok(rendered);
    }
    let report = run_all(&Grid::desk(), &opts);
    let rendered = output::verify(&report, args.common.format);
    for s in &report.suites {
        if !s.ok() {
            let code = match s.name.as_str() {
                "oracle" => 3,
                "theorem2" => 5,
                _ => 1,
            };
            return Err(Failure { code, message: format!("suite {} had {} failures", s.name, s.failed) }.with_output(rendered));
        }
    }
    Ok(rendered)
}

fn emit(rendered: &Rendered, out: &Option<String>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, &rendered.text).map_err(|e| Failure { code: 1, message: format!("{path}: {e}") }),
        None => {
            print!("{}", rendered.text);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Tau(a) => (cmd_tau(a), &a.common.out),
        Command::Decompose(a) => (cmd_decompose(a), &a.common.out),
        Command::Mahler(a) => (cmd_mahler(a), &a.common.out),
        Command::Verify(a) => (cmd_verify(a), &a.common.out),
        Command::Laplacian(a) => (
            spec_at(&a.spec, a.n).map(|sp| output::laplacian(&sp, &build_laplacian(&sp))),
            &a.out,
        ),
    };
    match result.and_then(|r| emit(&r, out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
