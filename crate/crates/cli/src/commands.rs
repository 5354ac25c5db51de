//! Subcommands and their exit codes.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cyclepack::{
    build_packing_with, check_decomposition_feasibility, check_packing_feasibility, decompose,
    validate_packing, Error, Instance, Packing, SearchConfig, SearchOutcome, SearchProvider,
    Verdict,
};

use crate::formats::{
    parse_lengths, parse_set, read_json, to_json_line, write_text, InstanceFile, PackingFile,
    VerdictDoc,
};
use crate::sweep::{sweep, write_csv, Summary, SweepConfig};

pub const EXIT_OK: i32 = 0;
/// Infeasible instance, invalid packing, or a sweep disagreement.
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_SWEEP_BUDGET: i32 = 4;
/// Predicate and search disagree, or a construction failed internally.
pub const EXIT_DEFECT: i32 = 5;

pub const BUDGET_ENV: &str = "CYCLEPACK_NODE_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "cyclepack", version, about = "Cycle packings of complete multigraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub lambda: u32,
    #[arg(long)]
    pub v: usize,
    /// Comma-separated cycle lengths, in any order.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub lengths: String,
}

impl InstanceArgs {
    fn instance(&self) -> Result<Instance, String> {
        let lengths = parse_lengths(&self.lengths)?;
        Instance::from_unsorted(self.lambda, self.v, lengths).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Args)]
pub struct BudgetArg {
    /// Search node budget; unlimited when absent.
    #[arg(long, env = BUDGET_ENV)]
    pub budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a packing with the given lengths exists.
    Check(InstanceArgs),
    /// Construct a packing with the given lengths.
    Build {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Packing file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the replayable construction trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Check a packing file against an instance file.
    Verify { instance: PathBuf, packing: PathBuf },
    /// Search for an exact decomposition of lambda K_v (or lambda K_v - I).
    Decompose {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Remove the 1-factor {0,1}, {2,3}, ... from the host first.
        #[arg(long)]
        one_factor: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Compare predicate, search and constructor over whole domains.
    Sweep {
        /// Values of lambda, e.g. `1,2` or `1..3`.
        #[arg(long)]
        lambda: String,
        /// Values of v, e.g. `2..5`.
        #[arg(long)]
        v: String,
        /// Run the exhaustive packing search on every row.
        #[arg(long)]
        oracle: bool,
        /// Run the constructor on every feasible row.
        #[arg(long)]
        construct: bool,
        /// Sample this many lists per (lambda, v) instead of all of them.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV report; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

/// Where a command prints.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

macro_rules! fail {
    ($io:expr, $code:expr, $($arg:tt)*) => {{
        let _ = writeln!($io.err, $($arg)*);
        return $code;
    }};
}

fn emit(io: &mut Io<'_>, path: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => write_text(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => io.out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

pub fn run(cli: Cli, io: &mut Io<'_>) -> i32 {
    match cli.command {
        Command::Check(args) => check(&args, io),
        Command::Build {
            instance,
            out,
            trace,
            budget,
        } => build(&instance, out.as_ref(), trace.as_ref(), budget.budget, io),
        Command::Verify { instance, packing } => verify(&instance, &packing, io),
        Command::Decompose {
            instance,
            one_factor,
            out,
            budget,
        } => decompose_cmd(&instance, one_factor, out.as_ref(), budget.budget, io),
        Command::Sweep {
            lambda,
            v,
            oracle,
            construct,
            sample,
            seed,
            out,
            budget,
        } => {
            let cfg = SweepConfig {
                oracle,
                construct,
                node_budget: budget.budget,
            };
            sweep_cmd(&lambda, &v, cfg, sample.map(|n| (n, seed)), out.as_ref(), io)
        }
    }
}

fn check(args: &InstanceArgs, io: &mut Io<'_>) -> i32 {
    let instance = match args.instance() {
        Ok(i) => i,
        Err(e) => fail!(io, EXIT_USAGE, "error: {e}"),
    };
    let verdict = check_packing_feasibility(&instance);
    if let Err(e) = emit(io, None, &to_json_line(&VerdictDoc::new(&instance, &verdict))) {
        fail!(io, EXIT_USAGE, "error: {e}");
    }
    if verdict.feasible() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn build(
    args: &InstanceArgs,
    out: Option<&PathBuf>,
    trace_path: Option<&PathBuf>,
    budget: Option<u64>,
    io: &mut Io<'_>,
) -> i32 {
    let instance = match args.instance() {
        Ok(i) => i,
        Err(e) => fail!(io, EXIT_USAGE, "error: {e}"),
    };
    let provider = SearchProvider {
        cfg: SearchConfig::with_budget(budget),
    };
    let (packing, trace) = match build_packing_with(&instance, &provider) {
        Ok(r) => r,
        Err(Error::InfeasibleInstance) => {
            let verdict = check_packing_feasibility(&instance);
            fail!(io, EXIT_NEGATIVE, "infeasible: {}", to_json_line(&VerdictDoc::new(&instance, &verdict)).trim_end())
        }
        Err(Error::ProviderFailure(msg)) => fail!(
            io,
            EXIT_BUDGET,
            "error: {msg} (budget {}; raise --budget or {BUDGET_ENV})",
            budget.map_or("unlimited".to_string(), |b| b.to_string())
        ),
        Err(e) => fail!(io, EXIT_DEFECT, "internal error: {e}"),
    };
    if let Err(e) = emit(io, out, &to_json_line(&PackingFile::from_packing(&packing))) {
        fail!(io, EXIT_USAGE, "error: {e}");
    }
    if let Some(path) = trace_path {
        if let Err(e) = write_text(path, &trace.to_string()) {
            fail!(io, EXIT_USAGE, "error: {}: {e}", path.display());
        }
    }
    EXIT_OK
}

fn verify(instance_path: &PathBuf, packing_path: &PathBuf, io: &mut Io<'_>) -> i32 {
    let instance = match read_json::<InstanceFile>(instance_path).and_then(|f| f.to_instance()) {
        Ok(i) => i,
        Err(e) => fail!(io, EXIT_USAGE, "error: {}: {e}", instance_path.display()),
    };
    let file = match read_json::<PackingFile>(packing_path) {
        Ok(f) => f,
        Err(e) => fail!(io, EXIT_USAGE, "error: {}: {e}", packing_path.display()),
    };
    if (file.lambda, file.v) != (instance.lambda(), instance.v()) {
        fail!(
            io,
            EXIT_NEGATIVE,
            "invalid: packing is for lambda={} v={}, instance has lambda={} v={}",
            file.lambda,
            file.v,
            instance.lambda(),
            instance.v()
        );
    }
    let cycles = match file.parse_cycles() {
        Ok(c) => c,
        Err(e) => fail!(io, EXIT_NEGATIVE, "invalid: {e}"),
    };
    if let Verdict::Invalid(why) = validate_packing(&instance, &cycles, true) {
        fail!(io, EXIT_NEGATIVE, "invalid: {why:?}");
    }
    let packing = Packing::new(instance.lambda(), instance.v(), cycles).expect("validated");
    if !file.leave_matches(&packing) {
        fail!(io, EXIT_NEGATIVE, "invalid: recorded leave does not match the cycles");
    }
    let _ = writeln!(io.out, "valid");
    EXIT_OK
}

fn decompose_cmd(
    args: &InstanceArgs,
    one_factor: bool,
    out: Option<&PathBuf>,
    budget: Option<u64>,
    io: &mut Io<'_>,
) -> i32 {
    let instance = match args.instance() {
        Ok(i) => i,
        Err(e) => fail!(io, EXIT_USAGE, "error: {e}"),
    };
    let predicate = match check_decomposition_feasibility(&instance, one_factor) {
        Ok(b) => b,
        Err(e) => fail!(io, EXIT_USAGE, "error: {e}"),
    };
    let outcome = match decompose(&instance, one_factor, SearchConfig::with_budget(budget)) {
        Ok(o) => o,
        Err(e) => fail!(io, EXIT_USAGE, "error: {e}"),
    };
    match (outcome, predicate) {
        (SearchOutcome::Found(d), true) => {
            let p = Packing::new(instance.lambda(), instance.v(), d.cycles).expect("search output");
            if let Err(e) = emit(io, out, &to_json_line(&PackingFile::from_packing(&p))) {
                fail!(io, EXIT_USAGE, "error: {e}");
            }
            EXIT_OK
        }
        (SearchOutcome::NotFound, false) => fail!(io, EXIT_NEGATIVE, "no decomposition exists"),
        (SearchOutcome::BudgetExceeded, _) => fail!(
            io,
            EXIT_BUDGET,
            "error: node budget exceeded; raise --budget or {BUDGET_ENV}"
        ),
        (SearchOutcome::Found(_), false) => fail!(
            io,
            EXIT_DEFECT,
            "defect: search found a decomposition the predicate rules out"
        ),
        (SearchOutcome::NotFound, true) => fail!(
            io,
            EXIT_DEFECT,
            "defect: predicate holds but the exhaustive search found nothing"
        ),
    }
}

fn sweep_cmd(
    lambdas: &str,
    vs: &str,
    cfg: SweepConfig,
    sample: Option<(usize, u64)>,
    out: Option<&PathBuf>,
    io: &mut Io<'_>,
) -> i32 {
    let lambdas: Vec<u32> = match parse_set(lambdas) {
        Ok(ls) if ls.iter().all(|&l| l >= 1 && l <= u32::MAX as usize) => {
            ls.into_iter().map(|l| l as u32).collect()
        }
        Ok(_) => fail!(io, EXIT_USAGE, "error: lambda values must be at least 1"),
        Err(e) => fail!(io, EXIT_USAGE, "error: {e}"),
    };
    let vs = match parse_set(vs) {
        Ok(vs) if vs.iter().all(|&v| v >= 1) => vs,
        Ok(_) => fail!(io, EXIT_USAGE, "error: v values must be at least 1"),
        Err(e) => fail!(io, EXIT_USAGE, "error: {e}"),
    };
    let rows = sweep(&lambdas, &vs, sample, cfg);
    let mut csv = Vec::new();
    write_csv(&rows, &mut csv).expect("writing to memory");
    if let Err(e) = emit(io, out, &String::from_utf8(csv).expect("csv is utf-8")) {
        fail!(io, EXIT_USAGE, "error: {e}");
    }
    let s = Summary::of(&rows);
    let _ = writeln!(
        io.err,
        "rows={} feasible={} disagreements={} budget={}",
        s.rows, s.feasible, s.disagreements, s.budget_rows
    );
    s.exit_code()
}
