//! Command-line frontend.
//!
//! [`run`] takes the argument list and returns the exit code together with
//! everything that would be written to stdout and stderr, so the binary is a
//! thin wrapper and the whole surface can be tested in-process.
//!
//! Exit codes: `0` success, `1` a mathematical check failed, `2` usage or
//! parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::binomial::{self, BinomialError, BinomialRep};
use crate::engine::{
    self, build_certificate, run_lemma_suite, EngineError, LemmaId, Parallelism, SuiteRange,
    DEFAULT_BUDGET,
};
use crate::monomial::{lexsegment, MonomialError, MonomialSet};

#[derive(Debug, Parser)]
#[command(
    name = "macaulay",
    version,
    about = "Macaulay representations, monomial shadows and Gotzmann persistence"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    /// Largest number of subsets enumerated for one (n, d, size) cell.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true, value_parser = positive_u64)]
    pub budget: u64,
    /// Seed for sampled sweeps.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads for sweeps; omit for a single thread.
    #[arg(long, global = true, value_parser = positive_usize)]
    pub parallel: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Macaulay representation of H with respect to N.
    Rep { h: BigUint, n: u32 },
    /// Apply a growth operator to H at order N.
    Op { op: OpKind, h: BigUint, n: u32 },
    /// Operations on monomial-set files.
    #[command(subcommand)]
    Set(SetCommand),
    /// Run a lemma sweep.
    Lemma(LemmaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpKind {
    Up,
    Down,
    Ddown,
    Rem,
}

#[derive(Debug, Subcommand)]
pub enum SetCommand {
    /// Print the shadow MV.
    Shadow { file: PathBuf },
    /// Print the lexsegment of the first A monomials of degree D in N variables.
    Lex { n: usize, d: u32, a: usize },
    /// Check |MV| = |V|^<n-1>.
    Gotzmann { file: PathBuf },
    /// Print the shadow size chain and check that minimal growth persists.
    Persist {
        #[arg(long, default_value_t = 5, value_parser = positive_usize)]
        steps: usize,
        file: PathBuf,
    },
    /// Build and validate a persistence certificate.
    Certify {
        /// One node per line instead of the indented tree.
        #[arg(long)]
        machine: bool,
        file: PathBuf,
    },
    /// Print K_i(V) and D_i(V).
    Split { i: usize, file: PathBuf },
}

#[derive(Debug, Args)]
pub struct LemmaArgs {
    /// L1_2, L1_3, L1_4, L1_5, L1_6, L1_7, L2_1, L2_2, claim_sharp,
    /// macaulay_1, persistence or certificate.
    pub id: LemmaId,
    #[arg(long)]
    pub max_h: Option<u64>,
    #[arg(long)]
    pub max_n: Option<u32>,
    #[arg(long)]
    pub max_a: Option<u64>,
    #[arg(long)]
    pub max_alpha: Option<u64>,
    #[arg(long)]
    pub exhaustive_n: Option<u32>,
    #[arg(long)]
    pub exhaustive_alpha: Option<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Restrict set sweeps to the single cell (N, D).
    #[arg(long, requires = "d")]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub d: Option<u32>,
    #[arg(long, value_parser = positive_usize)]
    pub steps: Option<usize>,
}

fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    positive_u64(s).map(|v| v as usize)
}

/// Everything one invocation produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn check(passed: bool, stdout: String) -> Self {
        Outcome {
            code: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }

    fn failed(stdout: String, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code: 1,
            stdout,
            stderr,
        }
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Rep { h, n } => cmd_rep(cli.format, h, *n),
        Command::Op { op, h, n } => cmd_op(cli.format, *op, h, *n),
        Command::Set(action) => cmd_set(cli.format, action),
        Command::Lemma(args) => cmd_lemma(cli, args),
    }
}

fn render(format: Format, plain: String, value: Value) -> String {
    match format {
        Format::Plain => plain,
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&value).expect("json")),
    }
}

fn cmd_rep(format: Format, h: &BigUint, n: u32) -> Outcome {
    let rep = match BinomialRep::of(h, n) {
        Ok(rep) => rep,
        Err(e) => return Outcome::usage(format!("error: {e}")),
    };
    let terms: Vec<Value> = rep
        .terms()
        .iter()
        .map(|t| json!({ "top": t.top.to_string(), "bottom": t.bottom }))
        .collect();
    Outcome::ok(render(
        format,
        format!("{rep} = {}\n", rep.value()),
        json!({ "terms": terms, "value": rep.value().to_string() }),
    ))
}

fn cmd_op(format: Format, op: OpKind, h: &BigUint, n: u32) -> Outcome {
    let result: Result<(String, Value), BinomialError> = match op {
        OpKind::Up => {
            binomial::up(h, n).map(|v| (format!("{v}\n"), json!({ "value": v.to_string() })))
        }
        OpKind::Down => {
            binomial::down(h, n).map(|v| (format!("{v}\n"), json!({ "value": v.to_string() })))
        }
        OpKind::Ddown => {
            binomial::ddown(h, n).map(|v| (format!("{v}\n"), json!({ "value": v.to_string() })))
        }
        OpKind::Rem => binomial::remainder(h, n).map(|r| {
            (
                format!("alpha={} rem={}\n", r.alpha, r.rem),
                json!({ "alpha": r.alpha.to_string(), "rem": r.rem.to_string() }),
            )
        }),
    };
    match result {
        Ok((plain, value)) => Outcome::ok(render(format, plain, value)),
        Err(e) => Outcome::usage(format!("error: {e}")),
    }
}

fn read_set(path: &PathBuf) -> Result<MonomialSet, Outcome> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map(|_| buf)
            .map_err(|e| Outcome::usage(format!("error: reading stdin: {e}")))?
    } else {
        fs::read_to_string(path)
            .map_err(|e| Outcome::usage(format!("error: {}: {e}", path.display())))?
    };
    MonomialSet::parse(&text).map_err(|e| Outcome::usage(format!("error: {}: {e}", path.display())))
}

fn set_json(v: &MonomialSet) -> Value {
    let members: Vec<String> = v.iter().map(|m| m.to_string()).collect();
    json!({ "n": v.n_vars(), "d": v.degree(), "members": members })
}

fn cmd_set(format: Format, action: &SetCommand) -> Outcome {
    let result = match action {
        SetCommand::Shadow { file } => read_set(file).map(|v| {
            let shadow = v.shadow();
            Outcome::ok(render(format, shadow.to_string(), set_json(&shadow)))
        }),
        SetCommand::Lex { n, d, a } => Ok(set_lex(format, *n, *d, *a)),
        SetCommand::Gotzmann { file } => read_set(file).map(|v| set_gotzmann(format, &v)),
        SetCommand::Persist { steps, file } => {
            read_set(file).map(|v| set_persist(format, &v, *steps))
        }
        SetCommand::Certify { machine, file } => {
            read_set(file).map(|v| set_certify(format, &v, *machine))
        }
        SetCommand::Split { i, file } => read_set(file).map(|v| set_split(format, &v, *i)),
    };
    result.unwrap_or_else(|failure| failure)
}

fn set_lex(format: Format, n: usize, d: u32, a: usize) -> Outcome {
    if n == 0 {
        return Outcome::usage("error: n must be positive");
    }
    match lexsegment(n, d, a) {
        Ok(v) => Outcome::ok(render(format, v.to_string(), set_json(&v))),
        Err(e) => Outcome::usage(format!("error: {e}")),
    }
}

fn set_gotzmann(format: Format, v: &MonomialSet) -> Outcome {
    let shadow = v.shadow().len();
    let bound = engine::shadow_bound(v);
    let passed = BigUint::from(shadow) == bound;
    let plain = if passed {
        format!("PASS ({shadow} = {bound})\n")
    } else {
        format!("FAIL ({shadow} ≠ {bound})\n")
    };
    Outcome::check(
        passed,
        render(
            format,
            plain,
            json!({ "passed": passed, "shadow": shadow, "bound": bound.to_string() }),
        ),
    )
}

fn set_persist(format: Format, v: &MonomialSet, steps: usize) -> Outcome {
    let chain = engine::persistence_chain(v, steps);
    let passed = engine::is_gotzmann(v) && chain.holds(v.n_vars());
    let sizes: Vec<String> = chain.sizes.iter().map(|s| s.to_string()).collect();
    let plain = format!(
        "chain {}\n{}\n",
        sizes.join(" "),
        if passed { "PASS" } else { "FAIL" }
    );
    Outcome::check(
        passed,
        render(
            format,
            plain,
            json!({ "chain": chain.sizes, "passed": passed }),
        ),
    )
}

fn set_certify(format: Format, v: &MonomialSet, machine: bool) -> Outcome {
    let cert = match build_certificate(v) {
        Ok(cert) => cert,
        Err(
            e @ (EngineError::Monomial(MonomialError::Parse { .. }) | EngineError::BadRange(_)),
        ) => return Outcome::usage(format!("error: {e}")),
        Err(e) => return Outcome::failed(String::new(), format!("FAIL: {e}")),
    };
    if let Err(mismatch) = engine::check_certificate(&cert, v) {
        return Outcome::failed(String::new(), format!("FAIL: {mismatch}"));
    }
    let body = if machine {
        cert.to_machine()
    } else {
        cert.to_tree()
    };
    Outcome::ok(render(format, body.clone(), json!({ "certificate": body })))
}

fn set_split(format: Format, v: &MonomialSet, i: usize) -> Outcome {
    let split = match v.split(i) {
        Ok(split) => split,
        Err(e) => return Outcome::usage(format!("error: {e}")),
    };
    let plain = format!(
        "i={} gcd={}\nkept:\n{}dropped:\n{}",
        split.index, split.gcd, split.kept, split.dropped
    );
    Outcome::ok(render(
        format,
        plain,
        json!({
            "i": split.index,
            "gcd": split.gcd.to_string(),
            "kept": set_json(&split.kept),
            "dropped": set_json(&split.dropped),
        }),
    ))
}

fn cmd_lemma(cli: &Cli, args: &LemmaArgs) -> Outcome {
    let mut range = SuiteRange::defaults(args.id);
    range.seed = cli.seed;
    range.budget = cli.budget;
    if let Some(v) = args.max_h {
        range.max_h = v;
    }
    if let Some(v) = args.max_n {
        range.max_n = v;
    }
    if let Some(v) = args.max_a {
        range.max_a = v;
    }
    if let Some(v) = args.max_alpha {
        range.max_alpha = v;
    }
    if let Some(v) = args.exhaustive_n {
        range.exhaustive_max_n = v;
    }
    if let Some(v) = args.exhaustive_alpha {
        range.exhaustive_max_alpha = v;
    }
    if let Some(v) = args.samples {
        range.samples = v;
    }
    if let (Some(n), Some(d)) = (args.n, args.d) {
        range.cells = vec![(n, d)];
    }
    if let Some(v) = args.steps {
        range.steps = v;
    }
    let par = cli
        .parallel
        .map_or(Parallelism::sequential(), Parallelism::threads);
    match run_lemma_suite(args.id, &range, par) {
        Ok(report) => {
            let passed = report.passed();
            let value = serde_json::to_value(&report).expect("report serializes");
            Outcome::check(passed, render(cli.format, report.to_string(), value))
        }
        Err(e) => Outcome::usage(format!("error: {e}")),
    }
}
