mod format;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hhh_core::braid::{self, parse_braid, BraidWord};
use hhh_core::homology::{hhh, TriGradedTable};
use hhh_core::invariant::{superpolynomial, Superpolynomial};
use hhh_core::verify::{run_suite, SuiteConfig, SuiteReport, SUITES};
use hhh_core::{Error, Rational, F10007, F32003, F65521};

/// Reduced triply graded link homology of braid closures.
///
/// Braid words are whitespace- or comma-separated nonzero integers: `i` is σ_i
/// and `-i` its inverse.
#[derive(Parser)]
#[command(name = "hhh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Writhe, components, positivity and subexpression data of a braid word.
    Analyze(BraidArgs),
    /// HHH of a sign-homogeneous braid in its extreme T-degrees (all T for two strands).
    Hhh(ComputeArgs),
    /// The reduced superpolynomial from the computed table.
    Superpoly(ComputeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BraidArgs {
    /// Braid word, e.g. "1 2 1 2" or "-1 -2".
    #[arg(allow_hyphen_values = true)]
    braid: String,
    /// Number of strands [default: largest generator index + 1].
    #[arg(long)]
    n: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    braid: BraidArgs,
    /// Largest Q-degree computed [default: 2|β| + 10].
    #[arg(long)]
    qmax: Option<i32>,
    /// Coefficient field.
    #[arg(long, env = "HHH_FIELD", default_value = "rational")]
    field: Field,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    /// Seed for the random braid suites.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random braids per strand count.
    #[arg(long, default_value_t = 50)]
    count: usize,
    #[arg(long)]
    qmax: Option<i32>,
    /// Coefficient field.
    #[arg(long, env = "HHH_FIELD", default_value = "10007")]
    field: Field,
    /// List passing checks too.
    #[arg(long)]
    verbose: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Rational,
    #[value(name = "10007")]
    P10007,
    #[value(name = "32003")]
    P32003,
    #[value(name = "65521")]
    P65521,
}

macro_rules! with_field {
    ($field:expr, $f:ident :: <S> ($($arg:expr),*)) => {
        match $field {
            Field::Rational => $f::<Rational>($($arg),*),
            Field::P10007 => $f::<F10007>($($arg),*),
            Field::P32003 => $f::<F32003>($($arg),*),
            Field::P65521 => $f::<F65521>($($arg),*),
        }
    };
}

/// Write to stdout, exiting quietly when the reader has gone away.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {}", e);
        std::process::exit(3);
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(&format!("{}\n", format_args!($($arg)*))) };
}

enum Failure {
    Core(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn parse(args: &BraidArgs) -> Result<BraidWord, Error> {
    let n = match args.n {
        Some(n) => n,
        None => {
            let largest = args
                .braid
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter_map(|t| t.trim().parse::<i64>().ok())
                .map(|v| v.unsigned_abs() as usize)
                .max()
                .unwrap_or(1);
            largest + 1
        }
    };
    parse_braid(&args.braid, n)
}

fn analyze(args: &BraidArgs) -> Result<(), Failure> {
    let b = parse(args)?;
    let positive = b.is_positive();
    let sign = if b.length() == 0 {
        "empty"
    } else if positive {
        "positive"
    } else if b.is_negative() {
        "negative"
    } else {
        "mixed"
    };
    let prime = if positive { braid::primeness_criterion(&b).ok() } else { None };
    let window = braid::connect_sum_window(&b);
    if args.json {
        let v = json!({
            "braid": b.tokens(),
            "n": b.n(),
            "length": b.length(),
            "writhe": braid::writhe(&b),
            "components": braid::closure_components(&b),
            "sign": sign,
            "all_generators": braid::uses_all_generators(&b),
            "stst_per_pair": braid::stst_flags(&b),
            "prime_criterion": prime,
            "connect_sum_window": window,
        });
        outln!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
        return Ok(());
    }
    outln!("braid            {}", b.tokens().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" "));
    outln!("strands          {}", b.n());
    outln!("length           {}", b.length());
    outln!("writhe           {}", braid::writhe(&b));
    outln!("components       {}", braid::closure_components(&b));
    outln!("sign             {}", sign);
    outln!("all generators   {}", braid::uses_all_generators(&b));
    let stst: Vec<String> = braid::stst_flags(&b)
        .iter()
        .enumerate()
        .map(|(i, f)| format!("({},{}):{}", i + 1, i + 2, if *f { "yes" } else { "no" }))
        .collect();
    outln!("stst per pair    {}", stst.join(" "));
    match prime {
        Some(p) => outln!("prime criterion  {}", p),
        None => outln!("prime criterion  n/a (positive braids only)"),
    }
    match window {
        Some(k) => outln!("connect sum      generators < {} all precede generators ≥ {}", k, k),
        None => outln!("connect sum      no window"),
    }
    if sign == "mixed" {
        outln!("note: mixed-sign words are outside the scope of `hhh` and `superpoly`");
    }
    Ok(())
}

fn table_for(args: &ComputeArgs) -> Result<(BraidWord, TriGradedTable), Failure> {
    let b = parse(&args.braid)?;
    if args.qmax.is_some_and(|q| q < 0) {
        return Err(Error::InvalidInput("qmax must be nonnegative".into()).into());
    }
    let t = with_field!(args.field, hhh::<S>(&b, args.qmax))?;
    Ok((b, t))
}

fn failed_claims(t: &TriGradedTable) -> Result<(), Failure> {
    let bad: Vec<&str> = t.hypotheses.theorem_verdicts.iter().filter(|v| !v.holds).map(|v| v.claim.as_str()).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("theorem values not reproduced: {}", bad.join("; "))))
    }
}

fn cmd_hhh(args: &ComputeArgs) -> Result<(), Failure> {
    let (_, t) = table_for(args)?;
    if args.braid.json {
        outln!("{}", t.to_json());
    } else {
        emit(&format::table(&t));
    }
    failed_claims(&t)
}

fn cmd_superpoly(args: &ComputeArgs) -> Result<(), Failure> {
    let (b, t) = table_for(args)?;
    let p: Superpolynomial = superpolynomial(&b, &t)?;
    if args.braid.json {
        outln!("{}", p.to_json());
    } else {
        emit(&format::superpoly(&p));
    }
    failed_claims(&t)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let names: Vec<&str> = if args.suite == "all" { SUITES.to_vec() } else { vec![args.suite.as_str()] };
    let cfg = SuiteConfig { seed: args.seed, count: args.count, qmax: args.qmax };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for name in names {
        let r = with_field!(args.field, run_suite::<S>(name, &cfg))?;
        if !args.json {
            emit(&format::report(&r, args.verbose));
        }
        reports.push(r);
    }
    if args.json {
        outln!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("failed suites: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Hhh(a) => cmd_hhh(a),
        Command::Superpoly(a) => cmd_superpoly(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {}", e);
            if e.is_input_error() {
                ExitCode::from(1)
            } else {
                ExitCode::from(3)
            }
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {}", msg);
            ExitCode::from(2)
        }
    }
}
