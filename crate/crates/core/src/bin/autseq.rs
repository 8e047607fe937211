//! Command-line front end.
//!
//! Exit codes: 0 success, 1 FALSE or FAIL, 2 usage or parse error,
//! 3 resource ceiling or uncertified oracle request, 4 internal error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use autseq::analyses::{
    borderless_lengths_conjecture, check_relations, measure_in, regex_values, unbordered_characteristic,
    MeasureKind, CONJECTURED_BORDERLESS_REGEX, CONJECTURED_RELATIONS,
};
use autseq::logic::{Env, DEFAULT_MAX_STATES};
use autseq::oracle::{brute, PrefixContext};
use autseq::regseq::{kernel_relations, AnyLinRep};
use autseq::seqgen::{builtin, thue_morse};
use autseq::{Dfao, Error};

#[derive(Parser)]
#[command(name = "autseq", version, about = "Decide properties of automatic sequences and count their factors")]
struct Cli {
    /// Numeration base (defaults to the base of the bound sequences, else 2).
    #[arg(long, global = true)]
    base: Option<u32>,
    /// Binds a sequence: `name=file` or `name=builtin` (tm, zero, period2, powers2).
    #[arg(long = "seq", value_name = "NAME=FILE", global = true)]
    seqs: Vec<String>,
    /// Ceiling on the states of any intermediate automaton.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    /// Write the resulting automaton or linear representation here.
    #[arg(long, global = true)]
    export: Option<PathBuf>,
    /// Prefix length used by oracle comparisons.
    #[arg(long, global = true, default_value_t = 10_000)]
    prefix_len: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decides a first-order sentence.
    Decide { predicate: String },
    /// 0/1 sequence of a formula with one free variable.
    Characteristic {
        predicate: String,
        /// Values to print, `a..b` (inclusive) or a single index.
        #[arg(default_value = "0..31")]
        range: String,
    },
    /// Counting sequence of a measure kind, e.g. `square-count-at:end`.
    Measure {
        /// subword-complexity, palindrome-complexity, unbordered-count,
        /// square-count-at, longest-square-at, palindrome-count-at,
        /// longest-palindrome-at, longest-fractional-power-at,
        /// recurrent-factor-count, factors-in-x-not-y, factors-in-both,
        /// recurrence-R, appearance-A, separator-S, repetitivity-I,
        /// permutation-complexity
        kind: String,
        sequence: String,
        #[arg(default_value = "0..16")]
        range: String,
    },
    /// Checks the borderless-length regex and the nine relations for Thue-Morse.
    VerifyConjecture {
        /// Kernel depth explored when listing relations.
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Compares a measure against brute force on a prefix.
    OracleCompare {
        kind: String,
        sequence: String,
        max_n: u64,
        /// Compare this linear representation instead of the engine's result.
        #[arg(long)]
        linrep: Option<PathBuf>,
    },
    /// Compiles a formula to an automaton with tracks in the given order.
    ExportAutomaton {
        predicate: String,
        /// Comma-separated track order, e.g. `n,i`.
        #[arg(long, default_value = "")]
        vars: String,
    },
    /// Evaluates a sequence or a linear representation file.
    EvalSeq {
        sequence: String,
        #[arg(default_value = "0..31")]
        range: String,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::ResourceLimit { .. } | Error::NotCertified { .. } => 3,
            Error::HasEpsilon | Error::ProjectArityOne | Error::PaddingInstability(_) => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

struct Session {
    env: Env,
    max_states: usize,
}

impl Session {
    fn new(cli: &Cli) -> Result<Session, Failure> {
        let mut bound = Vec::new();
        for spec in &cli.seqs {
            let (name, source) = spec.split_once('=').ok_or_else(|| usage(format!("expected NAME=FILE, got `{spec}`")))?;
            bound.push((name.to_string(), load_sequence(source)?));
        }
        let base = cli.base.or_else(|| bound.first().map(|(_, s)| s.base())).unwrap_or(2);
        let mut env = Env::new(base)?.with_max_states(cli.max_states);
        for (name, seq) in &bound {
            env.bind_sequence(name, seq)?;
        }
        Ok(Session { env, max_states: cli.max_states })
    }

    /// A bound name, a built-in name, or a file.
    fn sequence(&self, name: &str) -> Result<Dfao, Failure> {
        match self.env.sequence(name) {
            Ok(s) => Ok(s.clone()),
            Err(_) => load_sequence(name),
        }
    }
}

fn load_sequence(source: &str) -> Result<Dfao, Failure> {
    if let Some(s) = builtin(source) {
        return Ok(s);
    }
    let text = fs::read_to_string(source).map_err(|e| usage(format!("cannot read `{source}`: {e}")))?;
    Ok(Dfao::from_text(&text)?)
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u64>, Failure> {
    let bad = || usage(format!("bad range `{s}` (expected a..b or n)"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => {
            let n = s.parse().map_err(|_| bad())?;
            Ok(n..=n)
        }
    }
}

fn write_export(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure { code: 4, message: format!("cannot write `{}`: {e}", path.display()) })?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let session = Session::new(cli)?;
    let env = &session.env;
    match &cli.command {
        Command::Decide { predicate } => {
            let start = Instant::now();
            let d = env.decide_str(predicate)?;
            println!("{}", if d.holds { "TRUE" } else { "FALSE" });
            if let Some(assignment) = &d.assignment {
                let label = if d.holds { "witness" } else { "counterexample" };
                let parts: Vec<String> = assignment.iter().map(|(v, n)| format!("{v}={n}")).collect();
                println!("{label}: ({})", parts.join(", "));
            }
            println!("time: {:.3}s", start.elapsed().as_secs_f64());
            Ok(if d.holds { 0 } else { 1 })
        }
        Command::Characteristic { predicate, range } => {
            let range = parse_range(range)?;
            let c = env.characteristic_str(predicate)?;
            println!("states: {}", c.num_states());
            let values: Vec<String> = range.map(|n| c.evaluate(n).to_string()).collect();
            println!("{}", values.join(""));
            if let Some(path) = &cli.export {
                write_export(path, &c.to_text())?;
            }
            Ok(0)
        }
        Command::Measure { kind, sequence, range } => {
            let kind: MeasureKind = kind.parse()?;
            let range = parse_range(range)?;
            let x = session.sequence(sequence)?;
            let env = measure_env(&session, &x)?;
            let c = measure_in(&env, &kind)?;
            println!("# {kind} of {sequence}, rank {}", c.series.rank());
            for n in range {
                println!("{n} {}", c.evaluate(n));
            }
            if let Some(path) = &cli.export {
                write_export(path, &c.series.to_text())?;
                if !c.decomposition.is_finite() {
                    let inf = path.with_extension("inf.dfa");
                    write_export(&inf, &c.decomposition.infinite.to_text())?;
                }
            }
            Ok(0)
        }
        Command::VerifyConjecture { depth } => verify_conjecture(*depth),
        Command::OracleCompare { kind, sequence, max_n, linrep } => {
            let kind: MeasureKind = kind.parse()?;
            let x = session.sequence(sequence)?;
            let mut ctx = PrefixContext::new(x.prefix(cli.prefix_len));
            if kind.needs_second_sequence() {
                let y = env.sequence("y").map_err(|_| usage(format!("{kind} needs --seq y=FILE")))?;
                ctx = ctx.with_other(y.prefix(cli.prefix_len));
            }
            if *max_n > ctx.certified() {
                return Err(Error::NotCertified { n: *max_n, certified: ctx.certified() }.into());
            }
            let value: Box<dyn Fn(u64) -> String> = match linrep {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read `{}`: {e}", path.display())))?;
                    let l = AnyLinRep::parse(&text)?;
                    Box::new(move |n| l.evaluate_text(n))
                }
                None => {
                    let c = measure_in(&measure_env(&session, &x)?, &kind)?;
                    Box::new(move |n| c.evaluate(n).to_string())
                }
            };
            for n in 0..=*max_n {
                let expected = brute(&kind, &ctx, n)?.to_string();
                let got = value(n);
                if got != expected {
                    println!("FAIL at n={n}: engine {got}, oracle {expected}");
                    return Ok(1);
                }
            }
            println!("PASS {kind} on {sequence} for n = 0..{max_n} (prefix {})", cli.prefix_len);
            Ok(0)
        }
        Command::ExportAutomaton { predicate, vars } => {
            let order: Vec<&str> = vars.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
            let dfa = env.relation(predicate, &order)?;
            println!("# {} states, tracks ({})", dfa.num_states(), order.join(", "));
            match &cli.export {
                Some(path) => write_export(path, &dfa.to_text())?,
                None => print!("{}", dfa.to_text()),
            }
            Ok(0)
        }
        Command::EvalSeq { sequence, range } => {
            let range = parse_range(range)?;
            let lin = fs::read_to_string(sequence).ok().and_then(|t| AnyLinRep::parse(&t).ok());
            match lin {
                Some(l) => {
                    for n in range {
                        println!("{n} {}", l.evaluate_text(n));
                    }
                }
                None => {
                    let x = session.sequence(sequence)?;
                    let values: Vec<String> = range.map(|n| x.evaluate(n).to_string()).collect();
                    println!("{}", values.join(" "));
                }
            }
            Ok(0)
        }
    }
}

/// The session environment with `x` bound to the measured sequence.
fn measure_env(session: &Session, x: &Dfao) -> Result<Env, Failure> {
    let mut env = session.env.clone();
    if env.base() != x.base() {
        env = Env::new(x.base())?.with_max_states(session.max_states);
        if let Ok(y) = session.env.sequence("y") {
            env.bind_sequence("y", y)?;
        }
    }
    env.bind_sequence("x", x)?;
    Ok(env)
}

fn verify_conjecture(depth: u32) -> Result<u8, Failure> {
    let tm = thue_morse();
    let start = Instant::now();
    let b = unbordered_characteristic(&tm)?;
    let claimed = regex_values(CONJECTURED_BORDERLESS_REGEX, 2)?;
    let sample_mismatch = (0..=10_000u64).find(|&n| (b.evaluate(n) == 0) != claimed.accepts_values(&[n]).unwrap_or(false));
    match sample_mismatch {
        Some(n) => println!("sample check n <= 10000: mismatch at {n}"),
        None => println!("sample check n <= 10000: agree"),
    }
    let verdict = borderless_lengths_conjecture(&tm, CONJECTURED_BORDERLESS_REGEX)?;
    match verdict.counterexample {
        None => println!("lengths without unbordered factors vs {CONJECTURED_BORDERLESS_REGEX}: EQUIVALENT"),
        Some(n) => println!("lengths without unbordered factors vs {CONJECTURED_BORDERLESS_REGEX}: counterexample n = {n}"),
    }
    let count = measure_in(&Env::for_sequence(&tm), &MeasureKind::UnborderedCount)?;
    let f = count
        .finite_series()
        .ok_or_else(|| Failure { code: 4, message: "unbordered count has infinite values".into() })?
        .to_rat();
    let mut all = verdict.equivalent;
    for (rec, ok) in check_relations(&f, &CONJECTURED_RELATIONS)? {
        println!("{}  {rec}", if ok { "HOLDS " } else { "FAILS " });
        all &= ok;
    }
    let report = kernel_relations(&f.minimize(), depth)?;
    println!("kernel basis {:?}, closed: {}", report.basis, report.closed);
    for r in &report.relations {
        println!("  {r}");
    }
    println!("time: {:.3}s", start.elapsed().as_secs_f64());
    Ok(if all { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        Err(_) => ExitCode::from(4),
    }
}
