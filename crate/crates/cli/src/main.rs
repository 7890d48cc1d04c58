use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kct::acceptance::run_all;
use kct::calculus::{check_proof_figure, ProofFigure, SystemId};
use kct::engine::{build_tableau_with, chain_prefixes, Budget, Verdict};
use kct::rank::rank;
use kct::semantics::{falsifying_assignment, FiniteModel};
use kct::sequent::Sequent;
use kct::syntax::{parse_term_with, ParseOptions, Signature, TermEnumerator};
use kct::Error;
use serde_json::json;

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {{
        let _ = writeln!($out, $($arg)*);
    }};
}

macro_rules! emit_raw {
    ($out:expr, $($arg:tt)*) => {{
        let _ = write!($out, $($arg)*);
    }};
}

const PROVED: u8 = 0;
const REFUTED: u8 = 1;
const UNKNOWN: u8 = 2;
const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "kct", version, about = "Proof search, proof checking and countermodels for classical simple type theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a proof of a sequent
    Prove {
        sequent: String,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Print the R-chain alternatives from a sequent
    Chain {
        sequent: String,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Check a proof figure stored as JSON
    CheckProof {
        figure: PathBuf,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Print the rank of a term
    Rank {
        term: String,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Decide a sequent in a finite model stored as JSON
    EvalModel {
        model: PathBuf,
        sequent: String,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Run the acceptance suite
    Selftest {
        #[command(flatten)]
        cfg: RunConfig,
    },
}

#[derive(Args)]
struct RunConfig {
    /// kct, kct_h, kctt or kctt_h
    #[arg(long, default_value = "kctt_h", value_parser = parse_system)]
    system: SystemId,
    #[arg(long, default_value_t = 200)]
    max_depth: usize,
    #[arg(long, default_value_t = 10_000)]
    max_nodes: usize,
    #[arg(long, default_value_t = 3)]
    max_critical_rounds: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// JSON file with object constants and function arities
    #[arg(long)]
    signature: Option<PathBuf>,
    /// Comma-separated atom names, bound to a0:1, a1:1, ... in order
    #[arg(long, value_delimiter = ',')]
    atoms: Vec<String>,
    #[arg(long, default_value_t = 20_240_501)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_system(s: &str) -> Result<SystemId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// An input problem: the message and, for parse errors, the offending text.
struct InputError {
    msg: String,
}

impl InputError {
    fn at(text: &str, e: Error) -> Self {
        let msg = match &e {
            Error::Parse { pos, .. } => format!("{e}\n  {text}\n  {}^", " ".repeat(text[..(*pos).min(text.len())].chars().count())),
            _ => e.to_string(),
        };
        InputError { msg }
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError { msg: e.to_string() }
    }
}

impl RunConfig {
    fn budget(&self) -> Budget {
        Budget {
            max_depth: self.max_depth,
            max_nodes: self.max_nodes,
            max_critical_rounds: self.max_critical_rounds,
        }
    }

    fn options(&self) -> ParseOptions {
        ParseOptions::with_atoms(&self.atoms)
    }

    fn signature(&self) -> Result<Signature, InputError> {
        match &self.signature {
            None => Ok(Signature::default()),
            Some(path) => Ok(Signature::from_json(&read(path)?)?),
        }
    }

    fn sequent(&self, text: &str) -> Result<(Sequent, Signature), InputError> {
        let s = Sequent::parse_with(text, &self.options()).map_err(|e| InputError::at(text, e))?;
        let sig = self.signature()?;
        for f in s.ante.iter().chain(&s.succ) {
            sig.admits(f)?;
        }
        Ok((s, sig))
    }
}

fn read(path: &PathBuf) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError {
        msg: format!("{}: {e}", path.display()),
    })
}

fn print_json(out: &mut String, v: &serde_json::Value) {
    emit!(out, "{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn prove(out: &mut String, text: &str, cfg: &RunConfig) -> Result<u8, InputError> {
    let (s, sig) = cfg.sequent(text)?;
    let run = build_tableau_with(&s, cfg.system, cfg.budget(), &sig);
    let status = match run.verdict {
        Verdict::Proved { .. } => PROVED,
        Verdict::Refuted { .. } => REFUTED,
        Verdict::Unknown { .. } => UNKNOWN,
    };
    if cfg.format == Format::Json {
        print_json(out, &json!({
            "sequent": s.to_string(),
            "system": cfg.system.to_string(),
            "result": run.verdict,
            "tableau": run.tableau.to_json(),
        }));
        return Ok(status);
    }
    match &run.verdict {
        Verdict::Proved { order } => {
            emit!(out, "proved: {s}");
            emit!(out, "order {order}, {} nodes", run.tableau.len());
            emit_raw!(out, "{}", run.tableau);
        }
        Verdict::Refuted { branch, hintikka, valuation } => {
            emit!(out, "refuted: {s}");
            emit!(out, "open branch:");
            emit_raw!(out, "{branch}");
            emit!(out, "Hintikka conditions:");
            for c in &hintikka.checks {
                emit!(out, "  {:<8} {:?} {}", c.name, c.status, c.witnesses.join("; "));
            }
            emit!(out, "partial valuation:");
            for (f, b) in &valuation.assignment {
                emit!(out, "  {f} = {}", if *b { "t" } else { "f" });
            }
        }
        Verdict::Unknown { reason } => {
            emit!(out, "unknown: {s}");
            emit!(out, "{reason}");
        }
    }
    Ok(status)
}

fn chain(out: &mut String, text: &str, steps: usize, cfg: &RunConfig) -> Result<u8, InputError> {
    let (s, sig) = cfg.sequent(text)?;
    let mut terms = TermEnumerator::new(sig);
    let chains = chain_prefixes(&s, steps, &mut terms)?;
    if cfg.format == Format::Json {
        print_json(out, &json!({ "root": s.to_string(), "chains": chains }));
    } else {
        for (i, c) in chains.iter().enumerate() {
            emit!(out, "chain {}:", i + 1);
            emit_raw!(out, "{c}");
        }
    }
    Ok(PROVED)
}

fn check_proof(out: &mut String, path: &PathBuf, cfg: &RunConfig) -> Result<u8, InputError> {
    let pf = ProofFigure::from_json_str(&read(path)?)?;
    // the figure is read in the Gentzen direction of the chosen calculus
    let sys = if cfg.system.is_tableau() { cfg.system.dual() } else { cfg.system };
    let report = check_proof_figure(&pf, sys);
    if cfg.format == Format::Json {
        print_json(out, &json!({
            "system": sys.to_string(),
            "valid": report.valid,
            "failing_path": report.failing_path,
            "message": report.message,
        }));
    } else if report.valid {
        emit!(out, "valid {sys} proof of {}", pf.sequent);
    } else {
        emit!(out, "invalid {sys} proof of {}", pf.sequent);
        emit!(out, "at node {:?}: {}", report.failing_path.unwrap_or_default(), report.message.unwrap_or_default());
    }
    Ok(if report.valid { PROVED } else { REFUTED })
}

fn rank_cmd(out: &mut String, text: &str, cfg: &RunConfig) -> Result<u8, InputError> {
    let t = parse_term_with(text, &cfg.options()).map_err(|e| InputError::at(text, e))?;
    let r = rank(&t);
    if cfg.format == Format::Json {
        print_json(out, &json!({ "term": t.to_string(), "rank": r }));
    } else {
        emit!(out, "{r}");
    }
    Ok(PROVED)
}

fn eval_model(out: &mut String, path: &PathBuf, text: &str, cfg: &RunConfig) -> Result<u8, InputError> {
    let model = FiniteModel::from_json(&read(path)?)?;
    let (s, _) = cfg.sequent(text)?;
    let falsifier = falsifying_assignment(&s, &model)?;
    if cfg.format == Format::Json {
        let asg = falsifier
            .as_ref()
            .map(|a| a.iter().map(|(v, e)| (v.to_string(), json!(e))).collect::<serde_json::Map<_, _>>());
        print_json(out, &json!({ "sequent": s.to_string(), "true": falsifier.is_none(), "falsified_by": asg }));
    } else {
        match &falsifier {
            None => emit!(out, "true: {s}"),
            Some(a) => {
                emit!(out, "false: {s}");
                for (v, e) in a {
                    emit!(out, "  {v} = {e}");
                }
            }
        }
    }
    Ok(if falsifier.is_none() { PROVED } else { REFUTED })
}

fn selftest(out: &mut String, cfg: &RunConfig) -> u8 {
    let results = run_all(cfg.seed);
    if cfg.format == Format::Json {
        print_json(out, &json!({ "seed": cfg.seed, "criteria": results }));
    } else {
        for r in &results {
            emit!(out, "{r}");
        }
    }
    if results.iter().all(|r| r.passed) {
        PROVED
    } else {
        REFUTED
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { PROVED });
        }
    };
    let mut out = String::new();
    let outcome = match &cli.command {
        Command::Prove { sequent, cfg } => prove(&mut out, sequent, cfg),
        Command::Chain { sequent, steps, cfg } => chain(&mut out, sequent, *steps, cfg),
        Command::CheckProof { figure, cfg } => check_proof(&mut out, figure, cfg),
        Command::Rank { term, cfg } => rank_cmd(&mut out, term, cfg),
        Command::EvalModel { model, sequent, cfg } => eval_model(&mut out, model, sequent, cfg),
        Command::Selftest { cfg } => Ok(selftest(&mut out, cfg)),
    };
    // a closed pipe downstream is not an error
    let _ = std::io::stdout().write_all(out.as_bytes());
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(INPUT_ERROR)
        }
    }
}
