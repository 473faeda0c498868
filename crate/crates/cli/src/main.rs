use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use semiwb::avoid::{self, AvoidError};
use semiwb::free::{self, FreeError};
use semiwb::lattice::{self, FiniteLattice, LatticeError, LatticeMap};
use semiwb::model::{self, ModelError, SearchSpec};
use semiwb::rewrite::{self, AxiomTag, RewriteError};
use semiwb::words::parse_identity_list;
use semiwb::{Identity, Word, WordError};
use semiwb_verify::{Options, Profile, VerifyError};
use serde::de::DeserializeOwned;
use serde_json::json;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "semiwb", version, about = "Finite semigroup and identity workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal or canonical form of a word.
    Nf {
        #[arg(long)]
        axiom: AxiomTag,
        word: Word,
    },
    /// Whether an identity follows from a base law.
    Consequence {
        #[arg(long)]
        axiom: AxiomTag,
        identity: Identity,
        /// Pad the base law with i fresh letters in front of ℓ in total, as `i:ℓ`.
        #[arg(long, value_parser = parse_padding)]
        padded: Option<(usize, usize)>,
    },
    /// Free nilpotent semigroup, optionally modulo identities.
    Free {
        #[arg(long)]
        letters: usize,
        #[arg(long)]
        nilpotency: usize,
        /// Identities separated by `;`.
        #[arg(long = "mod")]
        modulo: Option<String>,
    },
    /// Search for a finite model.
    Search(SearchArgs),
    #[command(subcommand)]
    Lattice(LatticeCommand),
    #[command(subcommand)]
    Avoid(AvoidCommand),
    /// Re-run registered checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Axioms separated by `;`.
    #[arg(long, default_value = "")]
    satisfy: String,
    #[arg(long)]
    falsify: Option<Identity>,
    /// Order range `a..b`.
    #[arg(long, value_parser = parse_orders, default_value = "1..4")]
    orders: (usize, usize),
    /// Seconds per order.
    #[arg(long, default_value_t = 60)]
    time: u64,
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Atoms of a lattice given as JSON.
    Atoms { file: PathBuf },
    /// Adjunction hypotheses and atom correspondence for q: L2 → L1, m: L1 → L2.
    Adjunction {
        #[arg(long)]
        l1: PathBuf,
        #[arg(long)]
        l2: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        m: PathBuf,
        /// Read q and m in the mirrored orientation.
        #[arg(long)]
        swap: bool,
    },
}

#[derive(Subcommand)]
enum AvoidCommand {
    Zimin { n: usize },
    /// Whether a pattern is unavoidable.
    Check { pattern: Word },
    /// Prefix of the square-free Thue word over 0, 1, 2.
    Prefix { len: usize },
}

#[derive(Args)]
struct VerifyArgs {
    id: Option<String>,
    #[arg(long, conflicts_with = "id")]
    all: bool,
    #[arg(long, default_value = "quick")]
    profile: Profile,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parsing {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Avoid(#[from] AvoidError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

fn parse_padding(s: &str) -> Result<(usize, usize), String> {
    let (i, len) = s.split_once(':').ok_or("expected i:l")?;
    Ok((i.trim().parse().map_err(|e| format!("{e}"))?, len.trim().parse().map_err(|e| format!("{e}"))?))
}

fn parse_orders(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: shown, source })
}

fn print(value: &serde_json::Value) {
    let text = serde_json::to_string_pretty(value).expect("json values serialise");
    // a closed pipe such as `| head` is not an error
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Nf { axiom, word } => {
            let nf = rewrite::normal_form(axiom, &word);
            print(&json!({ "input": word, "axiom": axiom, "normal_form": nf.word }));
        }
        Command::Consequence { axiom, identity, padded } => {
            let (holds, law) = match padded {
                Some((i, len)) => (rewrite::consequence_padded(axiom, i, len, &identity)?, rewrite::padded_axiom(axiom, i, len)?),
                None => (rewrite::consequence(axiom, &identity), axiom.identity()),
            };
            print(&json!({
                "input": identity,
                "law": law,
                "consequence": holds,
                "normal_forms": [
                    rewrite::normal_form(axiom, &identity.lhs).word,
                    rewrite::normal_form(axiom, &identity.rhs).word,
                ],
            }));
        }
        Command::Free { letters, nilpotency, modulo } => {
            let mut s = free::free_nilpotent(letters, nilpotency)?;
            if let Some(text) = modulo {
                s = free::fully_invariant_quotient(&s, &parse_identity_list(&text)?)?;
            }
            print(&serde_json::to_value(&s).expect("semigroups serialise"));
        }
        Command::Search(args) => {
            let axioms = if args.satisfy.trim().is_empty() { Vec::new() } else { parse_identity_list(&args.satisfy)? };
            let spec = SearchSpec::new(axioms, args.falsify, args.orders.0..=args.orders.1)
                .with_time(Some(Duration::from_secs(args.time)));
            let report = model::find_model(&spec)?;
            print(&serde_json::to_value(&report).expect("reports serialise"));
            if report.model.is_none() {
                return Ok(ExitCode::from(if report.budget_exhausted() { 2 } else { 1 }));
            }
        }
        Command::Lattice(LatticeCommand::Atoms { file }) => {
            let l: FiniteLattice = read_json(&file)?;
            print(&json!({ "order": l.order(), "atoms": lattice::atoms(&l) }));
        }
        Command::Lattice(LatticeCommand::Adjunction { l1, l2, q, m, swap }) => {
            let (l1, l2): (FiniteLattice, FiniteLattice) = (read_json(&l1)?, read_json(&l2)?);
            let (q, m): (LatticeMap, LatticeMap) = (read_json(&q)?, read_json(&m)?);
            let report = if swap {
                lattice::check_adjunction_swapped(&l1, &l2, &q, &m)?
            } else {
                lattice::check_adjunction(&l1, &l2, &q, &m)?
            };
            let correspondence = if swap || !report.adjoint {
                None
            } else {
                Some(lattice::atoms_correspondence(&l1, &l2, &q, &m)?)
            };
            print(&json!({
                "report": report,
                "atoms_l1": lattice::atoms(&l1),
                "atoms_l2": lattice::atoms(&l2),
                "conclusions": correspondence.map(|(a, b)| json!({ "a": a, "b": b })),
            }));
        }
        Command::Avoid(AvoidCommand::Zimin { n }) => {
            let z = avoid::zimin(n)?;
            print(&json!({ "n": n, "length": z.len(), "word": z }));
        }
        Command::Avoid(AvoidCommand::Check { pattern }) => {
            let unavoidable = avoid::is_unavoidable(&pattern)?;
            print(&json!({ "pattern": pattern, "unavoidable": unavoidable }));
        }
        Command::Avoid(AvoidCommand::Prefix { len }) => {
            let w = avoid::squarefree_prefix(len)?;
            print(&json!({ "length": len, "word": avoid::to_digits(&w), "square": avoid::find_square(&w) }));
        }
        Command::Verify(args) => {
            let options = Options::for_profile(args.profile);
            let reports = match (&args.id, args.all) {
                (Some(id), false) => vec![semiwb_verify::verify(id, &options)?],
                (None, true) => semiwb_verify::run_all(&options),
                _ => return Err(CliError::Usage("give a check id or --all".into())),
            };
            if args.json {
                print(&serde_json::to_value(&reports).expect("reports serialise"));
            } else {
                let mut out = std::io::stdout().lock();
                for r in &reports {
                    let _ = writeln!(out, "{:<30} {:<17} {:>8} ms", r.id, r.status, r.elapsed_ms);
                }
            }
            return Ok(ExitCode::from(semiwb_verify::exit_code(&reports) as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
