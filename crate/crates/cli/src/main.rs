//! `cayleyham`: verify, search and lift hamiltonian cycles in Cayley graphs.
//!
//! Exit codes: 0 ok, 2 parse, 3 verification failed, 4 budget exceeded,
//! 5 internal.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use cayleyham::catalog::enumerate_groups;
use cayleyham::cayley::GeneratorSet;
use cayleyham::certificate::{parse_certificate, Certificate, CertificateError, Provenance};
use cayleyham::corpus::{load_corpus, transcription_lint};
use cayleyham::group::{FiniteGroup, Group};
use cayleyham::hamilton::{default_budget, find_hamiltonian_cycle, search_cycles, SearchError, SearchOptions, UseConstraint};
use cayleyham::quotient::{QuotientContext, QuotientError};
use cayleyham::strategies::{reproduce_order_150, SweepOptions};

#[derive(Parser)]
#[command(name = "cayleyham", version, about = "Hamiltonian cycles in Cayley graphs of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and verify a certificate file.
    Verify { file: PathBuf },
    /// Run the exact solver and print a certificate.
    Search {
        #[arg(long)]
        group: String,
        /// Generators, e.g. `a=1,b=(1,0)`.
        #[arg(long)]
        gens: String,
        /// Node budget; defaults to CAYLEYHAM_BUDGET or 50000000.
        #[arg(long)]
        budget: Option<u64>,
        /// Only accept cycles using this generator an odd number of times.
        #[arg(long)]
        parity_filter: Option<String>,
    },
    /// Compute the voltage of a quotient cycle and lift it.
    Lift {
        #[arg(long)]
        group: String,
        /// Elements generating the normal subgroup, e.g. `(0,1),(1,0)`.
        #[arg(long)]
        normal: String,
        /// Certificate-format file holding the generators and the quotient cycle.
        #[arg(long)]
        cycle: PathBuf,
    },
    /// Summarise the cosets of a normal subgroup.
    Quotient {
        #[arg(long)]
        group: String,
        #[arg(long)]
        normal: String,
    },
    /// Print the isomorphism classes of the given order.
    EnumerateGroups {
        #[arg(long, default_value_t = 150)]
        order: usize,
    },
    /// Certify every minimal generating set of every group of order 150.
    Reproduce {
        #[arg(long, default_value_t = 150)]
        order: usize,
        /// Worker threads; 1 gives byte-identical output across runs.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value = "reproduce-out")]
        out: PathBuf,
        /// Restrict to these presets.
        #[arg(long)]
        preset: Vec<String>,
    },
    /// Verify the figure corpus.
    CorpusLint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Parse = 2,
    Verify = 3,
    Budget = 4,
    Internal = 5,
}

#[derive(Debug)]
struct Failure {
    kind: Kind,
    err: anyhow::Error,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.err)
    }
}

fn fail(kind: Kind, err: impl Into<anyhow::Error>) -> Failure {
    Failure { kind, err: err.into() }
}

fn parse_err(err: impl Into<anyhow::Error>) -> Failure {
    fail(Kind::Parse, err)
}

fn search_failure(e: SearchError) -> Failure {
    match e {
        SearchError::BudgetExceeded { .. } => fail(Kind::Budget, e),
        SearchError::Precondition(_) => parse_err(e),
        _ => fail(Kind::Internal, e),
    }
}

fn quotient_failure(e: QuotientError) -> Failure {
    match e {
        QuotientError::Search(s) => search_failure(s),
        QuotientError::NotNormal | QuotientError::Cayley(_) => parse_err(e),
        QuotientError::NotClosed { .. } | QuotientError::LiftRefused { .. } => fail(Kind::Verify, e),
        _ => fail(Kind::Internal, e),
    }
}

type Outcome = Result<(), Failure>;

/// Split on commas and semicolons outside parentheses.
fn split_top(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' | ';' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts.into_iter().filter(|p| !p.is_empty()).collect()
}

fn load_group(spec: &str) -> Result<Group, Failure> {
    Group::parse(spec).with_context(|| format!("group '{spec}'")).map_err(parse_err)
}

fn element(g: &Group, text: &str) -> Result<usize, Failure> {
    let e = g.parse_element(text).with_context(|| format!("element '{text}'")).map_err(parse_err)?;
    g.index(&e).map_err(parse_err)
}

fn parse_gens(g: &Group, text: &str) -> Result<GeneratorSet, Failure> {
    let mut named = Vec::new();
    for part in split_top(text) {
        let (name, value) =
            part.split_once('=').ok_or_else(|| parse_err(anyhow!("generator '{part}' is not NAME=ELEMENT")))?;
        named.push((name.trim().to_string(), element(g, value.trim())?));
    }
    GeneratorSet::new(g, named).map_err(parse_err)
}

fn parse_normal<'g>(g: &'g Group, text: &str) -> Result<QuotientContext<'g>, Failure> {
    let elems = split_top(text).into_iter().map(|t| element(g, t)).collect::<Result<Vec<_>, _>>()?;
    QuotientContext::by_generators(g, &elems).map_err(quotient_failure)
}

fn read_certificate(path: &Path) -> Result<Certificate, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(parse_err)?;
    parse_certificate(&text).with_context(|| path.display().to_string()).map_err(parse_err)
}

fn verify(file: &Path) -> Outcome {
    let cert = read_certificate(file)?;
    let report = cert.verify().map_err(|e| match e {
        CertificateError::Parse { .. } | CertificateError::Group(_) | CertificateError::Cayley(_) => parse_err(e),
    })?;
    if let Some(fig) = &cert.figure {
        println!("figure: {fig}");
    }
    println!("{}: {report}", file.display());
    if report.ok {
        Ok(())
    } else {
        Err(fail(Kind::Verify, anyhow!("{}: not a hamiltonian cycle", file.display())))
    }
}

fn search(group: &str, gens: &str, budget: Option<u64>, parity: Option<String>) -> Outcome {
    let g = load_group(group)?;
    let set = parse_gens(&g, gens)?;
    let graph = cayleyham::cayley::CayleyGraph::build(&g, &set).map_err(parse_err)?;
    let mut opts = SearchOptions::with_budget(budget.unwrap_or_else(default_budget));
    let walk = match parity {
        None => find_hamiltonian_cycle(&g, &graph, &opts),
        Some(tok) => {
            opts = opts.constrain(UseConstraint::Odd(tok));
            search_cycles(&g, &set.signed_tokens(&g), &opts, &mut |_| true)
        }
    }
    .map_err(search_failure)?
    .ok_or_else(|| fail(Kind::Verify, anyhow!("Cay(G; S) has no hamiltonian cycle")))?;
    print!("{}", Certificate::new(&g, &set, walk, Provenance::SearchFallback).emit());
    Ok(())
}

fn lift(group: &str, normal: &str, cycle: &Path) -> Outcome {
    let g = load_group(group)?;
    let q = parse_normal(&g, normal)?;
    let cert = read_certificate(cycle)?;
    let named = cert
        .generators
        .iter()
        .map(|(n, e)| Ok((n.clone(), g.index(e).map_err(parse_err)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let gens = GeneratorSet::new(&g, named).map_err(parse_err)?;
    let report = q.verify_quotient_cycle(&cert.walk, &gens);
    println!("quotient cycle: {report}");
    if !report.ok {
        return Err(fail(Kind::Verify, anyhow!("not a hamiltonian cycle of G/N")));
    }
    let v = q.voltage(&cert.walk, &gens).map_err(quotient_failure)?;
    println!("voltage: {} (generates N: {})", g.element(v.element), v.generates_n);
    let lifted = q.fgl_lift(&cert.walk, &gens).map_err(quotient_failure)?;
    print!("{}", lifted.emit());
    Ok(())
}

fn quotient(group: &str, normal: &str) -> Outcome {
    let g = load_group(group)?;
    let q = parse_normal(&g, normal)?;
    let n = q.normal_subgroup();
    let index = g.order() / n.order();
    println!("|G| = {}, |N| = {}, |G/N| = {index}", g.order(), n.order());
    let members: Vec<String> = n.members().iter().map(|&x| g.element(x).to_string()).collect();
    println!("N = {{{}}}", members.join(", "));
    for c in 0..index {
        let rep = q.representative(c);
        let order = (1..=index).find(|&k| q.project(g.pow(rep, k as i64)) == 0).unwrap_or(index);
        println!("coset {c}: rep {} order {order}", g.element(rep));
    }
    Ok(())
}

fn enumerate(order: usize) -> Outcome {
    let classes = enumerate_groups(order).map_err(parse_err)?;
    for c in &classes {
        println!("{}  {}  {}", c.id, c.fingerprint, c.spec);
    }
    println!("{} classes", classes.len());
    Ok(())
}

fn reproduce(order: usize, jobs: usize, out: &Path, presets: Vec<String>) -> Outcome {
    if order != 150 {
        return Err(parse_err(anyhow!("reproduce supports order 150 only, got {order}")));
    }
    let report = reproduce_order_150(&SweepOptions { jobs, presets }).map_err(|e| fail(Kind::Internal, e))?;
    report
        .write_to(out)
        .with_context(|| format!("writing {}", out.display()))
        .map_err(|e| fail(Kind::Internal, e))?;
    print!("{}", report.render());
    let failures: Vec<_> = report.failures().collect();
    if failures.is_empty() {
        return Ok(());
    }
    let kind = if failures.iter().any(|r| r.budget_exceeded) { Kind::Budget } else { Kind::Verify };
    Err(fail(kind, anyhow!("{} generating sets failed", failures.len())))
}

fn corpus_lint() -> Outcome {
    let corpus = load_corpus().map_err(parse_err)?;
    let report = transcription_lint(&corpus);
    println!("{report}");
    if report.ok() {
        Ok(())
    } else {
        Err(fail(Kind::Verify, anyhow!("corpus lint failed")))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { file } => verify(&file),
        Command::Search { group, gens, budget, parity_filter } => search(&group, &gens, budget, parity_filter),
        Command::Lift { group, normal, cycle } => lift(&group, &normal, &cycle),
        Command::Quotient { group, normal } => quotient(&group, &normal),
        Command::EnumerateGroups { order } => enumerate(order),
        Command::Reproduce { order, jobs, out, preset } => reproduce(order, jobs, &out, preset),
        Command::CorpusLint => corpus_lint(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(Kind::Parse as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.kind as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::split_top;

    #[test]
    fn splits_outside_parentheses() {
        assert_eq!(split_top("a=1,b=(1,0)"), vec!["a=1", "b=(1,0)"]);
        assert_eq!(split_top("(0,1);(1,0), "), vec!["(0,1)", "(1,0)"]);
    }
}
