//! `concordance`: batch front end for the double twist knot computations.
//!
//! Exit codes: 0 success (or an embedding was found), 1 no embedding exists,
//! 2 usage or parameter error, 3 search budget exhausted.

mod cache;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use concordance_core::embed::{SearchConfig, DEFAULT_NODE_BUDGET};
use concordance_core::knotalg::fox_milnor;
use concordance_core::pipeline::{self, explicit_witness, search_sum, ObstructOptions, SCHEMA_VERSION};
use concordance_core::{classify, DoubleTwist, Form, Outcome, Poly, SearchStatus};
use serde_json::{json, Value};

use cache::Cache;

const EXIT_NONE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(name = "concordance", version, about = "Lattice embedding obstructions and algebraic invariants of double twist knots K_{m,n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the intersection form Q_p(m, n).
    Form {
        #[command(flatten)]
        knot: Knot,
        #[arg(short, allow_negative_numbers = true)]
        p: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether the N-fold sum of Q_p(m, n) embeds in the standard negative lattice.
    Embed {
        #[command(flatten)]
        knot: Knot,
        #[arg(short, allow_negative_numbers = true)]
        p: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Full evidence report for one instance.
    Obstruct {
        #[command(flatten)]
        knot: Knot,
        #[arg(short, allow_negative_numbers = true)]
        p: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Concordance classification of K_{m,n}.
    Classify {
        #[command(flatten)]
        knot: Knot,
        #[arg(long)]
        json: bool,
    },
    /// Alexander polynomial, optionally with a Fox-Milnor factorization of complexity c.
    Alex {
        #[command(flatten)]
        knot: Knot,
        #[arg(long = "fm", value_name = "C")]
        complexity: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Reports for every (m, n, p) in the given ranges, one JSON object per line.
    Survey {
        /// Values like `-3..3`, `2` or `-1,4..6`.
        #[arg(short, allow_hyphen_values = true)]
        m: String,
        #[arg(short, allow_hyphen_values = true)]
        n: String,
        #[arg(short, allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'N', default_value_t = 1)]
        copies: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Knot {
    #[arg(short, allow_negative_numbers = true)]
    m: i64,
    #[arg(short, allow_negative_numbers = true)]
    n: i64,
}

#[derive(Args)]
struct SearchArgs {
    /// Number of copies in the direct sum.
    #[arg(short = 'N', default_value_t = 1)]
    copies: usize,
    /// Node budget for the search [default: 100000000].
    #[arg(long)]
    budget: Option<u64>,
    /// Search without a budget.
    #[arg(long, conflicts_with = "budget")]
    unlimited: bool,
    #[arg(long)]
    sequential: bool,
    /// Run the search even when an explicit witness is available.
    #[arg(long)]
    confirm: bool,
    /// Cache file; overrides CONCORDANCE_CACHE and the config directory.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

impl SearchArgs {
    fn budget(&self) -> Option<u64> {
        if self.unlimited {
            None
        } else {
            Some(self.budget.unwrap_or(DEFAULT_NODE_BUDGET))
        }
    }

    fn config(&self) -> SearchConfig {
        SearchConfig { node_budget: self.budget(), sequential: self.sequential }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    #[arg(long)]
    pretty: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<concordance_core::Error> for Failure {
    fn from(e: concordance_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Run = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Run {
    match command {
        Command::Form { knot, p, out } => cmd_form(knot, p, out),
        Command::Embed { knot, p, search, out } => cmd_embed(knot, p, search, out),
        Command::Obstruct { knot, p, search, out } => cmd_obstruct(knot, p, search, out),
        Command::Classify { knot, json } => cmd_classify(knot, json),
        Command::Alex { knot, complexity, json } => cmd_alex(knot, complexity, json),
        Command::Survey { m, n, p, copies, budget, out } => cmd_survey(&m, &n, &p, copies, budget, out),
    }
}

fn print_value(v: &Value, pretty: bool) {
    let s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    println!("{}", s.expect("JSON values always serialize"));
}

fn cmd_form(knot: Knot, p: usize, out: Output) -> Run {
    let form = Form::intersection_form(knot.m, knot.n, p)?;
    if out.json {
        let v = json!({"schema": SCHEMA_VERSION, "form": form});
        print_value(&v, false);
    } else {
        print!("{form}");
    }
    Ok(0)
}

fn status_code(status: SearchStatus) -> u8 {
    match status {
        SearchStatus::Found => 0,
        SearchStatus::NoneExists => EXIT_NONE,
        SearchStatus::Unknown => EXIT_UNKNOWN,
    }
}

fn cached_search(single: &Form, args: &SearchArgs) -> Result<Outcome, Failure> {
    let form = single.repeat(args.copies)?;
    let cache = if args.no_cache { None } else { cache::resolve_path(args.cache.as_deref()).map(Cache::new) };
    let budget = args.budget();
    if let Some(cache) = &cache {
        match cache.lookup(&form, budget) {
            Ok(Some(hit)) => {
                eprintln!("cache hit: {}", cache.path().display());
                return Ok(hit);
            }
            Ok(None) => {}
            Err(e) => eprintln!("warning: cache unreadable ({e}); searching"),
        }
    }
    let outcome = search_sum(single, args.copies, args.config())?;
    if let Some(cache) = &cache {
        if let Err(e) = cache.store(&form, &outcome, budget) {
            eprintln!("warning: could not update cache {} ({e})", cache.path().display());
        }
    }
    Ok(outcome)
}

fn cmd_embed(knot: Knot, p: usize, args: SearchArgs, out: Output) -> Run {
    if args.copies == 0 {
        return Err(Failure::Usage("N must be at least 1".into()));
    }
    let norm = pipeline::normalize(knot.m, knot.n)?;
    let single = Form::intersection_form(norm.m, norm.n, p)?;
    let explicit = if args.confirm { None } else { explicit_witness(norm.m, norm.n, p, args.copies)? };
    let (outcome, source) = match explicit {
        Some((w, source)) => (Outcome::found(w, 0), json!(source)),
        None => (cached_search(&single, &args)?, json!("Search")),
    };
    let v = json!({
        "schema": SCHEMA_VERSION,
        "params": {"m": knot.m.to_string(), "n": knot.n.to_string(), "p": p.to_string(), "N": args.copies.to_string()},
        "normalized_params": {"m": norm.m.to_string(), "n": norm.n.to_string()},
        "source": source,
        "outcome": outcome,
    });
    print_value(&v, out.pretty);
    Ok(status_code(outcome.status))
}

fn cmd_obstruct(knot: Knot, p: usize, args: SearchArgs, out: Output) -> Run {
    let options = ObstructOptions { search: args.config(), confirm_by_search: args.confirm };
    let report = pipeline::obstruct(knot.m, knot.n, p, args.copies, options)?;
    print_value(&report.to_value(), out.pretty);
    Ok(report.embedding.map_or(0, |o| status_code(o.status)))
}

fn cmd_classify(knot: Knot, as_json: bool) -> Run {
    let c = classify(knot.m, knot.n);
    if as_json {
        let v = json!({"schema": SCHEMA_VERSION, "m": knot.m.to_string(), "n": knot.n.to_string(), "classification": c.to_string()});
        print_value(&v, false);
    } else {
        println!("{c}");
    }
    Ok(0)
}

fn cmd_alex(knot: Knot, complexity: Option<u32>, as_json: bool) -> Run {
    let delta: Poly = DoubleTwist::new(knot.m, knot.n).alexander();
    let fac = complexity.map(|c| fox_milnor(&delta, c)).transpose()?;
    if as_json {
        let fm = fac.as_ref().map(|f| {
            f.as_ref().map(|f| {
                json!({
                    "complexity": f.complexity.to_string(),
                    "factor": f.f.to_string(),
                    "unit_sign": f.unit_sign.to_string(),
                    "unit_exp": f.unit_exp.to_string(),
                })
            })
        });
        let v = json!({
            "schema": SCHEMA_VERSION,
            "m": knot.m.to_string(),
            "n": knot.n.to_string(),
            "alexander": delta.to_string(),
            "fox_milnor": fm,
        });
        print_value(&v, false);
        return Ok(0);
    }
    println!("Delta(t) = {delta}");
    match (complexity, fac) {
        (Some(c), Some(Some(f))) => {
            println!("Delta(t^{c}) = {}t^{} f(t) f(t^-1) with f(t) = {}", if f.unit_sign < 0 { "-" } else { "" }, f.unit_exp, f.f);
        }
        (Some(c), Some(None)) => println!("no factorization of complexity {c}"),
        _ => {}
    }
    Ok(0)
}

/// Comma-separated items, each an integer or an inclusive range `a..b`.
fn parse_list(text: &str) -> Result<Vec<i64>, Failure> {
    let bad = |s: &str| Failure::Usage(format!("cannot parse {s:?} as an integer or range a..b"));
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad(item))?;
                let b: i64 = b.trim().parse().map_err(|_| bad(item))?;
                out.extend(a..=b);
            }
            None => out.push(item.parse().map_err(|_| bad(item))?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn cmd_survey(m: &str, n: &str, p: &str, copies: usize, budget: Option<u64>, out: Option<PathBuf>) -> Run {
    let ms = parse_list(m)?;
    let ns = parse_list(n)?;
    let ps = parse_list(p)?
        .into_iter()
        .map(|p| usize::try_from(p).map_err(|_| Failure::Usage(format!("p must be positive, got {p}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let options = ObstructOptions { search: SearchConfig { node_budget: Some(budget.unwrap_or(DEFAULT_NODE_BUDGET)), sequential: false }, confirm_by_search: false };
    let reports = pipeline::survey(&ms, &ns, &ps, copies, options)?;
    let mut sink: Box<dyn Write> = match &out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    for r in &reports {
        writeln!(sink, "{}", r.to_json())?;
    }
    sink.flush()?;
    let inconsistent = reports.iter().filter(|r| !r.consistent_with_theorem_a).count();
    eprintln!("{} reports, {} inconsistent", reports.len(), inconsistent);
    Ok(0)
}
