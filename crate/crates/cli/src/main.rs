//! `esparql`: evaluate eSPARQL queries over FourStar graph files.

mod repl;

use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use esparql_core::algebra::{EvalError, Evaluator, DEFAULT_ENUMERATION_LIMIT};
use esparql_core::differential::{self, Report};
use esparql_core::fixtures::DATA_BASE;
use esparql_core::model::DEFAULT_VOCAB_NAMESPACE;
use esparql_core::oracle::DEFAULT_CAP;
use esparql_core::syntax::{compile_query, parse_graph, serialize_relation, Format, GraphError, QueryError, TermStyle};
use esparql_core::{BeliefVocabulary, EvalMode, FourGraph, FourRelation, FourValue, Query};

#[derive(Parser)]
#[command(name = "esparql", version, about = "Four-valued belief queries over RDF-star graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a query and print the resulting relation.
    Query(QueryArgs),
    /// Parse a graph and/or a query and report problems.
    Check(CheckArgs),
    /// Compare the engine with the brute-force oracle on random cases.
    Diff(DiffArgs),
    /// Read queries interactively; a blank line ends each query.
    Repl(ReplArgs),
}

#[derive(Args, Clone)]
struct Names {
    /// Prefix that bare names such as `<PopeDI>` resolve against.
    #[arg(long, default_value = DATA_BASE)]
    base_iri: String,
    /// Namespace of the believesToBe* predicates.
    #[arg(long, env = "ESPARQL_VOCAB_NS", default_value = DEFAULT_VOCAB_NAMESPACE)]
    vocab_ns: String,
}

#[derive(Args, Clone)]
struct Output {
    #[arg(long, value_enum, default_value_t = ModeArg::ActiveDomain)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Also print the default as a `*` row.
    #[arg(long)]
    show_default: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct QuerySource {
    /// File holding the query.
    #[arg(long)]
    query: Option<PathBuf>,
    /// Query text given inline.
    #[arg(long = "eval")]
    inline: Option<String>,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    source: QuerySource,
    #[command(flatten)]
    output: Output,
    #[command(flatten)]
    names: Names,
    /// Largest number of mappings the evaluator may enumerate.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    cap: u128,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    query: Option<PathBuf>,
    #[arg(long = "eval")]
    inline: Option<String>,
    #[command(flatten)]
    names: Names,
}

#[derive(Args)]
struct DiffArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    /// Largest table the oracle may build; bigger cases are skipped.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(flatten)]
    names: Names,
    /// Corrupt engine results before comparing them.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct ReplArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
    #[command(flatten)]
    names: Names,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    ActiveDomain,
    Open,
}

impl From<ModeArg> for EvalMode {
    fn from(m: ModeArg) -> EvalMode {
        match m {
            ModeArg::ActiveDomain => EvalMode::ActiveDomain,
            ModeArg::Open => EvalMode::Open,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    JsonLines,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::JsonLines => Format::JsonLines,
            FormatArg::Csv => Format::Csv,
        }
    }
}

/// An error message and the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Failure {
        Failure::new(2, format!("graph: {e}"))
    }
}

impl From<QueryError> for Failure {
    fn from(e: QueryError) -> Failure {
        match e {
            QueryError::Parse(p) => Failure::new(2, format!("query: {p}")),
            QueryError::IllFormed(d) => Failure::new(3, format!("query: {d}")),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Failure {
        let code = match e {
            EvalError::IllFormed(_) => 3,
            EvalError::NonFinitelySupported { .. } => 4,
            EvalError::ResourceLimit { .. } => 5,
        };
        Failure::new(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(5, format!("{}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> Result<FourGraph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn vocabulary(names: &Names) -> Result<BeliefVocabulary, Failure> {
    BeliefVocabulary::with_namespace(&names.vocab_ns).map_err(|e| Failure::new(2, format!("--vocab-ns: {e}")))
}

fn query_text(path: Option<&PathBuf>, inline: Option<&String>) -> Result<Option<String>, Failure> {
    match (path, inline) {
        (Some(p), _) => read(p).map(Some),
        (None, Some(text)) => Ok(Some(text.clone())),
        (None, None) => Ok(None),
    }
}

/// Compiles, evaluates and serializes; shared by `query` and the REPL.
pub struct Session {
    pub graph: Option<FourGraph>,
    pub vocab: BeliefVocabulary,
    pub base: String,
    pub mode: EvalMode,
    pub format: Format,
    pub show_default: bool,
    pub limit: u128,
}

impl Session {
    pub fn compile(&self, text: &str) -> Result<Query, Failure> {
        Ok(compile_query(text, &self.base)?)
    }

    pub fn run(&self, text: &str) -> Result<String, Failure> {
        let graph = self
            .graph
            .as_ref()
            .ok_or_else(|| Failure::new(5, "no graph loaded (use :load <path>)"))?;
        let q = self.compile(text)?;
        let r = Evaluator::new(&self.vocab, self.mode).with_limit(self.limit).run(&q, graph)?;
        Ok(serialize_relation(&r, self.format, self.show_default, &TermStyle::with_base(&self.base)))
    }
}

fn cmd_query(args: QueryArgs) -> Result<String, Failure> {
    let session = Session {
        graph: Some(load_graph(&args.graph)?),
        vocab: vocabulary(&args.names)?,
        base: args.names.base_iri.clone(),
        mode: args.output.mode.into(),
        format: args.output.format.into(),
        show_default: args.output.show_default,
        limit: args.cap,
    };
    let text = query_text(args.source.query.as_ref(), args.source.inline.as_ref())?.expect("clap requires a source");
    session.run(&text)
}

fn cmd_check(args: CheckArgs) -> Result<String, Failure> {
    let mut report = String::new();
    if let Some(path) = &args.graph {
        let g = load_graph(path)?;
        report.push_str(&format!(
            "{}: {} stated triple(s), default {}\n",
            path.display(),
            g.len(),
            g.default_value()
        ));
    }
    if let Some(text) = query_text(args.query.as_ref(), args.inline.as_ref())? {
        vocabulary(&args.names)?;
        let q = compile_query(&text, &args.names.base_iri)?;
        let vars: Vec<String> = q.in_scope().map_err(EvalError::from)?.iter().map(|v| v.to_string()).collect();
        report.push_str(&format!("query: ok, answers bind {}\n", vars.join(" ")));
    }
    if report.is_empty() {
        return Err(Failure::new(2, "nothing to check (give --graph and/or --query)"));
    }
    Ok(report)
}

/// Reports every conflict as true, as if one entry of the ⊕ table were
/// wrong.
fn corrupt(r: FourRelation) -> FourRelation {
    let flip = |v: FourValue| if v == FourValue::Conflict { FourValue::True } else { v };
    FourRelation::from_parts(
        r.vars().clone(),
        flip(r.default_value()),
        r.exceptions().iter().map(|(m, v)| (m.clone(), flip(*v))),
        r.domain().clone(),
    )
}

fn cmd_diff(args: DiffArgs) -> Result<(String, bool), Failure> {
    let vocab = vocabulary(&args.names)?;
    let fault = args.inject_fault;
    let report: Report = differential::run(args.cases, args.seed, args.cap, &vocab, |q, g, v| {
        let r = esparql_core::eval(q, g, v, EvalMode::ActiveDomain)?;
        Ok(if fault { corrupt(r) } else { r })
    });
    let mut out = format!(
        "seed {}: {} case(s) agreed, {} skipped (oracle cap {})\n",
        args.seed, report.agreed, report.skipped, args.cap
    );
    if let Some(c) = &report.counterexample {
        out.push_str(&format!("counterexample:\n{c}"));
    }
    Ok((out, report.passed()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Query(args) => cmd_query(args).map(|s| (s, true)),
        Command::Check(args) => cmd_check(args).map(|s| (s, true)),
        Command::Diff(args) => cmd_diff(args),
        Command::Repl(args) => {
            let session = (|| {
                Ok::<_, Failure>(Session {
                    graph: args.graph.as_deref().map(load_graph).transpose()?,
                    vocab: vocabulary(&args.names)?,
                    base: args.names.base_iri.clone(),
                    mode: args.output.mode.into(),
                    format: args.output.format.into(),
                    show_default: args.output.show_default,
                    limit: DEFAULT_ENUMERATION_LIMIT,
                })
            })();
            session.and_then(|mut s| {
                let stdin = io::stdin();
                let prompt = stdin.is_terminal();
                repl::run(stdin.lock(), io::stdout(), &mut s, prompt)
                    .map(|_| (String::new(), true))
                    .map_err(|e| Failure::new(5, e.to_string()))
            })
        }
    };
    match result {
        Ok((out, ok)) => {
            print!("{out}");
            let _ = io::stdout().flush();
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
