use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use forcekit::formulas::Parameter;
use forcekit::linalg::{sample_pattern_matrix, weighted_laplacian};
use forcekit::report::COMPUTED;
use forcekit::search::DEFAULT_BUDGET;
use forcekit::tables::{build_table, render_tsv, Table};
use forcekit::{
    analyze, run_suite, Error, FamilySpec, Graph, ParamReport, SearchBudget, Suite, SuiteConfig,
    SuiteReport,
};

/// Zero forcing and failed zero forcing numbers of small graphs.
#[derive(Parser)]
#[command(name = "forcekit", version)]
struct Cli {
    /// Node cap for each exact search.
    #[arg(long, global = true, env = "FORCEKIT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Z, Z+, F, F+ of one graph.
    Analyze(AnalyzeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Reproduce a summary table with computed columns.
    Table {
        /// 1 for F(G), 2 for F+(G).
        which: u8,
        #[arg(long)]
        json: bool,
    },
    /// Print a sampled pattern matrix of a family instance.
    Matrix {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Weighted Laplacian instead of a general pattern matrix.
        #[arg(long)]
        laplacian: bool,
        /// Subtract the k-th smallest eigenvalue from the diagonal.
        #[arg(long)]
        shift: Option<usize>,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Family description such as `wheel:7` or `cycle:3+path:2`.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    family: Option<String>,
    /// Edge-list file: a header `n m` followed by `m` lines `u v`.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = RuleChoice::Both)]
    rule: RuleChoice,
    /// Comma-separated subset of F, Fplus, Z, Zplus.
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
    #[arg(long)]
    json: bool,
    /// Include per-parameter wall-clock times.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleChoice {
    Standard,
    Psd,
    Both,
}

/// Exit status for a failed run.
enum Failure {
    Input(anyhow::Error),
    Budget(anyhow::Error),
    Other(anyhow::Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.into()),
            Error::Parse { .. }
            | Error::VertexCount { .. }
            | Error::Loop(_)
            | Error::DuplicateEdge(..)
            | Error::VertexOutOfRange { .. }
            | Error::Family { .. } => Failure::Input(e.into()),
            other => Failure::Other(other.into()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let budget = SearchBudget::new(cli.budget);
    let outcome = match cli.command {
        Command::Analyze(args) => cmd_analyze(args, budget),
        Command::Verify(args) => cmd_verify(args, budget),
        Command::Table { which, json } => cmd_table(which, json, budget),
        Command::Matrix {
            family,
            seed,
            laplacian,
            shift,
        } => cmd_matrix(&family, seed, laplacian, shift),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn parse_parameter(name: &str) -> Result<Parameter, Failure> {
    match name.trim().to_ascii_lowercase().as_str() {
        "f" => Ok(Parameter::F),
        "fplus" | "f+" => Ok(Parameter::Fplus),
        "z" => Ok(Parameter::Z),
        "zplus" | "z+" => Ok(Parameter::Zplus),
        _ => Err(Failure::Input(anyhow::anyhow!(
            "unknown parameter `{name}`; expected F, Fplus, Z or Zplus"
        ))),
    }
}

fn wanted_parameters(rule: RuleChoice, names: &[String]) -> Result<Vec<Parameter>, Failure> {
    let mut wanted: Vec<Parameter> = if names.is_empty() {
        COMPUTED.to_vec()
    } else {
        names
            .iter()
            .map(|n| parse_parameter(n))
            .collect::<Result<_, _>>()?
    };
    wanted.retain(|p| match rule {
        RuleChoice::Both => true,
        RuleChoice::Standard => matches!(p, Parameter::F | Parameter::Z),
        RuleChoice::Psd => matches!(p, Parameter::Fplus | Parameter::Zplus),
    });
    Ok(wanted)
}

fn cmd_analyze(args: AnalyzeArgs, budget: SearchBudget) -> Result<(), Failure> {
    let wanted = wanted_parameters(args.rule, &args.params)?;
    let (label, spec, graph) = match (&args.family, &args.file) {
        (Some(family), _) => {
            let spec: FamilySpec = family.parse()?;
            let graph = spec.build()?;
            (spec.to_string(), Some(spec), graph)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(Failure::Input)?;
            let graph = Graph::parse_edge_list(&text)?;
            (path.display().to_string(), None, graph)
        }
        (None, None) => unreachable!("clap requires one graph source"),
    };
    let report = analyze(&graph, &label, spec.as_ref(), &wanted, budget, args.timings)?;
    if args.json {
        emit(&to_json(&report)?);
    } else {
        emit(&analyze_tsv(&report));
    }
    Ok(())
}

fn analyze_tsv(report: &ParamReport) -> String {
    let mut out = String::from("graph\tn\tparameter\tvalue\twitness\tmethod\tpredicted\tagrees\n");
    for c in &report.computed {
        let prediction = report
            .predictions
            .iter()
            .find(|p| p.prediction.parameter == c.parameter);
        let (predicted, agrees) = match prediction {
            Some(p) => {
                let bound = match p.prediction.exactness {
                    forcekit::formulas::Exactness::Exact => "",
                    forcekit::formulas::Exactness::LowerBound => ">=",
                };
                (
                    format!("{bound}{} ({})", p.prediction.value, p.prediction.source),
                    p.agrees.map_or("-".to_string(), |a| a.to_string()),
                )
            }
            None => ("-".to_string(), "-".to_string()),
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            report.graph,
            report.n,
            c.parameter,
            c.result.value,
            c.result.witness,
            serde_json::to_value(c.result.method)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
            predicted,
            agrees
        ));
    }
    if !report.theorems.is_empty() {
        out.push_str("\ntheorem\tgraph\texpected\tobserved\tpass\tdetail\n");
        for t in &report.theorems {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                t.theorem, t.graph, t.expected, t.observed, t.pass, t.detail
            ));
        }
    }
    out.push_str(&format!("\nconsistent\t{}\n", report.consistent));
    out
}

fn cmd_verify(args: VerifyArgs, budget: SearchBudget) -> Result<(), Failure> {
    let suite: Suite = args.suite.parse()?;
    let cfg = SuiteConfig {
        max_n: args.max_n,
        seed: args.seed,
        budget,
    };
    let report = run_suite(suite, &cfg)?;
    if args.json {
        emit(&to_json(&report)?);
    } else {
        emit(&verify_tsv(&report));
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verify_tsv(report: &SuiteReport) -> String {
    let mut out = String::from("theorem\tpassed\tfailed\n");
    for (theorem, tally) in &report.tallies {
        out.push_str(&format!("{theorem}\t{}\t{}\n", tally.passed, tally.failed));
    }
    for (heading, list) in [("failure", &report.failures), ("erratum", &report.errata)] {
        for t in list {
            out.push_str(&format!(
                "{heading}\t{}\t{}\texpected {}\tobserved {}\t{}\n",
                t.theorem, t.graph, t.expected, t.observed, t.detail
            ));
        }
    }
    out.push_str(&format!(
        "suite {}: {} instances, {} checks, {} failures, {} errata\n",
        report.suite,
        report.instances,
        report.checks(),
        report.failures.len(),
        report.errata.len()
    ));
    out
}

fn cmd_table(which: u8, json: bool, budget: SearchBudget) -> Result<(), Failure> {
    let table = Table::from_number(which)?;
    let rows = build_table(table, budget)?;
    if json {
        emit(&to_json(&rows)?);
    } else {
        emit(&render_tsv(table, &rows));
    }
    Ok(())
}

fn cmd_matrix(
    family: &str,
    seed: u64,
    laplacian: bool,
    shift: Option<usize>,
) -> Result<(), Failure> {
    let g = family.parse::<FamilySpec>()?.build()?;
    let mut matrix = if laplacian {
        weighted_laplacian(&g, seed)
    } else {
        sample_pattern_matrix(&g, seed)
    };
    if let Some(k) = shift {
        matrix = matrix.shift_to_eigenvalue(k);
    }
    emit(&matrix.to_text());
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Other(e.into()))?;
    text.push('\n');
    Ok(text)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}
