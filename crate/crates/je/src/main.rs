//! `je` — constructions, verification, local analysis, recognition and
//! exhaustive search for equitable 2-partitions of Johnson graphs `J(n,3)`.
//!
//! Exit codes: 0 success, 1 verification failure (non-equitable input,
//! failed identity, uncertified recognition), 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use serde_json::json;

use johnson_equitable::classify::{recognize, RecognizedFamily};
use johnson_equitable::construct::{build_family, Family, PairedBipartition, Signature};
use johnson_equitable::eigenfn::supports_identity;
use johnson_equitable::jgraph::KSubset;
use johnson_equitable::localstruct::{case_histogram, case_profile, nb_array};
use johnson_equitable::partition::TwoPartition;
use johnson_equitable::search::{
    enumerate, verify_classification, SearchProblem, SearchReport, SymmetryMode,
};
use johnson_equitable::Error;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "je", version, about = "equitable 2-partitions of J(n,3)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family instance from a paired bipartition.
    Construct(ConstructArgs),
    /// Check equitability and print the exact quotient matrix.
    Verify(VerifyArgs),
    /// Partition analyses; `--report supports` classifies all partial
    /// differences of the cell-1 characteristic function.
    Analyze(AnalyzeArgs),
    /// Print the nb-array of one vertex, or a case histogram of all
    /// cell-1 vertices.
    Nbarray(NbarrayArgs),
    /// Recognize a partition as an instance of one of the three families.
    Classify(ClassifyArgs),
    /// Exhaustively enumerate partitions with a given quotient matrix.
    Search(SearchArgs),
    /// Survey every candidate matrix at theta = n-7 and classify all
    /// solutions found.
    Report(ReportArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// pi1, pi2 or pi3
    #[arg(long)]
    family: String,
    /// Matched pairs, e.g. "1:5,2:6,3:7,4:8"
    #[arg(long, conflicts_with = "m")]
    pairs: Option<String>,
    /// Use the identity pairing of [2m] instead of explicit pairs
    #[arg(long)]
    m: Option<u32>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// text or json
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    partition: PathBuf,
    /// Only "supports" is available
    #[arg(long, default_value = "supports")]
    report: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NbarrayArgs {
    #[arg(long)]
    partition: PathBuf,
    /// Base vertex as "a,b,c"
    #[arg(long, conflicts_with = "all")]
    vertex: Option<String>,
    /// Profile every cell-1 vertex
    #[arg(long)]
    all: bool,
    /// With --all: print the case histogram
    #[arg(long, requires = "all")]
    summary: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    partition: PathBuf,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: u32,
    /// Eigenvalue: "auto" picks n-7
    #[arg(long, default_value = "auto")]
    theta: String,
    /// Target matrix "a,b;c,d"
    #[arg(long)]
    matrix: String,
    /// none, dedup or canonical
    #[arg(long, default_value = "dedup")]
    symmetry: String,
    /// Node budget, scientific notation accepted (e.g. 1e9)
    #[arg(long, default_value = "1e9")]
    budget_nodes: String,
    /// Worker threads (capped by JE_THREADS)
    #[arg(long)]
    threads: Option<usize>,
    /// Write solutions here, one partition line per solution
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "1e8")]
    budget_nodes: String,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Nbarray(a) => cmd_nbarray(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Search(a) => cmd_search(a),
        Command::Report(a) => cmd_report(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn rat_str(r: Rational64) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn read_partition(path: &PathBuf) -> Result<TwoPartition, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)?;
    Ok(TwoPartition::parse(&text)?)
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_budget(s: &str) -> Result<u64, Error> {
    let v: f64 = s
        .parse()
        .map_err(|e| Error::Parse(format!("bad node budget {s:?}: {e}")))?;
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Parse(format!("bad node budget {s:?}")));
    }
    Ok(v.min(u64::MAX as f64) as u64)
}

/// Worker count: the flag, capped by JE_THREADS when set (default 1).
fn effective_threads(requested: Option<usize>) -> usize {
    let cap = std::env::var("JE_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok());
    let t = requested.or(cap).unwrap_or(1).max(1);
    match cap {
        Some(c) => t.min(c.max(1)),
        None => t,
    }
}

fn quotient_json(p: &TwoPartition) -> serde_json::Value {
    let q = p.quotient();
    let rows: Vec<Vec<String>> = (0..2)
        .map(|i| (0..2).map(|j| rat_str(q.entry(i, j))).collect())
        .collect();
    json!(rows)
}

fn cmd_construct(a: ConstructArgs) -> CmdResult {
    let family = Family::parse(&a.family)?;
    let pb = match (&a.pairs, a.m) {
        (Some(pairs), None) => PairedBipartition::from_pairs(pairs)?,
        (None, Some(m)) => PairedBipartition::identity(m)?,
        _ => return Err("exactly one of --pairs and --m is required".into()),
    };
    let n = pb.n();
    if !(6..=20).contains(&n) {
        return Err(format!("construct supports even n in 6..=20, got {n}").into());
    }
    let built = build_family(&pb, family)?;
    let content = match a.format.as_str() {
        "text" => built.partition.to_text(),
        "json" => format!("{}\n", built.partition.to_json()),
        other => return Err(format!("unknown format {other:?}").into()),
    };
    write_or_print(&a.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let p = read_partition(&a.file)?;
    let equitable = p.is_equitable();
    match a.format.as_str() {
        "json" => {
            let mut doc = json!({
                "schema": SCHEMA,
                "n": p.ctx().n(),
                "equitable": equitable,
                "quotient": quotient_json(&p),
                "cell_sizes": p.cell_sizes(),
            });
            if equitable {
                doc["theta"] = json!(rat_str(p.theta().expect("equitable")));
                // the self-paired matrix shape is handled by other methods
                doc["symmetric"] = json!(p.quotient().entry(0, 1) == p.quotient().entry(1, 0));
            } else if let Some(w) = p.equitable_witness() {
                doc["witness"] = json!({
                    "vertex": w.vertex.to_string(),
                    "cell": w.cell,
                    "observed": w.observed,
                    "required": [rat_str(w.required[0]), rat_str(w.required[1])],
                });
            }
            println!("{doc}");
        }
        _ => {
            let q = p.quotient();
            println!("n={} equitable={}", p.ctx().n(), equitable);
            println!(
                "quotient=[[{}, {}], [{}, {}]]",
                rat_str(q.entry(0, 0)),
                rat_str(q.entry(0, 1)),
                rat_str(q.entry(1, 0)),
                rat_str(q.entry(1, 1))
            );
            if equitable {
                println!("theta={}", rat_str(p.theta().expect("equitable")));
                if p.quotient().entry(0, 1) == p.quotient().entry(1, 0) {
                    println!("note: symmetric quotient matrix");
                }
            } else if let Some(w) = p.equitable_witness() {
                println!(
                    "witness: vertex {} in cell {} sees [{}, {}], required [{}, {}]",
                    w.vertex,
                    w.cell,
                    w.observed[0],
                    w.observed[1],
                    rat_str(w.required[0]),
                    rat_str(w.required[1])
                );
            }
        }
    }
    Ok(if equitable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_analyze(a: AnalyzeArgs) -> CmdResult {
    if a.report != "supports" {
        return Err(format!("unknown report {:?}", a.report).into());
    }
    let p = read_partition(&a.partition)?;
    let r = supports_identity(&p)?;
    let doc = json!({
        "schema": SCHEMA,
        "t1": r.t1,
        "t2": r.t2,
        "t0": r.t0,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "holds": r.holds,
    });
    write_or_print(&a.out, &format!("{doc}\n"))?;
    Ok(if r.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_nbarray(a: NbarrayArgs) -> CmdResult {
    let p = read_partition(&a.partition)?;
    if let Some(v) = &a.vertex {
        let t = KSubset::parse(v)?;
        let arr = nb_array(&p, &t)?;
        print!("{}", arr.render());
        if p.indicator(&t)? == 1 && p.theta().is_ok() {
            if let Ok(profile) = case_profile(&p, &t) {
                println!("case {}", profile.case_id);
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    if a.all {
        let hist = case_histogram(&p)?;
        if a.summary {
            for (case, count) in &hist {
                println!("{case}: {count}");
            }
        } else {
            for (r, t) in p.ctx().vertices().iter().enumerate() {
                if p.cell_of_rank(r) != 1 {
                    continue;
                }
                let profile = case_profile(&p, t)?;
                println!("{t}: {}", profile.case_id);
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    Err("one of --vertex or --all is required".into())
}

fn structure_json(s: &Signature) -> serde_json::Value {
    match s {
        Signature::Bipartition { first, second } => json!({ "bipartition": [first, second] }),
        Signature::Matching(pairs) => json!({ "matching": pairs }),
        Signature::Both {
            first,
            second,
            matching,
        } => json!({ "bipartition": [first, second], "matching": matching }),
    }
}

fn cmd_classify(a: ClassifyArgs) -> CmdResult {
    let p = read_partition(&a.partition)?;
    let r = recognize(&p)?;
    let doc = json!({
        "schema": SCHEMA,
        "family": r.family.name(),
        "structure": r.structure.as_ref().map(structure_json),
        "certified": r.certified,
    });
    println!("{doc}");
    Ok(if r.certified && r.family != RecognizedFamily::Unknown {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn parse_matrix(s: &str) -> Result<[[i64; 2]; 2], Error> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 2 {
        return Err(Error::Parse(format!("matrix {s:?} must have two rows")));
    }
    let mut m = [[0i64; 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let entries: Vec<&str> = row.split(',').collect();
        if entries.len() != 2 {
            return Err(Error::Parse(format!("row {row:?} must have two entries")));
        }
        for (j, e) in entries.iter().enumerate() {
            m[i][j] = e
                .trim()
                .parse()
                .map_err(|err| Error::Parse(format!("bad entry {e:?}: {err}")))?;
        }
    }
    Ok(m)
}

fn search_report_json(report: &SearchReport) -> serde_json::Value {
    let recognized: Vec<serde_json::Value> = report
        .solutions
        .iter()
        .map(|s| {
            json!({
                "family": s.recognition.as_ref().map_or("n/a", |r| r.family.name()),
                "certified": s.recognition.as_ref().is_some_and(|r| r.certified),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "n": report.n,
        "theta": report.theta,
        "matrix": report.matrix,
        "symmetry": format!("{:?}", report.symmetry).to_lowercase(),
        "solutions": report.solutions.len(),
        "raw_solutions": report.raw_solutions,
        "nodes": report.nodes,
        "conflicts": report.prune.conflicts,
        "forced": report.prune.forced,
        "complete": report.complete,
        "frontier": report.frontier,
        "recognition": recognized,
    })
}

fn cmd_search(a: SearchArgs) -> CmdResult {
    if !(6..=14).contains(&a.n) {
        return Err(format!("search supports n in 6..=14, got {}", a.n).into());
    }
    let matrix = parse_matrix(&a.matrix)?;
    let problem = SearchProblem::new(a.n, matrix)?;
    if a.theta != "auto" {
        let requested: i64 = a
            .theta
            .parse()
            .map_err(|e| Error::Parse(format!("bad theta {:?}: {e}", a.theta)))?;
        if requested != problem.theta() {
            return Err(format!(
                "matrix implies theta {}, but --theta {} was requested",
                problem.theta(),
                requested
            )
            .into());
        }
    }
    let problem = problem
        .with_symmetry(SymmetryMode::parse(&a.symmetry)?)
        .with_node_budget(parse_budget(&a.budget_nodes)?)
        .with_threads(effective_threads(a.threads));
    let report = match enumerate(&problem) {
        Ok(r) => r,
        Err(Error::BudgetExhausted { partial, .. }) => *partial,
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &a.out {
        // shared header, then one cell line per solution; the header plus
        // any single line below it is a valid partition file
        let mut body = format!("n={} w=3\n", report.n);
        for s in &report.solutions {
            let text = s.partition.to_text();
            let cells = text.lines().nth(1).expect("partition text has two lines");
            body.push_str(cells);
            body.push('\n');
        }
        std::fs::write(path, body)?;
    }
    println!("{}", search_report_json(&report));
    Ok(ExitCode::SUCCESS)
}

fn cmd_report(a: ReportArgs) -> CmdResult {
    let survey = verify_classification(
        a.n,
        parse_budget(&a.budget_nodes)?,
        effective_threads(a.threads),
    )?;
    let matrices: Vec<serde_json::Value> = survey
        .matrices
        .iter()
        .map(|m| {
            json!({
                "matrix": m.matrix,
                "skipped_symmetric": m.skipped_symmetric,
                "complete": m.complete,
                "solutions": m.solutions,
                "certified_pi1": m.certified[0],
                "certified_pi2": m.certified[1],
                "certified_pi3": m.certified[2],
                "uncertified": m.uncertified,
                "uncertified_examples": m.uncertified_examples,
                "nodes": m.nodes,
            })
        })
        .collect();
    let doc = json!({
        "schema": SCHEMA,
        "n": survey.n,
        "theta": survey.theta,
        "complete": survey.complete,
        "matrices": matrices,
    });
    write_or_print(&a.out, &format!("{doc}\n"))?;
    Ok(ExitCode::SUCCESS)
}
