use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use frankl_core::abundance::{
    abundant_elements, basis_sets, best_witness, cover_injection, dim2_witness, is_covert,
    padding_witness, CoverOutcome, CovertVerdict, ElementReport,
};
use frankl_core::family::parse_family;
use frankl_core::poset::{cover_dag, dimension, maximal_members, minimal_members};
use frankl_core::quotient::{separating_quotient, verify_quotient};
use frankl_core::search::{
    enumerate, enumerate_parallel, verify_claims_with, verify_quotients, verify_topologies,
    EnumerationQuery, Filters, Sampling, SearchFinding, MAX_EXHAUSTIVE_N,
};
use frankl_core::tent::tent_abundant;
use frankl_core::topology::{abundant_point, parse_topology};
use frankl_core::witness::WitnessDoc;
use frankl_core::{Error, InjectionWitness, ParseOptions, Result, SetFamily};

#[derive(Parser)]
#[command(
    name = "frankl",
    version,
    about = "Abundant elements of union-closed families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Family statistics and a per-element table.
    Analyze(AnalyzeArgs),
    /// Injection witness for one element, as JSON.
    Witness(WitnessArgs),
    /// Separating quotient and its preservation checks.
    Quotient(FileArgs),
    /// Abundant point of a finite topology.
    Topology(FileArgs),
    /// Abundant element of F ∪ T for an α-tent T dominating F.
    Tent(TentArgs),
    /// Enumerate families over [n] and stream findings as JSON lines.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct FamilyInput {
    /// Family file: {"sets": [[...], ...], "universe": [...]?}
    path: PathBuf,
    /// Accept the family {∅}.
    #[arg(long)]
    allow_trivial: bool,
}

#[derive(Args)]
struct FileArgs {
    path: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodChoice {
    /// cover, then covert, then dim2, then padding
    Auto,
    Cover,
    Covert,
    Dim2,
    Padding,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: FamilyInput,
    #[arg(long)]
    json: bool,
    /// Attach a witness for this element.
    #[arg(long, value_name = "ELEMENT")]
    witness: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodChoice,
    /// Print the Hasse diagram in DOT format instead of the report.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    input: FamilyInput,
    element: String,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodChoice,
}

#[derive(Args)]
struct TentArgs {
    /// The dominated family F (need not be union-closed).
    family: PathBuf,
    /// The tent T.
    tent: PathBuf,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(short, long)]
    n: usize,
    /// Check every claim instead of counting.
    #[arg(long)]
    claims: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample this many families instead of enumerating all of them.
    #[arg(long, value_name = "COUNT")]
    sample: Option<u64>,
    #[arg(long)]
    union_closed: bool,
    #[arg(long)]
    separating: bool,
    #[arg(long)]
    nontrivial: bool,
    #[arg(long)]
    min_dim: Option<usize>,
    #[arg(long)]
    max_dim: Option<usize>,
    /// Split the exhaustive count into this many parallel partitions.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
struct AnalysisReport {
    members: usize,
    universe: Vec<String>,
    union_closed: bool,
    separating: bool,
    dimension: usize,
    minimal_members: Vec<Vec<String>>,
    maximal_members: Vec<Vec<String>>,
    basis_sets: Vec<Vec<String>>,
    elements: Vec<ElementReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDoc>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_family(path: &Path, allow_trivial: bool) -> Result<SetFamily> {
    let mut opts = ParseOptions::from_env()?;
    opts.allow_trivial |= allow_trivial;
    Ok(parse_family(&read(path)?, &opts)?.family)
}

fn not_covert(detail: String) -> Error {
    Error::Precondition {
        hypothesis: "the covert-element construction",
        detail,
    }
}

fn witness_for(family: &SetFamily, label: &str, method: MethodChoice) -> Result<InjectionWitness> {
    let x = family.require_element(label)?;
    let res = match method {
        MethodChoice::Auto => best_witness(family, x),
        MethodChoice::Cover => match cover_injection(family, x)? {
            CoverOutcome::Injection(w) => Ok(w),
            CoverOutcome::Uncovered(a) => Err(Error::Precondition {
                hypothesis: "the cover construction",
                detail: format!("{} has no {label}-cover", family.show(&a)),
            }),
        },
        MethodChoice::Covert => match is_covert(family, x)? {
            CovertVerdict::Covert(w) => Ok(w),
            CovertVerdict::SingletonMember => Err(not_covert(format!(
                "{{{label}}} is a member, so {label} is not covert"
            ))),
            CovertVerdict::Blocked(a) => Err(not_covert(format!(
                "{} ∪ {{{label}}} is not a member",
                family.show(&a)
            ))),
        },
        MethodChoice::Dim2 => dim2_witness(family, x),
        MethodChoice::Padding => padding_witness(family, x),
    };
    match res {
        Err(Error::NotAbundant {
            element,
            count_in,
            count_out,
        }) if family.neighborhoods().is_optimal(x) => Err(Error::Precondition {
            hypothesis: "abundance",
            detail: format!(
                "{element} is optimal but not abundant ({count_in} members contain it, {count_out} do not)"
            ),
        }),
        other => other,
    }
}

fn sets(family: &SetFamily, v: &[frankl_core::ESet]) -> Vec<Vec<String>> {
    v.iter().map(|s| family.labels_of(s)).collect()
}

fn analysis(family: &SetFamily, witness: Option<WitnessDoc>) -> AnalysisReport {
    AnalysisReport {
        members: family.len(),
        universe: family.labels().to_vec(),
        union_closed: family.is_union_closed(),
        separating: family.is_separating(),
        dimension: dimension(family),
        minimal_members: sets(family, &minimal_members(family)),
        maximal_members: sets(family, &maximal_members(family)),
        basis_sets: sets(family, &basis_sets(family)),
        elements: abundant_elements(family),
        witness,
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn show_sets(v: &[Vec<String>]) -> String {
    v.iter()
        .map(|s| format!("{{{}}}", s.join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn analysis_table(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "members       {}", r.members);
    let _ = writeln!(
        out,
        "universe      {} {{{}}}",
        r.universe.len(),
        r.universe.join(",")
    );
    let _ = writeln!(out, "union-closed  {}", yes(r.union_closed));
    let _ = writeln!(out, "separating    {}", yes(r.separating));
    let _ = writeln!(out, "dimension     {}", r.dimension);
    let _ = writeln!(out, "minimal       {}", show_sets(&r.minimal_members));
    let _ = writeln!(out, "maximal       {}", show_sets(&r.maximal_members));
    let _ = writeln!(out, "basis         {}", show_sets(&r.basis_sets));
    let width = r
        .elements
        .iter()
        .map(|e| e.element.len())
        .max()
        .unwrap_or(0)
        .max(7);
    let _ = writeln!(
        out,
        "\n{:width$}  {:>5}  {:>7}  abundant  optimal  covert",
        "element", "|F_x|", "|F_x^c|"
    );
    for e in &r.elements {
        let _ = writeln!(
            out,
            "{:width$}  {:>5}  {:>7}  {:8}  {:7}  {}",
            e.element,
            e.count_in,
            e.count_out,
            yes(e.abundant),
            yes(e.optimal),
            yes(e.covert)
        );
    }
    out
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string(v).map_err(|e| Error::Internal(e.to_string()))
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<String> {
    let family = load_family(&a.input.path, a.input.allow_trivial)?;
    if a.dot {
        return Ok(cover_dag(&family).to_dot(&family));
    }
    let witness = match &a.witness {
        Some(x) => Some(witness_for(&family, x, a.method)?.to_doc(&family)),
        None => None,
    };
    let report = analysis(&family, witness);
    if a.json {
        return Ok(to_json(&report)? + "\n");
    }
    let mut out = analysis_table(&report);
    if let Some(w) = &report.witness {
        out.push('\n');
        out.push_str(&to_json(w)?);
        out.push('\n');
    }
    Ok(out)
}

fn cmd_witness(a: &WitnessArgs) -> Result<String> {
    let family = load_family(&a.input.path, a.input.allow_trivial)?;
    let w = witness_for(&family, &a.element, a.method)?;
    Ok(to_json(&w.to_doc(&family))? + "\n")
}

fn cmd_quotient(a: &FileArgs) -> Result<String> {
    let family = load_family(&a.path, false)?;
    let q = separating_quotient(&family)?;
    let checks = verify_quotient(&family, &q);
    if !checks.passed() {
        return Err(Error::Internal(format!(
            "quotient checks failed: {checks:?}"
        )));
    }
    let doc = q.to_doc(&family, &checks);
    if a.json {
        return Ok(to_json(&doc)? + "\n");
    }
    let mut out = String::new();
    for c in &doc.classes {
        let _ = writeln!(out, "{:8} {{{}}}", c.name, c.elements.join(","));
    }
    let _ = writeln!(out, "\nquotient  {}", show_sets(&doc.quotient));
    for (a, b) in &doc.bijection {
        let _ = writeln!(out, "  {{{}}} -> {{{}}}", a.join(","), b.join(","));
    }
    let _ = writeln!(out, "\nchecks    all passed");
    Ok(out)
}

#[derive(Serialize)]
struct TopologyDoc {
    point: String,
    class: Vec<String>,
    opens: usize,
    containing: usize,
    witness: WitnessDoc,
}

fn cmd_topology(a: &FileArgs) -> Result<String> {
    let space = parse_topology(&read(&a.path)?)?;
    let opens = space.opens();
    let p = abundant_point(&space)?;
    let doc = TopologyDoc {
        point: opens.label(p.point).to_string(),
        class: p
            .class
            .iter()
            .map(|&c| opens.label(c).to_string())
            .collect(),
        opens: opens.len(),
        containing: opens.count_with(p.point),
        witness: p.witness.to_doc(opens),
    };
    if a.json {
        return Ok(to_json(&doc)? + "\n");
    }
    Ok(format!(
        "point     {}\nclass     {{{}}}\nopens     {} of {} contain it\n\n{}\n",
        doc.point,
        doc.class.join(","),
        doc.containing,
        doc.opens,
        to_json(&doc.witness)?
    ))
}

fn cmd_tent(a: &TentArgs) -> Result<String> {
    let family = load_family(&a.family, true)?;
    let tent = load_family(&a.tent, false)?;
    let out = tent_abundant(&family, &tent)?;
    Ok(to_json(&out.to_doc())? + "\n")
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<(String, bool)> {
    let sample = a.sample.map(|count| Sampling {
        count,
        seed: a.seed,
    });
    let mut findings: Vec<SearchFinding> = Vec::new();
    if a.claims {
        findings.extend(verify_claims_with(a.n, sample)?);
        if sample.is_none() {
            // Every family at n <= 3; union-closed ones at n = 4.
            findings.push(verify_quotients(a.n, a.n > 3)?);
            if a.n >= 1 && a.n <= MAX_EXHAUSTIVE_N {
                findings.push(verify_topologies(a.n)?);
            }
        }
    } else {
        let q = EnumerationQuery {
            n: a.n,
            filters: Filters {
                union_closed: a.union_closed,
                separating: a.separating,
                nontrivial: a.nontrivial,
                min_dim: a.min_dim,
                max_dim: a.max_dim,
            },
            sample,
        };
        let count = |_: &_| Ok(());
        findings.push(if a.jobs > 1 {
            enumerate_parallel(&q, "count", a.jobs, count)?
        } else {
            enumerate(&q, "count", count)?
        });
    }
    let mut out = String::new();
    for f in &findings {
        out.push_str(&to_json(f)?);
        out.push('\n');
    }
    Ok((out, findings.iter().all(|f| f.passed)))
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let ok = |s: String| (s, true);
    match &cli.command {
        Command::Analyze(a) => cmd_analyze(a).map(ok),
        Command::Witness(a) => cmd_witness(a).map(ok),
        Command::Quotient(a) => cmd_quotient(a).map(ok),
        Command::Topology(a) => cmd_topology(a).map(ok),
        Command::Tent(a) => cmd_tent(a).map(ok),
        Command::Enumerate(a) => cmd_enumerate(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                log::error!("at least one finding failed");
                ExitCode::from(4)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
