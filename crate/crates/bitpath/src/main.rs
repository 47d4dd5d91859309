use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bitpath::canonical::{self, DEFAULT_STEP_BUDGET};
use bitpath::graph::{self, Digraph, Labeling, Oracle, DEFAULT_VERTEX_CAP};
use bitpath::numrep::{parse_input, Input, Nat};
use bitpath::vakil;
use bitpath::verify;
use bitpath::{Error, Result};

/// Exit codes: 0 success, 1 usage error, 2 budget exceeded,
/// 3 verification mismatch.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) | Error::Domain(_) => 1,
        Error::Budget { .. } | Error::NoReachableRow => 2,
        Error::Mismatch(_) => 3,
    }
}

#[derive(Parser)]
#[command(
    name = "bitpath",
    version,
    about = "Longest-path invariants of binary subtraction graphs",
    long_about = "Computes f(n), the longest path from n in the graph whose edges remove \
a power of two at a zero bit, by closed form, canonical walk, or exact graph \
search, plus g(n), Steenrod lengths, class reports, delta tables, and DOT exports.\n\n\
Inputs are decimal, 0b binary, 0x hex, or bracket form like [3,2,0]1.\n\
Environment: BITPATH_STEP_BUDGET caps canonical-walk steps, \
BITPATH_VERTEX_CAP caps graph sizes."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Canonical,
    Oracle,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathFormat {
    Int,
    Bin,
    Bracket,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LabelArg {
    Integer,
    Binary,
    Bracket,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Pretty,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Longest-path value f(n)
    F {
        input: String,
        /// formula: closed form; canonical: walk; oracle: graph search;
        /// all: run the three and require agreement
        #[arg(long, value_enum, default_value = "formula")]
        method: Method,
        #[arg(long, default_value_t = 10)]
        radix: u32,
    },
    /// Running maximum g(n) of f over [0, n]
    G {
        input: String,
        #[arg(long, default_value_t = 10)]
        radix: u32,
    },
    /// Steenrod length g(n) + 1
    Steenrod {
        input: String,
        #[arg(long, default_value_t = 10)]
        radix: u32,
    },
    /// Binary-class report: class minimum, bracket, S, S', Vakil status
    Class {
        input: String,
        #[arg(long, default_value_t = 10)]
        radix: u32,
    },
    /// Canonical path from n (pass --reduced for the class-graph walk)
    Path {
        input: String,
        #[arg(long, value_enum, default_value = "int")]
        format: PathFormat,
        /// Walk the class graph, reducing after every step
        #[arg(long)]
        reduced: bool,
        #[arg(long, default_value_t = 10)]
        radix: u32,
    },
    /// DOT export of the reachable graph
    Graph {
        input: String,
        /// Quotient by binary classes first
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value = "integer")]
        labels: LabelArg,
        /// Override the vertex cap for this build
        #[arg(long)]
        max_vertices: Option<u64>,
    },
    /// Per-dimension table of Vakil pairs and delta values
    Table {
        #[arg(long)]
        dim: u64,
        #[arg(long, value_enum, default_value = "pretty")]
        format: TableFormat,
    },
    /// Vakil status; for non-Vakil classes, the reduction to the first
    /// Vakil class of the same dimension
    Vakil { input: String },
    /// Frequency table of g: one line per level s < LEVELS
    Freq {
        #[arg(long)]
        levels: u64,
    },
    /// Cross-check oracle, canonical walk, and closed form on [0, MAX]
    Verify {
        #[arg(long)]
        max: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn env_u64(name: &str, default: u64) -> u64 {
    std::env::var(name)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn step_budget() -> u64 {
    env_u64("BITPATH_STEP_BUDGET", DEFAULT_STEP_BUDGET)
}

fn vertex_cap() -> u64 {
    env_u64("BITPATH_VERTEX_CAP", DEFAULT_VERTEX_CAP)
}

fn fmt_radix(n: &Nat, radix: u32) -> String {
    n.to_string_radix(radix)
}

fn check_radix(radix: u32) -> Result<()> {
    if (2..=36).contains(&radix) {
        Ok(())
    } else {
        Err(Error::domain(format!("radix must be in 2..=36, got {radix}")))
    }
}

fn f_by(input: &Input, method: Method) -> Result<Nat> {
    match method {
        Method::Formula => vakil::f_formula(&input.class_bracket()),
        Method::Canonical => {
            let n = input.to_nat()?;
            canonical::f_canonical(&n, step_budget()).map(Nat::from)
        }
        Method::Oracle => {
            let n = input.to_nat()?;
            let mut oracle = Oracle::new();
            oracle.longest(&n).map(|r| Nat::from(r.length))
        }
        Method::All => unreachable!("handled by cmd_f"),
    }
}

fn cmd_f(input: &str, method: Method, radix: u32) -> Result<()> {
    check_radix(radix)?;
    let input = parse_input(input)?;
    if method == Method::All {
        let formula = f_by(&input, Method::Formula)?;
        let canonical = f_by(&input, Method::Canonical)?;
        let oracle = f_by(&input, Method::Oracle)?;
        println!(
            "oracle={} canonical={} formula={}",
            fmt_radix(&oracle, radix),
            fmt_radix(&canonical, radix),
            fmt_radix(&formula, radix)
        );
        if !(oracle == canonical && canonical == formula) {
            return Err(Error::Mismatch(format!(
                "oracle={oracle} canonical={canonical} formula={formula}"
            )));
        }
    } else {
        let value = match f_by(&input, method) {
            Ok(v) => v,
            Err(Error::NoReachableRow) => {
                eprintln!("note: no usable table row; falling back to the canonical walk");
                f_by(&input, Method::Canonical)?
            }
            Err(e) => return Err(e),
        };
        println!("{}", fmt_radix(&value, radix));
    }
    Ok(())
}

fn cmd_g(input: &str, radix: u32) -> Result<()> {
    check_radix(radix)?;
    let n = parse_input(input)?.to_nat()?;
    println!("{}", fmt_radix(&canonical::g_value(&n), radix));
    Ok(())
}

fn cmd_steenrod(input: &str, radix: u32) -> Result<()> {
    check_radix(radix)?;
    let n = parse_input(input)?.to_nat()?;
    println!("{}", fmt_radix(&canonical::steenrod_length(&n), radix));
    Ok(())
}

fn cmd_class(input: &str, radix: u32) -> Result<()> {
    check_radix(radix)?;
    let parsed = parse_input(input)?;
    let class = parsed.class_bracket();
    let stats = class.stats();
    let (shown, bracket, tail) = match &parsed {
        Input::Number(n) => (fmt_radix(n, radix), n.to_bracket(), n.tail()),
        Input::Bracket(b) => {
            let shown = match b.to_nat() {
                Ok(n) => fmt_radix(&n, radix),
                Err(_) => format!("{b} (too large to expand)"),
            };
            (shown, b.clone(), b.tail_u64().unwrap_or(u64::MAX))
        }
    };
    println!("n: {shown}");
    match class.to_nat() {
        Ok(min) => println!("class: {}", fmt_radix(&min, radix)),
        Err(_) => println!("class: {class} (too large to expand)"),
    }
    println!("bracket: {bracket}");
    println!("tail: {tail}");
    println!("dimension: {}", stats.dimension);
    println!("S: {}", fmt_radix(&stats.s, radix));
    println!("S': {}", fmt_radix(&stats.s_prime, radix));
    match vakil::vakil_pair_of(&class) {
        Some(p) => println!("vakil: yes, pair ({}, {})", p.a, p.k),
        None => println!("vakil: no"),
    }
    Ok(())
}

fn render_vertex(v: &Nat, format: PathFormat, radix: u32) -> String {
    match format {
        PathFormat::Int => fmt_radix(v, radix),
        PathFormat::Bin => v.to_binary_string(),
        PathFormat::Bracket => v.class_min().to_bracket().to_string(),
        PathFormat::Json => unreachable!("json handled separately"),
    }
}

fn cmd_path(input: &str, format: PathFormat, reduced: bool, radix: u32) -> Result<()> {
    check_radix(radix)?;
    let n = parse_input(input)?.to_nat()?;
    let budget = step_budget();
    // (from, to, index) triples of the walk
    let steps: Vec<(Nat, Nat, u64)> = if reduced {
        let p = canonical::canonical_path(&n, budget)?;
        (0..p.indices.len())
            .map(|i| (p.vertices[i].clone(), p.vertices[i + 1].clone(), p.indices[i]))
            .collect()
    } else {
        canonical::tn_trace(&n, budget)?
            .into_iter()
            .map(|s| (s.from, s.to, s.index))
            .collect()
    };
    if format == PathFormat::Json {
        for (from, to, s) in &steps {
            let record = serde_json::json!({
                "from": from.to_string(),
                "to": to.to_string(),
                "s": s,
                "form": "int",
            });
            println!("{record}");
        }
        return Ok(());
    }
    let start = if reduced { n.class_min() } else { n };
    let mut line = render_vertex(&start, format, radix);
    for (_, to, _) in &steps {
        line.push_str(" -> ");
        line.push_str(&render_vertex(to, format, radix));
    }
    println!("{line}");
    Ok(())
}

fn cmd_graph(input: &str, reduced: bool, labels: LabelArg, max_vertices: Option<u64>) -> Result<()> {
    let n = parse_input(input)?.to_nat()?;
    let cap = max_vertices.unwrap_or_else(vertex_cap);
    let g = Digraph::build(&n, reduced, cap)?;
    let labeling = match labels {
        LabelArg::Integer => Labeling::Integer,
        LabelArg::Binary => Labeling::Binary,
        LabelArg::Bracket => Labeling::Bracket,
    };
    print!("{}", g.to_dot(labeling));
    Ok(())
}

fn cmd_table(dim: u64, format: TableFormat) -> Result<()> {
    let table = vakil::enumerate_vakil(dim)?;
    match format {
        TableFormat::Pretty => print!("{}", table.to_pretty()),
        TableFormat::Csv => print!("{}", table.to_csv()),
        TableFormat::Json => println!("{}", table.to_json()),
    }
    Ok(())
}

fn cmd_vakil(input: &str) -> Result<()> {
    let class = parse_input(input)?.class_bracket();
    match vakil::vakil_pair_of(&class) {
        Some(p) => {
            println!("vakil: yes");
            println!("pair: ({}, {})", p.a, p.k);
            println!("f: {}", vakil::f_vakil(p));
            let d = class.dimension() as u64;
            println!("delta: {}", vakil::delta_of_vakil(p, d)?);
        }
        None => {
            println!("vakil: no");
            if class.dimension() == 0 {
                println!("class: [0]");
                return Ok(());
            }
            let r = vakil::reduce_to_first_vakil(&class)?;
            println!("first_vakil: {}", r.class);
            println!("pair: ({}, {})", r.pair.a, r.pair.k);
            println!("steps: {}", r.steps);
            let d = class.dimension() as u64;
            println!("delta: {}", vakil::delta_of_vakil(r.pair, d)?);
        }
    }
    Ok(())
}

fn cmd_freq(levels: u64) -> Result<()> {
    for s in 0..levels {
        println!("{s}\t{}", canonical::freq_value(s));
    }
    Ok(())
}

fn cmd_verify(max: u64, jobs: usize, out: Option<PathBuf>) -> Result<()> {
    if max >= graph::DEFAULT_ORACLE_VALUE_CAP {
        return Err(Error::Budget {
            what: "verify range",
            limit: graph::DEFAULT_ORACLE_VALUE_CAP,
        });
    }
    let report = verify::run(max, jobs)?;
    eprintln!(
        "timings: oracle {:?}, canonical {:?}, formula {:?}",
        report.timings.oracle, report.timings.canonical, report.timings.formula
    );
    if let Some(path) = out {
        let mut file = std::fs::File::create(&path)
            .map_err(|e| Error::domain(format!("cannot write {}: {e}", path.display())))?;
        let json = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
        file.write_all(json.as_bytes())
            .and_then(|()| file.write_all(b"\n"))
            .map_err(|e| Error::domain(format!("cannot write {}: {e}", path.display())))?;
    }
    println!(
        "verified n in [0, {}]: {} values, {} mismatches",
        report.max,
        report.triples.len(),
        report.mismatches.len()
    );
    if !report.is_clean() {
        return Err(Error::Mismatch(format!(
            "{} values disagree (first: {})",
            report.mismatches.len(),
            report.mismatches[0]
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::F { input, method, radix } => cmd_f(&input, method, radix),
        Cmd::G { input, radix } => cmd_g(&input, radix),
        Cmd::Steenrod { input, radix } => cmd_steenrod(&input, radix),
        Cmd::Class { input, radix } => cmd_class(&input, radix),
        Cmd::Path {
            input,
            format,
            reduced,
            radix,
        } => cmd_path(&input, format, reduced, radix),
        Cmd::Graph {
            input,
            reduced,
            labels,
            max_vertices,
        } => cmd_graph(&input, reduced, labels, max_vertices),
        Cmd::Table { dim, format } => cmd_table(dim, format),
        Cmd::Vakil { input } => cmd_vakil(&input),
        Cmd::Freq { levels } => cmd_freq(levels),
        Cmd::Verify { max, jobs, out } => cmd_verify(max, jobs, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through the error path with exit 0
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
