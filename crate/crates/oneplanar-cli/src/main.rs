use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oneplanar::census::{self, CensusFilter, CensusRecord};
use oneplanar::connectivity::count_nontrivial_separators;
use oneplanar::count::{count_all_cliques, count_cliques_size};
use oneplanar::drawing::format as drawing_format;
use oneplanar::extremal::{self, td as td_format, ClassId, ALL_CLASSES};
use oneplanar::formulas;
use oneplanar::graph6;
use oneplanar::oneplanarity::{decide_1planar_with, DecideError, DecideOptions};
use oneplanar::Graph;

#[derive(Parser, Debug)]
#[command(name = "oneplanar", version, about = "Clique counts, 1-planarity and extremal graphs on small vertex sets")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Clique counts for each graph of a graph6 file.
    Count {
        input: Option<PathBuf>,
        /// Comma-separated clique sizes, `total` for all cliques.
        #[arg(long, default_value = "3")]
        sizes: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Extremal clique count for one order.
    Formula {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "total", required_unless_present = "total")]
        t: Option<usize>,
        #[arg(long)]
        total: bool,
    },
    /// Generate every class at every order and compare counts with the formulas.
    VerifyTables {
        #[arg(long, default_value_t = 21)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        min_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide 1-planarity of each graph of a graph6 file.
    Decide {
        input: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
        /// Write the drawing found for a single input graph here.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit a class or family as graph6.
    Gen(GenArgs),
    /// Filter a planar_code file and report one record per passing graph.
    SkeletonScan(ScanArgs),
    /// Largest separator count in a planar_code file of 3-connected quadrangulations.
    SeparatorBound {
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the separator maximisers of a quadrangulation file with the capped-strip family.
    MaximiserReport {
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Nontrivial separators of a given size for each graph of a graph6 file.
    CountSeparators {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
    /// Tree-decomposition witness for each member of a class in a graph6 file.
    Td {
        input: Option<PathBuf>,
        #[arg(long)]
        class: ClassId,
    },
    /// Check a tree decomposition against a graph and class.
    VerifyTd {
        /// graph6 file holding one graph.
        graph: PathBuf,
        td: PathBuf,
        #[arg(long)]
        class: ClassId,
    },
    /// Check a drawing file.
    ValidateDrawing { input: PathBuf },
}

#[derive(Args, Debug)]
struct Budget {
    #[arg(long)]
    max_crossings: Option<usize>,
    /// Planarity tests allowed per graph.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_tests: Option<u64>,
    /// Wall-clock limit per graph in milliseconds.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    time_limit_ms: Option<u64>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    class: Option<ClassId>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    n: usize,
    /// Required for apollonian networks.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    input: PathBuf,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Keep only quadrangulations.
    #[arg(long)]
    quad: bool,
    #[arg(long)]
    three_connected: bool,
    #[arg(long)]
    max_face_degree: Option<usize>,
    /// Exact face counts as `degree:count`, repeatable.
    #[arg(long = "faces", value_parser = parse_face_count)]
    faces: Vec<(usize, usize)>,
    #[arg(long)]
    min_separators: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Strip,
    Gstar,
    Apollonian,
}

fn parse_face_count(s: &str) -> Result<(usize, usize), String> {
    let (d, c) = s.split_once(':').ok_or_else(|| format!("expected degree:count, got `{s}`"))?;
    Ok((d.trim().parse().map_err(|e| format!("{e}"))?, c.trim().parse().map_err(|e| format!("{e}"))?))
}

enum Failure {
    Input(String),
    Mismatch(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

type Outcome = Result<(), Failure>;

fn read_input(path: Option<&Path>) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    match path {
        Some(p) if p != Path::new("-") => buf = fs::read(p).map_err(|e| input_err(format!("{}: {e}", p.display())))?,
        _ => {
            io::stdin().read_to_end(&mut buf).map_err(input_err)?;
        }
    }
    Ok(buf)
}

fn read_graphs(path: Option<&Path>) -> Result<Vec<Graph>, Failure> {
    let bytes = read_input(path)?;
    let text = String::from_utf8(bytes).map_err(|_| input_err("graph6 input is not ASCII"))?;
    graph6::decode_lines(&text).map_err(input_err)
}

fn emit(out: &mut impl Write, line: &str) -> Outcome {
    writeln!(out, "{line}").map_err(input_err)
}

fn emit_json(out: &mut impl Write, mut v: Value) -> Outcome {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!("v1"));
    }
    emit(out, &v.to_string())
}

#[derive(Clone, Copy)]
enum Size {
    T(usize),
    Total,
}

fn parse_sizes(s: &str) -> Result<Vec<Size>, Failure> {
    s.split(',')
        .map(|x| match x.trim() {
            "total" => Ok(Size::Total),
            t => t.parse().map(Size::T).map_err(|_| input_err(format!("bad clique size `{t}`"))),
        })
        .collect()
}

fn cmd_count(input: Option<&Path>, sizes: &str, format: Format, out: &mut impl Write) -> Outcome {
    let sizes = parse_sizes(sizes)?;
    for (i, g) in read_graphs(input)?.iter().enumerate() {
        let vals: Vec<String> = sizes
            .iter()
            .map(|s| match *s {
                Size::T(t) => count_cliques_size(g, t).to_string(),
                Size::Total => count_all_cliques(g).to_string(),
            })
            .collect();
        match format {
            Format::Json => {
                let names: Vec<String> = sizes.iter().map(|s| if let Size::T(t) = s { t.to_string() } else { "total".into() }).collect();
                let counts: serde_json::Map<String, Value> = names.into_iter().zip(&vals).map(|(k, v)| (k, json!(v.parse::<u128>().unwrap_or(0)))).collect();
                emit_json(out, json!({"index": i, "n": g.n(), "m": g.m(), "counts": counts}))?
            }
            Format::Csv => emit(out, &vals.join(","))?,
            Format::Text => emit(out, &vals.join(" "))?,
        }
    }
    Ok(())
}

fn cmd_formula(n: usize, t: Option<usize>, out: &mut impl Write) -> Outcome {
    let v = match t {
        Some(t) => formulas::f_size(n, t).map_err(input_err)? as u128,
        None => formulas::f_total(n) as u128,
    };
    emit(out, &v.to_string())
}

fn cmd_verify_tables(min_n: usize, max_n: usize, format: Format, out: &mut impl Write) -> Outcome {
    if max_n > extremal::GEN_MAX {
        return Err(input_err(format!("--max-n is capped at {}", extremal::GEN_MAX)));
    }
    let mut bad = 0;
    for c in ALL_CLASSES {
        for n in min_n.max(1)..=max_n {
            let gen = extremal::gen_class_members(c, n).map_err(input_err)?;
            let want = c.extremal(n);
            let counts: Vec<u128> = gen.members.iter().map(|m| c.count(&m.graph)).collect();
            let max = counts.iter().copied().max();
            let ok = !counts.is_empty() && counts.iter().all(|&x| x == want) && gen.tally.arithmetic_failures == 0 && gen.tally.size_failures == 0;
            bad += usize::from(!ok);
            match format {
                Format::Json => emit_json(
                    out,
                    json!({"class": c.as_str(), "n": n, "members": counts.len(), "max": max.map(|x| x.to_string()),
                        "formula": want.to_string(), "stitches": gen.tally.stitches, "ok": ok}),
                )?,
                _ => emit(
                    out,
                    &format!(
                        "{c} n={n} members={} max={} formula={want} stitches={} {}",
                        counts.len(),
                        max.map_or("-".into(), |x| x.to_string()),
                        gen.tally.stitches,
                        if ok { "ok" } else { "MISMATCH" }
                    ),
                )?,
            }
        }
    }
    if bad > 0 {
        return Err(Failure::Mismatch(format!("{bad} class/order pairs disagree with the formulas")));
    }
    Ok(())
}

fn cmd_decide(input: Option<&Path>, budget: &Budget, witness: Option<&Path>, format: Format, out: &mut impl Write) -> Outcome {
    let graphs = read_graphs(input)?;
    if witness.is_some() && graphs.len() != 1 {
        return Err(input_err(format!("--witness needs exactly one input graph, found {}", graphs.len())));
    }
    let opts = DecideOptions {
        max_crossings: budget.max_crossings,
        max_planarity_tests: budget.max_tests,
        time_limit: budget.time_limit_ms.map(Duration::from_millis),
        ..DecideOptions::default()
    };
    for (i, g) in graphs.iter().enumerate() {
        let res = match decide_1planar_with(g, &opts) {
            Ok(r) => r,
            Err(e @ DecideError::BudgetExceeded { .. }) => {
                if format == Format::Json {
                    emit_json(out, json!({"index": i, "verdict": "budget-exceeded"}))?;
                } else {
                    emit(out, "budget-exceeded")?;
                }
                return Err(Failure::Budget(e.to_string()));
            }
            Err(e) => return Err(input_err(e)),
        };
        if let (Some(path), Some(w)) = (witness, &res.witness) {
            fs::write(path, drawing_format::write(w)).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
        }
        match format {
            Format::Json => emit_json(
                out,
                json!({"index": i, "verdict": res.verdict.as_str(), "crossings": res.witness.as_ref().map(|w| w.crossing_count()),
                    "planarity_tests": res.planarity_tests}),
            )?,
            _ => match &res.witness {
                Some(w) => emit(out, &format!("{} {}", res.verdict.as_str(), w.crossing_count()))?,
                None => emit(out, res.verdict.as_str())?,
            },
        }
    }
    Ok(())
}

fn cmd_gen(a: &GenArgs, out: &mut impl Write) -> Outcome {
    let graphs: Vec<Graph> = match (a.class, a.family) {
        (Some(c), _) => extremal::gen_class(c, a.n).map_err(input_err)?,
        (None, Some(Family::Strip)) => {
            if !a.n.is_multiple_of(3) || a.n == 0 {
                return Err(input_err(format!("a strip has 3m vertices, asked for {}", a.n)));
            }
            vec![extremal::gen_strip(a.n / 3).map_err(input_err)?]
        }
        (None, Some(Family::Gstar)) => extremal::gen_gstar(a.n).map_err(input_err)?,
        (None, Some(Family::Apollonian)) => {
            let seed = a.seed.ok_or_else(|| input_err("--seed is required for apollonian networks"))?;
            vec![extremal::gen_apollonian(a.n, seed).map_err(input_err)?]
        }
        (None, None) => return Err(input_err("one of --class or --family is required")),
    };
    for g in &graphs {
        emit(out, &graph6::encode(g))?;
    }
    Ok(())
}

fn record_json(r: &CensusRecord) -> Value {
    let profile: serde_json::Map<String, Value> = r.face_profile.iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
    json!({"index": r.index, "n": r.n, "m": r.m, "face_profile": profile, "three_connected": r.three_connected,
        "sep3_count": r.sep3_count, "flags": r.flags})
}

fn open_planar_code(path: &Path) -> Result<census::PlanarCodeReader<io::BufReader<fs::File>>, Failure> {
    let f = fs::File::open(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    Ok(census::read_planar_code(io::BufReader::new(f)))
}

fn cmd_scan(a: &ScanArgs, out: &mut impl Write) -> Outcome {
    let filter = CensusFilter {
        n: a.n,
        m: a.m,
        three_connected: a.three_connected.then_some(true),
        max_face_degree: a.max_face_degree,
        quadrangulation: a.quad,
        faces_of_degree: a.faces.clone(),
        min_separators: a.min_separators,
    };
    let recs = census::census(open_planar_code(&a.input)?, &filter).map_err(input_err)?;
    match a.format {
        Format::Json => {
            for r in &recs {
                emit_json(out, record_json(r))?;
            }
        }
        _ => {
            emit(out, census::CSV_HEADER)?;
            for r in &recs {
                emit(out, &r.csv_line())?;
            }
        }
    }
    Ok(())
}

fn cmd_separator_bound(input: &Path, n: usize, format: Format, out: &mut impl Write) -> Outcome {
    let b = census::quadrangulation_separator_bound(open_planar_code(input)?, n).map_err(input_err)?;
    match format {
        Format::Json => emit_json(
            out,
            json!({"n": b.n, "graphs": b.graphs, "max_observed": b.max_observed, "required": b.required, "below_required": b.below_required()}),
        ),
        _ => emit(
            out,
            &format!(
                "n={} graphs={} max_observed={} required={} below_required={}",
                b.n,
                b.graphs,
                b.max_observed.map_or("-".into(), |x| x.to_string()),
                b.required,
                b.below_required()
            ),
        ),
    }
}

fn cmd_maximisers(input: &Path, n: usize, format: Format, out: &mut impl Write) -> Outcome {
    let r = census::maximiser_report(open_planar_code(input)?, n).map_err(input_err)?;
    let argmax: Vec<&str> = r.argmax.iter().map(|c| c.as_str()).collect();
    match format {
        Format::Json => emit_json(
            out,
            json!({"n": r.n, "graphs": r.graphs, "max_separators": r.max_separators, "argmax": argmax,
                "gstar_value": r.gstar_value, "gstar_members": r.gstar_members,
                "argmax_in_gstar": r.argmax_in_gstar, "gstar_in_argmax": r.gstar_in_argmax}),
        ),
        _ => {
            let opt = |x: Option<usize>| x.map_or("-".into(), |x| x.to_string());
            emit(
                out,
                &format!(
                    "n={} graphs={} max_separators={} argmax={} gstar_value={} gstar_members={} argmax_in_gstar={} gstar_in_argmax={}",
                    r.n,
                    r.graphs,
                    opt(r.max_separators),
                    r.argmax.len(),
                    opt(r.gstar_value),
                    r.gstar_members,
                    r.argmax_in_gstar,
                    r.gstar_in_argmax
                ),
            )
        }
    }
}

fn cmd_td(input: Option<&Path>, c: ClassId, out: &mut impl Write) -> Outcome {
    let graphs = read_graphs(input)?;
    let mut missing = 0;
    for (i, g) in graphs.iter().enumerate() {
        match extremal::tree_decomposition_witness(c, g) {
            Some(td) => {
                emit(out, &format!("# graph {i}"))?;
                write!(out, "{}", td_format::write(&td)).map_err(input_err)?;
            }
            None => {
                missing += 1;
                emit(out, &format!("# graph {i}: no witness"))?;
            }
        }
    }
    if missing > 0 {
        return Err(Failure::Mismatch(format!("{missing} graphs have no {c} witness")));
    }
    Ok(())
}

fn cmd_verify_td(graph: &Path, td: &Path, c: ClassId, out: &mut impl Write) -> Outcome {
    let graphs = read_graphs(Some(graph))?;
    let [g] = graphs.as_slice() else {
        return Err(input_err(format!("expected one graph, found {}", graphs.len())));
    };
    let text = fs::read_to_string(td).map_err(|e| input_err(format!("{}: {e}", td.display())))?;
    let td = td_format::parse(&text).map_err(input_err)?;
    match extremal::check_td(g, &td, c) {
        Ok(()) => emit(out, "valid"),
        Err(v) => {
            emit(out, &format!("invalid: {v}"))?;
            Err(Failure::Mismatch(v.to_string()))
        }
    }
}

fn cmd_validate_drawing(input: &Path, out: &mut impl Write) -> Outcome {
    let text = fs::read_to_string(input).map_err(|e| input_err(format!("{}: {e}", input.display())))?;
    let d = drawing_format::parse(&text).map_err(input_err)?;
    match d.validate() {
        Ok(()) => emit(
            out,
            &format!("valid n={} m={} crossings={} simple={} rich={}", d.graph().n(), d.graph().m(), d.crossing_count(), d.is_simple(), d.is_rich()),
        ),
        Err(v) => {
            emit(out, &format!("invalid: {v}"))?;
            Err(Failure::Mismatch(v.to_string()))
        }
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global().map_err(input_err)?;
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let res = match &cli.command {
        Command::Count { input, sizes, format } => cmd_count(input.as_deref(), sizes, *format, &mut out),
        Command::Formula { n, t, total: _ } => cmd_formula(*n, *t, &mut out),
        Command::VerifyTables { max_n, min_n, format } => cmd_verify_tables(*min_n, *max_n, *format, &mut out),
        Command::Decide { input, budget, witness, format } => cmd_decide(input.as_deref(), budget, witness.as_deref(), *format, &mut out),
        Command::Gen(a) => cmd_gen(a, &mut out),
        Command::SkeletonScan(a) => cmd_scan(a, &mut out),
        Command::SeparatorBound { input, n, format } => cmd_separator_bound(input, *n, *format, &mut out),
        Command::MaximiserReport { input, n, format } => cmd_maximisers(input, *n, *format, &mut out),
        Command::CountSeparators { input, size } => read_graphs(input.as_deref())
            .and_then(|gs| gs.iter().try_for_each(|g| emit(&mut out, &count_nontrivial_separators(g, *size).to_string()))),
        Command::Td { input, class } => cmd_td(input.as_deref(), *class, &mut out),
        Command::VerifyTd { graph, td, class } => cmd_verify_td(graph, td, *class, &mut out),
        Command::ValidateDrawing { input } => cmd_validate_drawing(input, &mut out),
    };
    out.flush().map_err(input_err)?;
    res
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Input(m) | Failure::Mismatch(m) | Failure::Budget(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
