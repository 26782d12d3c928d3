use std::panic;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use shade_core::closure::{
    classify_closure, closure_from_shade, shade_from_closure, split_quasi_closure,
};
use shade_core::graph::{
    linesearch_map, nucleus_pandemic_check, EdgeInfection, SourceVertex, VertexInfection,
};
use shade_core::intervals::{count_partitions, partition_from_shade, validate_partition};
use shade_core::morse::{
    build_elser_matching, build_noninfecting_complex, explore_open_questions, gf2_reduced_homology,
    multi_source_complex, verify_acyclic, ExploreOptions, SimplicialComplex, DEFAULT_SEARCH_BUDGET,
    HOMOLOGY_CONVENTION,
};
use shade_core::shade::{classify_map, dual_map};
use shade_core::{GroundSet, Subset, SubsetMap};
use shade_lab::formats::{
    parse_complex, parse_graph, parse_labels, parse_matching, parse_partition, parse_points,
    parse_poset, parse_table, GraphFile,
};
use shade_lab::suite::{replay, run_suite, Suite, VerificationRun, Witness, SCHEMA_VERSION};
use shade_lab::{read_file, LabError};

#[derive(Parser)]
#[command(
    name = "shade-lab",
    version,
    about = "Checks shade maps, closures, interval partitions and Morse matchings"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for generated instances.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest edge count of generated graphs.
    #[arg(long, global = true)]
    max_edges: Option<usize>,
    /// Re-check the instance stored in a witness file.
    #[arg(long, global = true, value_name = "WITNESS")]
    replay: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Shade of one edge (or vertex) set.
    Infect {
        file: String,
        /// Comma-separated edge names, `-` for none.
        #[arg(long)]
        set: String,
        #[arg(long)]
        vertex_mode: bool,
    },
    /// Pandemic family and its alternating sum.
    Pandemic {
        file: String,
        #[arg(long)]
        vertex_mode: bool,
    },
    /// Shade-axiom diagnostics of a map.
    Classify(MapInput),
    #[command(subcommand)]
    Closure(ClosureCommand),
    /// Both directions between a closure and its shade map.
    Cryptomorphism(ClosureInput),
    #[command(subcommand)]
    Bip(BipCommand),
    #[command(subcommand)]
    Morse(MorseCommand),
    /// Complexes of one or more sources, their duals and homology.
    Explore(ExploreArgs),
    /// Run a verification suite.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct MapInput {
    #[arg(long, group = "input")]
    graph: Option<String>,
    #[arg(long, group = "input")]
    poset: Option<String>,
    #[arg(long, group = "input")]
    points: Option<String>,
    /// JSON array of subset codes, inline or as a file path.
    #[arg(long, group = "input")]
    table: Option<String>,
    #[arg(long)]
    vertex_mode: bool,
    /// Poset lower shade (default).
    #[arg(long)]
    lower: bool,
    /// Dual map `E ∖ m(E ∖ F)`.
    #[arg(long)]
    dual: bool,
    /// Convex shade of points (default).
    #[arg(long)]
    convex: bool,
    /// Conic pseudo-shade of points.
    #[arg(long)]
    conic: bool,
}

#[derive(Args)]
struct ClosureInput {
    /// Linesearch closure of a graph.
    #[arg(long, group = "input")]
    graph: Option<String>,
    /// Down-set closure of a poset.
    #[arg(long, group = "input")]
    poset: Option<String>,
    /// Convex closure of points.
    #[arg(long, group = "input")]
    points: Option<String>,
    #[arg(long, group = "input")]
    table: Option<String>,
    /// Interval closure instead of the down-set closure.
    #[arg(long)]
    interval: bool,
}

#[derive(Subcommand)]
enum ClosureCommand {
    /// Closure-property diagnostics.
    Classify(ClosureInput),
    /// Split a quasi-closure into its loops and a closure on the rest.
    Split(ClosureInput),
}

#[derive(Subcommand)]
enum BipCommand {
    /// Check that blocks partition the Boolean lattice.
    Validate {
        partition: String,
        #[arg(long)]
        elements: Option<usize>,
    },
    /// Partition of a shade map.
    FromShade(MapInput),
    /// Number of partitions of the lattice on `n` elements.
    Count { n: usize },
}

#[derive(Args)]
struct ComplexArgs {
    #[arg(long)]
    graph: Option<String>,
    /// Comma-separated source vertices; defaults to the file's source.
    #[arg(long)]
    sources: Option<String>,
    /// Comma-separated target edges; defaults to every edge.
    #[arg(long)]
    target_edges: Option<String>,
    /// Complex as `{ground, faces}` JSON.
    #[arg(long)]
    complex: Option<String>,
}

#[derive(Subcommand)]
enum MorseCommand {
    /// Non-infecting complex of a graph.
    Build(ComplexArgs),
    /// Elser matching of a single-source complex.
    Match(ComplexArgs),
    /// Completeness and acyclicity of a matching.
    Verify {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        matching: String,
    },
    /// Reduced homology over GF(2).
    Homology(ComplexArgs),
    /// Alexander dual.
    Dual(ComplexArgs),
    Explore(ExploreArgs),
}

#[derive(Args)]
struct ExploreArgs {
    #[command(flatten)]
    complex: ComplexArgs,
    /// Node budget of each collapsibility search.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct SuiteArgs {
    suite: Option<Suite>,
    #[arg(long)]
    instances: Option<usize>,
    /// Check a single graph file instead of a generated stream.
    #[arg(long)]
    graph: Option<String>,
    /// Where to write the first failure as a witness file.
    #[arg(long)]
    witness_out: Option<String>,
}

/// What a command produced: a report and whether its checks held.
struct Outcome {
    report: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok<T: Serialize>(report: &T, text: String) -> Result<Self, LabError> {
        Ok(Self {
            report: serde_json::to_value(report)?,
            text,
            code: 0,
        })
    }

    fn checked(mut self, held: bool) -> Self {
        if !held {
            self.code = 1;
        }
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_mode = cli.json;
    let result = panic::catch_unwind(|| run(cli));
    match result {
        Ok(Ok(outcome)) => {
            if json_mode {
                let wrapped = json!({ "schema": SCHEMA_VERSION, "report": outcome.report });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&wrapped).expect("values serialize")
                );
            } else {
                println!("{}", outcome.text.trim_end());
            }
            ExitCode::from(outcome.code)
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => {
            eprintln!("error: internal invariant breach");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, LabError> {
    if let Some(path) = &cli.replay {
        let witness: Witness = serde_json::from_str(&read_file(path)?)
            .map_err(|e| LabError::Usage(format!("{path}: not a witness file: {e}")))?;
        let run = suite_run(&cli, witness.suite, None);
        return suite_outcome(replay(&witness, &run)?, None);
    }
    let Some(command) = &cli.command else {
        return Err(LabError::Usage("no command given (try --help)".into()));
    };
    match command {
        Command::Infect {
            file,
            set,
            vertex_mode,
        } => infect(file, set, *vertex_mode),
        Command::Pandemic { file, vertex_mode } => pandemic(file, *vertex_mode),
        Command::Classify(input) => {
            let m = load_map(input)?;
            let d = classify_map(&m);
            let text = pretty(&d)?;
            Ok(Outcome::ok(&d, text)?.checked(input.graph.is_none() || d.is_shade_map()))
        }
        Command::Closure(ClosureCommand::Classify(input)) => {
            let tau = load_closure(input)?;
            let d = classify_closure(&tau)?;
            Outcome::ok(&d, pretty(&d)?)
        }
        Command::Closure(ClosureCommand::Split(input)) => {
            let tau = load_closure(input)?;
            let split = split_quasi_closure(&tau)?;
            let ground = tau.ground();
            let report = json!({
                "loops": ground.format(split.loops()),
                "rest": split.rest().iter().map(|&e| ground.label(e)).collect::<Vec<_>>(),
                "restricted_closure": split.restricted_closure().codes(),
                "rejoins": split.rejoin() == tau,
            });
            let held = split.rejoin() == tau;
            Ok(Outcome::ok(&report, pretty(&report)?)?.checked(held))
        }
        Command::Cryptomorphism(input) => cryptomorphism(input),
        Command::Bip(cmd) => bip(cmd),
        Command::Morse(cmd) => morse(cmd),
        Command::Explore(args) => explore(args),
        Command::Suite(args) => {
            let suite = args
                .suite
                .ok_or_else(|| LabError::Usage("suite name required".into()))?;
            let run = suite_run(&cli, suite, args.instances);
            let report = match &args.graph {
                Some(path) => {
                    let text = read_file(path)?;
                    let file = parse_graph(&text)?;
                    let witness = Witness {
                        schema: SCHEMA_VERSION,
                        suite,
                        check: String::new(),
                        detail: String::new(),
                        instance: shade_lab::suite::Instance::Graph {
                            graph: file.graph.to_string(),
                            target_seed: run.seed,
                        },
                    };
                    let mut report = replay(&witness, &run)?;
                    report.instance_source = format!("graph file {path}");
                    report
                }
                None => run_suite(&run)?,
            };
            suite_outcome(report, args.witness_out.as_deref())
        }
    }
}

fn suite_run(cli: &Cli, suite: Suite, instances: Option<usize>) -> VerificationRun {
    let mut run = VerificationRun::new(suite);
    if let Some(seed) = cli.seed {
        run.seed = seed;
    }
    if let Some(m) = cli.max_edges {
        run.max_edges = m;
    }
    if let Some(n) = instances {
        run.instances = n;
    }
    run
}

fn suite_outcome(
    report: shade_lab::suite::SuiteReport,
    witness_out: Option<&str>,
) -> Result<Outcome, LabError> {
    if let (Some(path), Some(w)) = (witness_out, &report.first_failure) {
        let text = serde_json::to_string_pretty(w)?;
        std::fs::write(path, text).map_err(|source| LabError::Io {
            path: path.to_owned(),
            source,
        })?;
    }
    let mut text = format!(
        "suite {}: {} ({} instances, seed {})\n{}\n",
        report.suite,
        if report.passed { "pass" } else { "FAIL" },
        report.instances,
        report.seed,
        report.instance_source
    );
    for c in &report.checks {
        text.push_str(&format!(
            "  {:<32} {:>9} evaluated {:>6} failed\n",
            c.check, c.evaluated, c.failed
        ));
    }
    for n in &report.notes {
        text.push_str(&format!("  note: {n}\n"));
    }
    for e in &report.internal_errors {
        text.push_str(&format!("  internal error: {e}\n"));
    }
    if let Some(w) = &report.first_failure {
        text.push_str(&format!("  first failure: {} ({})\n", w.check, w.detail));
    }
    let code = report.exit_code();
    Ok(Outcome {
        report: serde_json::to_value(&report)?,
        text,
        code,
    })
}

fn pretty<T: Serialize>(value: &T) -> Result<String, LabError> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
fn json_arg(arg: &str) -> Result<String, LabError> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok(arg.to_owned())
    } else {
        read_file(arg)
    }
}

fn load_graph(path: &str) -> Result<GraphFile, LabError> {
    Ok(parse_graph(&read_file(path)?)?)
}

fn infect(path: &str, set: &str, vertex_mode: bool) -> Result<Outcome, LabError> {
    let file = load_graph(path)?;
    let source = file.require_source()?;
    let g = &file.graph;
    let (ground, shade, full) = if vertex_mode {
        let vi = VertexInfection::new(g, source)?;
        let ground = vi.ground();
        let f = parse_labels(&ground, set)?;
        (ground.clone(), vi.shade(f), ground.full())
    } else {
        let ground = g.edge_ground();
        let f = parse_labels(&ground, set)?;
        (
            ground.clone(),
            EdgeInfection::new(g, source).shade(f),
            ground.full(),
        )
    };
    let report = json!({
        "source": g.vertex_name(source.index()),
        "set": set,
        "shade": labels(&ground, shade),
        "pandemic": shade == full,
    });
    let text = format!(
        "Shade = {}\npandemic: {}\n",
        ground.format(shade),
        shade == full
    );
    Outcome::ok(&report, text)
}

fn labels(ground: &GroundSet, s: Subset) -> Vec<String> {
    s.elements().map(|e| ground.label(e).to_owned()).collect()
}

fn pandemic(path: &str, vertex_mode: bool) -> Result<Outcome, LabError> {
    let file = load_graph(path)?;
    let source = file.require_source()?;
    let g = &file.graph;
    let (ground, family, sum) = if vertex_mode {
        let vi = VertexInfection::new(g, source)?;
        (vi.ground(), vi.pandemic_family()?, vi.pandemic_sum()?)
    } else {
        let inf = EdgeInfection::new(g, source);
        (g.edge_ground(), inf.pandemic_family()?, inf.pandemic_sum()?)
    };
    let hypothesis = ground.size() > 0;
    let mut report = json!({
        "source": g.vertex_name(source.index()),
        "mode": if vertex_mode { "vertex" } else { "edge" },
        "family": family.iter().map(|&f| labels(&ground, f)).collect::<Vec<_>>(),
        "sizes": family.iter().map(|f| f.len()).collect::<Vec<_>>(),
        "alternating_sum": sum,
    });
    let mut text: String = family
        .iter()
        .map(|&f| format!("{}\n", ground.format(f)))
        .collect();
    text.push_str(&format!("{} sets, alternating sum {sum}\n", family.len()));
    if !hypothesis {
        let note = "ground set is empty; the vanishing hypothesis fails";
        report["note"] = json!(note);
        text.push_str(&format!("note: {note}\n"));
    }
    if vertex_mode && g.is_simple() && g.is_connected() {
        let nucleus = nucleus_pandemic_check(g, source)?;
        report["nucleus"] = serde_json::to_value(&nucleus)?;
        text.push_str(&format!(
            "nuclei containing the source: {}, bijection: {}\n",
            nucleus.nuclei, nucleus.bijection
        ));
    }
    Ok(Outcome::ok(&report, text)?.checked(!hypothesis || sum == 0))
}

fn load_map(input: &MapInput) -> Result<SubsetMap, LabError> {
    let m = if let Some(path) = &input.graph {
        let file = load_graph(path)?;
        let source = file.require_source()?;
        if input.vertex_mode {
            VertexInfection::new(&file.graph, source)?.shade_map()?
        } else {
            EdgeInfection::new(&file.graph, source).shade_map()?
        }
    } else if let Some(path) = &input.poset {
        let p = parse_poset(&read_file(path)?)?;
        let lower = p.lower_shade();
        if input.lower && input.dual {
            return Err(LabError::Usage(
                "--lower and --dual exclude each other".into(),
            ));
        }
        lower
    } else if let Some(path) = &input.points {
        let set = parse_points(&read_file(path)?)?;
        if input.convex && input.conic {
            return Err(LabError::Usage(
                "--convex and --conic exclude each other".into(),
            ));
        }
        if input.conic {
            set.conic_pseudo_shade()
        } else {
            set.convex_shade()
        }
    } else if let Some(arg) = &input.table {
        parse_table(&json_arg(arg)?)?
    } else {
        return Err(LabError::Usage(
            "one of --graph, --poset, --points or --table is required".into(),
        ));
    };
    Ok(if input.dual { dual_map(&m) } else { m })
}

fn load_closure(input: &ClosureInput) -> Result<SubsetMap, LabError> {
    if let Some(path) = &input.graph {
        let file = load_graph(path)?;
        Ok(linesearch_map(&file.graph, file.require_source()?)?)
    } else if let Some(path) = &input.poset {
        let p = parse_poset(&read_file(path)?)?;
        Ok(if input.interval {
            p.interval_closure()
        } else {
            p.downset_closure()
        })
    } else if let Some(path) = &input.points {
        Ok(parse_points(&read_file(path)?)?.convex_closure())
    } else if let Some(arg) = &input.table {
        Ok(parse_table(&json_arg(arg)?)?)
    } else {
        Err(LabError::Usage(
            "one of --graph, --poset, --points or --table is required".into(),
        ))
    }
}

fn cryptomorphism(input: &ClosureInput) -> Result<Outcome, LabError> {
    let tau = load_closure(input)?;
    let shade = shade_from_closure(&tau)?;
    let back = closure_from_shade(&shade)?;
    let again = shade_from_closure(&back)?;
    let d = classify_map(&shade);
    // constructions with an independent shade map are compared against it
    let expected: Option<SubsetMap> = if let Some(path) = &input.poset {
        if input.interval {
            None
        } else {
            Some(parse_poset(&read_file(path)?)?.lower_shade())
        }
    } else if let Some(path) = &input.points {
        Some(parse_points(&read_file(path)?)?.convex_shade())
    } else if let Some(path) = &input.graph {
        let file = load_graph(path)?;
        let edge = EdgeInfection::with_rule(
            &file.graph,
            file.require_source()?,
            shade_core::graph::EndpointRule::Source,
        );
        Some(dual_map(&edge.shade_map()?))
    } else {
        None
    };
    let agrees = expected.as_ref().map(|m| *m == shade);
    let report = json!({
        "closure": tau.codes(),
        "shade": shade.codes(),
        "shade_is_inclusion_reversing_shade_map": d.is_shade_map() && d.is_inclusion_reversing(),
        "closure_roundtrip": back == tau,
        "shade_roundtrip": again == shade,
        "agrees_with_direct_construction": agrees,
    });
    let held = back == tau && again == shade && agrees != Some(false);
    Ok(Outcome::ok(&report, pretty(&report)?)?.checked(held))
}

fn bip(cmd: &BipCommand) -> Result<Outcome, LabError> {
    match cmd {
        BipCommand::Validate {
            partition,
            elements,
        } => {
            let p = parse_partition(&json_arg(partition)?, *elements)?;
            let r = validate_partition(&p);
            let text = format!(
                "{} blocks on {} elements, cardinality sum {}: {}\n",
                r.block_count,
                r.ground_size,
                r.cardinality_sum,
                if r.valid { "valid" } else { "invalid" }
            );
            Ok(Outcome::ok(&r, text)?.checked(r.valid))
        }
        BipCommand::FromShade(input) => {
            let m = load_map(input)?;
            let p = partition_from_shade(&m)?;
            let text: String = p
                .blocks()
                .iter()
                .map(|b| {
                    format!(
                        "[{}, {}]\n",
                        m.ground().format(b.lower()),
                        m.ground().format(b.upper())
                    )
                })
                .collect();
            Outcome::ok(&p, text)
        }
        BipCommand::Count { n } => {
            let count = count_partitions(*n)?;
            Outcome::ok(
                &json!({ "elements": n, "partitions": count }),
                format!("{count}\n"),
            )
        }
    }
}

fn source_list(file: &GraphFile, sources: Option<&str>) -> Result<Vec<usize>, LabError> {
    match sources {
        Some(list) => list
            .split(',')
            .map(|name| {
                let name = name.trim();
                file.graph
                    .vertex(name)
                    .ok_or_else(|| LabError::Usage(format!("unknown source vertex `{name}`")))
            })
            .collect(),
        None => Ok(vec![file.require_source()?.index()]),
    }
}

struct GraphComplex {
    file: GraphFile,
    sources: Vec<usize>,
    target: Subset,
}

fn graph_complex(args: &ComplexArgs) -> Result<Option<GraphComplex>, LabError> {
    let Some(path) = &args.graph else {
        return Ok(None);
    };
    let file = load_graph(path)?;
    let sources = source_list(&file, args.sources.as_deref())?;
    let ground = file.graph.edge_ground();
    let target = match &args.target_edges {
        Some(list) => parse_labels(&ground, list)?,
        None => ground.full(),
    };
    Ok(Some(GraphComplex {
        file,
        sources,
        target,
    }))
}

fn load_complex(args: &ComplexArgs) -> Result<SimplicialComplex, LabError> {
    if let Some(gc) = graph_complex(args)? {
        Ok(multi_source_complex(
            &gc.file.graph,
            &gc.sources,
            gc.target,
            Default::default(),
        )?)
    } else if let Some(arg) = &args.complex {
        Ok(parse_complex(&json_arg(arg)?)?)
    } else {
        Err(LabError::Usage("--graph or --complex is required".into()))
    }
}

fn complex_json(c: &SimplicialComplex) -> Value {
    let ground = c.ground();
    json!({
        "convention": HOMOLOGY_CONVENTION,
        "ground": ground.size(),
        "labels": ground.labels(),
        "faces": c.faces().iter().map(|f| f.code()).collect::<Vec<_>>(),
        "facets": c.facets().iter().map(|&f| labels(ground, f)).collect::<Vec<_>>(),
        "face_count": c.face_count(),
        "dimension": c.dimension(),
        "f_vector": c.f_vector(),
        "euler_sum": c.euler_sum(),
    })
}

fn complex_text(c: &SimplicialComplex) -> String {
    let ground = c.ground();
    let mut text = format!(
        "{} faces, f-vector {:?}, euler sum {}\nfacets:\n",
        c.face_count(),
        c.f_vector(),
        c.euler_sum()
    );
    for f in c.facets() {
        text.push_str(&format!("  {}\n", ground.format(f)));
    }
    text
}

fn single_source(gc: &GraphComplex) -> Result<SourceVertex, LabError> {
    match gc.sources.as_slice() {
        [v] => Ok(gc.file.graph.source(*v)?),
        _ => Err(LabError::Usage(
            "a matching needs exactly one source".into(),
        )),
    }
}

fn morse(cmd: &MorseCommand) -> Result<Outcome, LabError> {
    match cmd {
        MorseCommand::Build(args) => {
            let c = load_complex(args)?;
            Outcome::ok(&complex_json(&c), complex_text(&c))
        }
        MorseCommand::Match(args) => {
            let gc = graph_complex(args)?
                .ok_or_else(|| LabError::Usage("--graph is required".into()))?;
            let source = single_source(&gc)?;
            let map = EdgeInfection::new(&gc.file.graph, source).shade_map()?;
            let a = build_noninfecting_complex(&map, gc.target)?;
            let mu = build_elser_matching(&map, gc.target)?;
            let report = mu.verify()?;
            let verdict = verify_acyclic(&mu)?;
            let ground = a.ground();
            let pairs: Vec<[u32; 2]> = mu
                .pairs()
                .iter()
                .map(|&(l, u)| [l.code(), u.code()])
                .collect();
            let out = json!({
                "convention": HOMOLOGY_CONVENTION,
                "complex": complex_json(&a),
                "pairs": pairs,
                "report": report,
                "acyclic": verdict.acyclic,
            });
            let mut text = String::new();
            for (l, u) in mu.pairs() {
                text.push_str(&format!("{} -> {}\n", ground.format(l), ground.format(u)));
            }
            text.push_str(&format!(
                "complete: {}, acyclic: {}\n",
                report.complete, verdict.acyclic
            ));
            Ok(Outcome::ok(&out, text)?.checked(report.complete && verdict.acyclic))
        }
        MorseCommand::Verify { complex, matching } => {
            let c = parse_complex(&json_arg(complex)?)?;
            let mu = parse_matching(&json_arg(matching)?, c)?;
            let report = mu.verify()?;
            let out = if report.complete {
                let verdict = verify_acyclic(&mu)?;
                json!({ "report": report, "acyclic": verdict.acyclic, "cycle": verdict.cycle })
            } else {
                let n = mu.complex().ground().size();
                let cyc = shade_core::morse::find_cycle(n, mu.pairs());
                json!({ "report": report, "acyclic": cyc.is_none(), "cycle": cyc })
            };
            let text = format!(
                "complete: {}, acyclic: {}, alternating sum {}\n",
                report.complete, out["acyclic"], report.alternating_sum
            );
            Outcome::ok(&out, text)
        }
        MorseCommand::Homology(args) => {
            let c = load_complex(args)?;
            let h = gf2_reduced_homology(&c)?;
            let out = json!({ "convention": HOMOLOGY_CONVENTION, "homology": h });
            let text = format!(
                "reduced Betti numbers over GF(2), from dimension -1: {:?}\n",
                h.reduced_betti
            );
            Ok(Outcome::ok(&out, text)?.checked(h.euler_consistent))
        }
        MorseCommand::Dual(args) => {
            let c = load_complex(args)?;
            let d = c.alexander_dual();
            let held = d.alexander_dual() == c;
            Ok(Outcome::ok(&complex_json(&d), complex_text(&d))?.checked(held))
        }
        MorseCommand::Explore(args) => explore(args),
    }
}

fn explore(args: &ExploreArgs) -> Result<Outcome, LabError> {
    let gc = graph_complex(&args.complex)?
        .ok_or_else(|| LabError::Usage("--graph is required".into()))?;
    let options = ExploreOptions {
        search_budget: args.budget,
        ..ExploreOptions::default()
    };
    let report = explore_open_questions(&gc.file.graph, &gc.sources, gc.target, options)?;
    let mut text = format!("convention: {}\n", report.convention);
    for s in &report.per_source {
        text.push_str(&format!(
            "source {}: {} faces, Betti {:?}, {}; dual Betti {:?}\n",
            s.source,
            s.complex.face_count,
            s.complex.homology.reduced_betti,
            s.complex.collapsibility,
            s.dual.homology.reduced_betti
        ));
    }
    text.push_str(&format!(
        "union: {} faces, Betti {:?}, {}; dual Betti {:?}; concentrated: {}\n",
        report.union.complex.face_count,
        report.union.complex.homology.reduced_betti,
        report.union.complex.collapsibility,
        report.union.dual.homology.reduced_betti,
        report.union.homology_concentrated
    ));
    Outcome::ok(&report, text)
}
