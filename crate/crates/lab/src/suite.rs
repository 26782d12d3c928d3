//! The verification driver.
//!
//! A run expands into an ordered list of [`Instance`]s, each checked
//! independently (in parallel), and the tallies are merged in instance order
//! so the report does not depend on scheduling. The first failure is kept as
//! a [`Witness`] holding the whole instance, which `replay` re-checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use shade_core::closure::{
    all_antimatroidal_quasi_closures, classify_closure, closure_from_shade, shade_from_closure,
    split_quasi_closure,
};
use shade_core::geometry::RationalPointSet;
use shade_core::graph::{
    linesearch_map, nucleus_pandemic_check, EdgeInfection, EndpointRule, Multigraph,
    VertexInfection,
};
use shade_core::intervals::{
    block_of, enumerate_partitions, partition_from_shade, shade_from_partition, validate_partition,
    BooleanIntervalPartition,
};
use shade_core::morse::{
    alexander_dual, explore_open_questions, find_cycle, gf2_reduced_homology, multi_source_complex,
    verify_acyclic, ExploreOptions, NoninfectingFamily,
};
use shade_core::poset::{all_labelled_posets, Poset};
use shade_core::shade::{classify_map, dual_map, shade_alternating_sums, ShadeDiagnostics};
use shade_core::{BooleanInterval, GroundSet, Subset, SubsetMap};

use crate::formats::parse_graph;
use crate::generate::{random_connected_simple, random_multigraph, random_point_set};
use crate::oracle::cycle_by_tuple_search;
use crate::LabError;

pub const SCHEMA_VERSION: u32 = 1;

/// Graph suites refuse edge counts above this.
pub const MAX_SUITE_EDGES: usize = 16;

/// By default every subset of `E` is a target up to this many edges; beyond
/// it a seeded sample of [`SAMPLED_TARGETS`] targets is used.
pub const EXHAUSTIVE_TARGET_EDGES: usize = 8;
pub const SAMPLED_TARGETS: usize = 32;

/// Complexes up to this size are also checked by literal tuple search.
pub const TUPLE_SEARCH_FACES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Elser,
    Vertex,
    ShadeAxioms,
    CryptomorphismAntimatroid,
    CryptomorphismBip,
    Morse,
    Explore,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Elser,
        Suite::Vertex,
        Suite::ShadeAxioms,
        Suite::CryptomorphismAntimatroid,
        Suite::CryptomorphismBip,
        Suite::Morse,
        Suite::Explore,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Elser => "elser",
            Suite::Vertex => "vertex",
            Suite::ShadeAxioms => "shade-axioms",
            Suite::CryptomorphismAntimatroid => "cryptomorphism-antimatroid",
            Suite::CryptomorphismBip => "cryptomorphism-bip",
            Suite::Morse => "morse",
            Suite::Explore => "explore",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Parameters of one suite run. Identical runs produce identical reports
/// apart from `elapsed_ms`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRun {
    pub suite: Suite,
    pub seed: u64,
    /// Number of random graphs (and point sets) drawn.
    pub instances: usize,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Node budget of each collapsibility search in `explore`.
    pub search_budget: u64,
    /// Graphs with at most this many edges use every target `G ⊆ E`.
    pub all_targets_up_to: usize,
    /// `explore` and `cryptomorphism-bip` skip graphs with more edges.
    pub checked_edges_up_to: usize,
}

impl VerificationRun {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            seed: 42,
            instances: 200,
            min_vertices: 2,
            max_vertices: 6,
            max_edges: 12,
            search_budget: 20_000,
            all_targets_up_to: match suite {
                Suite::Morse => MAX_SUITE_EDGES,
                _ => EXHAUSTIVE_TARGET_EDGES,
            },
            checked_edges_up_to: 10,
        }
    }

    fn validate(&self) -> Result<(), LabError> {
        if self.max_edges > MAX_SUITE_EDGES {
            return Err(LabError::Usage(format!(
                "suite {} accepts at most {MAX_SUITE_EDGES} edges (got {})",
                self.suite, self.max_edges
            )));
        }
        let explore_cap = shade_core::morse::MAX_EXPLORE_EDGES;
        if self.suite == Suite::Explore && self.checked_edges_up_to > explore_cap {
            return Err(LabError::Usage(format!(
                "suite explore checks at most {explore_cap} edges (got {})",
                self.checked_edges_up_to
            )));
        }
        if self.min_vertices == 0 || self.min_vertices > self.max_vertices {
            return Err(LabError::Usage(format!(
                "vertex range {}..={} is empty or starts at 0",
                self.min_vertices, self.max_vertices
            )));
        }
        Ok(())
    }
}

/// One unit of work, self-contained so that a witness can be replayed
/// without regenerating the stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    /// A graph in the text format; `target_seed` fixes sampled targets.
    Graph { graph: String, target_seed: u64 },
    /// A table of `2^n` subset codes.
    Table { codes: Vec<u32> },
    /// Strict-below masks of a labelled poset.
    Poset { below: Vec<u32> },
    /// Rational coordinates as `p/q` strings.
    Points { rows: Vec<Vec<String>> },
    Partition {
        elements: usize,
        blocks: Vec<BooleanInterval>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub check: String,
    pub evaluated: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub schema: u32,
    pub suite: Suite,
    pub check: String,
    pub detail: String,
    pub instance: Instance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: Suite,
    pub seed: u64,
    pub instance_source: String,
    pub instances: usize,
    pub checks: Vec<CheckTally>,
    pub notes: Vec<String>,
    pub internal_errors: Vec<String>,
    pub first_failure: Option<Witness>,
    pub passed: bool,
    /// Wall-clock time; the only field allowed to differ between runs.
    pub elapsed_ms: Option<u64>,
}

impl SuiteReport {
    /// 0 pass, 1 failed check, 3 internal error.
    pub fn exit_code(&self) -> u8 {
        if !self.internal_errors.is_empty() {
            3
        } else if !self.passed {
            1
        } else {
            0
        }
    }

    pub fn without_timing(&self) -> Self {
        Self {
            elapsed_ms: None,
            ..self.clone()
        }
    }

    pub fn evaluated(&self, check: &str) -> u64 {
        self.checks
            .iter()
            .find(|c| c.check == check)
            .map_or(0, |c| c.evaluated)
    }
}

#[derive(Default)]
struct Tally {
    counts: BTreeMap<&'static str, (u64, u64)>,
    failure: Option<(&'static str, String)>,
    notes: BTreeSet<String>,
    internal: Vec<String>,
}

impl Tally {
    fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let entry = self.counts.entry(name).or_default();
        entry.0 += 1;
        if !ok {
            entry.1 += 1;
            if self.failure.is_none() {
                self.failure = Some((name, detail()));
            }
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.insert(note.into());
    }
}

fn instance_stream(run: &VerificationRun) -> (Vec<Instance>, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
    let graphs = |rng: &mut ChaCha8Rng, max_edges: usize| -> Vec<Instance> {
        (0..run.instances)
            .map(|_| {
                let v = rng.random_range(run.min_vertices..=run.max_vertices);
                let e = rng.random_range(1..=max_edges.max(1));
                let g = random_multigraph(rng, v, e, 0.0);
                Instance::Graph {
                    graph: g.to_string(),
                    target_seed: rng.random(),
                }
            })
            .collect()
    };
    let graph_source = format!(
        "{} random multigraphs, {}..={} vertices, 1..={} edges, seed {}",
        run.instances, run.min_vertices, run.max_vertices, run.max_edges, run.seed
    );
    match run.suite {
        Suite::Elser | Suite::Morse => {
            let source = format!(
                "{graph_source}; every target G ⊆ E when |E| ≤ {}, otherwise {SAMPLED_TARGETS} seeded targets",
                run.all_targets_up_to
            );
            (graphs(&mut rng, run.max_edges), source)
        }
        Suite::ShadeAxioms => (graphs(&mut rng, run.max_edges), graph_source),
        Suite::Explore => {
            let source = format!(
                "{graph_source}; graphs with more than {} edges skipped",
                run.checked_edges_up_to
            );
            (graphs(&mut rng, run.max_edges), source)
        }
        Suite::Vertex => {
            let mut out = graphs(&mut rng, run.max_edges);
            for _ in 0..run.instances / 2 {
                let g = random_connected_simple(&mut rng, 5, 7);
                out.push(Instance::Graph {
                    graph: g.to_string(),
                    target_seed: 0,
                });
            }
            let source = format!(
                "{graph_source}; {} connected simple graphs, at most 5 vertices and 7 edges",
                run.instances / 2
            );
            (out, source)
        }
        Suite::CryptomorphismAntimatroid => {
            let mut out = Vec::new();
            for n in 0..=3 {
                for tau in all_antimatroidal_quasi_closures(n).expect("n ≤ 3") {
                    out.push(Instance::Table { codes: tau.codes() });
                }
            }
            for n in 0..=5 {
                for p in all_labelled_posets(n).expect("n ≤ 5") {
                    out.push(poset_instance(&p));
                }
            }
            for _ in 0..run.instances {
                out.push(points_instance(&random_point_set(&mut rng, 1..=6, 1..=3)));
            }
            out.extend(graphs(&mut rng, run.max_edges));
            let source = format!(
                "all antimatroidal quasi-closures on at most 3 elements; all labelled posets on at most 5 elements; {} random point sets (at most 6 points, dimension at most 3); {graph_source}",
                run.instances
            );
            (out, source)
        }
        Suite::CryptomorphismBip => {
            let mut out = Vec::new();
            for n in 0..=3 {
                for p in enumerate_partitions(n).expect("n ≤ 3") {
                    out.push(Instance::Partition {
                        elements: n,
                        blocks: p.blocks().to_vec(),
                    });
                }
            }
            for inst in graphs(&mut rng, run.max_edges) {
                let Instance::Graph { graph, .. } = &inst else {
                    unreachable!()
                };
                let g = parse_graph(graph).expect("generated graphs parse").graph;
                if g.edge_count() > run.checked_edges_up_to {
                    continue;
                }
                let map = EdgeInfection::new(&g, g.source(0).expect("vertex 0 exists"))
                    .shade_map()
                    .expect("edge count is capped");
                out.push(Instance::Table {
                    codes: dual_map(&map).codes(),
                });
                out.push(Instance::Table { codes: map.codes() });
            }
            for n in 0..=5 {
                for p in all_labelled_posets(n).expect("n ≤ 5") {
                    out.push(Instance::Table {
                        codes: p.lower_shade().codes(),
                    });
                }
            }
            for _ in 0..run.instances / 4 {
                let set = random_point_set(&mut rng, 1..=6, 1..=3);
                out.push(Instance::Table {
                    codes: set.convex_shade().codes(),
                });
            }
            let source = format!(
                "all Boolean interval partitions on at most 3 elements; edge shades and their duals of {graph_source}, skipping graphs with more than {} edges; lower shades of all labelled posets on at most 5 elements; convex shades of {} random point sets",
                run.checked_edges_up_to,
                run.instances / 4
            );
            (out, source)
        }
    }
}

fn poset_instance(p: &Poset) -> Instance {
    Instance::Poset {
        below: (0..p.size()).map(|e| p.strictly_below(e).code()).collect(),
    }
}

fn points_instance(set: &RationalPointSet) -> Instance {
    Instance::Points {
        rows: (0..set.len())
            .map(|i| set.point(i).iter().map(|x| x.to_string()).collect())
            .collect(),
    }
}

pub fn run_suite(run: &VerificationRun) -> Result<SuiteReport, LabError> {
    run.validate()?;
    let start = Instant::now();
    let (instances, source) = instance_stream(run);
    let tallies: Vec<Tally> = instances
        .par_iter()
        .map(|inst| check_instance(run, inst))
        .collect();
    let mut report = assemble(run, source, &instances, tallies);
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

/// Re-checks the instance of a witness under the run's settings.
pub fn replay(witness: &Witness, run: &VerificationRun) -> Result<SuiteReport, LabError> {
    if witness.schema != SCHEMA_VERSION {
        return Err(LabError::Usage(format!(
            "witness schema {} is not supported (expected {SCHEMA_VERSION})",
            witness.schema
        )));
    }
    let run = VerificationRun {
        suite: witness.suite,
        ..run.clone()
    };
    let start = Instant::now();
    let instances = vec![witness.instance.clone()];
    let tallies = vec![check_instance(&run, &witness.instance)];
    let mut report = assemble(&run, "replayed witness".into(), &instances, tallies);
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

fn assemble(
    run: &VerificationRun,
    source: String,
    instances: &[Instance],
    tallies: Vec<Tally>,
) -> SuiteReport {
    let mut counts: BTreeMap<&'static str, (u64, u64)> = BTreeMap::new();
    let mut notes = BTreeSet::new();
    let mut internal = Vec::new();
    let mut first_failure = None;
    for (i, tally) in tallies.into_iter().enumerate() {
        for (name, (evaluated, failed)) in tally.counts {
            let entry = counts.entry(name).or_default();
            entry.0 += evaluated;
            entry.1 += failed;
        }
        notes.extend(tally.notes);
        internal.extend(
            tally
                .internal
                .into_iter()
                .map(|e| format!("instance {i}: {e}")),
        );
        if first_failure.is_none() {
            if let Some((check, detail)) = tally.failure {
                first_failure = Some(Witness {
                    schema: SCHEMA_VERSION,
                    suite: run.suite,
                    check: check.to_owned(),
                    detail,
                    instance: instances[i].clone(),
                });
            }
        }
    }
    let checks: Vec<CheckTally> = counts
        .into_iter()
        .map(|(check, (evaluated, failed))| CheckTally {
            check: check.to_owned(),
            evaluated,
            failed,
        })
        .collect();
    let passed = first_failure.is_none() && internal.is_empty();
    SuiteReport {
        schema: SCHEMA_VERSION,
        suite: run.suite,
        seed: run.seed,
        instance_source: source,
        instances: instances.len(),
        checks,
        notes: notes.into_iter().collect(),
        internal_errors: internal,
        first_failure,
        passed,
        elapsed_ms: None,
    }
}

fn check_instance(run: &VerificationRun, inst: &Instance) -> Tally {
    let mut t = Tally::default();
    let outcome = match inst {
        Instance::Graph { graph, target_seed } => match parse_graph(graph) {
            Ok(file) => check_graph(run, &file.graph, *target_seed, &mut t),
            Err(e) => Err(LabError::Parse(e)),
        },
        Instance::Table { codes } => check_table(run.suite, codes, &mut t),
        Instance::Poset { below } => check_poset(run.suite, below, &mut t),
        Instance::Points { rows } => check_points(run.suite, rows, &mut t),
        Instance::Partition { elements, blocks } => {
            check_partition(run.suite, *elements, blocks, &mut t)
        }
    };
    if let Err(e) = outcome {
        t.internal.push(e.to_string());
    }
    t
}

/// Every subset when `edges ≤ all_up_to`, otherwise a seeded sample.
pub fn targets(edges: usize, all_up_to: usize, seed: u64) -> Vec<Subset> {
    if edges <= all_up_to {
        Subset::full(edges).subsets().collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLED_TARGETS)
            .map(|_| Subset(rng.random_range(0..1u32 << edges)))
            .collect()
    }
}

fn check_graph(
    run: &VerificationRun,
    g: &Multigraph,
    target_seed: u64,
    t: &mut Tally,
) -> Result<(), LabError> {
    match run.suite {
        Suite::Elser => elser_checks(g, run.all_targets_up_to, target_seed, t),
        Suite::Vertex => vertex_checks(g, t),
        Suite::ShadeAxioms => axiom_checks(g, t),
        Suite::Morse => morse_checks(g, run.all_targets_up_to, target_seed, t),
        Suite::Explore if g.edge_count() > run.checked_edges_up_to => {
            t.note(format!(
                "graphs with more than {} edges skipped",
                run.checked_edges_up_to
            ));
            Ok(())
        }
        Suite::Explore => explore_checks(g, run.search_budget, t),
        Suite::CryptomorphismAntimatroid => linesearch_checks(g, t),
        Suite::CryptomorphismBip => Err(LabError::Usage(
            "cryptomorphism-bip takes tables and partitions, not graphs".into(),
        )),
    }
}

fn named(g: &Multigraph, v: usize) -> String {
    format!("source {}", g.vertex_name(v))
}

fn elser_checks(
    g: &Multigraph,
    all_up_to: usize,
    target_seed: u64,
    t: &mut Tally,
) -> Result<(), LabError> {
    if g.edge_count() == 0 {
        t.note("hypothesis E ≠ ∅ fails; instance skipped");
        return Ok(());
    }
    let ground = g.edge_ground();
    for v in 0..g.vertex_count() {
        let inf = EdgeInfection::new(g, g.source(v)?);
        let map = inf.shade_map()?;
        let sum = inf.pandemic_sum()?;
        t.check("pandemic-sum", sum == 0, || {
            format!("{}: sum {sum}", named(g, v))
        });
        for target in targets(g.edge_count(), all_up_to, target_seed) {
            let sums = shade_alternating_sums(&map, target);
            let where_ = || format!("{}, G = {}", named(g, v), ground.format(target));
            t.check("contained-sum", sums.contained == 0, || {
                format!("{}: sum {}", where_(), sums.contained)
            });
            t.check("not-contained-sum", sums.not_contained == 0, || {
                format!("{}: sum {}", where_(), sums.not_contained)
            });
        }
    }
    Ok(())
}

fn shade_ok(d: &ShadeDiagnostics) -> bool {
    d.is_shade_map() && d.is_inclusion_preserving() && d.cross_checks_ok
}

fn vertex_checks(g: &Multigraph, t: &mut Tally) -> Result<(), LabError> {
    if g.has_arcs() {
        t.note("vertex infection is defined for undirected graphs; graphs with arcs skipped");
        return Ok(());
    }
    for v in 0..g.vertex_count() {
        if g.vertex_count() == 1 {
            t.note("hypothesis V ∖ {v} ≠ ∅ fails; instance skipped");
            continue;
        }
        let vi = VertexInfection::new(g, g.source(v)?)?;
        let d = classify_map(&vi.shade_map()?);
        t.check("vertex-shade-map", shade_ok(&d), || {
            format!("{}: {d:?}", named(g, v))
        });
        let sum = vi.pandemic_sum()?;
        t.check("vertex-pandemic-sum", sum == 0, || {
            format!("{}: sum {sum}", named(g, v))
        });
    }
    if g.is_simple() && g.is_connected() && g.vertex_count() <= 16 && g.edge_count() <= 16 {
        for v in 0..g.vertex_count() {
            let r = nucleus_pandemic_check(g, g.source(v)?)?;
            t.check(
                "nucleus-bijection",
                r.bijection && r.nuclei == r.pandemic_subsets,
                || format!("{}: {r:?}", named(g, v)),
            );
        }
    }
    Ok(())
}

fn union_difference_ok(m: &SubsetMap) -> Option<(Subset, Subset)> {
    for a in m.domain() {
        let outside = m.full().difference(m.get(a));
        for b in outside.subsets() {
            if m.get(a.union(b)) != m.get(a) || m.get(a.difference(b)) != m.get(a) {
                return Some((a, b));
            }
        }
    }
    None
}

fn axiom_checks(g: &Multigraph, t: &mut Tally) -> Result<(), LabError> {
    for v in 0..g.vertex_count() {
        let source = g.source(v)?;
        let map = EdgeInfection::new(g, source).shade_map()?;
        let d = classify_map(&map);
        t.check("edge-axioms", d.axiom1_ok && d.axiom2_ok, || {
            format!("{}: {d:?}", named(g, v))
        });
        t.check(
            "edge-inclusion-preserving",
            d.is_inclusion_preserving(),
            || format!("{}: {:?}", named(g, v), d.witnesses),
        );
        t.check("cross-checks", d.cross_checks_ok, || {
            format!("{}: {d:?}", named(g, v))
        });
        let dd = classify_map(&dual_map(&map));
        t.check(
            "dual-inclusion-reversing",
            dd.is_shade_map() && dd.is_inclusion_reversing() && dd.cross_checks_ok,
            || format!("{}: {dd:?}", named(g, v)),
        );
        if g.edge_count() <= 10 {
            let bad = union_difference_ok(&map);
            t.check("union-difference", bad.is_none(), || {
                format!("{}: (A, B) = {bad:?}", named(g, v))
            });
        }
        if !g.has_arcs() && g.vertex_count() > 1 {
            let vm = VertexInfection::new(g, source)?.shade_map()?;
            let d = classify_map(&vm);
            t.check("vertex-axioms", d.axiom1_ok && d.axiom2_ok, || {
                format!("{}: {d:?}", named(g, v))
            });
            t.check(
                "vertex-inclusion-preserving",
                d.is_inclusion_preserving(),
                || format!("{}: {:?}", named(g, v), d.witnesses),
            );
            t.check("cross-checks", d.cross_checks_ok, || {
                format!("{}: {d:?}", named(g, v))
            });
        }
    }
    Ok(())
}

fn morse_checks(
    g: &Multigraph,
    all_up_to: usize,
    target_seed: u64,
    t: &mut Tally,
) -> Result<(), LabError> {
    let ground = g.edge_ground();
    let full = ground.full();
    let mut rng = ChaCha8Rng::seed_from_u64(target_seed);
    for v in 0..g.vertex_count() {
        let inf = EdgeInfection::new(g, g.source(v)?);
        let map = inf.shade_map()?;
        let pandemic_sum = inf.pandemic_sum()?;
        let family = NoninfectingFamily::new(&map)?;
        for target in targets(g.edge_count(), all_up_to, target_seed) {
            let mu = match family.elser_matching(target) {
                Ok(mu) => mu,
                Err(shade_core::Error::EmptyComplex) => continue,
                Err(e) => return Err(e.into()),
            };
            let a = mu.complex();
            let where_ = || format!("{}, G = {}", named(g, v), ground.format(target));
            let report = mu.verify()?;
            t.check("elser-complete", report.complete, || {
                format!("{}: {report:?}", where_())
            });
            let verdict = verify_acyclic(&mu)?;
            t.check("elser-acyclic", verdict.acyclic, || {
                format!("{}: cycle {:?}", where_(), verdict.cycle)
            });
            let respects = a
                .faces()
                .iter()
                .all(|&f| mu.partner(f).is_some_and(|p| map.get(p) == map.get(f)));
            t.check("matching-keeps-shade", respects, where_);
            let euler = a.euler_sum();
            t.check("euler-sum", euler == 0, || format!("{}: {euler}", where_()));
            let h = gf2_reduced_homology(a)?;
            t.check(
                "homology-trivial",
                h.is_acyclic() && h.euler_consistent,
                || format!("{}: {:?}", where_(), h.reduced_betti),
            );
            if target == full && g.edge_count() > 0 {
                t.check(
                    "pandemic-chain",
                    euler == -pandemic_sum && pandemic_sum == 0,
                    || format!("{}: euler {euler}, pandemic sum {pandemic_sum}", where_()),
                );
            }
            if a.face_count() <= TUPLE_SEARCH_FACES {
                let elser_pairs = mu.pairs();
                let literal = cycle_by_tuple_search(&elser_pairs);
                t.check(
                    "tuple-search-agreement",
                    literal == !verdict.acyclic,
                    || format!("{}: Elser pairs {elser_pairs:?}", where_()),
                );
                let pairs = random_partial_matching(&mut rng, a.faces());
                let fast = find_cycle(g.edge_count(), pairs.clone()).is_some();
                let literal = cycle_by_tuple_search(&pairs);
                t.check("tuple-search-agreement", fast == literal, || {
                    format!("{}: pairs {pairs:?}", where_())
                });
            }
        }
    }
    Ok(())
}

/// Random covering pairs on `faces`, each face used at most once.
fn random_partial_matching(rng: &mut ChaCha8Rng, faces: &[Subset]) -> Vec<(Subset, Subset)> {
    let present: BTreeSet<Subset> = faces.iter().copied().collect();
    let mut used = BTreeSet::new();
    let mut pairs = Vec::new();
    let mut order = faces.to_vec();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    for upper in order {
        if upper.is_empty() || used.contains(&upper) {
            continue;
        }
        let x = upper
            .elements()
            .nth(rng.random_range(0..upper.len()))
            .expect("nonempty");
        let lower = upper.without(x);
        if present.contains(&lower) && !used.contains(&lower) && rng.random_bool(0.75) {
            used.insert(upper);
            used.insert(lower);
            pairs.push((lower, upper));
        }
    }
    pairs
}

/// Keys every exploration report must carry.
pub fn exploration_schema_ok(report: &Value) -> bool {
    let summary_ok = |s: &Value| {
        [
            "face_count",
            "dimension",
            "f_vector",
            "euler_sum",
            "homology",
            "collapsibility",
        ]
        .iter()
        .all(|k| s.get(k).is_some())
            && s["homology"]["reduced_betti"].is_array()
    };
    let body = &report["report"];
    report["schema"] == SCHEMA_VERSION
        && body["convention"].is_string()
        && body["coefficient_field"] == "GF(2)"
        && body["edges"].is_array()
        && body["sources"].is_array()
        && body["degenerate"].is_boolean()
        && body["per_source"].as_array().is_some_and(|a| {
            a.iter().all(|s| {
                s["source"].is_string() && summary_ok(&s["complex"]) && summary_ok(&s["dual"])
            })
        })
        && summary_ok(&body["union"]["complex"])
        && summary_ok(&body["union"]["dual"])
        && body["union"]["homology_concentrated"].is_boolean()
}

/// Wraps a serializable report with the schema version.
pub fn versioned<T: Serialize>(report: &T) -> Result<Value, LabError> {
    Ok(serde_json::json!({ "schema": SCHEMA_VERSION, "report": report }))
}

fn explore_checks(g: &Multigraph, budget: u64, t: &mut Tally) -> Result<(), LabError> {
    let full = g.edge_ground().full();
    let everyone: Vec<usize> = (0..g.vertex_count()).collect();
    let options = ExploreOptions {
        search_budget: budget,
        ..ExploreOptions::default()
    };
    for sources in [vec![0], everyone] {
        let report = explore_open_questions(g, &sources, full, options)?;
        let json = versioned(&report)?;
        t.check("report-schema", exploration_schema_ok(&json), || {
            json.to_string()
        });
        let union = multi_source_complex(g, &sources, full, EndpointRule::Both)?;
        t.check(
            "dual-involution",
            alexander_dual(&alexander_dual(&union)) == union,
            || format!("sources {sources:?}"),
        );
    }
    Ok(())
}

fn linesearch_checks(g: &Multigraph, t: &mut Tally) -> Result<(), LabError> {
    for v in 0..g.vertex_count() {
        let source = g.source(v)?;
        let shade = EdgeInfection::with_rule(g, source, EndpointRule::Source).shade_map()?;
        let tau = closure_from_shade(&dual_map(&shade))?;
        t.check(
            "linesearch-agreement",
            tau == linesearch_map(g, source)?,
            || named(g, v),
        );
        let d = classify_closure(&tau)?;
        t.check(
            "linesearch-antimatroidal",
            d.is_antimatroidal_quasi_closure(),
            || format!("{}: {:?}", named(g, v), d.witnesses),
        );
    }
    Ok(())
}

fn table_map(codes: &[u32]) -> Result<SubsetMap, LabError> {
    if !codes.len().is_power_of_two() {
        return Err(LabError::Usage(format!(
            "table length {} is not a power of two",
            codes.len()
        )));
    }
    let n = codes.len().trailing_zeros() as usize;
    Ok(SubsetMap::from_table(
        GroundSet::indexed(n),
        codes.iter().copied().map(Subset).collect(),
    )?)
}

fn check_table(suite: Suite, codes: &[u32], t: &mut Tally) -> Result<(), LabError> {
    let m = table_map(codes)?;
    match suite {
        Suite::CryptomorphismAntimatroid => closure_table_checks(&m, t),
        Suite::CryptomorphismBip => shade_table_checks(&m, t),
        other => Err(LabError::Usage(format!(
            "suite {other} does not take tables"
        ))),
    }
}

fn closure_table_checks(tau: &SubsetMap, t: &mut Tally) -> Result<(), LabError> {
    let d = classify_closure(tau)?;
    t.check(
        "closure-antimatroidal",
        d.is_antimatroidal_quasi_closure(),
        || format!("{:?}: {:?}", tau.codes(), d.witnesses),
    );
    if !d.is_antimatroidal_quasi_closure() {
        return Ok(());
    }
    let shade = shade_from_closure(tau)?;
    let sd = classify_map(&shade);
    t.check(
        "shade-inclusion-reversing",
        sd.is_shade_map() && sd.is_inclusion_reversing() && sd.cross_checks_ok,
        || format!("{:?}: {sd:?}", tau.codes()),
    );
    let back = closure_from_shade(&shade)?;
    t.check("closure-roundtrip", &back == tau, || {
        format!("{:?}", tau.codes())
    });
    t.check(
        "shade-roundtrip",
        shade_from_closure(&back)? == shade,
        || format!("{:?}", tau.codes()),
    );
    let n = tau.size();
    let mut add_ok = true;
    let mut nicer_ok = true;
    for x in tau.domain() {
        let tx = tau.get(x);
        for z in tx.elements() {
            add_ok &= tau.get(x.with(z)) == tx;
        }
        for y in 0..n {
            for z in 0..n {
                if y != z && tau.get(x.with(y)).contains(z) && tau.get(x.with(z)).contains(y) {
                    nicer_ok &= tx.contains(y);
                }
            }
        }
    }
    t.check("closure-add", add_ok, || format!("{:?}", tau.codes()));
    t.check("double-exchange", nicer_ok, || format!("{:?}", tau.codes()));
    let split = split_quasi_closure(tau)?;
    let inner = classify_closure(split.restricted_closure())?;
    t.check(
        "split-rejoin",
        split.rejoin() == *tau && inner.is_closure(),
        || format!("{:?}", tau.codes()),
    );
    Ok(())
}

fn shade_table_checks(m: &SubsetMap, t: &mut Tally) -> Result<(), LabError> {
    let p = partition_from_shade(m)?;
    let r = validate_partition(&p);
    t.check("partition-valid", r.valid, || {
        format!("{:?}: {r:?}", m.codes())
    });
    let back = shade_from_partition(&p)?;
    t.check("shade-roundtrip", back.codes() == m.codes(), || {
        format!("{:?}", m.codes())
    });
    let mut unique = true;
    for f in m.domain() {
        let b = block_of(m, f);
        unique &= b.contains(f) && b.members().all(|g| block_of(m, g) == b);
    }
    t.check("block-uniqueness", unique, || format!("{:?}", m.codes()));
    Ok(())
}

fn check_partition(
    suite: Suite,
    elements: usize,
    blocks: &[BooleanInterval],
    t: &mut Tally,
) -> Result<(), LabError> {
    if suite != Suite::CryptomorphismBip {
        return Err(LabError::Usage(format!(
            "suite {suite} does not take partitions"
        )));
    }
    let p = BooleanIntervalPartition::new(elements, blocks.to_vec())?;
    let r = validate_partition(&p);
    t.check("partition-valid", r.valid, || format!("{r:?}"));
    if !r.valid {
        return Ok(());
    }
    let m = shade_from_partition(&p)?;
    let d = classify_map(&m);
    t.check(
        "partition-shade-map",
        d.is_shade_map() && d.cross_checks_ok,
        || format!("{d:?}"),
    );
    t.check(
        "partition-roundtrip",
        partition_from_shade(&m)? == p,
        || format!("{blocks:?}"),
    );
    let owner = p.block_table().expect("valid partition");
    let bounds_ok = m
        .domain()
        .all(|f| block_of(&m, f) == p.blocks()[owner[f.index()]]);
    t.check("block-bounds", bounds_ok, || format!("{blocks:?}"));
    Ok(())
}

fn check_poset(suite: Suite, below: &[u32], t: &mut Tally) -> Result<(), LabError> {
    if suite != Suite::CryptomorphismAntimatroid {
        return Err(LabError::Usage(format!(
            "suite {suite} does not take posets"
        )));
    }
    let p = Poset::from_strict_below(
        GroundSet::indexed(below.len()),
        below.iter().copied().map(Subset).collect(),
    )?;
    let lower = p.lower_shade();
    let down = p.downset_closure();
    t.check(
        "downset-agreement",
        shade_from_closure(&down)? == lower,
        || format!("{below:?}"),
    );
    t.check(
        "lower-shade-roundtrip",
        closure_from_shade(&lower)? == down,
        || format!("{below:?}"),
    );
    let d = classify_closure(&p.interval_closure())?;
    t.check(
        "interval-closure-antimatroidal",
        d.is_closure() && d.antimatroidal_ok,
        || format!("{below:?}: {:?}", d.witnesses),
    );
    Ok(())
}

fn check_points(suite: Suite, rows: &[Vec<String>], t: &mut Tally) -> Result<(), LabError> {
    if suite != Suite::CryptomorphismAntimatroid {
        return Err(LabError::Usage(format!(
            "suite {suite} does not take point sets"
        )));
    }
    let mut text = String::new();
    for (i, row) in rows.iter().enumerate() {
        text.push_str(&format!("point p{i} {}\n", row.join(" ")));
    }
    let set = crate::formats::parse_points(&text)?;
    let closure = set.convex_closure();
    let shade = set.convex_shade();
    t.check(
        "convex-agreement",
        shade_from_closure(&closure)? == shade,
        || format!("{rows:?}"),
    );
    t.check(
        "convex-roundtrip",
        closure_from_shade(&shade)? == closure,
        || format!("{rows:?}"),
    );
    Ok(())
}
