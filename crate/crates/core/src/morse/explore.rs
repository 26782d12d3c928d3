//! Evidence gathering for Alexander duals and multi-source complexes.
//!
//! Nothing here is asserted: the report records homology, Euler sums and the
//! outcome of bounded certificate searches.

use serde::Serialize;

use super::complex::{build_noninfecting_complex, multi_source_complex, SimplicialComplex};
use super::homology::{gf2_reduced_homology, HomologyProfile, HOMOLOGY_CONVENTION};
use super::search::{
    collapsibility_certificate, greedy_morse_matching, noninfecting_certificate, Collapsibility,
    DEFAULT_SEARCH_BUDGET,
};
use crate::error::{Error, Result};
use crate::graph::{EdgeInfection, EndpointRule, Multigraph};
use crate::subset::Subset;

pub const MAX_EXPLORE_EDGES: usize = 14;

#[derive(Clone, Copy, Debug)]
pub struct ExploreOptions {
    pub search_budget: u64,
    pub rule: EndpointRule,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        Self {
            search_budget: DEFAULT_SEARCH_BUDGET,
            rule: EndpointRule::Both,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub face_count: usize,
    pub dimension: Option<isize>,
    pub f_vector: Vec<usize>,
    pub euler_sum: i64,
    pub homology: HomologyProfile,
    /// `collapsible`, `not-collapsible` or `unknown`.
    pub collapsibility: &'static str,
    /// How the certificate was obtained, when there is one.
    pub certificate: Option<&'static str>,
    pub search_nodes: Option<u64>,
}

impl ComplexSummary {
    fn new(c: &SimplicialComplex, outcome: &Collapsibility, how: &'static str) -> Result<Self> {
        let search_nodes = match outcome {
            Collapsibility::Exhausted { nodes } | Collapsibility::Unknown { nodes } => Some(*nodes),
            _ => None,
        };
        Ok(Self {
            face_count: c.face_count(),
            dimension: c.dimension(),
            f_vector: c.f_vector(),
            euler_sum: c.euler_sum(),
            homology: gf2_reduced_homology(c)?,
            collapsibility: outcome.label(),
            certificate: outcome.certificate().map(|_| how),
            search_nodes,
        })
    }

    fn searched(c: &SimplicialComplex, budget: u64) -> Result<Self> {
        Self::new(c, &collapsibility_certificate(c, budget), "search")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSection {
    pub source: String,
    pub complex: ComplexSummary,
    pub dual: ComplexSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseSummary {
    pub critical_by_dimension: Vec<usize>,
    pub critical_dimensions: Vec<isize>,
    pub acyclic: bool,
    /// All critical faces lie in one dimension (or there are none).
    pub single_degree: bool,
    pub heuristic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionSection {
    pub complex: ComplexSummary,
    pub dual: ComplexSummary,
    /// Reduced homology is nonzero in at most one dimension.
    pub homology_concentrated: bool,
    pub concentration_degree: Option<isize>,
    /// Greedy matching, computed only when homology is concentrated.
    pub morse: Option<MorseSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplorationReport {
    pub convention: &'static str,
    pub coefficient_field: &'static str,
    pub edges: Vec<String>,
    pub sources: Vec<String>,
    pub target: Vec<String>,
    /// No edges: every complex is void or `{∅}`.
    pub degenerate: bool,
    pub per_source: Vec<SourceSection>,
    pub union: UnionSection,
}

pub fn explore_open_questions(
    graph: &Multigraph,
    sources: &[usize],
    target: Subset,
    options: ExploreOptions,
) -> Result<ExplorationReport> {
    let m = graph.edge_count();
    if m > MAX_EXPLORE_EDGES {
        return Err(Error::SizeLimit(format!(
            "exploration is capped at {MAX_EXPLORE_EDGES} edges (got {m})"
        )));
    }
    if sources.is_empty() {
        return Err(Error::Usage(
            "at least one source vertex is required".into(),
        ));
    }
    let ground = graph.edge_ground();
    ground.check(target)?;

    let per_source: Vec<Result<SourceSection>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sources
            .iter()
            .map(|&v| scope.spawn(move || source_section(graph, v, target, options)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("source section worker panicked"))
            .collect()
    });
    let per_source = per_source.into_iter().collect::<Result<Vec<_>>>()?;

    let a_u = multi_source_complex(graph, sources, target, options.rule)?;
    let complex = ComplexSummary::searched(&a_u, options.search_budget)?;
    let dual = ComplexSummary::searched(&a_u.alexander_dual(), options.search_budget)?;
    let support = complex.homology.support();
    let homology_concentrated = support.len() <= 1;
    let morse = homology_concentrated.then(|| {
        let g = greedy_morse_matching(&a_u);
        let critical_dimensions = g.critical_dimensions();
        MorseSummary {
            single_degree: critical_dimensions.len() <= 1,
            critical_by_dimension: g.critical_by_dimension,
            critical_dimensions,
            acyclic: g.acyclic,
            heuristic: g.heuristic,
        }
    });

    Ok(ExplorationReport {
        convention: HOMOLOGY_CONVENTION,
        coefficient_field: "GF(2)",
        edges: ground.labels().to_vec(),
        sources: sources
            .iter()
            .map(|&v| graph.vertex_name(v).to_owned())
            .collect(),
        target: target
            .elements()
            .map(|e| ground.label(e).to_owned())
            .collect(),
        degenerate: m == 0,
        per_source,
        union: UnionSection {
            complex,
            dual,
            homology_concentrated,
            concentration_degree: support.first().copied(),
            morse,
        },
    })
}

fn source_section(
    graph: &Multigraph,
    v: usize,
    target: Subset,
    options: ExploreOptions,
) -> Result<SourceSection> {
    let source = graph.source(v)?;
    let map = EdgeInfection::with_rule(graph, source, options.rule).shade_map()?;
    let a = build_noninfecting_complex(&map, target)?;
    let outcome = if a.is_void() {
        collapsibility_certificate(&a, 1)
    } else {
        match noninfecting_certificate(&map, target)? {
            Some(d) => Collapsibility::Certificate(d),
            None => collapsibility_certificate(&a, options.search_budget),
        }
    };
    Ok(SourceSection {
        source: graph.vertex_name(v).to_owned(),
        complex: ComplexSummary::new(&a, &outcome, "elser-matching")?,
        dual: ComplexSummary::searched(&a.alexander_dual(), options.search_budget)?,
    })
}
