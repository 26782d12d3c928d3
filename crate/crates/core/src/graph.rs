//! Multigraphs and the infection shades they induce.
//!
//! A set `F` of edges infects an edge `e` when an `F`-path joins the source
//! vertex to an endpoint of `e`. The shade of `F` is the set of infected
//! edges: every edge touching the component of the source in `(V, F)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::SubsetMap;
use crate::subset::{alternating_sum, check_dense, GroundSet, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Undirected,
    /// Traversable from `a` to `b` only.
    Directed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub a: usize,
    pub b: usize,
    pub orientation: Orientation,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }
}

/// A finite multigraph; self-loops, parallel edges and arcs are all allowed.
///
/// Edge indices are the ground-set elements of edge subsets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SourceVertex(usize);

impl SourceVertex {
    pub fn index(self) -> usize {
        self.0
    }
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the vertex with this name, creating it if needed.
    pub fn add_vertex(&mut self, name: &str) -> usize {
        if let Some(&i) = self.vertex_index.get(name) {
            return i;
        }
        self.vertices.push(name.to_owned());
        self.vertex_index
            .insert(name.to_owned(), self.vertices.len() - 1);
        self.vertices.len() - 1
    }

    fn push_edge(
        &mut self,
        name: &str,
        a: &str,
        b: &str,
        orientation: Orientation,
    ) -> Result<usize> {
        if self.edges.iter().any(|e| e.name == name) {
            return Err(Error::Usage(format!("duplicate edge name `{name}`")));
        }
        let a = self.add_vertex(a);
        let b = self.add_vertex(b);
        self.edges.push(Edge {
            name: name.to_owned(),
            a,
            b,
            orientation,
        });
        Ok(self.edges.len() - 1)
    }

    pub fn add_edge(&mut self, name: &str, a: &str, b: &str) -> Result<usize> {
        self.push_edge(name, a, b, Orientation::Undirected)
    }

    /// Adds a directed edge `a → b`.
    pub fn add_arc(&mut self, name: &str, a: &str, b: &str) -> Result<usize> {
        self.push_edge(name, a, b, Orientation::Directed)
    }

    /// Vertices `0..n` with undirected edges named `0..m` in the given order.
    pub fn from_index_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Self {
        let mut g = Self::new();
        for v in 0..vertex_count {
            g.add_vertex(&v.to_string());
        }
        for (i, &(a, b)) in pairs.iter().enumerate() {
            assert!(
                a < vertex_count && b < vertex_count,
                "endpoint out of range"
            );
            g.edges.push(Edge {
                name: i.to_string(),
                a,
                b,
                orientation: Orientation::Undirected,
            });
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn source(&self, v: usize) -> Result<SourceVertex> {
        if v < self.vertices.len() {
            Ok(SourceVertex(v))
        } else {
            Err(Error::Usage(format!(
                "vertex {v} out of range for a graph with {} vertices",
                self.vertices.len()
            )))
        }
    }

    pub fn source_named(&self, name: &str) -> Result<SourceVertex> {
        self.vertex(name)
            .map(SourceVertex)
            .ok_or_else(|| Error::Usage(format!("unknown vertex `{name}`")))
    }

    /// Edge ground set, labelled by edge names.
    pub fn edge_ground(&self) -> GroundSet {
        GroundSet::new(self.edges.iter().map(|e| e.name.clone()))
    }

    pub fn has_arcs(&self) -> bool {
        self.edges
            .iter()
            .any(|e| e.orientation == Orientation::Directed)
    }

    /// No loops, no parallel edges, no arcs.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|e| {
            e.orientation == Orientation::Undirected
                && !e.is_loop()
                && seen.insert((e.a.min(e.b), e.a.max(e.b)))
        })
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let adj = Adjacency::undirected(self);
        let seen = adj.reach_all(0, |_| true);
        seen.iter().all(|&s| s)
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for e in &self.edges {
            let kw = match e.orientation {
                Orientation::Undirected => "edge",
                Orientation::Directed => "arc",
            };
            writeln!(
                f,
                "{kw} {} {} {}",
                e.name, self.vertices[e.a], self.vertices[e.b]
            )?;
        }
        Ok(())
    }
}

/// Which endpoints of an arc count for infection.
///
/// Undirected edges always use both endpoints.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EndpointRule {
    /// An arc is infected when its source or its target is reached.
    #[default]
    Both,
    /// An arc is infected only when its source is reached.
    Source,
}

impl FromStr for EndpointRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "both" | "endpoint" => Ok(Self::Both),
            "source" => Ok(Self::Source),
            "target" => Err(Error::Usage(
                "the `target` endpoint rule does not yield a shade map \
                 (alternating sums need not vanish); use `both` or `source`"
                    .into(),
            )),
            other => Err(Error::Usage(format!("unknown endpoint rule `{other}`"))),
        }
    }
}

/// Outgoing `(edge, neighbour)` lists per vertex.
struct Adjacency {
    out: Vec<Vec<(usize, usize)>>,
}

impl Adjacency {
    fn oriented(g: &Multigraph) -> Self {
        let mut out = vec![Vec::new(); g.vertex_count()];
        for (i, e) in g.edges.iter().enumerate() {
            out[e.a].push((i, e.b));
            if e.orientation == Orientation::Undirected && !e.is_loop() {
                out[e.b].push((i, e.a));
            }
        }
        Self { out }
    }

    fn undirected(g: &Multigraph) -> Self {
        let mut out = vec![Vec::new(); g.vertex_count()];
        for (i, e) in g.edges.iter().enumerate() {
            out[e.a].push((i, e.b));
            if !e.is_loop() {
                out[e.b].push((i, e.a));
            }
        }
        Self { out }
    }

    fn reach_into<P>(&self, start: usize, usable: P, seen: &mut [bool], stack: &mut Vec<usize>)
    where
        P: Fn(usize) -> bool,
    {
        seen.fill(false);
        stack.clear();
        seen[start] = true;
        stack.push(start);
        while let Some(x) = stack.pop() {
            for &(e, y) in &self.out[x] {
                if !seen[y] && usable(e) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }

    fn reach_all<P: Fn(usize) -> bool>(&self, start: usize, usable: P) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        self.reach_into(start, usable, &mut seen, &mut Vec::new());
        seen
    }
}

/// Edge infection from a fixed source vertex.
pub struct EdgeInfection<'g> {
    graph: &'g Multigraph,
    source: SourceVertex,
    rule: EndpointRule,
    adjacency: Adjacency,
}

impl<'g> EdgeInfection<'g> {
    pub fn new(graph: &'g Multigraph, source: SourceVertex) -> Self {
        Self::with_rule(graph, source, EndpointRule::Both)
    }

    pub fn with_rule(graph: &'g Multigraph, source: SourceVertex, rule: EndpointRule) -> Self {
        Self {
            graph,
            source,
            rule,
            adjacency: Adjacency::oriented(graph),
        }
    }

    pub fn graph(&self) -> &Multigraph {
        self.graph
    }

    pub fn source(&self) -> SourceVertex {
        self.source
    }

    fn shade_from_reached(&self, reached: &[bool]) -> Subset {
        let mut shade = Subset::EMPTY;
        for (i, e) in self.graph.edges.iter().enumerate() {
            let hit = match (e.orientation, self.rule) {
                (Orientation::Directed, EndpointRule::Source) => reached[e.a],
                _ => reached[e.a] || reached[e.b],
            };
            if hit {
                shade = shade.with(i);
            }
        }
        shade
    }

    fn shade_with(&self, f: Subset, seen: &mut [bool], stack: &mut Vec<usize>) -> Subset {
        self.adjacency
            .reach_into(self.source.0, |e| f.contains(e), seen, stack);
        self.shade_from_reached(seen)
    }

    /// `Shade F`: the edges infected by `F`.
    pub fn shade(&self, f: Subset) -> Subset {
        let mut seen = vec![false; self.graph.vertex_count()];
        self.shade_with(f, &mut seen, &mut Vec::new())
    }

    pub fn is_pandemic(&self, f: Subset) -> bool {
        self.shade(f) == Subset::full(self.graph.edge_count())
    }

    /// The whole shade map as a dense table over the edge ground set.
    pub fn shade_map(&self) -> Result<SubsetMap> {
        check_dense(self.graph.edge_count())?;
        let mut seen = vec![false; self.graph.vertex_count()];
        let mut stack = Vec::new();
        SubsetMap::from_fn(self.graph.edge_ground(), |f| {
            self.shade_with(f, &mut seen, &mut stack)
        })
    }

    /// All pandemic subsets in ascending code order.
    pub fn pandemic_family(&self) -> Result<Vec<Subset>> {
        let full = Subset::full(self.graph.edge_count());
        let map = self.shade_map()?;
        Ok(map.domain().filter(|&f| map.get(f) == full).collect())
    }

    pub fn pandemic_sum(&self) -> Result<i64> {
        Ok(alternating_sum(self.pandemic_family()?))
    }
}

/// Vertex infection: `F ⊆ V ∖ {v}` vertex-infects `w` when a path from the
/// source to `w` has all its interior vertices in `F`.
///
/// The ground set is `V ∖ {v}`, indexed in vertex order with the source
/// skipped. Arcs are rejected: no directed semantics is defined for it.
pub struct VertexInfection<'g> {
    graph: &'g Multigraph,
    source: SourceVertex,
    adjacency: Adjacency,
}

impl<'g> VertexInfection<'g> {
    pub fn new(graph: &'g Multigraph, source: SourceVertex) -> Result<Self> {
        if graph.has_arcs() {
            return Err(Error::Usage(
                "vertex infection is only defined for undirected graphs".into(),
            ));
        }
        Ok(Self {
            graph,
            source,
            adjacency: Adjacency::undirected(graph),
        })
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(
            (0..self.graph.vertex_count())
                .filter(|&w| w != self.source.0)
                .map(|w| self.graph.vertices[w].clone()),
        )
    }

    pub fn element_of(&self, vertex: usize) -> Option<usize> {
        use std::cmp::Ordering::*;
        match vertex.cmp(&self.source.0) {
            Less => Some(vertex),
            Equal => None,
            Greater => Some(vertex - 1),
        }
    }

    pub fn vertex_of(&self, element: usize) -> usize {
        if element < self.source.0 {
            element
        } else {
            element + 1
        }
    }

    fn shade_with(&self, f: Subset, seen: &mut [bool], stack: &mut Vec<usize>) -> Subset {
        let v = self.source.0;
        seen.fill(false);
        stack.clear();
        seen[v] = true;
        stack.push(v);
        while let Some(x) = stack.pop() {
            if x != v && !f.contains(self.element_of(x).expect("not the source")) {
                continue;
            }
            for &(_, y) in &self.adjacency.out[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        let mut shade = Subset::EMPTY;
        for (w, &hit) in seen.iter().enumerate() {
            if hit && w != v {
                shade = shade.with(self.element_of(w).expect("not the source"));
            }
        }
        shade
    }

    /// Vertices of `V ∖ {v}` vertex-infected by `F`.
    pub fn shade(&self, f: Subset) -> Subset {
        let mut seen = vec![false; self.graph.vertex_count()];
        self.shade_with(f, &mut seen, &mut Vec::new())
    }

    pub fn shade_map(&self) -> Result<SubsetMap> {
        let ground = self.ground();
        check_dense(ground.size())?;
        let mut seen = vec![false; self.graph.vertex_count()];
        let mut stack = Vec::new();
        SubsetMap::from_fn(ground, |f| self.shade_with(f, &mut seen, &mut stack))
    }

    pub fn pandemic_family(&self) -> Result<Vec<Subset>> {
        let map = self.shade_map()?;
        let full = map.full();
        Ok(map.domain().filter(|&f| map.get(f) == full).collect())
    }

    pub fn pandemic_sum(&self) -> Result<i64> {
        Ok(alternating_sum(self.pandemic_family()?))
    }
}

/// Line-search blocking: `τ(F)` is the set of edges `e` such that every
/// path through the source and `e` uses an edge of `F`.
///
/// An edge outside `F` escapes blocking exactly when it can be entered from
/// the source's component in `(V, E ∖ F)`: through either endpoint for an
/// undirected edge, through its source for an arc. A self-loop counts as
/// entered from its vertex.
pub fn linesearch_closure(graph: &Multigraph, source: SourceVertex, f: Subset) -> Subset {
    let adj = Adjacency::oriented(graph);
    let reached = adj.reach_all(source.0, |e| !f.contains(e));
    let mut tau = f;
    for (i, e) in graph.edges.iter().enumerate() {
        let entered = match e.orientation {
            Orientation::Undirected => reached[e.a] || reached[e.b],
            Orientation::Directed => reached[e.a],
        };
        if !entered {
            tau = tau.with(i);
        }
    }
    tau
}

pub fn linesearch_map(graph: &Multigraph, source: SourceVertex) -> Result<SubsetMap> {
    check_dense(graph.edge_count())?;
    SubsetMap::from_fn(graph.edge_ground(), |f| {
        linesearch_closure(graph, source, f)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NucleusReport {
    pub nuclei: usize,
    pub pandemic_subsets: usize,
    /// Every `E(N)` is pandemic.
    pub images_pandemic: bool,
    pub injective: bool,
    pub surjective: bool,
    pub bijection: bool,
}

/// Enumerates the nuclei containing the source (connected subgraphs touching
/// every edge) and checks that `N ↦ E(N)` is a bijection onto the pandemic
/// subsets.
///
/// Requires a connected simple graph.
pub fn nucleus_pandemic_check(graph: &Multigraph, source: SourceVertex) -> Result<NucleusReport> {
    if !graph.is_simple() {
        return Err(Error::GraphPrecondition(
            "nuclei are only defined for simple undirected graphs".into(),
        ));
    }
    if !graph.is_connected() {
        return Err(Error::GraphPrecondition("graph is not connected".into()));
    }
    let n = graph.vertex_count();
    let m = graph.edge_count();
    if n > 16 || m > 16 {
        return Err(Error::SizeLimit(format!(
            "nucleus enumeration is capped at 16 vertices and 16 edges (got {n} and {m})"
        )));
    }
    let infection = EdgeInfection::new(graph, source);
    let pandemic = infection.pandemic_family()?;
    let v = source.0;

    let mut images = Vec::new();
    for vertex_mask in 0u32..1 << n {
        if vertex_mask >> v & 1 == 0 {
            continue;
        }
        let inside = |x: usize| vertex_mask >> x & 1 == 1;
        if !graph.edges.iter().all(|e| inside(e.a) || inside(e.b)) {
            continue;
        }
        let induced = Subset::from_elements(
            graph
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| inside(e.a) && inside(e.b))
                .map(|(i, _)| i),
        );
        for edges in induced.subsets() {
            if spans_connected(graph, vertex_mask, edges) {
                images.push(edges);
            }
        }
    }
    let nuclei = images.len();
    let images_pandemic = images.iter().all(|&e| infection.is_pandemic(e));
    images.sort_unstable();
    images.dedup();
    let injective = images.len() == nuclei;
    let surjective = pandemic.iter().all(|p| images.binary_search(p).is_ok());
    Ok(NucleusReport {
        nuclei,
        pandemic_subsets: pandemic.len(),
        images_pandemic,
        injective,
        surjective,
        bijection: images_pandemic && injective && surjective,
    })
}

fn spans_connected(graph: &Multigraph, vertex_mask: u32, edges: Subset) -> bool {
    let start = vertex_mask.trailing_zeros() as usize;
    let mut reached = 1u32 << start;
    loop {
        let before = reached;
        for i in edges.elements() {
            let e = &graph.edges[i];
            if reached >> e.a & 1 == 1 || reached >> e.b & 1 == 1 {
                reached |= 1 << e.a | 1 << e.b;
            }
        }
        if reached == before {
            return reached == vertex_mask;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example2() -> (Multigraph, SourceVertex) {
        let mut g = Multigraph::new();
        g.add_edge("1", "v", "p").unwrap();
        g.add_edge("2", "p", "q").unwrap();
        g.add_edge("3", "q", "w").unwrap();
        g.add_edge("4", "w", "v").unwrap();
        let v = g.source_named("v").unwrap();
        (g, v)
    }

    #[test]
    fn empty_set_infects_edges_at_the_source() {
        let (g, v) = example2();
        let e = g.edge_ground();
        assert_eq!(
            EdgeInfection::new(&g, v).shade(Subset::EMPTY),
            e.parse_subset("1,4").unwrap()
        );
    }

    #[test]
    fn self_loop_at_source_always_infected() {
        let mut g = Multigraph::new();
        g.add_edge("l", "v", "v").unwrap();
        g.add_edge("x", "a", "b").unwrap();
        let v = g.source_named("v").unwrap();
        let inf = EdgeInfection::new(&g, v);
        assert_eq!(inf.shade(Subset::EMPTY), Subset::singleton(0));
        assert_eq!(inf.pandemic_family().unwrap(), Vec::<Subset>::new());
    }

    #[test]
    fn single_vertex_no_edges() {
        let mut g = Multigraph::new();
        g.add_vertex("v");
        let v = g.source(0).unwrap();
        let inf = EdgeInfection::new(&g, v);
        assert_eq!(inf.pandemic_family().unwrap(), vec![Subset::EMPTY]);
        assert_eq!(inf.pandemic_sum().unwrap(), 1);
        let vi = VertexInfection::new(&g, v).unwrap();
        assert_eq!(vi.pandemic_family().unwrap(), vec![Subset::EMPTY]);
        assert_eq!(vi.pandemic_sum().unwrap(), 1);
    }

    #[test]
    fn source_out_of_range() {
        let (g, _) = example2();
        assert!(matches!(g.source(4), Err(Error::Usage(_))));
    }

    #[test]
    fn arcs_respect_orientation() {
        // v -> a -> b, plus c -> a
        let mut g = Multigraph::new();
        g.add_arc("x", "v", "a").unwrap();
        g.add_arc("y", "a", "b").unwrap();
        g.add_arc("z", "c", "a").unwrap();
        let v = g.source_named("v").unwrap();
        let both = EdgeInfection::new(&g, v);
        let src = EdgeInfection::with_rule(&g, v, EndpointRule::Source);
        let f = Subset::singleton(0);
        // reached {v, a}: z touches a by its target
        assert_eq!(both.shade(f), Subset::from_elements([0, 1, 2]));
        assert_eq!(src.shade(f), Subset::from_elements([0, 1]));
        // traversing z backwards is not allowed
        let mut h = Multigraph::new();
        h.add_arc("z", "c", "v").unwrap();
        h.add_edge("w", "c", "d").unwrap();
        let v = h.source_named("v").unwrap();
        assert_eq!(
            EdgeInfection::new(&h, v).shade(Subset::full(2)),
            Subset::singleton(0)
        );
    }

    #[test]
    fn target_rule_is_refused() {
        assert!(matches!(
            "target".parse::<EndpointRule>(),
            Err(Error::Usage(_))
        ));
        assert_eq!(
            "source".parse::<EndpointRule>().unwrap(),
            EndpointRule::Source
        );
    }

    #[test]
    fn vertex_mode_rejects_arcs() {
        let mut g = Multigraph::new();
        g.add_arc("x", "v", "a").unwrap();
        assert!(VertexInfection::new(&g, g.source(0).unwrap()).is_err());
    }

    #[test]
    fn vertex_infection_with_empty_set_reaches_neighbours() {
        let (g, v) = example2();
        let vi = VertexInfection::new(&g, v).unwrap();
        let ground = vi.ground();
        assert_eq!(ground.labels(), ["p", "q", "w"]);
        assert_eq!(vi.shade(Subset::EMPTY), ground.parse_subset("p,w").unwrap());
    }

    #[test]
    fn linesearch_basics() {
        let (g, v) = example2();
        let e = g.edge_ground();
        assert_eq!(linesearch_closure(&g, v, Subset::EMPTY), Subset::EMPTY);
        assert_eq!(
            linesearch_closure(&g, v, e.parse_subset("1,4").unwrap()),
            e.full()
        );
        assert_eq!(linesearch_closure(&g, v, e.full()), e.full());
        assert_eq!(
            linesearch_closure(&g, v, e.parse_subset("2").unwrap()),
            e.parse_subset("2").unwrap()
        );
    }

    #[test]
    fn nucleus_preconditions() {
        let mut g = Multigraph::new();
        g.add_edge("a", "v", "w").unwrap();
        g.add_edge("b", "v", "w").unwrap();
        assert!(matches!(
            nucleus_pandemic_check(&g, g.source(0).unwrap()),
            Err(Error::GraphPrecondition(_))
        ));
        let mut h = Multigraph::new();
        h.add_edge("a", "v", "w").unwrap();
        h.add_vertex("x");
        assert!(matches!(
            nucleus_pandemic_check(&h, h.source(0).unwrap()),
            Err(Error::GraphPrecondition(_))
        ));
    }

    #[test]
    fn single_edge_has_two_nuclei() {
        let mut g = Multigraph::new();
        g.add_edge("1", "v", "w").unwrap();
        let r = nucleus_pandemic_check(&g, g.source(0).unwrap()).unwrap();
        assert_eq!((r.nuclei, r.pandemic_subsets), (2, 2));
        assert!(r.bijection);
    }
}
