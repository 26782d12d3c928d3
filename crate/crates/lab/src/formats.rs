//! Text and JSON input formats.
//!
//! Graph files: `vertex <name>`, `edge <name> <u> <v>`, `arc <name> <u> <v>`
//! and `source <name>`, one per line, `#` to end of line is a comment.
//! Poset files: `element <name>` and `rel <a> <b>` (meaning `a < b`).
//! Point files: `point <name> <x> <y> ...` with coordinates `p` or `p/q`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use shade_core::geometry::RationalPointSet;
use shade_core::graph::{Multigraph, SourceVertex};
use shade_core::intervals::BooleanIntervalPartition;
use shade_core::morse::{DiscreteMatching, SimplicialComplex};
use shade_core::poset::Poset;
use shade_core::{BooleanInterval, GroundSet, Subset, SubsetMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based; `None` for whole-input problems.
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    fn whole(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn directives(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn arity(line: usize, words: &[&str], expected: usize, usage: &str) -> Result<(), ParseError> {
    if words.len() == expected + 1 {
        Ok(())
    } else {
        Err(ParseError::at(
            line,
            format!("`{}` takes {expected} argument(s): {usage}", words[0]),
        ))
    }
}

#[derive(Clone, Debug)]
pub struct GraphFile {
    pub graph: Multigraph,
    pub source: Option<SourceVertex>,
    source_line: Option<usize>,
    lines: usize,
}

impl GraphFile {
    pub fn require_source(&self) -> Result<SourceVertex, ParseError> {
        self.source
            .ok_or_else(|| ParseError::at(self.lines.max(1), "missing `source <name>` directive"))
    }

    /// Line of the `source` directive, if any.
    pub fn source_line(&self) -> Option<usize> {
        self.source_line
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut graph = Multigraph::new();
    let mut source: Option<(usize, String)> = None;
    for (line, words) in directives(text) {
        match words[0] {
            "vertex" => {
                arity(line, &words, 1, "vertex <name>")?;
                graph.add_vertex(words[1]);
            }
            "edge" | "arc" => {
                arity(line, &words, 3, "edge|arc <name> <u> <v>")?;
                let added = if words[0] == "edge" {
                    graph.add_edge(words[1], words[2], words[3])
                } else {
                    graph.add_arc(words[1], words[2], words[3])
                };
                added.map_err(|e| ParseError::at(line, e.to_string()))?;
            }
            "source" => {
                arity(line, &words, 1, "source <name>")?;
                if source.is_some() {
                    return Err(ParseError::at(line, "second `source` directive"));
                }
                source = Some((line, words[1].to_owned()));
            }
            other => return Err(ParseError::at(line, format!("unknown directive `{other}`"))),
        }
    }
    let lines = text.lines().count();
    let (source, source_line) = match source {
        Some((line, name)) => {
            let v = graph
                .source_named(&name)
                .map_err(|_| ParseError::at(line, format!("source `{name}` is not a vertex")))?;
            (Some(v), Some(line))
        }
        None => (None, None),
    };
    Ok(GraphFile {
        graph,
        source,
        source_line,
        lines,
    })
}

pub fn parse_poset(text: &str) -> Result<Poset, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut relations: Vec<(usize, String, String)> = Vec::new();
    let intern = |name: &str, names: &mut Vec<String>| {
        if !names.iter().any(|n| n == name) {
            names.push(name.to_owned());
        }
    };
    for (line, words) in directives(text) {
        match words[0] {
            "element" => {
                arity(line, &words, 1, "element <name>")?;
                intern(words[1], &mut names);
            }
            "rel" => {
                arity(line, &words, 2, "rel <a> <b>")?;
                if words[1] == words[2] {
                    return Err(ParseError::at(line, "a relation `a < a` is not strict"));
                }
                intern(words[1], &mut names);
                intern(words[2], &mut names);
                relations.push((line, words[1].to_owned(), words[2].to_owned()));
            }
            other => return Err(ParseError::at(line, format!("unknown directive `{other}`"))),
        }
    }
    let ground = GroundSet::new(names.clone());
    let index = |name: &str| names.iter().position(|n| n == name).expect("interned");
    let pairs: Vec<(usize, usize)> = relations
        .iter()
        .map(|(_, a, b)| (index(a), index(b)))
        .collect();
    Poset::from_relations(ground, pairs).map_err(|e| {
        let line = relations.last().map(|r| r.0);
        ParseError {
            line,
            message: e.to_string(),
        }
    })
}

pub fn parse_points(text: &str) -> Result<RationalPointSet, ParseError> {
    let mut names = Vec::new();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (line, words) in directives(text) {
        if words[0] != "point" {
            return Err(ParseError::at(
                line,
                format!("unknown directive `{}`", words[0]),
            ));
        }
        if words.len() < 3 {
            return Err(ParseError::at(
                line,
                "`point` takes a name and at least one coordinate",
            ));
        }
        let mut row = Vec::new();
        for w in &words[2..] {
            if w.ends_with("/0") {
                return Err(ParseError::at(line, format!("zero denominator in `{w}`")));
            }
            let x = BigRational::from_str(w)
                .map_err(|_| ParseError::at(line, format!("bad coordinate `{w}`")))?;
            row.push(x);
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(ParseError::at(
                    line,
                    format!("expected {} coordinates, found {}", first.len(), row.len()),
                ));
            }
        }
        if names.contains(&words[1].to_owned()) {
            return Err(ParseError::at(
                line,
                format!("duplicate point `{}`", words[1]),
            ));
        }
        names.push(words[1].to_owned());
        rows.push(row);
    }
    RationalPointSet::new(GroundSet::new(names), rows).map_err(|e| ParseError::whole(e.to_string()))
}

fn json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::at(e.line(), e.to_string()))
}

/// A JSON array of `2^n` subset codes.
pub fn parse_table(text: &str) -> Result<SubsetMap, ParseError> {
    let codes: Vec<u32> = json(text)?;
    if !codes.len().is_power_of_two() {
        return Err(ParseError::whole(format!(
            "table length {} is not a power of two",
            codes.len()
        )));
    }
    let n = codes.len().trailing_zeros() as usize;
    SubsetMap::from_table(
        GroundSet::indexed(n),
        codes.into_iter().map(Subset).collect(),
    )
    .map_err(|e| ParseError::whole(e.to_string()))
}

/// A JSON array of `{lower, upper}` blocks. Without `elements` the ground set
/// is the smallest one holding every bound.
pub fn parse_partition(
    text: &str,
    elements: Option<usize>,
) -> Result<BooleanIntervalPartition, ParseError> {
    let blocks: Vec<BooleanInterval> = json(text)?;
    let n = elements.unwrap_or_else(|| {
        let all = blocks
            .iter()
            .fold(0u32, |acc, b| acc | b.lower().code() | b.upper().code());
        (32 - all.leading_zeros()) as usize
    });
    BooleanIntervalPartition::new(n, blocks).map_err(|e| ParseError::whole(e.to_string()))
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    ground: usize,
    faces: Vec<u32>,
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ParseError> {
    let raw: ComplexJson = json(text)?;
    SimplicialComplex::from_faces(
        GroundSet::indexed(raw.ground),
        raw.faces.into_iter().map(Subset),
    )
    .map_err(|e| ParseError::whole(e.to_string()))
}

#[derive(Serialize, Deserialize)]
struct MatchingJson {
    pairs: Vec<[u32; 2]>,
}

pub fn parse_matching(
    text: &str,
    complex: SimplicialComplex,
) -> Result<DiscreteMatching, ParseError> {
    let raw: MatchingJson = json(text)?;
    let pairs = raw.pairs.into_iter().map(|[l, u]| (Subset(l), Subset(u)));
    DiscreteMatching::from_pairs(complex, pairs).map_err(|e| ParseError::whole(e.to_string()))
}

/// Comma-separated element labels, or `-` for the empty set.
pub fn parse_labels(ground: &GroundSet, list: &str) -> Result<Subset, ParseError> {
    if list.trim() == "-" {
        return Ok(Subset::EMPTY);
    }
    ground
        .parse_subset(list)
        .map_err(|e| ParseError::whole(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_graph_file() {
        let text = "# the 4-cycle\nedge 1 v p\nedge 2 p q\nedge 3 q w\nedge 4 w v\nsource v\n";
        let g = parse_graph(text).unwrap();
        assert_eq!((g.graph.vertex_count(), g.graph.edge_count()), (4, 4));
        assert_eq!(g.require_source().unwrap().index(), 0);
        assert_eq!(g.source_line(), Some(6));
    }

    #[test]
    fn graph_errors_carry_lines() {
        let err = parse_graph("edge 1 a b\nedge x a\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        let err = parse_graph("vertex a\nloop 1 a\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(err.message.contains("unknown directive"));
        let err = parse_graph("edge 1 a b\nsource z\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        let g = parse_graph("edge 1 a b\n").unwrap();
        assert_eq!(g.require_source().unwrap_err().line, Some(1));
        assert_eq!(
            parse_graph("edge 1 a b\nedge 1 b c\n").unwrap_err().line,
            Some(2)
        );
    }

    #[test]
    fn display_roundtrip() {
        let text = "vertex lone\nedge 1 v p\narc 2 p v\nsource v\n";
        let g = parse_graph(text).unwrap();
        let again = parse_graph(&g.graph.to_string()).unwrap();
        assert_eq!(again.graph, g.graph);
    }

    #[test]
    fn posets_and_points() {
        let p = parse_poset("rel a b\nrel b c\nelement d\n").unwrap();
        assert_eq!(p.size(), 4);
        assert!(p.less(0, 2));
        assert!(parse_poset("rel a b\nrel b a\n").is_err());
        let pts = parse_points("point x 0 0\npoint y 1/2 3\n").unwrap();
        assert_eq!((pts.len(), pts.dimension()), (2, 2));
        assert_eq!(
            parse_points("point x 0 0\npoint y 1\n").unwrap_err().line,
            Some(2)
        );
        assert!(parse_points("point x 1/0\n").is_err());
    }

    #[test]
    fn json_inputs() {
        let m = parse_table("[3, 3, 3, 3]").unwrap();
        assert_eq!(m.size(), 2);
        assert!(parse_table("[1, 2, 3]").is_err());
        let p = parse_partition(r#"[{"lower": 0, "upper": 1}]"#, None).unwrap();
        assert_eq!(p.ground_size(), 1);
        let c = parse_complex(r#"{"ground": 1, "faces": [0, 1]}"#).unwrap();
        let d = parse_matching(r#"{"pairs": [[0, 1]]}"#, c).unwrap();
        assert!(d.verify().unwrap().complete);
    }
}
