use std::collections::HashMap;

use serde::Serialize;

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::matching::{verify_complete_matching, MatchingReport, MatchingTable};
use crate::subset::Subset;

/// A matching on the faces of a complex. Unmatched faces are fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteMatching {
    complex: SimplicialComplex,
    table: MatchingTable,
}

impl DiscreteMatching {
    /// Each pair is listed once, in either order.
    pub fn from_pairs<I>(complex: SimplicialComplex, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Subset)>,
    {
        let mut partner: HashMap<Subset, Subset> = HashMap::new();
        for (a, b) in pairs {
            for (x, y) in [(a, b), (b, a)] {
                if !complex.contains(x) {
                    return Err(Error::Usage(format!("{x} is not a face of the complex")));
                }
                if let Some(prev) = partner.insert(x, y) {
                    if prev != y || a == b {
                        return Err(Error::Usage(format!("{x} is matched more than once")));
                    }
                }
            }
        }
        let entries: Vec<(Subset, Subset)> = complex
            .faces()
            .iter()
            .map(|&f| (f, partner.get(&f).copied().unwrap_or(f)))
            .collect();
        let table = MatchingTable::new(complex.ground().size(), entries)?;
        Ok(Self { complex, table })
    }

    pub(crate) fn from_table(complex: SimplicialComplex, table: MatchingTable) -> Self {
        Self { complex, table }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn table(&self) -> &MatchingTable {
        &self.table
    }

    pub fn partner(&self, f: Subset) -> Option<Subset> {
        self.table.partner(f)
    }

    /// Matched pairs as `(lower, upper)`, ascending by upper face.
    pub fn pairs(&self) -> Vec<(Subset, Subset)> {
        self.table
            .pairs()
            .filter(|(f, m)| m.is_covered_by(*f))
            .map(|(f, m)| (m, f))
            .collect()
    }

    pub fn verify(&self) -> Result<MatchingReport> {
        verify_complete_matching(&self.table)
    }
}

impl Serialize for DiscreteMatching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let pairs: Vec<[Subset; 2]> = self.pairs().into_iter().map(|(l, u)| [l, u]).collect();
        let mut st = s.serialize_struct("DiscreteMatching", 1)?;
        st.serialize_field("pairs", &pairs)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicityVerdict {
    pub acyclic: bool,
    /// Upper faces `B_1, …, B_k` with `μ(B_i) ≺ B_{i+1}` and `μ(B_k) ≺ B_1`.
    pub cycle: Option<Vec<Subset>>,
}

/// Acyclicity of a complete matching.
pub fn verify_acyclic(d: &DiscreteMatching) -> Result<AcyclicityVerdict> {
    let report = d.verify()?;
    if !report.complete {
        return Err(Error::IncompleteMatching(format!(
            "{} fixed points, {} involution failures, {} covering failures",
            report.fixed_points.len(),
            report.involution_failures.len(),
            report.covering_failures.len()
        )));
    }
    let cycle = find_cycle(d.complex.ground().size(), d.pairs());
    Ok(AcyclicityVerdict {
        acyclic: cycle.is_none(),
        cycle,
    })
}

/// Looks for a cycle in the digraph on upper faces with `B → B'` whenever
/// `B' ≠ B` and `μ(B) ≺ B'`. Works for partial matchings too.
///
/// A cycle in this digraph is exactly a tuple of distinct upper faces as in
/// the definition of acyclicity, so depth-first search decides it.
pub fn find_cycle(ground_size: usize, mut pairs: Vec<(Subset, Subset)>) -> Option<Vec<Subset>> {
    pairs.sort_unstable_by_key(|&(_, u)| u);
    let index_of = |b: Subset| pairs.binary_search_by_key(&b, |&(_, u)| u).ok();
    let successors = |i: usize| -> Vec<usize> {
        let (l, b) = pairs[i];
        (0..ground_size)
            .filter(|&u| !l.contains(u))
            .map(|u| l.with(u))
            .filter(|&nb| nb != b)
            .filter_map(index_of)
            .collect()
    };

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut mark = vec![Mark::New; pairs.len()];
    for root in 0..pairs.len() {
        if mark[root] != Mark::New {
            continue;
        }
        let mut path: Vec<usize> = vec![root];
        let mut pending: Vec<Vec<usize>> = vec![successors(root)];
        mark[root] = Mark::Open;
        while let Some(next) = pending.last_mut() {
            match next.pop() {
                Some(c) => match mark[c] {
                    Mark::New => {
                        mark[c] = Mark::Open;
                        path.push(c);
                        pending.push(successors(c));
                    }
                    Mark::Open => {
                        let start = path
                            .iter()
                            .position(|&p| p == c)
                            .expect("open node on path");
                        return Some(path[start..].iter().map(|&i| pairs[i].1).collect());
                    }
                    Mark::Done => {}
                },
                None => {
                    pending.pop();
                    let done = path.pop().expect("path tracks pending");
                    mark[done] = Mark::Done;
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::GroundSet;

    #[test]
    fn single_edge_is_acyclic() {
        let c = SimplicialComplex::simplex(GroundSet::indexed(1)).unwrap();
        let d = DiscreteMatching::from_pairs(c, [(Subset(0), Subset(1))]).unwrap();
        assert_eq!(
            verify_acyclic(&d).unwrap(),
            AcyclicityVerdict {
                acyclic: true,
                cycle: None
            }
        );
    }

    #[test]
    fn square_boundary_cycle() {
        // 4-cycle on vertices 0..3 with edges 01, 12, 23, 30; each vertex is
        // matched with the edge to its successor, ∅ stays unmatched.
        let g = GroundSet::indexed(4);
        let edges = [0b0011, 0b0110, 0b1100, 0b1001].map(Subset);
        let faces = [0, 1, 2, 4, 8].map(Subset).into_iter().chain(edges);
        let c = SimplicialComplex::from_faces(g, faces).unwrap();
        let pairs = [(1, 0b0011), (2, 0b0110), (4, 0b1100), (8, 0b1001)]
            .map(|(a, b)| (Subset(a), Subset(b)));
        let d = DiscreteMatching::from_pairs(c, pairs).unwrap();
        assert!(matches!(
            verify_acyclic(&d),
            Err(Error::IncompleteMatching(_))
        ));
        let cycle = find_cycle(4, d.pairs()).unwrap();
        assert_eq!(cycle.len(), 4);
        for (i, &b) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            assert!(d.partner(b).unwrap().is_covered_by(next));
        }
    }

    #[test]
    fn complete_matching_with_a_cycle() {
        // tetrahedron: vertices 0,1,2 matched around the triangle 012
        let c = SimplicialComplex::simplex(GroundSet::indexed(4)).unwrap();
        let pairs = [
            (0b0000, 0b1000),
            (0b0001, 0b0011),
            (0b0010, 0b0110),
            (0b0100, 0b0101),
            (0b1001, 0b1011),
            (0b1010, 0b1110),
            (0b1100, 0b1101),
            (0b0111, 0b1111),
        ]
        .map(|(a, b)| (Subset(a), Subset(b)));
        let d = DiscreteMatching::from_pairs(c, pairs).unwrap();
        let v = verify_acyclic(&d).unwrap();
        assert!(!v.acyclic);
        let cycle = v.cycle.unwrap();
        assert_eq!(cycle.len(), 3);
        assert!(cycle.iter().all(|b| b.len() == 2));
    }

    #[test]
    fn rejects_double_matching_and_foreign_faces() {
        let c = SimplicialComplex::simplex(GroundSet::indexed(2)).unwrap();
        assert!(DiscreteMatching::from_pairs(
            c.clone(),
            [(Subset(0), Subset(1)), (Subset(1), Subset(3))]
        )
        .is_err());
        let small = SimplicialComplex::from_faces(GroundSet::indexed(2), [Subset(0)]).unwrap();
        assert!(DiscreteMatching::from_pairs(small, [(Subset(0), Subset(1))]).is_err());
    }
}
