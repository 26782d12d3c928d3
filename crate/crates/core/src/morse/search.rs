//! Searching for acyclic matchings on arbitrary complexes.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::complex::SimplicialComplex;
use super::discrete::{find_cycle, verify_acyclic, DiscreteMatching};
use super::elser::build_elser_matching;
use crate::error::Result;
use crate::map::SubsetMap;
use crate::subset::Subset;

pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Collapsibility {
    /// An acyclic complete matching.
    Certificate(DiscreteMatching),
    /// An odd number of faces admits no complete matching.
    OddFaceCount,
    /// The search space was exhausted without a certificate.
    Exhausted { nodes: u64 },
    /// The node budget ran out; nothing is known.
    Unknown { nodes: u64 },
}

impl Collapsibility {
    pub fn certificate(&self) -> Option<&DiscreteMatching> {
        match self {
            Self::Certificate(d) => Some(d),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Certificate(_) => "collapsible",
            Self::OddFaceCount | Self::Exhausted { .. } => "not-collapsible",
            Self::Unknown { .. } => "unknown",
        }
    }
}

/// Depth-first search for an acyclic complete matching.
///
/// Faces are visited in descending size. When a face comes up unmatched all
/// of its cofaces have been decided, so it must be paired with one of its
/// unmatched facets. After each pairing the new upper face is checked for a
/// cycle through it, which prunes every extension of a cyclic partial matching.
pub fn collapsibility_certificate(c: &SimplicialComplex, budget: u64) -> Collapsibility {
    if c.face_count() % 2 == 1 {
        return Collapsibility::OddFaceCount;
    }
    let mut order: Vec<Subset> = c.faces().to_vec();
    order.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut state = Search {
        n: c.ground().size(),
        matched: HashSet::new(),
        lower_of: HashMap::new(),
        nodes: 0,
        budget,
    };
    match state.run(&order, 0) {
        Some(true) => {
            let pairs: Vec<(Subset, Subset)> =
                state.lower_of.iter().map(|(&u, &l)| (l, u)).collect();
            let d = DiscreteMatching::from_pairs(c.clone(), pairs).expect("pairs are faces");
            Collapsibility::Certificate(d)
        }
        Some(false) => Collapsibility::Exhausted { nodes: state.nodes },
        None => Collapsibility::Unknown { nodes: state.nodes },
    }
}

struct Search {
    n: usize,
    matched: HashSet<Subset>,
    lower_of: HashMap<Subset, Subset>,
    nodes: u64,
    budget: u64,
}

impl Search {
    /// `Some(found)` or `None` when the budget ran out.
    fn run(&mut self, order: &[Subset], pos: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let Some(offset) = order[pos..].iter().position(|f| !self.matched.contains(f)) else {
            return Some(true);
        };
        let pos = pos + offset;
        let upper = order[pos];
        for u in upper.elements() {
            let lower = upper.without(u);
            if self.matched.contains(&lower) {
                continue;
            }
            self.matched.insert(upper);
            self.matched.insert(lower);
            self.lower_of.insert(upper, lower);
            if !self.closes_cycle(upper) {
                match self.run(order, pos + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.lower_of.remove(&upper);
            self.matched.remove(&lower);
            self.matched.remove(&upper);
        }
        Some(false)
    }

    /// Whether `start` now lies on a cycle of the upper-face digraph.
    fn closes_cycle(&self, start: Subset) -> bool {
        let mut stack = vec![start];
        let mut seen = HashSet::new();
        while let Some(b) = stack.pop() {
            let l = self.lower_of[&b];
            for u in (0..self.n).filter(|&u| !l.contains(u)) {
                let next = l.with(u);
                if next == b || !self.lower_of.contains_key(&next) {
                    continue;
                }
                if next == start {
                    return true;
                }
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        false
    }
}

/// The Elser matching of a non-infecting complex, checked to be acyclic.
pub fn noninfecting_certificate(
    map: &SubsetMap,
    target: Subset,
) -> Result<Option<DiscreteMatching>> {
    let d = build_elser_matching(map, target)?;
    Ok(verify_acyclic(&d)?.acyclic.then_some(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseMatching {
    /// `(lower, upper)` pairs.
    pub pairs: Vec<(Subset, Subset)>,
    pub critical: Vec<Subset>,
    /// Critical face counts by dimension `-1, 0, 1, …`.
    pub critical_by_dimension: Vec<usize>,
    /// Element order the sweeps used.
    pub element_order: Vec<usize>,
    pub acyclic: bool,
    /// Always true: the construction is heuristic and need not be optimal.
    pub heuristic: bool,
}

impl MorseMatching {
    /// Dimensions holding critical faces.
    pub fn critical_dimensions(&self) -> Vec<isize> {
        self.critical_by_dimension
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i as isize - 1)
            .collect()
    }
}

/// Greedy acyclic partial matching by successive element sweeps.
///
/// For each element `e` in turn, every still unmatched face `F ∌ e` whose
/// coface `F ∪ {e}` is also unmatched gets paired with it. Each rotation of
/// the ascending element order is tried; the one with the fewest critical
/// faces wins, ties going to fewer critical dimensions and then to the
/// earlier rotation. The result is checked for cycles.
pub fn greedy_morse_matching(c: &SimplicialComplex) -> MorseMatching {
    let n = c.ground().size();
    let mut best: Option<MorseMatching> = None;
    for rotation in 0..n.max(1) {
        let order: Vec<usize> = (0..n).map(|i| (i + rotation) % n).collect();
        let candidate = sweep(c, &order);
        let key = |m: &MorseMatching| (m.critical.len(), m.critical_dimensions().len());
        if best.as_ref().is_none_or(|b| key(&candidate) < key(b)) {
            best = Some(candidate);
        }
    }
    best.expect("at least one rotation")
}

fn sweep(c: &SimplicialComplex, order: &[usize]) -> MorseMatching {
    let mut matched: HashSet<Subset> = HashSet::new();
    let mut pairs = Vec::new();
    for &e in order {
        for &f in c.faces() {
            if f.contains(e) || matched.contains(&f) {
                continue;
            }
            let up = f.with(e);
            if c.contains(up) && !matched.contains(&up) {
                matched.insert(f);
                matched.insert(up);
                pairs.push((f, up));
            }
        }
    }
    let critical: Vec<Subset> = c
        .faces()
        .iter()
        .copied()
        .filter(|f| !matched.contains(f))
        .collect();
    let mut critical_by_dimension = vec![0; c.f_vector().len()];
    for f in &critical {
        critical_by_dimension[f.len()] += 1;
    }
    let acyclic = find_cycle(c.ground().size(), pairs.clone()).is_none();
    MorseMatching {
        pairs,
        critical,
        critical_by_dimension,
        element_order: order.to_vec(),
        acyclic,
        heuristic: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::GroundSet;

    #[test]
    fn hollow_triangle_has_odd_face_count() {
        let c = SimplicialComplex::from_predicate(GroundSet::indexed(3), |f| f.len() < 3).unwrap();
        assert_eq!(
            collapsibility_certificate(&c, 1000),
            Collapsibility::OddFaceCount
        );
    }

    #[test]
    fn simplex_is_collapsible() {
        for n in 1..=4 {
            let c = SimplicialComplex::simplex(GroundSet::indexed(n)).unwrap();
            let outcome = collapsibility_certificate(&c, DEFAULT_SEARCH_BUDGET);
            let d = outcome.certificate().expect("simplex is collapsible");
            assert!(verify_acyclic(d).unwrap().acyclic);
        }
    }

    #[test]
    fn void_complex_has_the_empty_certificate() {
        let c = SimplicialComplex::void(GroundSet::indexed(2)).unwrap();
        let outcome = collapsibility_certificate(&c, 10);
        assert!(outcome.certificate().unwrap().pairs().is_empty());
    }

    #[test]
    fn two_points_are_not_collapsible() {
        // ∅, {0}, {1}, {2}: four faces, but every complete matching would pair
        // ∅ with one vertex and the other two vertices with nothing
        let c =
            SimplicialComplex::from_faces(GroundSet::indexed(3), [0, 1, 2, 4].map(Subset)).unwrap();
        assert!(matches!(
            collapsibility_certificate(&c, 1000),
            Collapsibility::Exhausted { .. }
        ));
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let c = SimplicialComplex::simplex(GroundSet::indexed(4)).unwrap();
        assert!(matches!(
            collapsibility_certificate(&c, 1),
            Collapsibility::Unknown { .. }
        ));
    }

    #[test]
    fn greedy_on_a_simplex_leaves_nothing() {
        let c = SimplicialComplex::simplex(GroundSet::indexed(3)).unwrap();
        let m = greedy_morse_matching(&c);
        assert!(m.critical.is_empty() && m.acyclic && m.heuristic);
    }

    #[test]
    fn greedy_on_a_circle_leaves_one_critical_edge() {
        let c = SimplicialComplex::from_predicate(GroundSet::indexed(3), |f| f.len() < 3).unwrap();
        let m = greedy_morse_matching(&c);
        assert!(m.acyclic);
        assert_eq!(m.critical.len(), 1);
        assert_eq!(m.critical_dimensions(), [1]);
    }
}
