//! Complete matchings: fixed-point-free involutions along the covering relation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{alternating_sum, check_dense, Subset};

/// A self-map on a family of subsets, stored densely by subset code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingTable {
    ground_size: usize,
    family: Vec<Subset>,
    pair: Vec<Option<Subset>>,
}

impl MatchingTable {
    /// Builds the table from `(F, pair(F))` entries; the family is the set of `F`s.
    pub fn new<I>(ground_size: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Subset)>,
    {
        check_dense(ground_size)?;
        let full = Subset::full(ground_size);
        let mut pair = vec![None; 1 << ground_size];
        for (from, to) in entries {
            for s in [from, to] {
                if !s.is_subset_of(full) {
                    return Err(Error::SubsetOutOfRange {
                        code: s.0,
                        size: ground_size,
                    });
                }
            }
            pair[from.index()] = Some(to);
        }
        let family = (0..pair.len() as u32)
            .map(Subset)
            .filter(|s| pair[s.index()].is_some())
            .collect();
        Ok(Self {
            ground_size,
            family,
            pair,
        })
    }

    pub fn from_fn<I, F>(ground_size: usize, family: I, mut f: F) -> Result<Self>
    where
        I: IntoIterator<Item = Subset>,
        F: FnMut(Subset) -> Subset,
    {
        Self::new(
            ground_size,
            family.into_iter().map(|s| (s, f(s))).collect::<Vec<_>>(),
        )
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Family members in ascending code order.
    pub fn family(&self) -> &[Subset] {
        &self.family
    }

    pub fn contains(&self, set: Subset) -> bool {
        self.pair.get(set.index()).is_some_and(Option::is_some)
    }

    pub fn partner(&self, set: Subset) -> Option<Subset> {
        self.pair.get(set.index()).copied().flatten()
    }

    /// `(F, pair(F))` for every `F` in the family, ascending by `F`.
    pub fn pairs(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.family
            .iter()
            .map(|&s| (s, self.pair[s.index()].expect("family member")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    pub family_size: usize,
    /// Sets `F` with `pair(pair(F)) ≠ F`.
    pub involution_failures: Vec<Subset>,
    /// Sets `F` where neither `pair(F) ≺ F` nor `F ≺ pair(F)`; fixed points excluded.
    pub covering_failures: Vec<Subset>,
    pub fixed_points: Vec<Subset>,
    pub alternating_sum: i64,
    pub complete: bool,
    /// A complete matching forces the alternating sum of its family to vanish.
    pub sum_vanishes_when_complete: bool,
}

/// Checks that the table is a complete matching of its family.
///
/// A pair leaving the family is a structural error rather than a report entry.
pub fn verify_complete_matching(matching: &MatchingTable) -> Result<MatchingReport> {
    let mut involution_failures = Vec::new();
    let mut covering_failures = Vec::new();
    let mut fixed_points = Vec::new();
    for (from, to) in matching.pairs() {
        let back = matching
            .partner(to)
            .ok_or(Error::MatchingOutsideFamily { from, to })?;
        if back != from {
            involution_failures.push(from);
        }
        if to == from {
            fixed_points.push(from);
        } else if !(to.is_covered_by(from) || from.is_covered_by(to)) {
            covering_failures.push(from);
        }
    }
    let sum = alternating_sum(matching.family().iter().copied());
    let complete =
        involution_failures.is_empty() && covering_failures.is_empty() && fixed_points.is_empty();
    Ok(MatchingReport {
        family_size: matching.family().len(),
        involution_failures,
        covering_failures,
        fixed_points,
        alternating_sum: sum,
        complete,
        sum_vanishes_when_complete: !complete || sum == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_edge_is_complete() {
        let m = MatchingTable::new(1, [(Subset(0), Subset(1)), (Subset(1), Subset(0))]).unwrap();
        let r = verify_complete_matching(&m).unwrap();
        assert!(r.complete);
        assert_eq!(r.alternating_sum, 0);
    }

    #[test]
    fn identity_has_fixed_point() {
        let m = MatchingTable::new(1, [(Subset::EMPTY, Subset::EMPTY)]).unwrap();
        let r = verify_complete_matching(&m).unwrap();
        assert!(!r.complete);
        assert_eq!(r.fixed_points, vec![Subset::EMPTY]);
        assert_eq!(r.alternating_sum, 1);
    }

    #[test]
    fn partner_outside_family_is_an_error() {
        let m = MatchingTable::new(2, [(Subset(0), Subset(1))]).unwrap();
        assert!(matches!(
            verify_complete_matching(&m),
            Err(Error::MatchingOutsideFamily { .. })
        ));
    }

    #[test]
    fn non_involution_and_non_covering_witnesses() {
        // 0 -> 1 -> 3 -> 0: a 3-cycle, with 3 -> 0 jumping two levels
        let m = MatchingTable::new(
            2,
            [
                (Subset(0), Subset(1)),
                (Subset(1), Subset(3)),
                (Subset(3), Subset(0)),
            ],
        )
        .unwrap();
        let r = verify_complete_matching(&m).unwrap();
        assert_eq!(r.involution_failures, vec![Subset(0), Subset(1), Subset(3)]);
        assert_eq!(r.covering_failures, vec![Subset(3)]);
        assert!(!r.complete);
    }

    #[test]
    fn toggling_a_fixed_element_matches_the_power_set() {
        for n in 1..=12 {
            let m =
                MatchingTable::from_fn(n, Subset::full(n).subsets(), |s| s.toggle(n - 1)).unwrap();
            let r = verify_complete_matching(&m).unwrap();
            assert!(r.complete && r.sum_vanishes_when_complete);
            assert_eq!(r.alternating_sum, 0);
        }
    }
}
