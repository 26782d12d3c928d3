//! The explicit acyclic matching on a non-infecting complex.
//!
//! For a face `F` let `ε(F)` be the smallest element of `G ∖ Shade F`;
//! `μ(F) = F △ {ε(F)}`. Toggling `ε(F)` leaves the shade unchanged, so `μ` is
//! an involution on the complex.

use super::complex::NoninfectingFamily;
use super::discrete::DiscreteMatching;
use crate::error::{Error, Result};
use crate::map::SubsetMap;
use crate::matching::MatchingTable;
use crate::subset::Subset;

/// `ε(F)`, or `None` when `G ⊆ Shade F`.
pub fn elser_epsilon(map: &SubsetMap, target: Subset, f: Subset) -> Option<usize> {
    target.difference(map.get(f)).smallest()
}

pub fn build_elser_matching(map: &SubsetMap, target: Subset) -> Result<DiscreteMatching> {
    NoninfectingFamily::new(map)?.elser_matching(target)
}

impl NoninfectingFamily<'_> {
    /// The Elser matching on the complex for `target`; the complex itself is
    /// available through [`DiscreteMatching::complex`].
    pub fn elser_matching(&self, target: Subset) -> Result<DiscreteMatching> {
        let complex = self.complex(target)?;
        if complex.is_void() {
            return Err(Error::EmptyComplex);
        }
        let map = self.map;
        let table = MatchingTable::from_fn(map.size(), complex.faces().iter().copied(), |f| {
            f.toggle(elser_epsilon(map, target, f).expect("faces miss part of the target"))
        })?;
        Ok(DiscreteMatching::from_table(complex, table))
    }
}
