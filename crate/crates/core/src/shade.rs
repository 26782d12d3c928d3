//! Shade-map axioms, monotonicity, duality and the generalized alternating sums.
//!
//! For a map `Shade : P(E) → P(E)` and `u ∉ Shade F`:
//!
//! * Axiom 1: `Shade(F ∪ {u}) = Shade F`; Axiom 1' weakens `=` to `⊆`.
//! * Axiom 2: `Shade(F ∖ {u}) = Shade F`; Axiom 2' weakens `=` to `⊆`.
//!
//! Axiom 3 quantifies over `u ∉ F` instead: `Shade F = Shade(F ∪ {u})` or
//! `u` lies in both shades. Axioms 1+2, 1'+2' and 3 are equivalent; the
//! classifier evaluates all of them independently and cross-checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::SubsetMap;
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotonicity {
    Preserving,
    Reversing,
    /// Constant maps are both.
    Both,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShadeProperty {
    Axiom1,
    Axiom2,
    Axiom1Weak,
    Axiom2Weak,
    Axiom3,
    InclusionPreserving,
    InclusionReversing,
}

/// First failing `(F, u)` for a property, in `(code(F), u)` order.
///
/// For the monotonicity properties the failing pair is `F ≺ F ∪ {u}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub property: ShadeProperty,
    pub set: Subset,
    pub element: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadeDiagnostics {
    pub axiom1_ok: bool,
    pub axiom2_ok: bool,
    pub axiom1_weak_ok: bool,
    pub axiom2_weak_ok: bool,
    pub axiom3_ok: bool,
    pub monotonicity: Monotonicity,
    pub witnesses: Vec<AxiomWitness>,
    /// Axioms 1∧2 ⇔ 1'∧2' ⇔ 3 held on this input.
    pub cross_checks_ok: bool,
}

impl ShadeDiagnostics {
    pub fn is_shade_map(&self) -> bool {
        self.axiom1_ok && self.axiom2_ok
    }

    pub fn is_inclusion_preserving(&self) -> bool {
        matches!(
            self.monotonicity,
            Monotonicity::Preserving | Monotonicity::Both
        )
    }

    pub fn is_inclusion_reversing(&self) -> bool {
        matches!(
            self.monotonicity,
            Monotonicity::Reversing | Monotonicity::Both
        )
    }

    pub fn witness(&self, property: ShadeProperty) -> Option<AxiomWitness> {
        self.witnesses
            .iter()
            .copied()
            .find(|w| w.property == property)
    }
}

#[derive(Default)]
struct Sweep {
    first: [Option<(Subset, usize)>; 7],
}

impl Sweep {
    fn fail(&mut self, property: ShadeProperty, set: Subset, element: usize) {
        let slot = &mut self.first[property as usize];
        if slot.is_none() {
            *slot = Some((set, element));
        }
    }

    fn ok(&self, property: ShadeProperty) -> bool {
        self.first[property as usize].is_none()
    }
}

/// Evaluates every axiom and both monotonicity properties by exhaustive sweep.
///
/// Monotonicity is checked on covering pairs `A ≺ B` only; any `A ⊆ B` is
/// joined by a chain of covering steps, so the covering check suffices.
pub fn classify_map(map: &SubsetMap) -> ShadeDiagnostics {
    use ShadeProperty::*;
    let n = map.size();
    let mut sweep = Sweep::default();
    for f in map.domain() {
        let shade = map.get(f);
        for u in 0..n {
            if !shade.contains(u) {
                let up = map.get(f.with(u));
                let down = map.get(f.without(u));
                if up != shade {
                    sweep.fail(Axiom1, f, u);
                }
                if !up.is_subset_of(shade) {
                    sweep.fail(Axiom1Weak, f, u);
                }
                if down != shade {
                    sweep.fail(Axiom2, f, u);
                }
                if !down.is_subset_of(shade) {
                    sweep.fail(Axiom2Weak, f, u);
                }
            }
            if !f.contains(u) {
                let up = map.get(f.with(u));
                if !(shade == up || (shade.contains(u) && up.contains(u))) {
                    sweep.fail(Axiom3, f, u);
                }
                if !shade.is_subset_of(up) {
                    sweep.fail(InclusionPreserving, f, u);
                }
                if !up.is_subset_of(shade) {
                    sweep.fail(InclusionReversing, f, u);
                }
            }
        }
    }

    let monotonicity = match (sweep.ok(InclusionPreserving), sweep.ok(InclusionReversing)) {
        (true, true) => Monotonicity::Both,
        (true, false) => Monotonicity::Preserving,
        (false, true) => Monotonicity::Reversing,
        (false, false) => Monotonicity::Neither,
    };
    let all = [
        Axiom1,
        Axiom2,
        Axiom1Weak,
        Axiom2Weak,
        Axiom3,
        InclusionPreserving,
        InclusionReversing,
    ];
    let witnesses = all
        .iter()
        .filter_map(|&p| {
            sweep.first[p as usize].map(|(set, element)| AxiomWitness {
                property: p,
                set,
                element,
            })
        })
        .collect();
    let strong = sweep.ok(Axiom1) && sweep.ok(Axiom2);
    let weak = sweep.ok(Axiom1Weak) && sweep.ok(Axiom2Weak);
    ShadeDiagnostics {
        axiom1_ok: sweep.ok(Axiom1),
        axiom2_ok: sweep.ok(Axiom2),
        axiom1_weak_ok: sweep.ok(Axiom1Weak),
        axiom2_weak_ok: sweep.ok(Axiom2Weak),
        axiom3_ok: sweep.ok(Axiom3),
        monotonicity,
        witnesses,
        cross_checks_ok: strong == weak && strong == sweep.ok(Axiom3),
    }
}

/// Fails unless the map is a shade map; returns the diagnostics otherwise.
pub fn require_shade_map(map: &SubsetMap) -> Result<ShadeDiagnostics> {
    let diag = classify_map(map);
    if diag.is_shade_map() {
        Ok(diag)
    } else {
        Err(Error::NotShadeMap(Box::new(diag)))
    }
}

/// `F ↦ m(E ∖ F)`. An involution that swaps preserving and reversing maps.
pub fn dual_map(map: &SubsetMap) -> SubsetMap {
    let n = map.size();
    SubsetMap::from_fn(map.ground().clone(), |f| map.get(f.complement(n)))
        .expect("same ground set as an existing table")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShadeSums {
    /// `Σ_{G ⊆ Shade F} (-1)^|F|`.
    pub contained: i64,
    /// `Σ_{G ⊄ Shade F} (-1)^|F|`.
    pub not_contained: i64,
}

impl ShadeSums {
    pub fn total(&self) -> i64 {
        self.contained + self.not_contained
    }
}

/// Splits `Σ_{F ⊆ E} (-1)^|F|` according to whether `G ⊆ m(F)`.
pub fn shade_alternating_sums(map: &SubsetMap, target: Subset) -> ShadeSums {
    let mut sums = ShadeSums {
        contained: 0,
        not_contained: 0,
    };
    for f in map.domain() {
        if target.is_subset_of(map.get(f)) {
            sums.contained += f.sign();
        } else {
            sums.not_contained += f.sign();
        }
    }
    sums
}
