//! Quasi-closure operators, the anti-exchange property, and the passage
//! between antimatroidal quasi-closures and inclusion-reversing shade maps.
//!
//! A quasi-closure operator `τ` is extensive (1), monotone (2) and
//! idempotent (3); it is antimatroidal when (4) holds: for `y ≠ z` outside
//! `τ(X)`, `z ∈ τ(X ∪ {y})` forces `y ∉ τ(X ∪ {z})`. A closure operator
//! additionally has `τ(∅) = ∅`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::SubsetMap;
use crate::shade::classify_map;
use crate::subset::{GroundSet, Subset};

/// Property 4 costs `O(2^n n²)`; larger ground sets are refused.
pub const MAX_CLOSURE_ELEMENTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureProperty {
    Extensive,
    Monotone,
    Idempotent,
    Antimatroidal,
}

/// First failure per property in `(code(X), y, z)` order.
///
/// Extensive and idempotent failures carry only `X`; monotone failures carry
/// the covering pair `X ≺ X ∪ {y}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureWitness {
    pub property: ClosureProperty,
    pub set: Subset,
    pub y: Option<usize>,
    pub z: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureDiagnostics {
    pub extensive_ok: bool,
    pub monotone_ok: bool,
    pub idempotent_ok: bool,
    pub antimatroidal_ok: bool,
    /// `τ(∅) = ∅`.
    pub fixes_empty: bool,
    pub witnesses: Vec<ClosureWitness>,
}

impl ClosureDiagnostics {
    pub fn is_quasi_closure(&self) -> bool {
        self.extensive_ok && self.monotone_ok && self.idempotent_ok
    }

    pub fn is_closure(&self) -> bool {
        self.is_quasi_closure() && self.fixes_empty
    }

    pub fn is_antimatroidal_quasi_closure(&self) -> bool {
        self.is_quasi_closure() && self.antimatroidal_ok
    }

    pub fn witness(&self, property: ClosureProperty) -> Option<ClosureWitness> {
        self.witnesses
            .iter()
            .copied()
            .find(|w| w.property == property)
    }
}

pub fn classify_closure(map: &SubsetMap) -> Result<ClosureDiagnostics> {
    use ClosureProperty::*;
    let n = map.size();
    if n > MAX_CLOSURE_ELEMENTS {
        return Err(Error::SizeLimit(format!(
            "closure classification is capped at {MAX_CLOSURE_ELEMENTS} elements (got {n})"
        )));
    }
    let mut first: [Option<ClosureWitness>; 4] = [None; 4];
    let mut fail = |property: ClosureProperty, set, y, z| {
        let slot = &mut first[property as usize];
        if slot.is_none() {
            *slot = Some(ClosureWitness {
                property,
                set,
                y,
                z,
            });
        }
    };
    for x in map.domain() {
        let tx = map.get(x);
        if !x.is_subset_of(tx) {
            fail(Extensive, x, None, None);
        }
        if map.get(tx) != tx {
            fail(Idempotent, x, None, None);
        }
        for y in 0..n {
            if !x.contains(y) && !tx.is_subset_of(map.get(x.with(y))) {
                fail(Monotone, x, Some(y), None);
            }
            if tx.contains(y) {
                continue;
            }
            let ty = map.get(x.with(y));
            for z in 0..n {
                if z != y && !tx.contains(z) && ty.contains(z) && map.get(x.with(z)).contains(y) {
                    fail(Antimatroidal, x, Some(y), Some(z));
                }
            }
        }
    }
    Ok(ClosureDiagnostics {
        extensive_ok: first[Extensive as usize].is_none(),
        monotone_ok: first[Monotone as usize].is_none(),
        idempotent_ok: first[Idempotent as usize].is_none(),
        antimatroidal_ok: first[Antimatroidal as usize].is_none(),
        fixes_empty: map.get(Subset::EMPTY).is_empty(),
        witnesses: first.into_iter().flatten().collect(),
    })
}

pub fn require_quasi_closure(map: &SubsetMap) -> Result<ClosureDiagnostics> {
    let diag = classify_closure(map)?;
    if diag.is_quasi_closure() {
        Ok(diag)
    } else {
        Err(Error::NotQuasiClosure(Box::new(diag)))
    }
}

pub fn require_antimatroidal(map: &SubsetMap) -> Result<ClosureDiagnostics> {
    let diag = classify_closure(map)?;
    if diag.is_antimatroidal_quasi_closure() {
        Ok(diag)
    } else {
        Err(Error::NotAntimatroidal(Box::new(diag)))
    }
}

/// `F ↦ {e : e ∉ τ(F ∖ {e})}` for any map, without precondition checks.
pub fn derived_shade(map: &SubsetMap) -> SubsetMap {
    let n = map.size();
    SubsetMap::from_fn(map.ground().clone(), |f| {
        Subset::from_elements((0..n).filter(|&e| !map.get(f.without(e)).contains(e)))
    })
    .expect("same ground set as an existing table")
}

/// `F ↦ F ∪ (E ∖ Shade F)` for any map, without precondition checks.
pub fn derived_closure(map: &SubsetMap) -> SubsetMap {
    let full = map.full();
    SubsetMap::from_fn(map.ground().clone(), |f| {
        f.union(full.difference(map.get(f)))
    })
    .expect("same ground set as an existing table")
}

/// The inclusion-reversing shade map of an antimatroidal quasi-closure operator.
pub fn shade_from_closure(map: &SubsetMap) -> Result<SubsetMap> {
    require_antimatroidal(map)?;
    Ok(derived_shade(map))
}

/// The antimatroidal quasi-closure operator of an inclusion-reversing shade map.
pub fn closure_from_shade(map: &SubsetMap) -> Result<SubsetMap> {
    let diag = classify_map(map);
    if !(diag.is_shade_map() && diag.is_inclusion_reversing()) {
        return Err(Error::NotInclusionReversingShadeMap(Box::new(diag)));
    }
    Ok(derived_closure(map))
}

/// A quasi-closure `τ` split into its loops `L = τ(∅)` and the closure
/// `σ(F) = τ(F) ∖ L` on `E ∖ L`.
///
/// `σ` lives on a ground set of its own, indexed by the elements of `E ∖ L`
/// in ascending order and keeping their labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiClosureSplit {
    ground: GroundSet,
    loops: Subset,
    rest: Vec<usize>,
    restricted: SubsetMap,
}

impl QuasiClosureSplit {
    pub fn loops(&self) -> Subset {
        self.loops
    }

    pub fn restricted_closure(&self) -> &SubsetMap {
        &self.restricted
    }

    /// Element of `E` behind each index of the restricted ground set.
    pub fn rest(&self) -> &[usize] {
        &self.rest
    }

    fn compress(&self, f: Subset) -> Subset {
        Subset::from_elements(
            self.rest
                .iter()
                .enumerate()
                .filter(|&(_, &e)| f.contains(e))
                .map(|(i, _)| i),
        )
    }

    fn expand(&self, f: Subset) -> Subset {
        Subset::from_elements(f.elements().map(|i| self.rest[i]))
    }

    /// `τ(F) = σ(F ∖ L) ∪ L`.
    pub fn rejoin(&self) -> SubsetMap {
        SubsetMap::from_fn(self.ground.clone(), |f| {
            let inner = self.compress(f.difference(self.loops));
            self.expand(self.restricted.get(inner)).union(self.loops)
        })
        .expect("same ground set as the split map")
    }
}

pub fn split_quasi_closure(map: &SubsetMap) -> Result<QuasiClosureSplit> {
    require_quasi_closure(map)?;
    let loops = map.get(Subset::EMPTY);
    let rest: Vec<usize> = map.full().difference(loops).elements().collect();
    let labels: Vec<String> = rest
        .iter()
        .map(|&e| map.ground().label(e).to_owned())
        .collect();
    let mut split = QuasiClosureSplit {
        ground: map.ground().clone(),
        loops,
        rest,
        restricted: SubsetMap::identity(GroundSet::new(Vec::<String>::new()))?,
    };
    let restricted = SubsetMap::from_fn(GroundSet::new(labels), |f| {
        split.compress(map.get(split.expand(f)).difference(loops))
    })?;
    split.restricted = restricted;
    Ok(split)
}

/// Every antimatroidal quasi-closure operator on `{0, …, n-1}`, `n ≤ 3`.
///
/// Tables are filled in code order; every proper subset of `F` has a
/// smaller code, so monotonicity along covering pairs prunes as we go.
/// Idempotence and property 4 are checked on complete tables.
pub fn all_antimatroidal_quasi_closures(n: usize) -> Result<Vec<SubsetMap>> {
    if n > 3 {
        return Err(Error::SizeLimit(format!(
            "exhaustive closure enumeration is capped at 3 elements (got {n})"
        )));
    }
    let ground = GroundSet::indexed(n);
    let mut table = vec![Subset::EMPTY; 1 << n];
    let mut out = Vec::new();
    fill(&ground, 0, &mut table, &mut out);
    Ok(out)
}

fn fill(ground: &GroundSet, code: usize, table: &mut Vec<Subset>, out: &mut Vec<SubsetMap>) {
    let n = ground.size();
    if code == table.len() {
        let map = SubsetMap::from_table(ground.clone(), table.clone()).expect("valid table");
        let diag = classify_closure(&map).expect("small ground set");
        if diag.is_antimatroidal_quasi_closure() {
            out.push(map);
        }
        return;
    }
    let f = Subset(code as u32);
    let outside = f.complement(n);
    for extra in outside.subsets() {
        let value = f.union(extra);
        if f.elements()
            .all(|u| table[f.without(u).index()].is_subset_of(value))
        {
            table[code] = value;
            fill(ground, code + 1, table, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(n: usize, codes: &[u32]) -> SubsetMap {
        SubsetMap::from_table(
            GroundSet::indexed(n),
            codes.iter().map(|&c| Subset(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_an_antimatroidal_closure() {
        let d = classify_closure(&SubsetMap::identity(GroundSet::indexed(4)).unwrap()).unwrap();
        assert!(d.is_closure() && d.antimatroidal_ok);
        assert!(d.witnesses.is_empty());
    }

    #[test]
    fn two_element_exchange_violation() {
        let d = classify_closure(&map(2, &[0, 3, 3, 3])).unwrap();
        assert!(d.is_quasi_closure() && d.is_closure());
        assert!(!d.antimatroidal_ok);
        assert_eq!(
            d.witness(ClosureProperty::Antimatroidal),
            Some(ClosureWitness {
                property: ClosureProperty::Antimatroidal,
                set: Subset::EMPTY,
                y: Some(0),
                z: Some(1),
            })
        );
    }

    #[test]
    fn failing_properties_have_witnesses() {
        // τ ≡ ∅ is monotone and idempotent but not extensive
        let d = classify_closure(&map(1, &[0, 0])).unwrap();
        assert!(!d.extensive_ok && d.monotone_ok && d.idempotent_ok);
        assert_eq!(
            d.witness(ClosureProperty::Extensive).unwrap().set,
            Subset(1)
        );
        // τ(∅) = {1} but τ({0}) = {0}
        let d = classify_closure(&map(2, &[2, 1, 2, 3])).unwrap();
        assert!(!d.monotone_ok && d.extensive_ok);
        assert_eq!(
            d.witness(ClosureProperty::Monotone).map(|w| (w.set, w.y)),
            Some((Subset::EMPTY, Some(0)))
        );
        let d = classify_closure(&map(2, &[1, 1, 3, 3])).unwrap();
        assert!(d.idempotent_ok && d.extensive_ok && d.monotone_ok && !d.fixes_empty);
    }

    #[test]
    fn shade_from_identity_is_constant_full() {
        let id = SubsetMap::identity(GroundSet::indexed(3)).unwrap();
        let s = shade_from_closure(&id).unwrap();
        assert!(s.table().iter().all(|&x| x == Subset::full(3)));
        assert_eq!(closure_from_shade(&s).unwrap(), id);
    }

    #[test]
    fn preconditions_are_enforced() {
        assert!(matches!(
            shade_from_closure(&map(2, &[0, 3, 3, 3])),
            Err(Error::NotAntimatroidal(_))
        ));
        assert!(matches!(
            closure_from_shade(&SubsetMap::identity(GroundSet::indexed(2)).unwrap()),
            Err(Error::NotInclusionReversingShadeMap(_))
        ));
        assert!(matches!(
            split_quasi_closure(&map(1, &[0, 0])),
            Err(Error::NotQuasiClosure(_))
        ));
    }

    #[test]
    fn split_with_loops() {
        // E = {0,1,2}, element 1 is a loop: τ(F) = F ∪ {1}
        let tau = SubsetMap::from_fn(GroundSet::indexed(3), |f| f.with(1)).unwrap();
        let split = split_quasi_closure(&tau).unwrap();
        assert_eq!(split.loops(), Subset::singleton(1));
        assert_eq!(split.rest(), [0, 2]);
        assert_eq!(split.restricted_closure().ground().labels(), ["0", "2"]);
        assert!(classify_closure(split.restricted_closure())
            .unwrap()
            .is_closure());
        assert_eq!(split.rejoin(), tau);
    }

    #[test]
    fn enumeration_counts() {
        // 1, 2, 6, 35: loops chosen freely, antimatroids 1, 1, 3, 22 on the rest
        let counts: Vec<usize> = (0..=3)
            .map(|n| all_antimatroidal_quasi_closures(n).unwrap().len())
            .collect();
        assert_eq!(counts, [1, 2, 6, 35]);
    }
}
