//! Finite posets and the shade map and closures they induce.

use crate::error::{Error, Result};
use crate::map::SubsetMap;
use crate::subset::{check_dense, GroundSet, Subset};

/// A strict partial order stored as `below[e] = {x : x < e}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    ground: GroundSet,
    below: Vec<Subset>,
    above: Vec<Subset>,
}

impl Poset {
    /// Builds the transitive closure of the given `a < b` pairs.
    ///
    /// Fails if the closure is not irreflexive, i.e. the pairs contain a cycle.
    pub fn from_relations<I>(ground: GroundSet, relations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_dense(ground.size())?;
        let n = ground.size();
        let mut below = vec![Subset::EMPTY; n];
        for (a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::Usage(format!(
                    "relation {a} < {b} mentions an element outside 0..{n}"
                )));
            }
            below[b] = below[b].with(a);
        }
        // Warshall on bit rows: if k < j then everything below k is below j.
        for k in 0..n {
            for j in 0..n {
                if below[j].contains(k) {
                    below[j] = below[j].union(below[k]);
                }
            }
        }
        if let Some(e) = (0..n).find(|&e| below[e].contains(e)) {
            return Err(Error::Usage(format!(
                "relations contain a cycle through `{}`",
                ground.label(e)
            )));
        }
        Ok(Self::from_closed(ground, below))
    }

    /// Accepts an already transitive, irreflexive relation; validates both.
    pub fn from_strict_below(ground: GroundSet, below: Vec<Subset>) -> Result<Self> {
        check_dense(ground.size())?;
        let n = ground.size();
        if below.len() != n {
            return Err(Error::TableLength {
                expected: n,
                actual: below.len(),
            });
        }
        for (e, &b) in below.iter().enumerate() {
            ground.check(b)?;
            if b.contains(e) {
                return Err(Error::Usage(format!("relation is not irreflexive at {e}")));
            }
            for x in b.elements() {
                if !below[x].is_subset_of(b) {
                    return Err(Error::Usage(format!(
                        "relation is not transitive: {x} < {e} but not everything below {x} is below {e}"
                    )));
                }
            }
        }
        Ok(Self::from_closed(ground, below))
    }

    fn from_closed(ground: GroundSet, below: Vec<Subset>) -> Self {
        let n = ground.size();
        let mut above = vec![Subset::EMPTY; n];
        for (e, b) in below.iter().enumerate() {
            for x in b.elements() {
                above[x] = above[x].with(e);
            }
        }
        Self {
            ground,
            below,
            above,
        }
    }

    /// `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        Self::from_relations(GroundSet::indexed(n), (1..n).map(|i| (i - 1, i)))
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_relations(GroundSet::indexed(n), [])
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.size()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn strictly_below(&self, e: usize) -> Subset {
        self.below[e]
    }

    pub fn strictly_above(&self, e: usize) -> Subset {
        self.above[e]
    }

    /// `F↓ = {e : e < f for some f ∈ F}`.
    pub fn strict_downset(&self, f: Subset) -> Subset {
        f.elements()
            .fold(Subset::EMPTY, |acc, x| acc.union(self.below[x]))
    }

    pub fn strict_upset(&self, f: Subset) -> Subset {
        f.elements()
            .fold(Subset::EMPTY, |acc, x| acc.union(self.above[x]))
    }

    /// `Shade F = E ∖ F↓`, an inclusion-reversing shade map.
    pub fn lower_shade(&self) -> SubsetMap {
        let full = self.ground.full();
        SubsetMap::from_fn(self.ground.clone(), |f| {
            full.difference(self.strict_downset(f))
        })
        .expect("ground size checked at construction")
    }

    /// `τ(F) = {e : e ≤ f for some f ∈ F}`.
    pub fn downset_closure(&self) -> SubsetMap {
        SubsetMap::from_fn(self.ground.clone(), |f| f.union(self.strict_downset(f)))
            .expect("ground size checked at construction")
    }

    /// `τ(F) = {e : g ≤ e ≤ f for some f, g ∈ F}`.
    pub fn interval_closure(&self) -> SubsetMap {
        SubsetMap::from_fn(self.ground.clone(), |f| {
            f.union(self.strict_downset(f))
                .intersection(f.union(self.strict_upset(f)))
        })
        .expect("ground size checked at construction")
    }
}

/// Every labelled poset on `{0, …, n-1}`, for `n ≤ 5`.
///
/// Each unordered pair is unrelated or ordered one of two ways; transitive
/// assignments are kept. There are 1, 1, 3, 19, 219 and 4231 of them.
pub fn all_labelled_posets(n: usize) -> Result<Vec<Poset>> {
    if n > 5 {
        return Err(Error::SizeLimit(format!(
            "labelled poset enumeration is capped at 5 elements (got {n})"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let ground = GroundSet::indexed(n);
    let mut out = Vec::new();
    let mut below = vec![Subset::EMPTY; n];
    let total = 3usize.pow(pairs.len() as u32);
    for mut code in 0..total {
        below.fill(Subset::EMPTY);
        for &(i, j) in &pairs {
            match code % 3 {
                1 => below[j] = below[j].with(i),
                2 => below[i] = below[i].with(j),
                _ => {}
            }
            code /= 3;
        }
        let transitive =
            (0..n).all(|e| below[e].elements().all(|x| below[x].is_subset_of(below[e])));
        if transitive {
            out.push(Poset::from_closed(ground.clone(), below.clone()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitive_closure_and_cycles() {
        let p = Poset::from_relations(GroundSet::indexed(3), [(0, 1), (1, 2)]).unwrap();
        assert!(p.less(0, 2));
        assert!(!p.less(2, 0));
        assert!(Poset::from_relations(GroundSet::indexed(2), [(0, 1), (1, 0)]).is_err());
        assert!(Poset::from_relations(GroundSet::indexed(1), [(0, 0)]).is_err());
    }

    #[test]
    fn strict_below_validation() {
        let g = GroundSet::indexed(3);
        // 0 < 1 < 2 without 0 < 2
        let bad = vec![Subset::EMPTY, Subset(1), Subset(2)];
        assert!(Poset::from_strict_below(g.clone(), bad).is_err());
        let good = vec![Subset::EMPTY, Subset(1), Subset(3)];
        assert_eq!(
            Poset::from_strict_below(g, good).unwrap(),
            Poset::chain(3).unwrap()
        );
    }

    #[test]
    fn chain_constructions() {
        let p = Poset::chain(3).unwrap();
        let s = |e: &[usize]| Subset::from_elements(e.iter().copied());
        assert_eq!(p.lower_shade().get(s(&[2])), s(&[2]));
        assert_eq!(p.lower_shade().get(Subset::EMPTY), s(&[0, 1, 2]));
        assert_eq!(p.downset_closure().get(s(&[1])), s(&[0, 1]));
        assert_eq!(p.interval_closure().get(s(&[0, 2])), s(&[0, 1, 2]));
        assert_eq!(p.interval_closure().get(s(&[1])), s(&[1]));
        assert_eq!(p.downset_closure().get(Subset::EMPTY), Subset::EMPTY);
    }

    #[test]
    fn antichain_constructions() {
        let p = Poset::antichain(3).unwrap();
        for f in Subset::full(3).subsets() {
            assert_eq!(p.lower_shade().get(f), Subset::full(3));
            assert_eq!(p.downset_closure().get(f), f);
        }
    }

    #[test]
    fn labelled_poset_counts() {
        let counts: Vec<usize> = (0..=4)
            .map(|n| all_labelled_posets(n).unwrap().len())
            .collect();
        assert_eq!(counts, [1, 1, 3, 19, 219]);
        assert!(all_labelled_posets(6).is_err());
    }
}
