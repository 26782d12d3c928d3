//! Finite ground sets, bit-encoded subsets and Boolean intervals.
//!
//! Element `i` of a ground set is bit `i` of a subset code. The ascending
//! index order is the fixed total order used wherever a "smallest element"
//! is needed.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set accepted by dense `2^n` tables.
pub const MAX_DENSE_ELEMENTS: usize = 20;

/// An indexed finite universe with a display label per element.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            labels: labels.into_iter().map(Into::into).collect(),
        }
    }

    /// Elements labelled `0, 1, ..., n-1`.
    pub fn indexed(size: usize) -> Self {
        Self::new((0..size).map(|i| i.to_string()))
    }

    /// Elements labelled `1, 2, ..., n`, the usual convention for small examples.
    pub fn one_based(size: usize) -> Self {
        Self::new((1..=size).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, element: usize) -> &str {
        &self.labels[element]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size())
    }

    /// Number of subsets, i.e. `2^n`. Fails above the dense-table cap.
    pub fn power_set_len(&self) -> Result<usize> {
        check_dense(self.size())?;
        Ok(1usize << self.size())
    }

    pub fn all_subsets(&self) -> impl Iterator<Item = Subset> {
        (0..1u32 << self.size()).map(Subset)
    }

    pub fn check(&self, subset: Subset) -> Result<()> {
        if self.size() < 32 && subset.0 >> self.size() != 0 {
            return Err(Error::SubsetOutOfRange {
                code: subset.0,
                size: self.size(),
            });
        }
        Ok(())
    }

    /// `a ≺ b` for two subsets of this ground set.
    pub fn covers(&self, a: Subset, b: Subset) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.is_covered_by(b))
    }

    /// Parses a comma-separated list of labels such as `1,2,8`.
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let mut out = Subset::EMPTY;
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let idx = self
                .index_of(part)
                .ok_or_else(|| Error::Usage(format!("unknown element `{part}`")))?;
            out = out.with(idx);
        }
        Ok(out)
    }

    /// Sorted label list in braces, e.g. `{1,3}`; the empty set is `{}`.
    pub fn format(&self, subset: Subset) -> String {
        let labels: Vec<&str> = subset.elements().map(|i| self.label(i)).collect();
        format!("{{{}}}", labels.join(","))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

pub(crate) fn check_dense(size: usize) -> Result<()> {
    if size > MAX_DENSE_ELEMENTS {
        Err(Error::GroundSetTooLarge(size))
    } else {
        Ok(())
    }
}

/// A subset of a ground set, bit `i` set iff element `i` is present.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(size: usize) -> Subset {
        if size >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << size) - 1)
        }
    }

    pub fn singleton(element: usize) -> Subset {
        Subset(1 << element)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        elements.into_iter().fold(Subset::EMPTY, Subset::with)
    }

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, element: usize) -> bool {
        self.0 >> element & 1 == 1
    }

    #[inline]
    pub fn with(self, element: usize) -> Subset {
        Subset(self.0 | 1 << element)
    }

    #[inline]
    pub fn without(self, element: usize) -> Subset {
        Subset(self.0 & !(1 << element))
    }

    #[inline]
    pub fn toggle(self, element: usize) -> Subset {
        Subset(self.0 ^ 1 << element)
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Complement relative to a ground set of `size` elements.
    #[inline]
    pub fn complement(self, size: usize) -> Subset {
        Subset::full(size).difference(self)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// `self ≺ other`: `other` is `self` plus exactly one new element.
    #[inline]
    pub fn is_covered_by(self, other: Subset) -> bool {
        self.is_subset_of(other) && (other.0 ^ self.0).count_ones() == 1
    }

    #[inline]
    pub fn smallest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// `+1` for even cardinality, `-1` for odd.
    #[inline]
    pub fn sign(self) -> i64 {
        if self.0.count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, in ascending code order.
    pub fn subsets(self) -> Submasks {
        Submasks {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element indices of a subset, ascending.
#[derive(Clone)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Submasks of a mask in ascending numeric order.
#[derive(Clone)]
pub struct Submasks {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(Subset(cur))
    }
}

/// The Boolean interval `[lower, upper] = { I : lower ⊆ I ⊆ upper }`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct BooleanInterval {
    lower: Subset,
    upper: Subset,
}

impl BooleanInterval {
    pub fn new(lower: Subset, upper: Subset) -> Result<Self> {
        if !lower.is_subset_of(upper) {
            return Err(Error::NotAnInterval { lower, upper });
        }
        Ok(Self { lower, upper })
    }

    pub fn singleton(set: Subset) -> Self {
        Self {
            lower: set,
            upper: set,
        }
    }

    pub fn lower(&self) -> Subset {
        self.lower
    }

    pub fn upper(&self) -> Subset {
        self.upper
    }

    /// The free directions `upper ∖ lower`.
    pub fn span(&self) -> Subset {
        self.upper.difference(self.lower)
    }

    pub fn contains(&self, set: Subset) -> bool {
        self.lower.is_subset_of(set) && set.is_subset_of(self.upper)
    }

    /// Number of members, `2^|upper ∖ lower|`.
    pub fn len(&self) -> usize {
        1usize << self.span().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Members in ascending code order.
    pub fn members(&self) -> impl Iterator<Item = Subset> + '_ {
        let lower = self.lower;
        self.span().subsets().map(move |s| s.union(lower))
    }
}

/// All subsets between `lower` and `upper`, ascending by code.
pub fn interval_members(lower: Subset, upper: Subset) -> Result<Vec<Subset>> {
    Ok(BooleanInterval::new(lower, upper)?.members().collect())
}

/// `Σ (-1)^|F|` over the family.
pub fn alternating_sum<I: IntoIterator<Item = Subset>>(family: I) -> i64 {
    family.into_iter().map(Subset::sign).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(elements: &[usize]) -> Subset {
        Subset::from_elements(elements.iter().copied())
    }

    #[test]
    fn covers_examples() {
        // E = {1,2,3} as indices 0..2
        let e = GroundSet::one_based(3);
        let one = e.parse_subset("1").unwrap();
        let one_two = e.parse_subset("1,2").unwrap();
        let all = e.parse_subset("1,2,3").unwrap();
        assert!(e.covers(one, one_two).unwrap());
        assert!(!e.covers(one, all).unwrap());
        assert!(!e.covers(one_two, one).unwrap());
    }

    #[test]
    fn covers_rejects_foreign_codes() {
        let e = GroundSet::indexed(2);
        assert!(matches!(
            e.covers(Subset(1), Subset(0b101)),
            Err(Error::SubsetOutOfRange { .. })
        ));
    }

    #[test]
    fn covers_is_one_step_inclusion_exhaustive() {
        for n in 0..=10usize {
            for a in 0..1u32 << n {
                for b in 0..1u32 << n {
                    let (a, b) = (Subset(a), Subset(b));
                    if a.is_covered_by(b) {
                        assert_eq!(b.len(), a.len() + 1);
                        assert!(a.is_subset_of(b));
                    }
                }
            }
        }
    }

    #[test]
    fn interval_members_examples() {
        let e = GroundSet::one_based(3);
        let p = |t| e.parse_subset(t).unwrap();
        let got = interval_members(p("1"), p("1,2,3")).unwrap();
        assert_eq!(got, vec![p("1"), p("1,2"), p("1,3"), p("1,2,3")]);
        let got = interval_members(p("1"), p("1,3")).unwrap();
        assert_eq!(got, vec![p("1"), p("1,3")]);
        assert_eq!(
            interval_members(Subset::EMPTY, Subset::EMPTY).unwrap(),
            vec![Subset::EMPTY]
        );
        assert!(interval_members(p("1,2"), p("1")).is_err());
    }

    #[test]
    fn interval_members_recover_bounds() {
        for upper in 0..64u32 {
            for lower in Subset(upper).subsets() {
                let members = interval_members(lower, Subset(upper)).unwrap();
                assert_eq!(
                    members.len(),
                    1 << (upper.count_ones() - lower.0.count_ones())
                );
                let meet = members
                    .iter()
                    .fold(Subset::full(6), |a, &m| a.intersection(m));
                let join = members.iter().fold(Subset::EMPTY, |a, &m| a.union(m));
                assert_eq!((meet, join), (lower, Subset(upper)));
                assert!(members.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn alternating_sum_examples() {
        assert_eq!(alternating_sum(Subset::full(3).subsets()), 0);
        assert_eq!(alternating_sum([Subset::EMPTY]), 1);
        assert_eq!(alternating_sum([]), 0);
        for n in 1..=16 {
            assert_eq!(alternating_sum(Subset::full(n).subsets()), 0, "n = {n}");
        }
    }

    #[test]
    fn display_uses_labels() {
        let e = GroundSet::new(["a", "b", "c"]);
        assert_eq!(e.format(s(&[0, 2])), "{a,c}");
        assert_eq!(e.format(Subset::EMPTY), "{}");
        assert_eq!(s(&[1, 3]).to_string(), "{1,3}");
    }

    #[test]
    fn submasks_ascending() {
        let got: Vec<u32> = Subset(0b1010).subsets().map(|s| s.0).collect();
        assert_eq!(got, vec![0, 0b10, 0b1000, 0b1010]);
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }
}
