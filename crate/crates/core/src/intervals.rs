//! Boolean interval partitions of `P(E)` and their correspondence with shade maps.
//!
//! For a partition `P` let `[α(F), τ(F)]` be the block containing `F`. Then
//! `Shade F = E ∖ (τ(F) ∖ α(F))` is a shade map, and conversely every shade
//! map arises this way from the blocks `[F ∩ Shade F, F ∪ (E ∖ Shade F)]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::SubsetMap;
use crate::shade::require_shade_map;
use crate::subset::{check_dense, BooleanInterval, GroundSet, Subset};

/// Exhaustive partition enumeration is refused above this size.
pub const MAX_ENUMERATION_ELEMENTS: usize = 4;

/// Blocks kept sorted by `(lower, upper)`, so equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BooleanIntervalPartition {
    ground_size: usize,
    blocks: Vec<BooleanInterval>,
}

impl BooleanIntervalPartition {
    /// Canonicalizes the block order; validity is checked separately.
    pub fn new(ground_size: usize, mut blocks: Vec<BooleanInterval>) -> Result<Self> {
        check_dense(ground_size)?;
        blocks.sort_unstable();
        Ok(Self {
            ground_size,
            blocks,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[BooleanInterval] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index for every subset code; `None` if the partition is invalid.
    pub fn block_table(&self) -> Option<Vec<usize>> {
        let (owner, report) = sweep(self);
        report
            .valid
            .then(|| owner.into_iter().map(|o| o as usize).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub ground_size: usize,
    pub block_count: usize,
    /// Index of the first block whose bounds are not an interval of `P(E)`.
    pub malformed_block: Option<usize>,
    /// Smallest code lying in two or more blocks.
    pub doubly_covered: Option<Subset>,
    /// Smallest code lying in no block.
    pub uncovered: Option<Subset>,
    /// `Σ 2^|V ∖ U|` over the blocks; equals `2^|E|` for a partition.
    pub cardinality_sum: u64,
    pub valid: bool,
}

const UNOWNED: u32 = u32::MAX;
const SHARED: u32 = u32::MAX - 1;

fn sweep(p: &BooleanIntervalPartition) -> (Vec<u32>, PartitionReport) {
    let n = p.ground_size;
    let full = Subset::full(n);
    let mut owner = vec![UNOWNED; 1 << n];
    let mut malformed_block = None;
    let mut cardinality_sum = 0u64;
    for (i, block) in p.blocks.iter().enumerate() {
        if !block.upper().is_subset_of(full) || !block.lower().is_subset_of(block.upper()) {
            malformed_block.get_or_insert(i);
            continue;
        }
        cardinality_sum += block.len() as u64;
        for member in block.members() {
            let slot = &mut owner[member.index()];
            *slot = if *slot == UNOWNED { i as u32 } else { SHARED };
        }
    }
    let first = |tag: u32| {
        owner
            .iter()
            .position(|&o| o == tag)
            .map(|c| Subset(c as u32))
    };
    let doubly_covered = first(SHARED);
    let uncovered = first(UNOWNED);
    let valid = malformed_block.is_none() && doubly_covered.is_none() && uncovered.is_none();
    let report = PartitionReport {
        ground_size: n,
        block_count: p.blocks.len(),
        malformed_block,
        doubly_covered,
        uncovered,
        cardinality_sum,
        valid,
    };
    (owner, report)
}

pub fn validate_partition(p: &BooleanIntervalPartition) -> PartitionReport {
    sweep(p).1
}

/// `Shade F = E ∖ (τ(F) ∖ α(F))` for the block `[α(F), τ(F)]` containing `F`.
pub fn shade_from_partition(p: &BooleanIntervalPartition) -> Result<SubsetMap> {
    let (owner, report) = sweep(p);
    if !report.valid {
        return Err(Error::InvalidPartition(Box::new(report)));
    }
    let full = Subset::full(p.ground_size);
    SubsetMap::from_fn(GroundSet::indexed(p.ground_size), |f| {
        full.difference(p.blocks[owner[f.index()] as usize].span())
    })
}

/// `α(F) = F ∩ Shade F` and `τ(F) = F ∪ (E ∖ Shade F)`.
pub fn block_of(map: &SubsetMap, f: Subset) -> BooleanInterval {
    let shade = map.get(f);
    BooleanInterval::new(f.intersection(shade), f.union(map.full().difference(shade)))
        .expect("F ∩ S ⊆ F ⊆ F ∪ (E ∖ S)")
}

pub fn partition_from_shade(map: &SubsetMap) -> Result<BooleanIntervalPartition> {
    require_shade_map(map)?;
    let mut blocks: Vec<BooleanInterval> = map.domain().map(|f| block_of(map, f)).collect();
    blocks.sort_unstable();
    blocks.dedup();
    BooleanIntervalPartition::new(map.size(), blocks)
}

/// Calls `visit` on every Boolean interval partition of `P({0, …, n-1})`.
///
/// The smallest uncovered code `U` opens a new block `[U, V]`; every `V ⊇ U`
/// whose interval avoids covered codes is tried in ascending order.
pub fn for_each_partition<F>(n: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&BooleanIntervalPartition),
{
    if n > MAX_ENUMERATION_ELEMENTS {
        return Err(Error::SizeLimit(format!(
            "partition enumeration is capped at {MAX_ENUMERATION_ELEMENTS} elements (got {n})"
        )));
    }
    let mut covered = vec![false; 1 << n];
    let mut blocks = Vec::new();
    extend(n, 0, &mut covered, &mut blocks, &mut visit);
    Ok(())
}

fn extend<F>(
    n: usize,
    from: usize,
    covered: &mut [bool],
    blocks: &mut Vec<BooleanInterval>,
    visit: &mut F,
) where
    F: FnMut(&BooleanIntervalPartition),
{
    let Some(start) = (from..covered.len()).find(|&c| !covered[c]) else {
        let p = BooleanIntervalPartition {
            ground_size: n,
            blocks: blocks.clone(),
        };
        visit(&p);
        return;
    };
    let lower = Subset(start as u32);
    for extra in lower.complement(n).subsets() {
        let block = BooleanInterval::new(lower, lower.union(extra)).expect("lower ⊆ upper");
        if block.members().any(|m| covered[m.index()]) {
            continue;
        }
        for m in block.members() {
            covered[m.index()] = true;
        }
        blocks.push(block);
        extend(n, start + 1, covered, blocks, visit);
        blocks.pop();
        for m in block.members() {
            covered[m.index()] = false;
        }
    }
}

pub fn enumerate_partitions(n: usize) -> Result<Vec<BooleanIntervalPartition>> {
    let mut out = Vec::new();
    for_each_partition(n, |p| out.push(p.clone()))?;
    Ok(out)
}

pub fn count_partitions(n: usize) -> Result<u64> {
    let mut count = 0;
    for_each_partition(n, |_| count += 1)?;
    Ok(count)
}

/// Number of Boolean intervals in `P(E)` for `|E| = n`: each element is
/// below, above or between the bounds, giving `3^n`.
pub fn interval_count(n: u32) -> u128 {
    3u128.pow(n)
}
