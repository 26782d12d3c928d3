mod common;

use std::collections::HashSet;

use common::*;
use proptest::prelude::*;
use shade_core::graph::EdgeInfection;
use shade_core::intervals::{
    block_of, count_partitions, enumerate_partitions, interval_count, partition_from_shade,
    shade_from_partition, validate_partition, BooleanIntervalPartition,
};
use shade_core::poset::all_labelled_posets;
use shade_core::shade::{classify_map, dual_map};
use shade_core::{interval_members, BooleanInterval, Error, Subset, SubsetMap};

fn block(lower: u32, upper: u32) -> BooleanInterval {
    BooleanInterval::new(Subset(lower), Subset(upper)).unwrap()
}

/// Elements 1, 2, 3 are bits 0, 1, 2.
fn first_partition() -> BooleanIntervalPartition {
    // [∅,∅], [1,13], [3,3], [2,123]
    BooleanIntervalPartition::new(3, vec![block(0, 0), block(1, 5), block(4, 4), block(2, 7)])
        .unwrap()
}

fn second_partition() -> BooleanIntervalPartition {
    // [∅,1], [3,13], [2,23], [12,12], [123,123]
    BooleanIntervalPartition::new(
        3,
        vec![
            block(0, 1),
            block(4, 5),
            block(2, 6),
            block(3, 3),
            block(7, 7),
        ],
    )
    .unwrap()
}

#[test]
fn interval_members_on_three() {
    let members = interval_members(Subset(1), Subset(7)).unwrap();
    assert_eq!(members, vec![Subset(1), Subset(3), Subset(5), Subset(7)]);
    assert_eq!(
        interval_members(Subset(1), Subset(5)).unwrap(),
        vec![Subset(1), Subset(5)]
    );
    assert_eq!(interval_count(3), 27);
    assert_eq!(interval_count(0), 1);
    assert_eq!(interval_count(6), 729);
}

#[test]
fn both_example_partitions_validate() {
    let p = first_partition();
    let r = validate_partition(&p);
    assert!(r.valid);
    assert_eq!(r.block_count, 4);
    assert_eq!(r.cardinality_sum, 8);
    let q = second_partition();
    let r = validate_partition(&q);
    assert!(r.valid);
    assert_eq!(r.block_count, 5);
    let all: HashSet<BooleanIntervalPartition> =
        enumerate_partitions(3).unwrap().into_iter().collect();
    assert!(all.contains(&p) && all.contains(&q));
}

#[test]
fn shade_of_the_first_partition() {
    let m = shade_from_partition(&first_partition()).unwrap();
    // F = {1,3} lies in [1,13]: Shade F = E ∖ {3} = {1,2}
    assert_eq!(m.get(Subset(5)), Subset(3));
    assert_eq!(block_of(&m, Subset(5)), block(1, 5));
    assert!(classify_map(&m).is_shade_map());
}

#[test]
fn example1_block_of_the_empty_set() {
    let (g, v) = example1();
    let m = EdgeInfection::new(&g, v).shade_map().unwrap();
    let p = partition_from_shade(&m).unwrap();
    assert!(validate_partition(&p).valid);
    let shade_empty = s(&[0, 5]);
    let expected = BooleanInterval::new(Subset::EMPTY, m.full().difference(shade_empty)).unwrap();
    assert!(p.blocks().contains(&expected));
    assert_eq!(block_of(&m, Subset::EMPTY), expected);
}

#[test]
fn constant_maps() {
    let full = SubsetMap::constant(shade_core::GroundSet::indexed(3), Subset(7)).unwrap();
    let p = partition_from_shade(&full).unwrap();
    assert_eq!(p.len(), 8);
    assert!(p.blocks().iter().all(|b| b.lower() == b.upper()));
    let empty = SubsetMap::constant(shade_core::GroundSet::indexed(3), Subset::EMPTY).unwrap();
    assert_eq!(
        partition_from_shade(&empty).unwrap().blocks(),
        &[block(0, 7)]
    );
}

#[test]
fn non_shade_maps_are_refused() {
    let m = table(1, &[0, 1]);
    assert!(matches!(
        partition_from_shade(&m),
        Err(Error::NotShadeMap(_))
    ));
}

#[test]
fn counts_agree_with_shade_map_backtracking() {
    assert_eq!(count_partitions(1).unwrap(), 2);
    assert_eq!(count_partitions(2).unwrap(), 8);
    for n in 0..=4 {
        assert_eq!(
            count_partitions(n).unwrap(),
            count_shade_maps_by_backtracking(n),
            "n = {n}"
        );
    }
}

#[test]
fn roundtrips_over_all_partitions() {
    for n in 0..=4 {
        let mut seen = HashSet::new();
        for p in enumerate_partitions(n).unwrap() {
            assert!(validate_partition(&p).valid);
            let m = shade_from_partition(&p).unwrap();
            assert_eq!(partition_from_shade(&m).unwrap(), p);
            assert!(seen.insert(m.codes()));
        }
    }
}

fn shade_corpus() -> Vec<SubsetMap> {
    let mut out = Vec::new();
    for (g, v) in [example1(), example2(), square()] {
        let m = EdgeInfection::new(&g, v).shade_map().unwrap();
        out.push(dual_map(&m));
        out.push(m);
    }
    let mut r = rng(8);
    for _ in 0..8 {
        let g = random_multigraph(&mut r, 6, 10);
        out.push(
            EdgeInfection::new(&g, g.source(0).unwrap())
                .shade_map()
                .unwrap(),
        );
    }
    for p in all_labelled_posets(4).unwrap().into_iter().step_by(11) {
        out.push(p.lower_shade());
    }
    out
}

#[test]
fn roundtrips_and_block_uniqueness_on_corpus_maps() {
    for m in shade_corpus() {
        let p = partition_from_shade(&m).unwrap();
        assert!(validate_partition(&p).valid);
        // partitions carry no labels, so compare codes
        assert_eq!(shade_from_partition(&p).unwrap().codes(), m.codes());
        for f in m.domain() {
            let b = block_of(&m, f);
            assert!(b.contains(f));
            for g in b.members() {
                assert_eq!(block_of(&m, g), b);
            }
        }
    }
}

/// The relation "same block" on codes satisfies
/// `U ∼ V` and `U ∩ V ⊆ I ⊆ U ∪ V` implies `U ∼ I`.
fn interval_axiom(class: &[usize]) -> bool {
    let cells = class.len();
    (0..cells).all(|u| {
        (0..cells).all(|v| {
            class[u] != class[v] || {
                let (lo, hi) = (u & v, u | v);
                Subset((hi & !lo) as u32)
                    .subsets()
                    .all(|x| class[lo | x.index()] == class[u])
            }
        })
    })
}

/// Classes that are exactly `[∩ class, ∪ class]`.
fn classes_are_intervals(class: &[usize]) -> bool {
    let blocks = class.iter().max().map_or(0, |&m| m + 1);
    (0..blocks).all(|b| {
        let members: Vec<usize> = (0..class.len()).filter(|&c| class[c] == b).collect();
        let lo = members.iter().fold(usize::MAX, |a, &c| a & c);
        let hi = members.iter().fold(0, |a, &c| a | c);
        let span = Subset((hi & !lo) as u32);
        lo & !hi == 0 && members.len() == 1 << span.len()
    })
}

/// Every set partition of `0..cells` as a restricted growth string.
fn for_each_set_partition(cells: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(i: usize, max: usize, class: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if i == class.len() {
            visit(class);
            return;
        }
        for c in 0..=max {
            class[i] = c;
            go(i + 1, max.max(c + 1), class, visit);
        }
    }
    if cells == 0 {
        visit(&[]);
        return;
    }
    let mut class = vec![0; cells];
    go(1, 1, &mut class, visit);
}

#[test]
fn equivalence_relation_characterization() {
    for n in 0..=3 {
        let cells = 1 << n;
        let mut satisfying = 0u64;
        for_each_set_partition(cells, &mut |class| {
            if interval_axiom(class) {
                satisfying += 1;
                assert!(classes_are_intervals(class), "{class:?}");
            }
        });
        assert_eq!(satisfying, count_partitions(n).unwrap(), "n = {n}");
        for p in enumerate_partitions(n).unwrap() {
            assert!(interval_axiom(&p.block_table().unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn prop_random_blocks_report_consistently(
        raw in prop::collection::vec((0u32..8, 0u32..8), 1..10),
    ) {
        let blocks: Vec<BooleanInterval> = raw
            .into_iter()
            .map(|(a, b)| block(a & b, b))
            .collect();
        let p = BooleanIntervalPartition::new(3, blocks.clone()).unwrap();
        let r = validate_partition(&p);
        let mut owners = [0usize; 8];
        for b in &blocks {
            for m in b.members() {
                owners[m.index()] += 1;
            }
        }
        let valid = owners.iter().all(|&o| o == 1);
        prop_assert_eq!(r.valid, valid);
        prop_assert_eq!(r.cardinality_sum, blocks.iter().map(|b| b.len() as u64).sum::<u64>());
        if valid {
            prop_assert_eq!(r.cardinality_sum, 8);
            let m = shade_from_partition(&p).unwrap();
            prop_assert!(classify_map(&m).is_shade_map());
            for f in m.domain() {
                let b = block_of(&m, f);
                prop_assert_eq!(b.lower(), f.intersection(m.get(f)));
                prop_assert_eq!(b.upper(), f.union(m.full().difference(m.get(f))));
            }
        } else {
            prop_assert!(shade_from_partition(&p).is_err());
        }
    }
}
