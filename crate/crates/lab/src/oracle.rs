//! Literal search for closed alternating paths, used to cross-check the
//! graph-based acyclicity test on small complexes.

use shade_core::Subset;

/// Whether some sequence of distinct pairs `(σ_0, τ_0), …, (σ_{k-1}, τ_{k-1})`
/// with `k ≥ 2` has `σ_{i+1} ≺ τ_i` for every `i`, indices taken mod `k`.
///
/// Every ordered tuple of distinct pairs is tried, so this is only usable
/// for a handful of pairs.
pub fn cycle_by_tuple_search(pairs: &[(Subset, Subset)]) -> bool {
    fn closes(pairs: &[(Subset, Subset)], tuple: &[usize]) -> bool {
        tuple.len() >= 2
            && (0..tuple.len()).all(|i| {
                let (_, upper) = pairs[tuple[i]];
                let (next_lower, _) = pairs[tuple[(i + 1) % tuple.len()]];
                next_lower.is_covered_by(upper)
            })
    }
    fn grow(pairs: &[(Subset, Subset)], tuple: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if closes(pairs, tuple) {
            return true;
        }
        for i in 0..pairs.len() {
            if !used[i] {
                used[i] = true;
                tuple.push(i);
                let found = grow(pairs, tuple, used);
                tuple.pop();
                used[i] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    let mut used = vec![false; pairs.len()];
    grow(pairs, &mut Vec::new(), &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_edge_loop_on_a_triangle_boundary() {
        // ∅ unmatched; {0}↗{0,1}, {1}↗{1,2}, {2}↗{0,2} cycles
        let p = vec![
            (Subset(1), Subset(3)),
            (Subset(2), Subset(6)),
            (Subset(4), Subset(5)),
        ];
        assert!(cycle_by_tuple_search(&p));
        let q = vec![(Subset(1), Subset(3)), (Subset(4), Subset(6))];
        assert!(!cycle_by_tuple_search(&q));
        assert!(!cycle_by_tuple_search(&[]));
    }
}
