//! Seeded instance generators.
//!
//! Every generator draws from a caller-supplied `ChaCha8Rng`, so a seed and
//! the call sequence fix the instance stream.

use std::ops::RangeInclusive;

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use shade_core::geometry::RationalPointSet;
use shade_core::graph::Multigraph;
use shade_core::GroundSet;

/// Vertices `v0, v1, …`; `edges` endpoint pairs drawn uniformly with
/// replacement, so loops and parallel edges occur. Each edge is an arc with
/// probability `arc_probability`. Edges are named `1, 2, …`.
pub fn random_multigraph(
    rng: &mut ChaCha8Rng,
    vertices: usize,
    edges: usize,
    arc_probability: f64,
) -> Multigraph {
    assert!(vertices > 0 || edges == 0, "edges need a vertex");
    let mut g = Multigraph::new();
    for v in 0..vertices {
        g.add_vertex(&format!("v{v}"));
    }
    for e in 1..=edges {
        let a = format!("v{}", rng.random_range(0..vertices));
        let b = format!("v{}", rng.random_range(0..vertices));
        let name = e.to_string();
        let added = if arc_probability > 0.0 && rng.random_bool(arc_probability) {
            g.add_arc(&name, &a, &b)
        } else {
            g.add_edge(&name, &a, &b)
        };
        added.expect("edge names are distinct");
    }
    g
}

/// A connected simple graph: a random spanning tree on `2..=max_vertices`
/// vertices plus extra random non-parallel edges, at most `max_edges` in all.
pub fn random_connected_simple(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_edges: usize,
) -> Multigraph {
    assert!(max_vertices >= 2 && max_edges + 1 >= max_vertices.min(2));
    let cap = max_vertices.min(max_edges + 1);
    let n = rng.random_range(2..=cap);
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    let room = (n * (n - 1) / 2).min(max_edges) - pairs.len();
    let extra = rng.random_range(0..=room);
    while pairs.len() < n - 1 + extra {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if a != b && !pairs.iter().any(|&(x, y)| (x.min(y), x.max(y)) == (a, b)) {
            pairs.push((a, b));
        }
    }
    let mut g = Multigraph::new();
    for v in 0..n {
        g.add_vertex(&format!("v{v}"));
    }
    for (i, (a, b)) in pairs.into_iter().enumerate() {
        g.add_edge(&(i + 1).to_string(), &format!("v{a}"), &format!("v{b}"))
            .expect("edge names are distinct");
    }
    g
}

/// Distinct points with coordinates `p/q`, `|p| ≤ 2q`, `q ∈ 1..=2`.
pub fn random_point_set(
    rng: &mut ChaCha8Rng,
    points: RangeInclusive<usize>,
    dimension: RangeInclusive<usize>,
) -> RationalPointSet {
    let n = rng.random_range(points);
    let d = rng.random_range(dimension);
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    while rows.len() < n {
        let row: Vec<BigRational> = (0..d)
            .map(|_| {
                let q: i64 = rng.random_range(1..=2);
                let p: i64 = rng.random_range(-2 * q..=2 * q);
                BigRational::new(p.into(), q.into())
            })
            .collect();
        if !rows.contains(&row) {
            rows.push(row);
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    RationalPointSet::new(GroundSet::new(names), rows).expect("dimension is at least 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn same_seed_same_graph() {
        let a = random_multigraph(&mut ChaCha8Rng::seed_from_u64(3), 4, 7, 0.3);
        let b = random_multigraph(&mut ChaCha8Rng::seed_from_u64(3), 4, 7, 0.3);
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 7);
    }

    #[test]
    fn connected_simple_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let g = random_connected_simple(&mut rng, 5, 7);
            assert!(g.is_simple() && g.is_connected());
            assert!(g.vertex_count() <= 5 && g.edge_count() <= 7);
        }
    }

    #[test]
    fn point_sets_are_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let s = random_point_set(&mut rng, 1..=6, 1..=3);
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    assert_ne!(s.point(i), s.point(j));
                }
            }
        }
    }
}
