#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shade_core::graph::{Multigraph, SourceVertex};
use shade_core::{GroundSet, Subset, SubsetMap};

pub fn s(elements: &[usize]) -> Subset {
    Subset::from_elements(elements.iter().copied())
}

/// Hexagon v-p-q-r-t-w-v with chords t-r and q-w, source v.
pub fn example1() -> (Multigraph, SourceVertex) {
    let mut g = Multigraph::new();
    for (name, a, b) in [
        ("1", "v", "p"),
        ("2", "p", "q"),
        ("3", "q", "r"),
        ("4", "r", "t"),
        ("5", "t", "w"),
        ("6", "w", "v"),
        ("7", "t", "r"),
        ("8", "q", "w"),
    ] {
        g.add_edge(name, a, b).unwrap();
    }
    let v = g.source_named("v").unwrap();
    (g, v)
}

/// The 4-cycle v-p-q-w-v, source v.
pub fn example2() -> (Multigraph, SourceVertex) {
    let mut g = Multigraph::new();
    for (name, a, b) in [
        ("1", "v", "p"),
        ("2", "p", "q"),
        ("3", "q", "w"),
        ("4", "w", "v"),
    ] {
        g.add_edge(name, a, b).unwrap();
    }
    let v = g.source_named("v").unwrap();
    (g, v)
}

/// Four vertices `v, t, bl, br` joined by all six edges `a..f`, source `v`.
pub fn square() -> (Multigraph, SourceVertex) {
    let mut g = Multigraph::new();
    for (name, x, y) in [
        ("a", "bl", "v"),
        ("b", "t", "bl"),
        ("c", "v", "t"),
        ("d", "br", "t"),
        ("e", "v", "br"),
        ("f", "bl", "br"),
    ] {
        g.add_edge(name, x, y).unwrap();
    }
    let v = g.source_named("v").unwrap();
    (g, v)
}

/// Uniform endpoint pairs drawn with replacement; loops and parallels allowed.
pub fn random_multigraph(rng: &mut ChaCha8Rng, vertices: usize, edges: usize) -> Multigraph {
    let mut g = Multigraph::new();
    for i in 0..vertices {
        g.add_vertex(&format!("x{i}"));
    }
    for e in 0..edges {
        let a = rng.random_range(0..vertices);
        let b = rng.random_range(0..vertices);
        let name = e.to_string();
        if rng.random_bool(0.25) {
            g.add_arc(&name, &format!("x{a}"), &format!("x{b}"))
                .unwrap();
        } else {
            g.add_edge(&name, &format!("x{a}"), &format!("x{b}"))
                .unwrap();
        }
    }
    g
}

pub fn random_undirected(rng: &mut ChaCha8Rng, vertices: usize, edges: usize) -> Multigraph {
    let pairs: Vec<(usize, usize)> = (0..edges)
        .map(|_| (rng.random_range(0..vertices), rng.random_range(0..vertices)))
        .collect();
    Multigraph::from_index_pairs(vertices, &pairs)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Vertices reachable from `v` by walking edges of `f` (arcs forwards only),
/// found by repeated relaxation rather than a queue.
pub fn reach_by_relaxation(g: &Multigraph, v: usize, f: Subset) -> Vec<bool> {
    use shade_core::graph::Orientation;
    let mut seen = vec![false; g.vertex_count()];
    seen[v] = true;
    loop {
        let mut changed = false;
        for i in f.elements() {
            let e = &g.edges()[i];
            let forward = seen[e.a] && !seen[e.b];
            let backward = e.orientation == Orientation::Undirected && seen[e.b] && !seen[e.a];
            if forward {
                seen[e.b] = true;
                changed = true;
            }
            if backward {
                seen[e.a] = true;
                changed = true;
            }
        }
        if !changed {
            return seen;
        }
    }
}

/// Edges `e` for which some simple path that starts at `v`, avoids `f` and
/// ends by traversing `e` exists. Self-loops count when their vertex is
/// reachable. Arcs are traversed forwards.
pub fn unblocked_by_paths(g: &Multigraph, v: usize, f: Subset) -> Subset {
    use shade_core::graph::Orientation;
    let mut found = Subset::EMPTY;
    let mut visited = vec![false; g.vertex_count()];
    fn walk(g: &Multigraph, x: usize, f: Subset, visited: &mut Vec<bool>, found: &mut Subset) {
        visited[x] = true;
        for (i, e) in g.edges().iter().enumerate() {
            if f.contains(i) {
                continue;
            }
            let next = if e.a == x {
                Some(e.b)
            } else if e.b == x && e.orientation == Orientation::Undirected {
                Some(e.a)
            } else {
                None
            };
            if let Some(y) = next {
                if y == x {
                    *found = found.with(i);
                } else if !visited[y] {
                    *found = found.with(i);
                    walk(g, y, f, visited, found);
                } else {
                    // e closes onto the path; a path may still end with e
                    *found = found.with(i);
                }
            }
        }
        visited[x] = false;
    }
    walk(g, v, f, &mut visited, &mut found);
    found
}

/// Every shade map on `n ≤ 3` elements, found by assigning values in code
/// order and requiring `Shade(F △ {u}) = Shade F` whenever `u ∉ Shade F`.
pub fn count_shade_maps_by_backtracking(n: usize) -> u64 {
    fn go(n: usize, code: usize, table: &mut Vec<Option<u32>>) -> u64 {
        if code == table.len() {
            return 1;
        }
        let full = (1u32 << n) - 1;
        let mut total = 0;
        for value in 0..=full {
            let ok = (0..n).all(|u| {
                let other = code ^ (1 << u);
                match table[other] {
                    // constraint from either side of the cube edge
                    Some(w) => {
                        let u_out_here = value >> u & 1 == 0;
                        let u_out_there = w >> u & 1 == 0;
                        (!u_out_here || w == value) && (!u_out_there || w == value)
                    }
                    None => true,
                }
            });
            if ok {
                table[code] = Some(value);
                total += go(n, code + 1, table);
                table[code] = None;
            }
        }
        total
    }
    go(n, 0, &mut vec![None; 1 << n])
}

pub fn table(n: usize, codes: &[u32]) -> SubsetMap {
    SubsetMap::from_table(
        GroundSet::indexed(n),
        codes.iter().map(|&c| Subset(c)).collect(),
    )
    .unwrap()
}

/// Literal search for distinct upper faces `B_1, …, B_k` (`k ≥ 2`) with
/// `μ(B_i) ≺ B_{i+1}` cyclically, over all orderings.
pub fn brute_force_cycle_exists(pairs: &[(Subset, Subset)]) -> bool {
    let uppers: Vec<(Subset, Subset)> = pairs.iter().map(|&(l, u)| (u, l)).collect();
    fn extend(uppers: &[(Subset, Subset)], path: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let (first_b, _) = uppers[path[0]];
        let (_, last_l) = uppers[*path.last().unwrap()];
        if path.len() >= 2 && last_l.is_covered_by(first_b) {
            return true;
        }
        for i in 0..uppers.len() {
            if used[i] {
                continue;
            }
            let (b, _) = uppers[i];
            if last_l.is_covered_by(b) {
                used[i] = true;
                path.push(i);
                if extend(uppers, path, used) {
                    return true;
                }
                path.pop();
                used[i] = false;
            }
        }
        false
    }
    (0..uppers.len()).any(|start| {
        let mut used = vec![false; uppers.len()];
        used[start] = true;
        extend(&uppers, &mut vec![start], &mut used)
    })
}
