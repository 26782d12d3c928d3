use serde::Serialize;

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub const MAX_HOMOLOGY_FACES: usize = 1 << 16;

pub const HOMOLOGY_CONVENTION: &str = "reduced homology of the augmented chain complex \
    (the empty face sits in dimension -1); the void complex has no chains and all \
    Betti numbers 0, while the complex {∅} has Betti number 1 in dimension -1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub coefficient_field: &'static str,
    /// Entry `k` is the reduced Betti number in dimension `k - 1`.
    pub reduced_betti: Vec<usize>,
    /// `Σ_{F ∈ A} (-1)^|F|`.
    pub euler_sum: i64,
    /// `Σ_d (-1)^d β_d = -euler_sum`.
    pub euler_consistent: bool,
}

impl HomologyProfile {
    pub fn is_acyclic(&self) -> bool {
        self.reduced_betti.iter().all(|&b| b == 0)
    }

    pub fn betti(&self, dimension: isize) -> usize {
        usize::try_from(dimension + 1)
            .ok()
            .and_then(|i| self.reduced_betti.get(i).copied())
            .unwrap_or(0)
    }

    /// Dimensions with nonzero reduced Betti number.
    pub fn support(&self) -> Vec<isize> {
        self.reduced_betti
            .iter()
            .enumerate()
            .filter(|(_, &b)| b > 0)
            .map(|(i, _)| i as isize - 1)
            .collect()
    }
}

/// Reduced Betti numbers over GF(2) by column reduction of the boundary maps.
pub fn gf2_reduced_homology(c: &SimplicialComplex) -> Result<HomologyProfile> {
    if c.face_count() > MAX_HOMOLOGY_FACES {
        return Err(Error::SizeLimit(format!(
            "homology is capped at {MAX_HOMOLOGY_FACES} faces (got {})",
            c.face_count()
        )));
    }
    let by_size: Vec<Vec<_>> = {
        let mut v = vec![Vec::new(); c.f_vector().len()];
        for &f in c.faces() {
            v[f.len()].push(f);
        }
        v
    };
    // rank of ∂ from size-k chains to size-(k-1) chains; faces come sorted
    // by code, so each size class is sorted too
    let mut ranks = vec![0usize; by_size.len() + 1];
    for k in 1..by_size.len() {
        let rows = &by_size[k - 1];
        let columns = by_size[k].iter().map(|&f| {
            let mut col: Vec<u32> = f
                .elements()
                .map(|u| rows.binary_search(&f.without(u)).expect("facet present") as u32)
                .collect();
            col.sort_unstable();
            col
        });
        ranks[k] = gf2_rank(rows.len(), columns);
    }
    let reduced_betti: Vec<usize> = (0..by_size.len())
        .map(|k| by_size[k].len() - ranks[k] - ranks[k + 1])
        .collect();
    let alternating: i64 = reduced_betti
        .iter()
        .enumerate()
        .map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) })
        .sum();
    let euler_sum = c.euler_sum();
    Ok(HomologyProfile {
        coefficient_field: "GF(2)",
        reduced_betti: if reduced_betti.is_empty() {
            vec![0]
        } else {
            reduced_betti
        },
        euler_sum,
        euler_consistent: alternating == -euler_sum,
    })
}

/// Rank of a GF(2) matrix with `rows` rows given as sorted sparse columns.
fn gf2_rank<I: IntoIterator<Item = Vec<u32>>>(rows: usize, columns: I) -> usize {
    let mut pivots: Vec<Option<Vec<u32>>> = vec![None; rows];
    let mut rank = 0;
    for mut col in columns {
        while let Some(&low) = col.last() {
            match &pivots[low as usize] {
                Some(other) => col = symmetric_difference(&col, other),
                None => {
                    pivots[low as usize] = Some(col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::{GroundSet, Subset};

    fn complex(n: usize, faces: &[u32]) -> SimplicialComplex {
        SimplicialComplex::from_faces(GroundSet::indexed(n), faces.iter().map(|&c| Subset(c)))
            .unwrap()
    }

    #[test]
    fn hollow_triangle_is_a_circle() {
        let h = gf2_reduced_homology(&complex(3, &[0, 1, 2, 4, 3, 5, 6])).unwrap();
        assert_eq!(h.reduced_betti, [0, 0, 1]);
        assert_eq!(h.euler_sum, 1);
        assert!(h.euler_consistent);
        assert_eq!(h.support(), [1]);
    }

    #[test]
    fn void_and_irrelevant_complexes() {
        let void = gf2_reduced_homology(&complex(2, &[])).unwrap();
        assert_eq!(void.reduced_betti, [0]);
        assert_eq!(void.euler_sum, 0);
        let irrelevant = gf2_reduced_homology(&complex(2, &[0])).unwrap();
        assert_eq!(irrelevant.reduced_betti, [1]);
        assert_eq!(irrelevant.betti(-1), 1);
        assert!(irrelevant.euler_consistent);
    }

    #[test]
    fn simplex_and_sphere() {
        let full = SimplicialComplex::simplex(GroundSet::indexed(4)).unwrap();
        assert!(gf2_reduced_homology(&full).unwrap().is_acyclic());
        let sphere =
            SimplicialComplex::from_predicate(GroundSet::indexed(4), |f| f.len() < 4).unwrap();
        let h = gf2_reduced_homology(&sphere).unwrap();
        assert_eq!(h.support(), [2]);
        assert_eq!(h.betti(2), 1);
    }

    #[test]
    fn two_points() {
        let h = gf2_reduced_homology(&complex(2, &[0, 1, 2])).unwrap();
        assert_eq!(h.reduced_betti, [0, 1]);
    }
}
