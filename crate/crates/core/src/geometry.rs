//! Finite point sets with exact rational coordinates, and the convex shade,
//! conic pseudo-shade and convex-hull closure they induce.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::feasibility::{LinearSystem, Relation};
use crate::map::SubsetMap;
use crate::subset::{check_dense, GroundSet, Subset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPointSet {
    ground: GroundSet,
    dimension: usize,
    points: Vec<Vec<BigRational>>,
}

impl RationalPointSet {
    pub fn new(ground: GroundSet, points: Vec<Vec<BigRational>>) -> Result<Self> {
        check_dense(ground.size())?;
        if points.len() != ground.size() {
            return Err(Error::TableLength {
                expected: ground.size(),
                actual: points.len(),
            });
        }
        let dimension = points.first().map_or(1, Vec::len);
        if dimension == 0 {
            return Err(Error::Usage("points must have dimension at least 1".into()));
        }
        if let Some(i) = points.iter().position(|p| p.len() != dimension) {
            return Err(Error::Usage(format!(
                "point `{}` has {} coordinates, expected {dimension}",
                ground.label(i),
                points[i].len()
            )));
        }
        Ok(Self {
            ground,
            dimension,
            points,
        })
    }

    /// Integer coordinates, labelled `0..n`.
    pub fn from_integers<P: AsRef<[i64]>>(points: &[P]) -> Result<Self> {
        let rows = points
            .iter()
            .map(|p| {
                p.as_ref()
                    .iter()
                    .map(|&x| BigRational::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect();
        Self::new(GroundSet::indexed(points.len()), rows)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[BigRational] {
        &self.points[i]
    }

    /// Variables `λ_s` for `s ∈ members`, constrained by `Σ λ_s s = target`.
    fn combination_system(&self, members: &[usize], target: usize) -> LinearSystem {
        let mut sys = LinearSystem::new(members.len());
        for axis in 0..self.dimension {
            let coeffs = members
                .iter()
                .map(|&s| self.points[s][axis].clone())
                .collect();
            sys.push(coeffs, Relation::Eq, self.points[target][axis].clone());
        }
        sys
    }

    fn push_affine(sys: &mut LinearSystem) {
        let ones = vec![BigRational::one(); sys.vars()];
        sys.push(ones, Relation::Eq, BigRational::one());
    }

    /// `target` is a convex combination of `f` (weights `≥ 0` summing to 1).
    pub fn in_convex_hull(&self, f: Subset, target: usize) -> bool {
        let members: Vec<usize> = f.elements().collect();
        if members.is_empty() {
            return false;
        }
        let mut sys = self.combination_system(&members, target);
        Self::push_affine(&mut sys);
        for i in 0..members.len() {
            sys.push_nonnegative(i, false);
        }
        sys.is_feasible()
    }

    /// `target` is a convex combination of `f` with every weight `< 1`.
    pub fn is_nontrivial_convex_combination(&self, f: Subset, target: usize) -> bool {
        let members: Vec<usize> = f.elements().collect();
        if members.len() < 2 {
            return false;
        }
        let mut sys = self.combination_system(&members, target);
        Self::push_affine(&mut sys);
        for i in 0..members.len() {
            sys.push_nonnegative(i, false);
            sys.push_bound(i, Relation::Lt, BigRational::one());
        }
        sys.is_feasible()
    }

    /// `target` is a conic combination of `f` with at least two positive weights.
    pub fn is_nontrivial_conic_combination(&self, f: Subset, target: usize) -> bool {
        let members: Vec<usize> = f.elements().collect();
        let base = self.combination_system(&members, target);
        for a in 0..members.len() {
            for b in a + 1..members.len() {
                let mut sys = base.clone();
                for i in 0..members.len() {
                    sys.push_nonnegative(i, i == a || i == b);
                }
                if sys.is_feasible() {
                    return true;
                }
            }
        }
        false
    }

    /// `Shade F`: points that are not a nontrivial convex combination of `F`.
    pub fn convex_shade(&self) -> SubsetMap {
        self.map_by(|f, e| !self.is_nontrivial_convex_combination(f, e))
    }

    /// Points that are not a conic combination of `F` with two positive weights.
    ///
    /// Satisfies Axiom 1 but in general not Axiom 2.
    pub fn conic_pseudo_shade(&self) -> SubsetMap {
        self.map_by(|f, e| !self.is_nontrivial_conic_combination(f, e))
    }

    /// `τ(F)`: points in the convex hull of `F`.
    pub fn convex_closure(&self) -> SubsetMap {
        self.map_by(|f, e| f.contains(e) || self.in_convex_hull(f, e))
    }

    fn map_by<P: Fn(Subset, usize) -> bool>(&self, member: P) -> SubsetMap {
        let n = self.len();
        SubsetMap::from_fn(self.ground.clone(), |f| {
            Subset::from_elements((0..n).filter(|&e| member(f, e)))
        })
        .expect("ground size checked at construction")
    }
}
