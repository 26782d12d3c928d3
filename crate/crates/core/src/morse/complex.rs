use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeInfection, EndpointRule, Multigraph};
use crate::map::SubsetMap;
use crate::shade::classify_map;
use crate::subset::{alternating_sum, check_dense, GroundSet, Subset};

/// A down-closed family of subsets of a ground set.
///
/// The void complex has no faces at all; every other complex contains `∅`.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: GroundSet,
    member: Vec<bool>,
    faces: Vec<Subset>,
}

impl SimplicialComplex {
    /// Fails with the first face (by code) missing one of its facets.
    pub fn from_faces<I>(ground: GroundSet, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = Subset>,
    {
        let mut member = vec![false; ground.power_set_len()?];
        for f in faces {
            ground.check(f)?;
            member[f.index()] = true;
        }
        Self::from_membership(ground, member)
    }

    pub fn from_predicate<P>(ground: GroundSet, mut keep: P) -> Result<Self>
    where
        P: FnMut(Subset) -> bool,
    {
        let len = ground.power_set_len()?;
        let member = (0..len as u32).map(|c| keep(Subset(c))).collect();
        Self::from_membership(ground, member)
    }

    fn from_membership(ground: GroundSet, member: Vec<bool>) -> Result<Self> {
        let faces: Vec<Subset> = (0..member.len() as u32)
            .map(Subset)
            .filter(|f| member[f.index()])
            .collect();
        for &f in &faces {
            if let Some(u) = f.elements().find(|&u| !member[f.without(u).index()]) {
                return Err(Error::NotDownClosed {
                    face: f,
                    missing: f.without(u),
                });
            }
        }
        Ok(Self {
            ground,
            member,
            faces,
        })
    }

    pub fn void(ground: GroundSet) -> Result<Self> {
        Self::from_predicate(ground, |_| false)
    }

    /// The full simplex `P(E)`.
    pub fn simplex(ground: GroundSet) -> Result<Self> {
        Self::from_predicate(ground, |_| true)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn contains(&self, f: Subset) -> bool {
        self.member.get(f.index()).copied().unwrap_or(false)
    }

    /// Faces in ascending code order.
    pub fn faces(&self) -> &[Subset] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Largest face size minus one; `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.faces.iter().map(|f| f.len() as isize - 1).max()
    }

    /// Face counts by size `0, 1, 2, …` (dimension `-1, 0, 1, …`).
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces.iter().map(|f| f.len()).max();
        let mut counts = vec![0; top.map_or(0, |t| t + 1)];
        for f in &self.faces {
            counts[f.len()] += 1;
        }
        counts
    }

    /// `Σ_{F ∈ A} (-1)^|F|`.
    pub fn euler_sum(&self) -> i64 {
        alternating_sum(self.faces.iter().copied())
    }

    pub fn facets(&self) -> Vec<Subset> {
        let n = self.ground.size();
        self.faces
            .iter()
            .copied()
            .filter(|f| (0..n).all(|u| f.contains(u) || !self.contains(f.with(u))))
            .collect()
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.ground.size() != other.ground.size() {
            return Err(Error::Usage(
                "complexes live on different ground sets".into(),
            ));
        }
        let member = self
            .member
            .iter()
            .zip(&other.member)
            .map(|(a, b)| *a || *b)
            .collect();
        Self::from_membership(self.ground.clone(), member)
    }

    /// `A^∨ = {F : E ∖ F ∉ A}`.
    pub fn alexander_dual(&self) -> Self {
        let n = self.ground.size();
        let member = (0..self.member.len() as u32)
            .map(|c| !self.contains(Subset(c).complement(n)))
            .collect();
        Self::from_membership(self.ground.clone(), member)
            .expect("the Alexander dual of a complex is a complex")
    }
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set()
            .entries(self.faces.iter().map(|&s| self.ground.format(s)))
            .finish()
    }
}

/// Serialized as `{ground: n, faces: [codes]}`.
impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SimplicialComplex", 2)?;
        st.serialize_field("ground", &self.ground.size())?;
        st.serialize_field("faces", &self.faces)?;
        st.end()
    }
}

/// `A = {F : G ⊄ Shade F}` for an inclusion-preserving shade map.
pub fn build_noninfecting_complex(map: &SubsetMap, target: Subset) -> Result<SimplicialComplex> {
    NoninfectingFamily::new(map)?.complex(target)
}

/// The non-infecting complexes of one shade map, validated once and built
/// for any number of targets.
#[derive(Clone, Copy, Debug)]
pub struct NoninfectingFamily<'a> {
    pub(crate) map: &'a SubsetMap,
}

impl<'a> NoninfectingFamily<'a> {
    /// Fails unless `map` is an inclusion-preserving shade map.
    pub fn new(map: &'a SubsetMap) -> Result<Self> {
        let diag = classify_map(map);
        if !diag.is_shade_map() {
            return Err(Error::NotShadeMap(Box::new(diag)));
        }
        if !diag.is_inclusion_preserving() {
            return Err(Error::NotInclusionPreserving(Box::new(diag)));
        }
        Ok(Self { map })
    }

    pub fn map(&self) -> &'a SubsetMap {
        self.map
    }

    pub fn complex(&self, target: Subset) -> Result<SimplicialComplex> {
        self.map.ground().check(target)?;
        noninfecting_unchecked(self.map, target)
    }
}

pub(crate) fn noninfecting_unchecked(map: &SubsetMap, target: Subset) -> Result<SimplicialComplex> {
    SimplicialComplex::from_predicate(map.ground().clone(), |f| !target.is_subset_of(map.get(f)))
}

/// `A_U = {F : G ⊄ Shade_v F for some v ∈ U}`, the union of the complexes
/// of the individual sources.
pub fn multi_source_complex(
    graph: &Multigraph,
    sources: &[usize],
    target: Subset,
    rule: EndpointRule,
) -> Result<SimplicialComplex> {
    if sources.is_empty() {
        return Err(Error::Usage(
            "at least one source vertex is required".into(),
        ));
    }
    check_dense(graph.edge_count())?;
    let mut acc: Option<SimplicialComplex> = None;
    for &v in sources {
        let source = graph.source(v)?;
        let map = EdgeInfection::with_rule(graph, source, rule).shade_map()?;
        let a = build_noninfecting_complex(&map, target)?;
        acc = Some(match acc {
            None => a,
            Some(prev) => prev.union(&a)?,
        });
    }
    Ok(acc.expect("sources is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn down_closure_is_enforced() {
        let g = GroundSet::indexed(2);
        let err = SimplicialComplex::from_faces(g.clone(), [Subset(0), Subset(3)]).unwrap_err();
        assert!(matches!(
            err,
            Error::NotDownClosed {
                face: Subset(3),
                missing: Subset(2)
            }
        ));
        let c = SimplicialComplex::from_faces(g, [Subset(0), Subset(1)]).unwrap();
        assert_eq!(c.f_vector(), [1, 1]);
        assert_eq!(c.euler_sum(), 0);
    }

    #[test]
    fn dual_of_void_and_simplex() {
        let g = GroundSet::indexed(3);
        let void = SimplicialComplex::void(g.clone()).unwrap();
        let simplex = SimplicialComplex::simplex(g).unwrap();
        assert_eq!(void.alexander_dual(), simplex);
        assert_eq!(simplex.alexander_dual(), void);
        assert_eq!(void.dimension(), None);
        assert_eq!(simplex.dimension(), Some(2));
    }

    #[test]
    fn facets_of_a_path() {
        // vertices 0,1,2 with edges 01 and 12
        let g = GroundSet::indexed(3);
        let c = SimplicialComplex::from_faces(g, [0, 1, 2, 4, 3, 6].map(Subset)).unwrap();
        assert_eq!(c.facets(), vec![Subset(3), Subset(6)]);
    }

    #[test]
    fn noninfecting_needs_inclusion_preserving_shade_map() {
        let g = GroundSet::indexed(2);
        let id = SubsetMap::identity(g.clone()).unwrap();
        assert!(matches!(
            build_noninfecting_complex(&id, Subset(3)),
            Err(Error::NotShadeMap(_))
        ));
        // reversing but a shade map: Shade F = E ∖ F↓ for 0 < 1
        let lower =
            SubsetMap::from_fn(g, |f| if f.contains(1) { Subset(2) } else { Subset(3) }).unwrap();
        assert!(matches!(
            build_noninfecting_complex(&lower, Subset(3)),
            Err(Error::NotInclusionPreserving(_))
        ));
    }

    #[test]
    fn multi_source_requires_a_source() {
        let g = Multigraph::from_index_pairs(2, &[(0, 1)]);
        assert!(matches!(
            multi_source_complex(&g, &[], Subset(1), EndpointRule::Both),
            Err(Error::Usage(_))
        ));
    }
}
