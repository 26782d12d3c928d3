//! Simplicial complexes, acyclic matchings and homology.

mod complex;
mod discrete;
mod elser;
mod explore;
mod homology;
mod search;

pub use complex::{
    build_noninfecting_complex, multi_source_complex, NoninfectingFamily, SimplicialComplex,
};
pub use discrete::{find_cycle, verify_acyclic, AcyclicityVerdict, DiscreteMatching};
pub use elser::{build_elser_matching, elser_epsilon};
pub use explore::{
    explore_open_questions, ComplexSummary, ExplorationReport, ExploreOptions, MorseSummary,
    SourceSection, UnionSection, MAX_EXPLORE_EDGES,
};
pub use homology::{
    gf2_reduced_homology, HomologyProfile, HOMOLOGY_CONVENTION, MAX_HOMOLOGY_FACES,
};
pub use search::{
    collapsibility_certificate, greedy_morse_matching, noninfecting_certificate, Collapsibility,
    MorseMatching, DEFAULT_SEARCH_BUDGET,
};

/// `A^∨ = {F : E ∖ F ∉ A}`.
pub fn alexander_dual(c: &SimplicialComplex) -> SimplicialComplex {
    c.alexander_dual()
}
