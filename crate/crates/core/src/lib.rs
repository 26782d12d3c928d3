//! Shade maps over finite ground sets and the structures they correspond to:
//! graph infection, antimatroidal closures, Boolean interval partitions and
//! acyclic matchings on simplicial complexes.
//!
//! Subsets are `u32` bitmasks, so every dense table is limited to
//! [`MAX_DENSE_ELEMENTS`] elements.

pub mod closure;
pub mod error;
pub mod feasibility;
pub mod geometry;
pub mod graph;
pub mod intervals;
pub mod map;
pub mod matching;
pub mod morse;
pub mod poset;
pub mod shade;
pub mod subset;

pub use error::{Error, Result};
pub use map::SubsetMap;
pub use subset::{
    alternating_sum, interval_members, BooleanInterval, GroundSet, Subset, MAX_DENSE_ELEMENTS,
};
