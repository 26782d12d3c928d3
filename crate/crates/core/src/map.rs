use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{check_dense, GroundSet, Subset};

/// A total map `P(E) → P(E)` stored as a dense table indexed by subset code.
///
/// Shade maps, quasi-closure operators and the `α`/`τ` maps of interval
/// partitions all share this representation.
#[derive(Clone, PartialEq, Eq)]
pub struct SubsetMap {
    ground: GroundSet,
    table: Vec<Subset>,
}

impl SubsetMap {
    pub fn from_fn<F>(ground: GroundSet, mut f: F) -> Result<Self>
    where
        F: FnMut(Subset) -> Subset,
    {
        let len = ground.power_set_len()?;
        let full = ground.full();
        let table = (0..len as u32)
            .map(|code| f(Subset(code)).intersection(full))
            .collect();
        Ok(Self { ground, table })
    }

    /// Builds a map from explicit codes, validating length and range.
    pub fn from_table(ground: GroundSet, table: Vec<Subset>) -> Result<Self> {
        let len = ground.power_set_len()?;
        if table.len() != len {
            return Err(Error::TableLength {
                expected: len,
                actual: table.len(),
            });
        }
        for &s in &table {
            ground.check(s)?;
        }
        Ok(Self { ground, table })
    }

    pub fn identity(ground: GroundSet) -> Result<Self> {
        Self::from_fn(ground, |f| f)
    }

    pub fn constant(ground: GroundSet, value: Subset) -> Result<Self> {
        Self::from_fn(ground, |_| value)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.size()
    }

    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    #[inline]
    pub fn get(&self, set: Subset) -> Subset {
        self.table[set.index()]
    }

    pub fn table(&self) -> &[Subset] {
        &self.table
    }

    pub fn codes(&self) -> Vec<u32> {
        self.table.iter().map(|s| s.0).collect()
    }

    /// Domain subsets in ascending code order.
    pub fn domain(&self) -> impl Iterator<Item = Subset> {
        (0..self.table.len() as u32).map(Subset)
    }

    /// The same table over a relabelled ground set of equal size.
    pub fn relabel(&self, ground: GroundSet) -> Result<Self> {
        check_dense(ground.size())?;
        if ground.size() != self.size() {
            return Err(Error::Usage(format!(
                "cannot relabel a map on {} elements with {} labels",
                self.size(),
                ground.size()
            )));
        }
        Ok(Self {
            ground,
            table: self.table.clone(),
        })
    }
}

impl std::fmt::Debug for SubsetMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(
                self.domain()
                    .map(|s| (self.ground.format(s), self.ground.format(self.get(s)))),
            )
            .finish()
    }
}

impl Serialize for SubsetMap {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.table.serialize(serializer)
    }
}
