use thiserror::Error;

use crate::closure::ClosureDiagnostics;
use crate::intervals::PartitionReport;
use crate::shade::ShadeDiagnostics;
use crate::subset::{Subset, MAX_DENSE_ELEMENTS};

#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "ground set of {0} elements exceeds the dense-table limit of {MAX_DENSE_ELEMENTS} elements"
    )]
    GroundSetTooLarge(usize),

    #[error("subset code {code} does not fit a ground set of {size} elements")]
    SubsetOutOfRange { code: u32, size: usize },

    #[error("table has {actual} entries, expected {expected}")]
    TableLength { expected: usize, actual: usize },

    #[error("lower bound {lower} is not contained in upper bound {upper}")]
    NotAnInterval { lower: Subset, upper: Subset },

    #[error("matching sends {from} to {to}, which is outside the family")]
    MatchingOutsideFamily { from: Subset, to: Subset },

    #[error("matching is not complete: {0}")]
    IncompleteMatching(String),

    #[error("map is not a shade map")]
    NotShadeMap(Box<ShadeDiagnostics>),

    #[error("map is not inclusion-preserving")]
    NotInclusionPreserving(Box<ShadeDiagnostics>),

    #[error("map is not an inclusion-reversing shade map")]
    NotInclusionReversingShadeMap(Box<ShadeDiagnostics>),

    #[error("map is not a quasi-closure operator")]
    NotQuasiClosure(Box<ClosureDiagnostics>),

    #[error("map is not an antimatroidal quasi-closure operator")]
    NotAntimatroidal(Box<ClosureDiagnostics>),

    #[error("not a Boolean interval partition")]
    InvalidPartition(Box<PartitionReport>),

    #[error("family is not down-closed: {face} is present but {missing} is not")]
    NotDownClosed { face: Subset, missing: Subset },

    #[error("nothing to match: the complex is empty")]
    EmptyComplex,

    #[error("graph precondition failed: {0}")]
    GraphPrecondition(String),

    #[error("{0}")]
    Usage(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
