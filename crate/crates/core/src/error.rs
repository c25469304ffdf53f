use thiserror::Error;

use crate::grid::Cell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty cell set")]
    EmptyCellSet,
    #[error("cells {0} and {1} lie in different components")]
    DisconnectedCells(Cell, Cell),
    #[error("invalid north-east path: {0}")]
    InvalidPath(String),
    #[error("paths do not share both endpoints")]
    EndpointMismatch,
    #[error("paths cross or touch away from their endpoints")]
    PathsCross,
    #[error("paths enclose no cells")]
    EmptyRegion,
    #[error("frame parameters violate bounds: {0}")]
    SpecViolation(String),
    #[error("polyomino is not a frame polyomino")]
    NotAFrame,
    #[error("polyomino is not a parallelogram polyomino")]
    NotParallelogram,
    #[error("monomial order contradiction: {0}")]
    OrderContradiction(String),
    #[error("{what}: enumeration of {needed} items exceeds budget {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: usize,
    },
    #[error("h-polynomial tail does not vanish: {0:?}")]
    UnstableTail(Vec<i64>),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("facets have different cardinalities ({0} and {1})")]
    CardinalityMismatch(usize, usize),
    #[error("the complex is not pure")]
    NotPure,
    #[error("descending order is not a shelling at facet {0}")]
    NotShellable(usize),
    #[error("vertex set is not a facet of the complex")]
    NotAFacet,
    #[error("f-vector of length {len} is inconsistent with dimension {d}")]
    InconsistentDimension { len: usize, d: usize },
    #[error("cell {0} is not in the polyomino")]
    CellNotInPolyomino(Cell),
    #[error("rook pair does not span a rectangle of the polyomino")]
    InvalidMove,
    #[error("switch produced attacking rooks")]
    ResultAttacks,
    #[error("switching class {class} at k={k} has {count} canonical members")]
    NoCanonicalInClass { k: usize, class: usize, count: usize },
    #[error("facet/rook construction lemma violated: {0}")]
    LemmaViolation(String),
    #[error("{0} exceeds the supported size of 128")]
    TooLarge(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Global cap on the size of any exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub usize);

impl Budget {
    pub const DEFAULT: Budget = Budget(5_000_000);

    pub fn check(self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            Err(Error::BudgetExceeded {
                what,
                needed,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
