//! Filtration data of toric reflexive sheaves on systems of fans: the
//! per-cone compatibility test, global equivariant splitting, tangent
//! bundles and the structural rank-splitting criterion.

mod bundle;
mod filtration;
mod grid;

pub use bundle::{
    adapted_basis, rank_split_structural, rank_split_unchecked, tangent_bundle, AdaptedBasis,
    BundleData, CompatibilityReport, ConeVerdict, RankSplitVerdict, WeightComponent,
    WeightDecomposition,
};
pub use filtration::Filtration;
pub use grid::{graded_pieces, jump_grid, GradedPiece, GridOutcome};

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SheafError {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("empty family of filtrations")]
    EmptyFamily,
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("no filtration given for ray class {0}")]
    MissingRayFiltration(String),
    #[error("two filtrations given for ray class {0}")]
    DuplicateFiltration(String),
    #[error("{0} is not a ray class of the system")]
    UnknownClass(String),
    #[error("the system is not smooth")]
    NotSmooth,
    #[error("matrix must be {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize },
    #[error("bundles live on different systems of fans")]
    SystemMismatch,
    #[error("a graded piece has no lattice weight")]
    NonPointedIndex,
    #[error("rank-splitting needs m >= 2, got {0}")]
    DegenerateRank(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
