//! Fans, systems of fans and the glued cone poset `Ω(S)`.

#[allow(clippy::module_inception)]
mod fan;
mod morphism;
mod omega;
mod system;

pub use fan::Fan;
pub use morphism::SoFMorphism;
pub use omega::{ClassId, GluedSystem, OmegaClass};
pub use system::SystemOfFans;

use crate::cone::{Cone, ConeError};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("cones {a} and {b} meet in {meet}, which is not a face of both")]
    NotAFan { a: Cone, b: Cone, meet: Cone },
    #[error("union of the diagonal fans is not a fan: {a} and {b} meet in {meet}")]
    ConesClash { a: Cone, b: Cone, meet: Cone },
    #[error("ambient rank mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("glueing relation is not transitive: {cone} under labels {left} and {right}")]
    TransitivityViolation { cone: Cone, left: String, right: String },
    #[error("system of fans violates its axioms ({} violations)", .0.violations.len())]
    InvalidSystem(ValidationReport),
    #[error("index set is empty")]
    EmptyIndex,
    #[error("label {0:?} appears twice")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("pair {0:?}|{1:?} given twice")]
    DuplicatePair(String, String),
    #[error("off-diagonal key uses the same label {0:?} twice")]
    DiagonalAsPair(String),
    #[error("expected {expected} diagonal fans, found {found}")]
    MissingDiagonal { expected: usize, found: usize },
    #[error(transparent)]
    Cone(#[from] ConeError),
}
