//! Multivariate and univariate polynomials over `F_q`.

mod distance;
mod horner;
mod line;
mod monomial;
mod multi;
mod uni;

pub use distance::{distance, Distance, DistanceMode};
pub use horner::HornerPlan;
pub use line::Line;
pub use monomial::{monomial_count, monomials_of_degree, Monomial, MonomialBasis};
pub use multi::MultiPoly;
pub use uni::{interpolate, UniPoly};

use crate::gf::GfError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree {degree} exceeds the declared bound {cap}")]
    DegreeExceedsCap { degree: usize, cap: usize },
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(u32),
    #[error("interpolation degree {degree} needs more than the {q} distinct points of the field")]
    DegreeExceedsField { degree: usize, q: u32 },
    #[error("need {needed} points, found {found}")]
    InsufficientPoints { needed: usize, found: usize },
    #[error("points do not lie on a single polynomial of the requested degree")]
    InconsistentPoints,
    #[error("domain of {size} points exceeds the enumeration budget {budget}; use sampled mode")]
    DomainTooLarge { size: String, budget: u64 },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] GfError),
}
