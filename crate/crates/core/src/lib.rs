//! Exact homeology and cohomeology spectral sequences of finite simplicial complexes.

/// Runs `$body` with `$ring` bound to the ring the page engine uses for `$coeff`:
/// the integers for `Z` and `Q` (rational data is the free part), `Z/p` otherwise.
macro_rules! with_ring {
    ($coeff:expr, $ring:ident => $body:expr) => {
        match $coeff {
            $crate::exact_algebra::Coefficients::Z | $crate::exact_algebra::Coefficients::Q => {
                let $ring = &$crate::exact_algebra::Integers;
                $body
            }
            $crate::exact_algebra::Coefficients::Zp(p) => {
                let $ring = &$crate::exact_algebra::PrimeField::new(p);
                $body
            }
        }
    };
}

pub mod bicomplex;
pub mod blocks;
pub mod chains;
pub mod cli;
pub mod complex;
pub mod exact_algebra;
pub mod fixtures;
pub mod harness;
pub mod morphisms;
pub mod spectral;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("simplex {0} is not in the complex")]
    SimplexNotInComplex(String),
    #[error("vertex name `{0}` already in use")]
    NameCollision(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("consecutive maps do not compose to zero")]
    NotAComplex,
    #[error("second lattice is not contained in the first")]
    NotASubgroup,
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    #[error("operation requires the {0} variant")]
    WrongVariant(String),
    #[error("complex is not an orientable pseudomanifold: {0}")]
    NotOrientable(String),
    #[error("invalid block complex: {0}")]
    InvalidBlockComplex(String),
    #[error("image of {0} is not a simplex of the target")]
    NotSimplicial(String),
    #[error("map collapses simplex {0}")]
    NotSolid(String),
    #[error("vertex map is not order preserving: {0}")]
    NotMonotone(String),
    #[error("operation requires field coefficients, got {0}")]
    NonFieldCoefficients(String),
    #[error("classes live on different pages or complexes: {0}")]
    PageMismatch(String),
    #[error("chain does not represent a page class: {0}")]
    NotAPageClass(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
