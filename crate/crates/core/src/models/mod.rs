//! Example builders and closed-form oracles: complete intersections, the
//! minimal non-complete-intersection fixture, and oriented simplicial spheres
//! with their Stanley-Reisner ideals, generic Artinian reductions,
//! Kustin-Miller volumes and the multinomial identity expansion.

mod ci;
mod nonci;
mod sphere;

pub use ci::CompleteIntersectionSpec;
pub use nonci::{nonci_fixture, NonCiFixture};
pub use sphere::{
    default_extension_degree, facet_determinant, facet_monomial, generic_artinian_reduction,
    kustin_miller_vol, multinomial_rhs, parse_sphere_file, sphere_epsilon_oracle, sphere_ring,
    stanley_reisner_ideal, GenericReduction, OrientedSimplicialSphere,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("not a complete intersection: {0}")]
    NotCompleteIntersection(String),
    #[error("matrix relation (g) = N (x) fails at row {0}")]
    MatrixRelation(usize),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("incompatible facet orientations: {0}")]
    OrientationIncompatible(String),
    #[error("genericity failed after retries with seeds {0:?}")]
    GenericityFailure(Vec<u64>),
    #[error("Kustin-Miller consistency fails on facet {facet}: orientation error in the input")]
    KustinMillerInconsistent { facet: usize },
    #[error("sphere file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Groebner(#[from] crate::groebner::GroebnerError),
    #[error(transparent)]
    Parseval(#[from] crate::parseval::ParsevalError),
}
