//! Exact construction and verification of Parseval-Rayleigh identities for
//! graded Artinian Gorenstein algebras over fields of characteristic `p`.
//!
//! The crate builds minimal free resolutions over polynomial rings with exact
//! finite-field coefficients, lifts quotient maps to chain maps, extracts the
//! distinguished socle polynomials `nu` and `epsilon`, and verifies the
//! identity `vol(w) = sum_u ((x^(p-1) u^p) o (eps w)) vol(u)^p` term by term.

pub mod complexes;
pub mod field;
pub mod groebner;
pub mod job;
pub mod lifting;
pub mod matrix;
pub mod models;
pub mod parseval;
pub mod poly;

pub use field::{FieldConfig, FieldElement, FieldError};
pub use groebner::{IdealBasis, IdealGroebner, ModuleElement, ModuleGroebnerBasis};
pub use parseval::{EpsilonResult, ParsevalContext, VolumeFunctional};
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
