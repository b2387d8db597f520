//! Exact computational machinery for Laplacian subalgebras of polynomial
//! rings: higher polarization products and the apolar inner product, graded
//! subalgebras with Reynolds projections, Laplacian certification and
//! closure, finite orthogonal group invariants, quadratic/two-generator
//! classifiers, and float-mode fiber geometry on the unit sphere.

pub mod algebra;
pub mod apolar;
pub mod classifiers;
pub mod error;
pub mod fiber;
pub mod invariants;
pub mod laplacian;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod sample;

pub use algebra::{GradedSubalgebra, ProjectionResult};
pub use error::{Error, Result};
pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
