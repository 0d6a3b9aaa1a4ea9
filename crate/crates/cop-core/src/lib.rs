//! Classical orthogonal polynomials on nonuniform lattices.
//!
//! Modules:
//! - [`maps`]: lattice maps, classification from samples, symmetric data
//! - [`ds`]: the divided-difference pair `(D, S)` acting on polynomials
//! - [`functionals`]: moment functionals and their transposed actions
//! - [`regularity`]: regularity certificates and recurrence coefficients
//! - [`alternating`]: quadratic substitution and the alternating reconstruction
//! - [`nu`]: the second-order operator `phi D^2 + psi S D`
//! - [`families`]: named families and their recurrence tables

pub mod alternating;
pub mod ds;
pub mod error;
pub mod families;
pub mod functionals;
pub mod grids;
pub mod maps;
pub mod nu;
pub mod poly;
pub mod regularity;
pub mod scalar;

pub use error::{Certificate, CopError, Result};
pub use poly::Poly;
pub use scalar::{Scalar, Tolerance};
