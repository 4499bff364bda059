//! Exact intersection theory of complete simplicial fans.
//!
//! The crate computes the cohomology ring of a complete unimodular fan from
//! its Stanley–Reisner presentation, integrates with Brion's functional,
//! models sheaves on the fan poset and their Grothendieck group, and checks
//! Riemann–Roch, signature and positivity identities with exact rationals.

pub mod catalog;
pub mod checks;
pub mod classes;
pub mod cohomology;
pub mod error;
pub mod fan;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod rng;
pub mod series;
pub mod sheaf;
pub mod subdivision;

pub use error::{Error, Result};
pub use fan::{Cone, Fan, LatticeVector, PlFunction};

/// Exact rational scalar used throughout.
pub type Q = num_rational::BigRational;
