//! Holomorphic function spaces on the Hartogs triangle `{ |z1| < |z2| < 1 }`.
//!
//! The family is indexed by `nu >= -2`: weighted Bergman spaces for `nu > -1`,
//! the Hardy space at `nu = -1`, weighted Dirichlet spaces for `-2 < nu < -1`
//! and the Dirichlet space at `nu = -2`. Functions are finite Laurent series;
//! norms, kernels, projections and isometries are exact coefficient formulas,
//! and the [`quadrature`] module is an independent numerical check on them.

pub mod coeffspace;
pub mod error;
pub mod geometry;
pub mod isometries;
pub mod kernels;
pub mod projections;
pub mod quadrature;
pub mod specfun;

pub use error::{HartogsError, Result};
