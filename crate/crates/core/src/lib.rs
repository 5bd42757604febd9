//! Exact arithmetic for q-deformed Laguerre-Gould-Hopper polynomials and
//! their relatives, with a verifier for their identity catalog.

pub mod cli;
pub mod error;
pub mod families;
pub mod identities;
pub mod mpoly;
pub mod qarith;
pub mod qdegree;
pub mod qops;
pub mod qseries;
pub mod scalar;

pub use error::{Error, Result};
pub use mpoly::{MPoly, Monomial, Var};
pub use qarith::{QContext, Rational};
