//! Exact truncated Laplace spectra of flat tori, of bi-invariant metrics on compact
//! semisimple Lie groups, and of semisimply naturally reductive metrics on compact
//! simple Lie groups, together with the spectral-invariant and isolation tooling
//! built on top of them.
//!
//! All arithmetic is exact over ℚ. Torus eigenvalues are reported in units of 4π²;
//! group eigenvalues are raw rationals in the normalization where the bi-invariant
//! metric is minus the Killing form.

pub mod branching;
pub mod error;
pub mod group;
pub mod isolation;
pub mod lattice;
pub mod natred;
pub mod library;
pub mod linalg;
pub mod rational;
pub mod roots;
pub mod spectrum;
pub mod weights;

pub use error::{Error, Result};
pub use rational::Q;
