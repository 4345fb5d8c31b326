//! Free Dirac particle toolkit: gamma matrices, plane-wave bi-spinors,
//! helicity states, polarization four-vectors and density matrices, plus an
//! engine that checks the matrix identities they satisfy.

pub mod covariant;
pub mod density;
pub mod error;
pub mod fermi;
pub mod gamma;
pub mod kinematics;
pub mod smallmat;
pub mod spinors;
pub mod verify;

pub use error::{DiracError, Result};
pub use smallmat::DEFAULT_TOL;
