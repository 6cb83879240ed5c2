//! Exact computer algebra for the BLM realization of Frobenius-Lusztig kernels
//! of quantum `gl_n`.

pub mod blmcore;
pub mod error;
pub mod exactla;
pub mod indices;
pub mod qring;
pub mod report;
pub mod schurmaps;
pub mod suites;
pub mod uqgroup;

pub use error::{Error, Result};
