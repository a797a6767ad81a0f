//! Exact certificates that certain cohomology-ring models of compact Kähler
//! manifolds cannot come from projective manifolds.

pub mod blowup;
pub mod certify;
pub mod error;
pub mod hodge;
pub mod linalg;
pub mod multilinear;
pub mod poly;

pub use error::{Error, Result};
