//! Exterior powers and graded algebras.

pub mod algebra;
pub mod exterior;
pub mod wedge;

pub use algebra::{sparse_sum, AlgebraDoc, AssociativityReport, GradedAlgebra};
pub use exterior::{exterior_algebra, ExteriorBases, MAX_EXTERIOR_DIM};
pub use wedge::{binomial, compound_matrix, subsets, wedge_power_map, wedge_sign, MultiIndexBasis};
