//! Exact rational and integer linear algebra.

pub mod io;
pub mod matrix;
pub mod rational;
pub mod smith;
pub mod sparse;
pub mod sturm;
pub mod subspace;

pub use matrix::{charpoly, kernel, kernel_of_columns, kernel_of_rows, rref, RatMatrix, Rref};
pub use rational::{parse_rational, rat, ratio, Rational};
pub use smith::{smith_normal_form, torsion_points, torsion_solution_count, IntMatrix, SmithForm, TorsionCount};
pub use sparse::{span_rank, SparseEchelon, SparseVec};
pub use sturm::{sturm_chain, sturm_real_root_count};
pub use subspace::Subspace;
