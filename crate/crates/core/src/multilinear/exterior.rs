//! The exterior algebra `∧*(Q^d)` as a [`GradedAlgebra`].

use crate::error::{Error, Result};
use crate::linalg::{rat, SparseVec};

use super::algebra::GradedAlgebra;
use super::wedge::{mask, wedge_sign, MultiIndexBasis};

/// Lexicographic bases of every exterior power of `Q^d`.
#[derive(Debug, Clone)]
pub struct ExteriorBases {
    d: usize,
    bases: Vec<MultiIndexBasis>,
}

impl ExteriorBases {
    pub fn new(d: usize) -> Self {
        Self {
            d,
            bases: (0..=d).map(|k| MultiIndexBasis::new(d, k)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn basis(&self, k: usize) -> &MultiIndexBasis {
        &self.bases[k]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(MultiIndexBasis::len).collect()
    }

    /// `x_a ∧ x_b = sign · x_c`, or `None` when the product vanishes.
    pub fn product(&self, i: usize, a: usize, j: usize, b: usize) -> Option<(usize, i32)> {
        let ma = mask(&self.bases[i].indices()[a]);
        let mb = mask(&self.bases[j].indices()[b]);
        let s = wedge_sign(ma, mb)?;
        let c = self.bases[i + j].position_of_mask(ma | mb).expect("union is a basis monomial");
        Some((c, s))
    }

    /// Labels such as `x0∧x3`; `1` in degree zero.
    pub fn labels(&self, k: usize, prefix: &str) -> Vec<String> {
        self.bases[k]
            .indices()
            .iter()
            .map(|s| {
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s.iter().map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().join("∧")
                }
            })
            .collect()
    }
}

pub const MAX_EXTERIOR_DIM: usize = 12;

pub fn exterior_algebra(d: usize) -> Result<GradedAlgebra> {
    if d > MAX_EXTERIOR_DIM {
        return Err(Error::Precondition(format!("exterior algebra on {d} > {MAX_EXTERIOR_DIM} generators")));
    }
    let ext = ExteriorBases::new(d);
    let mut alg = GradedAlgebra::new(ext.dims())?;
    for k in 1..=d {
        alg.set_labels(k, ext.labels(k, "x"))?;
    }
    for i in 1..=d {
        for j in i..=d - i {
            alg.specify_all(i, j)?;
            for a in 0..ext.basis(i).len() {
                let b0 = if i == j { a } else { 0 };
                for b in b0..ext.basis(j).len() {
                    if let Some((c, s)) = ext.product(i, a, j, b) {
                        alg.set_product(i, a, j, b, SparseVec::unit(c).scaled(&rat(s as i64)))?;
                    }
                }
            }
        }
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Subspace;

    #[test]
    fn two_generators() {
        let a = exterior_algebra(2).unwrap();
        assert_eq!(a.dims(), &[1, 2, 1]);
        assert_eq!(a.basis_product(1, 0, 1, 1).unwrap(), SparseVec::unit(0));
        assert_eq!(a.basis_product(1, 1, 1, 0).unwrap(), SparseVec::unit(0).scaled(&rat(-1)));
    }

    #[test]
    fn binomial_dims_and_guard() {
        assert_eq!(exterior_algebra(8).unwrap().dim(3), 56);
        assert!(exterior_algebra(13).is_err());
    }

    #[test]
    fn squares_of_degree_one_vanish() {
        let a = exterior_algebra(4).unwrap();
        let v = crate::multilinear::algebra::sparse_sum(&[(0, 1), (1, 1)]);
        assert!(a.multiply(1, &v, 1, &v).unwrap().is_zero());
        assert!(a.check_associativity(300, 0, 0).passed());
        assert!(a.check_graded_commutativity().is_ok());
    }

    #[test]
    fn top_power() {
        let a = exterior_algebra(4).unwrap();
        let w = a.image_power_subspace(1, &Subspace::full(4), 4).unwrap();
        assert_eq!(w, Subspace::full(1));
    }
}
