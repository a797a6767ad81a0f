//! The subspaces `P_i`, the set `Z`, and the sufficient conditions under
//! which the lines `C e_i` are irreducible components of `Z̄`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseVec, Subspace};
use crate::multilinear::GradedAlgebra;

/// `P_i = {a ∈ H² : a · W_i = 0}` with `W_i` the span of `i`-fold products of `H' ⊂ H^ℓ`.
pub fn deligne_p_subspace(alg: &GradedAlgebra, ell: usize, h: &Subspace, i: usize) -> Result<Subspace> {
    if ell * i + 2 > alg.top() {
        return Err(Error::DegreeOutOfRange(format!("{ell} * {i} + 2 exceeds top degree {}", alg.top())));
    }
    let w = alg.image_power_subspace(ell, h, i)?;
    alg.annihilator(2, ell * i, &w)
}

/// Whether `·a : H' → H^{ℓ+2}` has a nonzero kernel, for a rational `a ∈ P_m`.
pub fn z_membership(alg: &GradedAlgebra, ell: usize, h: &Subspace, p_m: &Subspace, a: &SparseVec) -> Result<bool> {
    if !p_m.contains_sparse(a) {
        return Err(Error::Precondition("class does not lie in P_m".into()));
    }
    Ok(alg.restricted_kernel(2, a, ell, h)?.dim() > 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub intersection_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    /// Every `e_i` lies in `P_m`.
    pub members_of_p: bool,
    pub kernel_dims: Vec<usize>,
    pub image_ranks: Vec<usize>,
    /// (a) pairwise kernel intersections; failing pairs have positive dimension.
    pub pairwise: Vec<PairCheck>,
    pub kernels_pairwise_trivial: bool,
    /// (b) `rank(∑ Im) = ∑ rank(Im)`.
    pub combined_image_rank: usize,
    pub images_direct: bool,
    /// (c) every kernel is nonzero.
    pub kernels_nonzero: bool,
}

impl ComponentReport {
    pub fn passes(&self) -> bool {
        self.members_of_p && self.kernels_pairwise_trivial && self.images_direct && self.kernels_nonzero
    }
}

/// Kernels and images of `·e_i : H' → H^{ℓ+2}` for the listed classes.
pub fn component_criterion(alg: &GradedAlgebra, ell: usize, h: &Subspace, e_list: &[SparseVec], p_m: &Subspace) -> Result<ComponentReport> {
    let kernels: Vec<Subspace> = e_list.iter().map(|e| alg.restricted_kernel(2, e, ell, h)).collect::<Result<_>>()?;
    let images: Vec<Subspace> = e_list.iter().map(|e| alg.restricted_image(2, e, ell, h)).collect::<Result<_>>()?;
    let mut pairwise = Vec::new();
    for i in 0..kernels.len() {
        for j in i + 1..kernels.len() {
            pairwise.push(PairCheck {
                i,
                j,
                intersection_dim: kernels[i].intersect(&kernels[j])?.dim(),
            });
        }
    }
    let mut e = SparseEchelon::new(alg.dim(ell + 2));
    for im in &images {
        for v in im.sparse_basis() {
            e.insert(v);
        }
    }
    let image_ranks: Vec<usize> = images.iter().map(Subspace::dim).collect();
    Ok(ComponentReport {
        members_of_p: e_list.iter().all(|x| p_m.contains_sparse(x)),
        kernel_dims: kernels.iter().map(Subspace::dim).collect(),
        kernels_pairwise_trivial: pairwise.iter().all(|p| p.intersection_dim == 0),
        pairwise,
        combined_image_rank: e.rank(),
        images_direct: e.rank() == image_ranks.iter().sum::<usize>(),
        image_ranks,
        kernels_nonzero: kernels.iter().all(|k| k.dim() > 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::exterior_algebra;

    #[test]
    fn exterior_algebra_has_trivial_p1() {
        let a = exterior_algebra(8).unwrap();
        let p1 = deligne_p_subspace(&a, 1, &Subspace::full(8), 1).unwrap();
        assert!(p1.is_zero());
        assert!(deligne_p_subspace(&a, 1, &Subspace::full(8), 7).is_err());
    }

    #[test]
    fn membership_requires_p() {
        let a = exterior_algebra(4).unwrap();
        let p = Subspace::zero(6);
        assert!(z_membership(&a, 1, &Subspace::full(4), &p, &SparseVec::unit(0)).is_err());
        assert!(z_membership(&a, 1, &Subspace::full(4), &p, &SparseVec::new()).unwrap());
    }
}
