//! Weight-one and weight-two Hodge structures, stored numerically.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::numeric::{columns, complex_roots, conj_vec, condition_number, max_norm, null_vector, numeric_rank, to_complex_matrix, CMatrix};
use crate::error::{Error, Result};
use crate::linalg::{sturm_real_root_count, RatMatrix};
use crate::multilinear::MultiIndexBasis;
use crate::poly::{is_squarefree, RatPoly};

pub const DEFAULT_TOL: f64 = 1e-9;
/// Largest accepted condition number of `[B | conj B]`.
pub const MAX_CONDITION: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Eigenvectors of `phi` for the selected roots of its charpoly; roots are
    /// indexed in the order of [`complex_roots`].
    EigenSelection {
        charpoly: RatPoly,
        selection: Vec<usize>,
        eigenvalues: Vec<[f64; 2]>,
    },
    Explicit,
}

/// `A_C = A^{1,0} ⊕ A^{0,1}` on `Q^{2n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightOneHS {
    dim: usize,
    basis_10: Vec<Vec<Complex64>>,
    provenance: Provenance,
}

impl WeightOneHS {
    /// Validates that `basis_10` and its conjugate together span `C^dim`.
    pub fn explicit(dim: usize, basis_10: Vec<Vec<Complex64>>) -> Result<Self> {
        Self::build(dim, basis_10, Provenance::Explicit)
    }

    fn build(dim: usize, basis_10: Vec<Vec<Complex64>>, provenance: Provenance) -> Result<Self> {
        if !dim.is_multiple_of(2) || basis_10.len() * 2 != dim {
            return Err(Error::DimensionMismatch(format!("{} vectors for A^(1,0) in dimension {dim}", basis_10.len())));
        }
        if basis_10.iter().any(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch("vector length differs from dimension".into()));
        }
        let mut all = basis_10.clone();
        all.extend(basis_10.iter().map(|v| conj_vec(v)));
        let cond = condition_number(&columns(&all, dim));
        if !(cond < MAX_CONDITION) {
            return Err(Error::Degenerate(format!("[B | conj B] has condition number {cond:.3e}")));
        }
        Ok(Self {
            dim,
            basis_10,
            provenance,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.dim / 2
    }

    pub fn basis_10(&self) -> &[Vec<Complex64>] {
        &self.basis_10
    }

    pub fn basis_01(&self) -> Vec<Vec<Complex64>> {
        self.basis_10.iter().map(|v| conj_vec(v)).collect()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The structure with `A^{1,0}` and `A^{0,1}` exchanged.
    pub fn conjugate(&self) -> WeightOneHS {
        WeightOneHS {
            dim: self.dim,
            basis_10: self.basis_01(),
            provenance: Provenance::Explicit,
        }
    }

    /// `ρ(z)` on `C^dim`: `z` on `A^{1,0}`, `conj z` on `A^{0,1}`.
    pub fn rho(&self, z: Complex64) -> CMatrix {
        let mut all = self.basis_10.clone();
        all.extend(self.basis_01());
        let m = columns(&all, self.dim);
        let inv = m.clone().try_inverse().expect("validated basis");
        let d = CMatrix::from_fn(self.dim, self.dim, |r, c| {
            if r != c {
                Complex64::new(0.0, 0.0)
            } else if r < self.n() {
                z
            } else {
                z.conj()
            }
        });
        m * d * inv
    }

    /// Whether `span(vs)` equals `A^{1,0}` numerically.
    pub fn same_10(&self, vs: &[Vec<Complex64>], tol: f64) -> bool {
        let mut all = self.basis_10.clone();
        all.extend(vs.iter().cloned());
        vs.len() == self.n() && numeric_rank(&columns(&all, self.dim), tol) == self.n()
    }
}

/// `A_C = A^{2,0} ⊕ A^{1,1} ⊕ A^{0,2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTwoHS {
    dim: usize,
    basis_20: Vec<Vec<Complex64>>,
    basis_11: Vec<Vec<Complex64>>,
    basis_02: Vec<Vec<Complex64>>,
}

impl WeightTwoHS {
    /// `basis_02` is taken as the conjugate of `basis_20`; `basis_11` must
    /// be conjugation-stable and everything must span.
    pub fn explicit(dim: usize, basis_20: Vec<Vec<Complex64>>, basis_11: Vec<Vec<Complex64>>, tol: f64) -> Result<Self> {
        let basis_02 = basis_20.iter().map(|v| conj_vec(v)).collect();
        let h = Self {
            dim,
            basis_20,
            basis_11,
            basis_02,
        };
        h.validate(tol)?;
        Ok(h)
    }

    fn validate(&self, tol: f64) -> Result<()> {
        if self.basis_11.len() + 2 * self.basis_20.len() != self.dim {
            return Err(Error::DimensionMismatch("dim(1,1) + 2 dim(2,0) differs from dim".into()));
        }
        let all: Vec<Vec<Complex64>> = self.basis_20.iter().chain(&self.basis_11).chain(&self.basis_02).cloned().collect();
        if all.iter().any(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch("vector length differs from dimension".into()));
        }
        if numeric_rank(&columns(&all, self.dim), tol) != self.dim {
            return Err(Error::Degenerate("Hodge pieces do not span".into()));
        }
        let mut b11 = self.basis_11.clone();
        b11.extend(self.basis_11.iter().map(|v| conj_vec(v)));
        if numeric_rank(&columns(&b11, self.dim), tol) != self.basis_11.len() {
            return Err(Error::Degenerate("A^(1,1) is not conjugation-stable".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_20(&self) -> &[Vec<Complex64>] {
        &self.basis_20
    }

    pub fn basis_11(&self) -> &[Vec<Complex64>] {
        &self.basis_11
    }

    pub fn basis_02(&self) -> &[Vec<Complex64>] {
        &self.basis_02
    }

    /// `(dim A^{2,0}, dim A^{1,1}, dim A^{0,2})`.
    pub fn hodge_numbers(&self) -> (usize, usize, usize) {
        (self.basis_20.len(), self.basis_11.len(), self.basis_02.len())
    }

    /// Whether `conj(basis_20)` spans `basis_02` within `tol`.
    pub fn conjugation_consistent(&self, tol: f64) -> bool {
        let mut all: Vec<Vec<Complex64>> = self.basis_02.clone();
        all.extend(self.basis_20.iter().map(|v| conj_vec(v)));
        numeric_rank(&columns(&all, self.dim), tol) == self.basis_02.len()
    }
}

/// Root-selection rule: `n` distinct indices with no selected root real or
/// conjugate to another selected root.
fn check_selection(roots: &[Complex64], selection: &[usize], n: usize, tol: f64) -> Result<()> {
    if selection.len() != n {
        return Err(Error::InvalidSelection(format!("{} roots selected, need {n}", selection.len())));
    }
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    for (a, &i) in selection.iter().enumerate() {
        let Some(li) = roots.get(i) else {
            return Err(Error::InvalidSelection(format!("root index {i} out of range")));
        };
        if selection[..a].contains(&i) {
            return Err(Error::InvalidSelection(format!("root index {i} repeated")));
        }
        for &j in selection {
            if (li - roots[j].conj()).norm() <= tol * scale {
                return Err(Error::InvalidSelection(format!("roots {i} and {j} are complex conjugate")));
            }
        }
    }
    Ok(())
}

/// `A^{1,0}` spanned by eigenvectors of `phi` for the selected roots.
pub fn torus_hs_from_phi(phi: &RatMatrix, selection: &[usize], tol: f64) -> Result<WeightOneHS> {
    if !phi.is_square() {
        return Err(Error::NotSquare {
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    let dim = phi.rows();
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(Error::Precondition(format!("phi must have even positive size, got {dim}")));
    }
    let chi = phi.charpoly()?;
    if sturm_real_root_count(&chi)? != 0 {
        return Err(Error::Precondition("phi has real eigenvalues".into()));
    }
    if !is_squarefree(&chi) {
        return Err(Error::Precondition("phi has repeated eigenvalues".into()));
    }
    let roots = complex_roots(&chi, tol)?;
    check_selection(&roots, selection, dim / 2, tol)?;
    let phi_c = to_complex_matrix(phi);
    let mut basis = Vec::with_capacity(selection.len());
    for &k in selection {
        let m = &phi_c - CMatrix::identity(dim, dim) * roots[k];
        let (v, smin, snext) = null_vector(&m);
        if !(smin <= tol * snext.max(1.0)) {
            return Err(Error::Degenerate(format!("no numerical null vector for root {k} (σ_min = {smin:.3e})")));
        }
        basis.push(v);
    }
    let provenance = Provenance::EigenSelection {
        charpoly: chi,
        selection: selection.to_vec(),
        eigenvalues: selection.iter().map(|&k| [roots[k].re, roots[k].im]).collect(),
    };
    WeightOneHS::build(dim, basis, provenance)
}

fn wedge(u: &[Complex64], v: &[Complex64], basis: &MultiIndexBasis) -> Vec<Complex64> {
    basis.indices().iter().map(|ab| u[ab[0]] * v[ab[1]] - u[ab[1]] * v[ab[0]]).collect()
}

/// `∧²` of a weight-one structure, on the lexicographic basis of `∧²Q^{2n}`.
pub fn wedge2_hs(h: &WeightOneHS) -> WeightTwoHS {
    let basis = MultiIndexBasis::new(h.dim, 2);
    let b10 = h.basis_10();
    let b01 = h.basis_01();
    let n = b10.len();
    let scale = max_norm(b10).max(1.0);
    let normalize = |v: Vec<Complex64>| -> Vec<Complex64> { v.into_iter().map(|z| z / (scale * scale)).collect() };
    let mut basis_20 = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            basis_20.push(normalize(wedge(&b10[i], &b10[j], &basis)));
        }
    }
    let mut basis_11 = Vec::new();
    for u in b10 {
        for v in &b01 {
            basis_11.push(normalize(wedge(u, v, &basis)));
        }
    }
    let basis_02 = basis_20.iter().map(|v| conj_vec(v)).collect();
    WeightTwoHS {
        dim: basis.len(),
        basis_20,
        basis_11,
        basis_02,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi4() -> RatMatrix {
        RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]])
    }

    #[test]
    fn rotation_gives_one_i() {
        let h = torus_hs_from_phi(&RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]), &[0], DEFAULT_TOL).unwrap();
        let v = &h.basis_10()[0];
        assert!((v[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((v[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn quartic_selection_rules() {
        let phi = phi4();
        // indices 0, 1 are the two upper-half-plane roots; 2, 3 their conjugates
        assert!(torus_hs_from_phi(&phi, &[0, 1], DEFAULT_TOL).is_ok());
        assert!(torus_hs_from_phi(&phi, &[0, 3], DEFAULT_TOL).is_ok());
        assert!(matches!(torus_hs_from_phi(&phi, &[0, 2], DEFAULT_TOL), Err(Error::InvalidSelection(_))));
        assert!(matches!(torus_hs_from_phi(&phi, &[0], DEFAULT_TOL), Err(Error::InvalidSelection(_))));
        assert!(torus_hs_from_phi(&RatMatrix::identity(4), &[0, 1], DEFAULT_TOL).is_err());
    }

    #[test]
    fn conjugate_selection_gives_conjugate_structure() {
        let h = torus_hs_from_phi(&phi4(), &[0, 1], DEFAULT_TOL).unwrap();
        let g = torus_hs_from_phi(&phi4(), &[2, 3], DEFAULT_TOL).unwrap();
        assert!(g.same_10(&h.basis_01(), 1e-9));
        assert!(h.conjugate().same_10(g.basis_10(), 1e-9));
    }

    #[test]
    fn degenerate_explicit_structure() {
        let real = vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]];
        assert!(matches!(WeightOneHS::explicit(2, real), Err(Error::Degenerate(_))));
    }

    #[test]
    fn wedge_dims() {
        let h1 = torus_hs_from_phi(&RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]), &[0], DEFAULT_TOL).unwrap();
        assert_eq!(wedge2_hs(&h1).hodge_numbers(), (0, 1, 0));
        let h2 = wedge2_hs(&torus_hs_from_phi(&phi4(), &[0, 1], DEFAULT_TOL).unwrap());
        assert_eq!(h2.hodge_numbers(), (1, 4, 1));
        assert_eq!(h2.dim(), 6);
        assert!(h2.conjugation_consistent(1e-9));
        assert!(h2.validate(1e-9).is_ok());
    }
}
