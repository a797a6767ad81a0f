use serde::{Deserialize, Serialize};

use super::matrix::{kernel_of_rows, RatMatrix};
use super::rational::Rational;
use super::sparse::{SparseEchelon, SparseVec};
use crate::error::{Error, Result};

/// A rational subspace stored by its canonical RREF basis.
///
/// Two subspaces are equal exactly when their bases coincide.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            rows: (0..ambient_dim).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_sparse(ambient_dim: usize, vectors: &[SparseVec]) -> Self {
        let mut e = SparseEchelon::new(ambient_dim);
        for v in vectors {
            e.insert(v);
        }
        Self::from_echelon(&e)
    }

    pub fn from_echelon(e: &SparseEchelon) -> Self {
        Self {
            ambient_dim: e.dim(),
            rows: e.reduced_rows(),
        }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        let sparse: Vec<SparseVec> = vectors.iter().map(|v| SparseVec::from_dense(v)).collect();
        Ok(Self::from_sparse(ambient_dim, &sparse))
    }

    /// Row space of `m`.
    pub fn row_space(m: &RatMatrix) -> Self {
        Self::from_sparse(m.cols(), &m.sparse_rows())
    }

    /// Span of the unit vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let v: Vec<SparseVec> = indices.into_iter().map(SparseVec::unit).collect();
        Self::from_sparse(ambient_dim, &v)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Dense RREF basis, one vector per row.
    pub fn basis(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows.len(), self.ambient_dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row.entries() {
                m.set(r, *c, x.clone());
            }
        }
        m
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.to_dense(self.ambient_dim)).collect()
    }

    pub fn sparse_basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().expect("basis rows are nonzero").0).collect()
    }

    pub fn echelon(&self) -> SparseEchelon {
        let mut e = SparseEchelon::new(self.ambient_dim);
        for v in &self.rows {
            e.insert(v);
        }
        e
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && self.contains_sparse(&SparseVec::from_dense(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        if self.ambient_dim != other.ambient_dim {
            return false;
        }
        let e = other.echelon();
        self.rows.iter().all(|v| e.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// Row space of the stacked bases.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Ok(Self::from_sparse(self.ambient_dim, &v))
    }

    /// Intersection via the kernel of `[U^T | -V^T]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let (du, dv) = (self.dim(), other.dim());
        if du == 0 || dv == 0 {
            return Ok(Self::zero(self.ambient_dim));
        }
        let rows: Vec<SparseVec> = (0..self.ambient_dim)
            .map(|i| {
                let pairs = (0..du)
                    .map(|k| (k, self.rows[k].get(i)))
                    .chain((0..dv).map(|k| (du + k, -other.rows[k].get(i))));
                SparseVec::from_pairs(pairs)
            })
            .collect();
        let coeffs = kernel_of_rows(du + dv, &rows);
        let vectors: Vec<SparseVec> = coeffs
            .sparse_basis()
            .iter()
            .map(|c| {
                let mut acc = SparseVec::new();
                for (k, x) in c.entries().iter().filter(|(k, _)| *k < du) {
                    acc = acc.add_scaled(x, &self.rows[*k]);
                }
                acc
            })
            .collect();
        Ok(Self::from_sparse(self.ambient_dim, &vectors))
    }

    /// Image of the subspace under `m` (as a map from the ambient space).
    pub fn image_under(&self, m: &RatMatrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch("map domain differs from ambient space".into()));
        }
        let vs: Vec<SparseVec> = self
            .basis_vectors()
            .iter()
            .map(|v| m.mul_vec(v).map(|w| SparseVec::from_dense(&w)))
            .collect::<Result<_>>()?;
        Ok(Self::from_sparse(m.rows(), &vs))
    }

    /// Whether the sum of the given subspaces is direct.
    pub fn is_direct_sum(parts: &[&Subspace]) -> Result<bool> {
        let Some(first) = parts.first() else {
            return Ok(true);
        };
        let mut e = SparseEchelon::new(first.ambient_dim);
        let mut total = 0;
        for p in parts {
            first.check_ambient(p)?;
            total += p.dim();
            for v in p.sparse_basis() {
                e.insert(v);
            }
        }
        Ok(e.rank() == total)
    }
}

/// Subspace as a list of `"p/q"` rows.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubspaceDoc {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<String>>,
}

impl From<&Subspace> for SubspaceDoc {
    fn from(s: &Subspace) -> Self {
        SubspaceDoc {
            ambient_dim: s.ambient_dim,
            basis: s
                .basis_vectors()
                .iter()
                .map(|r| r.iter().map(super::rational::format_rational).collect())
                .collect(),
        }
    }
}

impl TryFrom<&SubspaceDoc> for Subspace {
    type Error = Error;
    fn try_from(d: &SubspaceDoc) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = d
            .basis
            .iter()
            .map(|r| r.iter().map(|s| super::rational::parse_rational(s)).collect())
            .collect::<Result<_>>()?;
        Subspace::from_vectors(d.ambient_dim, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    fn span(dim: usize, vs: &[&[i64]]) -> Subspace {
        let v: Vec<Vec<Rational>> = vs.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Subspace::from_vectors(dim, &v).unwrap()
    }

    #[test]
    fn sum_and_intersection_of_equal_spaces() {
        let u = span(3, &[&[1, 2, 0], &[0, 1, 1]]);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn coordinate_axes_meet_in_zero() {
        let x = span(2, &[&[1, 0]]);
        let y = span(2, &[&[0, 1]]);
        assert!(x.intersect(&y).unwrap().is_zero());
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(2));
    }

    #[test]
    fn grassmann_formula_and_mismatch() {
        let u = span(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let v = span(4, &[&[1, 1, 1, 1], &[0, 0, 1, 0]]);
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
        assert!(i.contains(&[rat(1), rat(1), rat(1), rat(1)]));
        assert!(u.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn equality_is_basis_independent() {
        let a = span(3, &[&[1, 1, 0], &[1, -1, 0]]);
        let b = span(3, &[&[2, 0, 0], &[0, 5, 0]]);
        assert_eq!(a, b);
        assert_eq!(a.pivots(), vec![0, 1]);
    }
}
