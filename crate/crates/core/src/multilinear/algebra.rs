//! Finite-dimensional graded-commutative algebras given by structure constants.
//!
//! Only products that a model actually defines are stored. A product of two
//! basis vectors is *specified* when it was set explicitly or lies in a block
//! declared with [`GradedAlgebra::specify_block`]; specified products that were
//! never set are zero. Asking for any other product is an error, so a check
//! can never silently read a relation the model does not contain.
//!
//! Each product is stored once, under the key with the smaller degree first
//! (smaller index first within a degree); the mirrored product carries the
//! sign `(-1)^{ij}`.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rational::{format_rational, parse_rational};
use crate::linalg::{kernel_of_columns, RatMatrix, Rational, SparseEchelon, SparseVec, Subspace};

type Key = (usize, usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    products: HashMap<Key, SparseVec>,
    blocks: BTreeMap<(usize, usize), Vec<(Range<usize>, Range<usize>)>>,
}

fn sign(i: usize, j: usize) -> Rational {
    if (i * j).is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Canonical key and the sign relating the query to it.
fn canonical(i: usize, bi: usize, j: usize, bj: usize) -> (Key, bool) {
    if i < j || (i == j && bi <= bj) {
        ((i, bi, j, bj), false)
    } else {
        ((j, bj, i, bi), (i * j) % 2 == 1)
    }
}

impl GradedAlgebra {
    /// Algebra with the given graded dimensions and no products beyond the unit.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.first() != Some(&1) {
            return Err(Error::Precondition("degree 0 must be one-dimensional".into()));
        }
        let labels = dims.iter().map(|_| Vec::new()).collect();
        Ok(Self {
            dims,
            labels,
            products: HashMap::new(),
            blocks: BTreeMap::new(),
        })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn set_labels(&mut self, k: usize, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.dim(k) {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for degree {k} of dimension {}",
                labels.len(),
                self.dim(k)
            )));
        }
        self.labels[k] = labels;
        Ok(())
    }

    pub fn labels(&self, k: usize) -> &[String] {
        &self.labels[k]
    }

    pub fn label(&self, k: usize, b: usize) -> String {
        self.labels[k].get(b).cloned().unwrap_or_else(|| format!("H{k}[{b}]"))
    }

    fn check_degrees(&self, i: usize, j: usize) -> Result<()> {
        if i + j > self.top() {
            return Err(Error::DegreeOutOfRange(format!("{i} + {j} exceeds top degree {}", self.top())));
        }
        Ok(())
    }

    fn check_index(&self, k: usize, b: usize) -> Result<()> {
        if b >= self.dim(k) {
            return Err(Error::DimensionMismatch(format!("basis index {b} in degree {k} of dimension {}", self.dim(k))));
        }
        Ok(())
    }

    /// Declares every product `H^i[rows] x H^j[cols]` specified (zero unless set).
    pub fn specify_block(&mut self, i: usize, rows: Range<usize>, j: usize, cols: Range<usize>) -> Result<()> {
        self.check_degrees(i, j)?;
        if rows.end > self.dim(i) || cols.end > self.dim(j) {
            return Err(Error::DimensionMismatch(format!("block exceeds H^{i} x H^{j}")));
        }
        if rows.is_empty() || cols.is_empty() {
            return Ok(());
        }
        let (key, rs) = if i <= j { ((i, j), (rows, cols)) } else { ((j, i), (cols, rows)) };
        self.blocks.entry(key).or_default().push(rs);
        Ok(())
    }

    pub fn specify_all(&mut self, i: usize, j: usize) -> Result<()> {
        let (di, dj) = (self.dim(i), self.dim(j));
        self.specify_block(i, 0..di, j, 0..dj)
    }

    /// Sets `b_i · b_j` (and therefore `b_j · b_i`).
    pub fn set_product(&mut self, i: usize, bi: usize, j: usize, bj: usize, value: SparseVec) -> Result<()> {
        self.check_degrees(i, j)?;
        self.check_index(i, bi)?;
        self.check_index(j, bj)?;
        if let Some((last, _)) = value.entries().last() {
            if *last >= self.dim(i + j) {
                return Err(Error::DimensionMismatch(format!("coordinate {last} in degree {}", i + j)));
            }
        }
        if i == 0 || j == 0 {
            return Err(Error::Precondition("products with the unit are fixed".into()));
        }
        let (key, flip) = canonical(i, bi, j, bj);
        let stored = if flip { value.scaled(&-Rational::one()) } else { value };
        self.products.insert(key, stored);
        Ok(())
    }

    pub fn is_specified(&self, i: usize, bi: usize, j: usize, bj: usize) -> bool {
        if i == 0 || j == 0 {
            return true;
        }
        let ((ci, cbi, cj, cbj), _) = canonical(i, bi, j, bj);
        if self.products.contains_key(&(ci, cbi, cj, cbj)) {
            return true;
        }
        self.blocks.get(&(ci, cj)).is_some_and(|rs| {
            rs.iter().any(|(r, c)| {
                (r.contains(&cbi) && c.contains(&cbj)) || (ci == cj && r.contains(&cbj) && c.contains(&cbi))
            })
        })
    }

    pub fn basis_product(&self, i: usize, bi: usize, j: usize, bj: usize) -> Result<SparseVec> {
        self.check_degrees(i, j)?;
        self.check_index(i, bi)?;
        self.check_index(j, bj)?;
        if i == 0 {
            return Ok(SparseVec::unit(bj));
        }
        if j == 0 {
            return Ok(SparseVec::unit(bi));
        }
        let (key, flip) = canonical(i, bi, j, bj);
        match self.products.get(&key) {
            Some(v) if flip => Ok(v.scaled(&-Rational::one())),
            Some(v) => Ok(v.clone()),
            None if self.is_specified(i, bi, j, bj) => Ok(SparseVec::new()),
            None => Err(Error::UnspecifiedProduct { i, j, bi, bj }),
        }
    }

    /// Bilinear product of a degree-`i` and a degree-`j` element.
    pub fn multiply(&self, i: usize, a: &SparseVec, j: usize, b: &SparseVec) -> Result<SparseVec> {
        self.check_degrees(i, j)?;
        let mut pairs = Vec::new();
        for (ka, xa) in a.entries() {
            for (kb, xb) in b.entries() {
                let p = self.basis_product(i, *ka, j, *kb)?;
                let c = xa * xb;
                pairs.extend(p.entries().iter().map(|(t, x)| (*t, x * &c)));
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn multiply_dense(&self, i: usize, a: &[Rational], j: usize, b: &[Rational]) -> Result<Vec<Rational>> {
        if a.len() != self.dim(i) || b.len() != self.dim(j) {
            return Err(Error::DimensionMismatch(format!("operands do not lie in H^{i} and H^{j}")));
        }
        let p = self.multiply(i, &SparseVec::from_dense(a), j, &SparseVec::from_dense(b))?;
        Ok(p.to_dense(self.dim(i + j)))
    }

    /// Images `a · b` of the given degree-`j` vectors.
    pub fn multiplication_images(&self, i: usize, a: &SparseVec, j: usize, vs: &[SparseVec]) -> Result<Vec<SparseVec>> {
        vs.iter().map(|v| self.multiply(i, a, j, v)).collect()
    }

    /// Columns of left multiplication by `a` from `H^j` to `H^{i+j}`.
    pub fn multiplication_columns(&self, i: usize, a: &SparseVec, j: usize) -> Result<Vec<SparseVec>> {
        self.check_degrees(i, j)?;
        (0..self.dim(j)).map(|b| self.multiply(i, a, j, &SparseVec::unit(b))).collect()
    }

    pub fn multiplication_operator(&self, i: usize, a: &[Rational], j: usize) -> Result<RatMatrix> {
        if a.len() != self.dim(i) {
            return Err(Error::DimensionMismatch(format!("operand does not lie in H^{i}")));
        }
        let cols = self.multiplication_columns(i, &SparseVec::from_dense(a), j)?;
        Ok(RatMatrix::from_sparse_cols(self.dim(i + j), &cols))
    }

    /// Kernel of `· a` restricted to the subspace `domain` of `H^j`, as a subspace of `H^j`.
    pub fn restricted_kernel(&self, i: usize, a: &SparseVec, j: usize, domain: &Subspace) -> Result<Subspace> {
        let basis = domain.sparse_basis();
        let images = self.multiplication_images(i, a, j, basis)?;
        let coeffs = kernel_of_columns(&images);
        let vs: Vec<SparseVec> = coeffs
            .sparse_basis()
            .iter()
            .map(|c| {
                c.entries()
                    .iter()
                    .fold(SparseVec::new(), |acc, (k, x)| acc.add_scaled(x, &basis[*k]))
            })
            .collect();
        Ok(Subspace::from_sparse(self.dim(j), &vs))
    }

    /// Span of `a · domain` inside `H^{i+j}`.
    pub fn restricted_image(&self, i: usize, a: &SparseVec, j: usize, domain: &Subspace) -> Result<Subspace> {
        let images = self.multiplication_images(i, a, j, domain.sparse_basis())?;
        Ok(Subspace::from_sparse(self.dim(i + j), &images))
    }

    /// `W_1 = H'`, `W_{s+1} = span(W_s · H')`, returned in degree `ell · i`.
    pub fn image_power_subspace(&self, ell: usize, h: &Subspace, i: usize) -> Result<Subspace> {
        if i == 0 {
            return Err(Error::DegreeOutOfRange("power must be at least 1".into()));
        }
        if ell * i > self.top() {
            return Err(Error::DegreeOutOfRange(format!("{ell} * {i} exceeds top degree {}", self.top())));
        }
        if h.ambient_dim() != self.dim(ell) {
            return Err(Error::DimensionMismatch(format!("subspace is not in H^{ell}")));
        }
        let mut w = h.clone();
        for s in 1..i {
            let mut e = SparseEchelon::new(self.dim(ell * (s + 1)));
            for x in w.sparse_basis() {
                for y in h.sparse_basis() {
                    e.insert(&self.multiply(ell * s, x, ell, y)?);
                }
            }
            w = Subspace::from_echelon(&e);
        }
        Ok(w)
    }

    /// `{a in H^k : a · w = 0 for all w in W}` with `W` a subspace of `H^d`.
    pub fn annihilator(&self, k: usize, d: usize, w: &Subspace) -> Result<Subspace> {
        self.check_degrees(k, d)?;
        if w.ambient_dim() != self.dim(d) {
            return Err(Error::DimensionMismatch(format!("subspace is not in H^{d}")));
        }
        let target = self.dim(k + d);
        let columns: Vec<SparseVec> = (0..self.dim(k))
            .map(|a| {
                let mut pairs = Vec::new();
                for (t, x) in w.sparse_basis().iter().enumerate() {
                    let p = self.multiply(k, &SparseVec::unit(a), d, x)?;
                    pairs.extend(p.entries().iter().map(|(c, v)| (t * target + c, v.clone())));
                }
                Ok(SparseVec::from_pairs(pairs))
            })
            .collect::<Result<_>>()?;
        Ok(kernel_of_columns(&columns))
    }

    /// Declared blocks `(i, rows, j, cols)` with `i <= j`.
    pub fn specified_blocks(&self) -> Vec<(usize, Range<usize>, usize, Range<usize>)> {
        self.blocks
            .iter()
            .flat_map(|(&(i, j), rs)| rs.iter().map(move |(r, c)| (i, r.clone(), j, c.clone())))
            .collect()
    }

    /// Stored products, canonically ordered.
    pub fn stored_products(&self) -> Vec<(Key, &SparseVec)> {
        let mut v: Vec<_> = self.products.iter().map(|(k, x)| (*k, x)).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    /// Graded commutativity: odd-degree squares vanish and stored products
    /// agree with their mirrors. Returns the first offending pair.
    pub fn check_graded_commutativity(&self) -> std::result::Result<usize, (usize, usize, usize, usize)> {
        let mut checked = 0;
        for ((i, bi, j, bj), _) in self.stored_products() {
            let ab = self.basis_product(i, bi, j, bj).map_err(|_| (i, bi, j, bj))?;
            let ba = self.basis_product(j, bj, i, bi).map_err(|_| (i, bi, j, bj))?;
            if ab != ba.scaled(&sign(i, j)) {
                return Err((i, bi, j, bj));
            }
            checked += 1;
        }
        Ok(checked)
    }

    fn associator_vanishes(&self, (i, a): (usize, usize), (j, b): (usize, usize), (k, c): (usize, usize)) -> Option<bool> {
        let ab = self.basis_product(i, a, j, b).ok()?;
        let bc = self.basis_product(j, b, k, c).ok()?;
        let left = self.multiply(i + j, &ab, k, &SparseVec::unit(c)).ok()?;
        let right = self.multiply(i, &SparseVec::unit(a), j + k, &bc).ok()?;
        Some(left == right)
    }

    /// Associativity on basis triples of positive degree with all four
    /// products specified. Exhaustive when the total dimension is at most
    /// `exhaustive_limit`, otherwise `samples` seeded random triples.
    pub fn check_associativity(&self, exhaustive_limit: usize, samples: usize, seed: u64) -> AssociativityReport {
        let top = self.top();
        let mut report = AssociativityReport {
            exhaustive: self.total_dim() <= exhaustive_limit,
            checked: 0,
            skipped: 0,
            failure: None,
        };
        let visit = |t: [(usize, usize); 3], report: &mut AssociativityReport| match self.associator_vanishes(t[0], t[1], t[2]) {
            Some(true) => report.checked += 1,
            Some(false) => {
                report.checked += 1;
                report.failure.get_or_insert(t);
            }
            None => report.skipped += 1,
        };
        if report.exhaustive {
            for i in 1..=top {
                for j in 1..=top - i {
                    for k in 1..=top - i - j {
                        for a in 0..self.dim(i) {
                            for b in 0..self.dim(j) {
                                for c in 0..self.dim(k) {
                                    visit([(i, a), (j, b), (k, c)], &mut report);
                                }
                            }
                        }
                    }
                }
            }
        } else {
            let triples: Vec<(usize, usize, usize)> = (1..=top)
                .flat_map(|i| (1..=top - i).flat_map(move |j| (1..=top - i - j).map(move |k| (i, j, k))))
                .filter(|&(i, j, k)| self.dim(i) * self.dim(j) * self.dim(k) > 0)
                .collect();
            if !triples.is_empty() {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..samples {
                    let (i, j, k) = triples[rng.gen_range(0..triples.len())];
                    let t = [
                        (i, rng.gen_range(0..self.dim(i))),
                        (j, rng.gen_range(0..self.dim(j))),
                        (k, rng.gen_range(0..self.dim(k))),
                    ];
                    visit(t, &mut report);
                }
            }
        }
        report
    }

    /// Exhaustive associativity on basis triples of degrees `(i, j, k)`.
    pub fn check_associativity_in_degrees(&self, i: usize, j: usize, k: usize) -> AssociativityReport {
        let mut report = AssociativityReport {
            exhaustive: true,
            checked: 0,
            skipped: 0,
            failure: None,
        };
        if i + j + k > self.top() {
            return report;
        }
        for a in 0..self.dim(i) {
            for b in 0..self.dim(j) {
                for c in 0..self.dim(k) {
                    match self.associator_vanishes((i, a), (j, b), (k, c)) {
                        Some(ok) => {
                            report.checked += 1;
                            if !ok {
                                report.failure.get_or_insert([(i, a), (j, b), (k, c)]);
                            }
                        }
                        None => report.skipped += 1,
                    }
                }
            }
        }
        report
    }

    pub fn to_doc(&self) -> AlgebraDoc {
        let products = self
            .stored_products()
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, bi, j, bj), v)| ProductEntry {
                i,
                j,
                bi,
                bj,
                coefficients: v.entries().iter().map(|(c, x)| (*c, format_rational(x))).collect(),
            })
            .collect();
        let specified = self
            .blocks
            .iter()
            .flat_map(|(&(i, j), rs)| {
                rs.iter().map(move |(r, c)| SpecifiedBlock {
                    i,
                    j,
                    rows: [r.start, r.end],
                    cols: [c.start, c.end],
                })
            })
            .collect();
        AlgebraDoc {
            dims: self.dims.clone(),
            labels: self.labels.clone(),
            products,
            specified,
        }
    }

    pub fn from_doc(doc: &AlgebraDoc) -> Result<Self> {
        let mut alg = Self::new(doc.dims.clone())?;
        for (k, l) in doc.labels.iter().enumerate() {
            if !l.is_empty() {
                alg.set_labels(k, l.clone())?;
            }
        }
        for b in &doc.specified {
            alg.specify_block(b.i, b.rows[0]..b.rows[1], b.j, b.cols[0]..b.cols[1])?;
        }
        for p in &doc.products {
            let v = p
                .coefficients
                .iter()
                .map(|(c, s)| parse_rational(s).map(|x| (*c, x)))
                .collect::<Result<Vec<_>>>()?;
            alg.set_product(p.i, p.bi, p.j, p.bj, SparseVec::from_pairs(v))?;
        }
        Ok(alg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityReport {
    pub exhaustive: bool,
    pub checked: usize,
    /// Triples touching an unspecified product.
    pub skipped: usize,
    /// `(degree, index)` triple whose associator is nonzero.
    pub failure: Option<[(usize, usize); 3]>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub bi: usize,
    pub bj: usize,
    pub coefficients: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecifiedBlock {
    pub i: usize,
    pub j: usize,
    pub rows: [usize; 2],
    pub cols: [usize; 2],
}

/// Serialized algebra: nonzero structure constants with `i <= j`, plus the
/// blocks in which absent products mean zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    pub products: Vec<ProductEntry>,
    pub specified: Vec<SpecifiedBlock>,
}

/// Convenience for sums of basis vectors.
pub fn sparse_sum(terms: &[(usize, i64)]) -> SparseVec {
    SparseVec::from_pairs(terms.iter().map(|&(i, c)| (i, Rational::from_integer(c.into()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    /// Exterior algebra on two generators.
    fn two_generators() -> GradedAlgebra {
        let mut a = GradedAlgebra::new(vec![1, 2, 1]).unwrap();
        a.specify_all(1, 1).unwrap();
        a.set_product(1, 0, 1, 1, SparseVec::unit(0)).unwrap();
        a
    }

    #[test]
    fn mirrored_sign() {
        let a = two_generators();
        assert_eq!(a.basis_product(1, 1, 1, 0).unwrap(), SparseVec::unit(0).scaled(&rat(-1)));
        assert!(a.basis_product(1, 0, 1, 0).unwrap().is_zero());
        assert_eq!(a.check_graded_commutativity(), Ok(1));
    }

    #[test]
    fn unit_and_unspecified() {
        let mut a = GradedAlgebra::new(vec![1, 2, 1]).unwrap();
        let b = SparseVec::from_pairs([(0, rat(3)), (1, rat(-1))]);
        assert_eq!(a.multiply(0, &SparseVec::unit(0), 1, &b).unwrap(), b);
        assert_eq!(
            a.multiply(1, &SparseVec::unit(0), 1, &SparseVec::unit(1)),
            Err(Error::UnspecifiedProduct { i: 1, j: 1, bi: 0, bj: 1 })
        );
        // zero coefficients never touch the table
        assert!(a.multiply(1, &SparseVec::new(), 1, &SparseVec::unit(1)).unwrap().is_zero());
        a.specify_block(1, 0..1, 1, 1..2).unwrap();
        assert!(a.is_specified(1, 1, 1, 0));
        assert!(!a.is_specified(1, 1, 1, 1));
        assert!(a.multiply(1, &SparseVec::unit(0), 2, &SparseVec::unit(0)).is_err());
    }

    #[test]
    fn operator_and_kernel() {
        let a = two_generators();
        let m = a.multiplication_operator(1, &[rat(1), rat(1)], 1).unwrap();
        assert_eq!(m, RatMatrix::from_i64(&[&[-1, 1]]));
        let k = a
            .restricted_kernel(1, &sparse_sum(&[(0, 1), (1, 1)]), 1, &Subspace::full(2))
            .unwrap();
        assert_eq!(k, Subspace::from_vectors(2, &[vec![rat(1), rat(1)]]).unwrap());
        assert_eq!(a.image_power_subspace(1, &Subspace::full(2), 2).unwrap(), Subspace::full(1));
        assert_eq!(a.annihilator(1, 1, &Subspace::full(2)).unwrap().dim(), 0);
    }

    #[test]
    fn broken_associativity_is_found() {
        // u, v in degree 2; u^2, uv, v^2 in degree 4; t on top
        let mut a = GradedAlgebra::new(vec![1, 0, 2, 0, 3, 0, 1]).unwrap();
        a.specify_all(2, 2).unwrap();
        a.specify_all(2, 4).unwrap();
        a.set_product(2, 0, 2, 0, SparseVec::unit(0)).unwrap();
        a.set_product(2, 0, 2, 1, SparseVec::unit(1)).unwrap();
        a.set_product(2, 1, 2, 1, SparseVec::unit(2)).unwrap();
        a.set_product(2, 1, 4, 0, SparseVec::unit(0)).unwrap();
        a.set_product(2, 0, 4, 1, SparseVec::unit(0)).unwrap();
        a.set_product(2, 1, 4, 1, SparseVec::unit(0)).unwrap();
        a.set_product(2, 0, 4, 2, SparseVec::unit(0)).unwrap();
        assert!(a.check_associativity(100, 0, 0).passed());
        assert!(a.check_associativity(0, 200, 7).passed());
        a.set_product(2, 0, 4, 1, sparse_sum(&[(0, 2)])).unwrap();
        let r = a.check_associativity(100, 0, 0);
        assert!(r.exhaustive);
        assert_eq!(r.failure, Some([(2, 0), (2, 0), (2, 1)]));
        let sampled = a.check_associativity(0, 500, 7);
        assert!(!sampled.exhaustive && !sampled.passed());
        assert_eq!(a.check_associativity_in_degrees(2, 2, 2).failure, Some([(2, 0), (2, 0), (2, 1)]));
        assert!(a.check_associativity_in_degrees(2, 2, 4).checked == 0);
    }

    #[test]
    fn doc_round_trip() {
        let mut a = two_generators();
        a.set_labels(1, vec!["x".into(), "y".into()]).unwrap();
        let doc = a.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        let back = GradedAlgebra::from_doc(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.to_doc(), doc);
        assert_eq!(back.label(1, 1), "y");
    }
}
