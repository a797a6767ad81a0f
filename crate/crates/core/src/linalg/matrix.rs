use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, rat, to_f64, Rational};
use super::sparse::{SparseEchelon, SparseVec};
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::poly::RatPoly;

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Output of [`rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer matrix literal; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r: Vec<Vec<Rational>> = rows.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect();
        Self::from_rows(r).expect("ragged integer literal")
    }

    /// Companion matrix of a monic-normalized polynomial: ones below the
    /// diagonal, `-c_0 .. -c_{n-1}` in the last column.
    pub fn companion(p: &RatPoly) -> Result<Self> {
        let n = match p.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        let m = p.monic();
        let mut out = Self::zeros(n, n);
        for i in 1..n {
            out.set(i, i - 1, Rational::one());
        }
        for i in 0..n {
            out.set(i, n - 1, -m.coeff(i));
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<Rational> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn row_slice(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row_slice(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn block_diag(blocks: &[&RatMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn hstack(blocks: &[&RatMatrix]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            for r in 0..rows {
                for c in 0..b.cols {
                    m.set(r, c0 + c, b.get(r, c).clone());
                }
            }
            c0 += b.cols;
        }
        Ok(m)
    }

    pub fn vstack(blocks: &[&RatMatrix]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        Self::from_vec(rows, cols, data)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| self.get(i, i).is_zero() && (0..i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(to_f64).collect()
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|r| SparseVec::from_dense(self.row_slice(r))).collect()
    }

    pub fn sparse_cols(&self) -> Vec<SparseVec> {
        (0..self.cols).map(|c| SparseVec::from_dense(&self.col(c))).collect()
    }

    /// Columns given as sparse vectors of length `rows`.
    pub fn from_sparse_cols(rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            for (r, x) in v.entries() {
                m.set(*r, c, x.clone());
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        let mut e = SparseEchelon::new(self.cols);
        for r in self.sparse_rows() {
            e.insert(&r);
        }
        e.rank()
    }

    pub fn kernel(&self) -> Subspace {
        kernel(self)
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                for c in 0..n {
                    a.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det *= &pivot;
            for r in col + 1..n {
                let f = &a[r * n + col] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = &a[col * n + c] * &f;
                    a[r * n + c] -= v;
                }
            }
        }
        Ok(det)
    }

    pub fn charpoly(&self) -> Result<RatPoly> {
        charpoly(self)
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &RatPoly) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut acc = RatMatrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.try_mul(self)?;
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row_slice(r).iter().map(format_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimension mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimension mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

/// Gauss–Jordan reduction to the unique reduced row echelon form.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a.get(r, c).recip();
        for j in c..cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = a.get(r, j) * &f;
                a.data[i * cols + j] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref {
        reduced: a,
        pivots,
        rank,
    }
}

/// Null space basis read off a reduced row-echelon form.
pub(crate) fn kernel_from_rref_rows(cols: usize, reduced: &[SparseVec]) -> Vec<SparseVec> {
    let pivots: Vec<usize> = reduced.iter().map(|r| r.leading().expect("nonzero row").0).collect();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; cols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut pairs = vec![(f, Rational::one())];
            for (row, &p) in reduced.iter().zip(&pivots) {
                let x = row.get(f);
                if !x.is_zero() {
                    pairs.push((p, -x));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect()
}

/// Null space of the linear map whose rows are given sparsely.
pub fn kernel_of_rows(cols: usize, rows: &[SparseVec]) -> Subspace {
    let mut e = SparseEchelon::new(cols);
    for r in rows {
        e.insert(r);
    }
    let reduced = e.reduced_rows();
    Subspace::from_sparse(cols, &kernel_from_rref_rows(cols, &reduced))
}

/// Null space of the map `e_k -> columns[k]`, with columns in a space of any size.
pub fn kernel_of_columns(columns: &[SparseVec]) -> Subspace {
    let mut rows: std::collections::BTreeMap<usize, Vec<(usize, Rational)>> = std::collections::BTreeMap::new();
    for (k, c) in columns.iter().enumerate() {
        for (i, x) in c.entries() {
            rows.entry(*i).or_default().push((k, x.clone()));
        }
    }
    let rows: Vec<SparseVec> = rows.into_values().map(SparseVec::from_pairs).collect();
    kernel_of_rows(columns.len(), &rows)
}

/// `{v : m v = 0}`.
pub fn kernel(m: &RatMatrix) -> Subspace {
    kernel_of_rows(m.cols, &m.sparse_rows())
}

/// Characteristic polynomial `det(x I - m)` by the Faddeev–LeVerrier recurrence.
pub fn charpoly(m: &RatMatrix) -> Result<RatPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut aux = RatMatrix::zeros(n, n);
    for k in 1..=n {
        // aux_k = m aux_{k-1} + c_{n-k+1} I
        let mut next = m.try_mul(&aux)?;
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        let t = m.try_mul(&next)?.trace();
        coeffs[n - k] = -t / rat(k as i64);
        aux = next;
    }
    Ok(RatPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::ratio;

    #[test]
    fn rref_examples() {
        let id = RatMatrix::identity(3);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);

        // hand reduction: R2 <- R2 - 2 R1
        let r = rref(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.reduced, RatMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);

        let r = rref(&RatMatrix::zeros(2, 2));
        assert!(r.reduced.is_zero());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&RatMatrix::identity(3)).dim(), 0);
        let k = kernel(&RatMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.basis(), RatMatrix::from_i64(&[&[1, -1]]));
        assert_eq!(kernel(&RatMatrix::zeros(4, 4)).dim(), 4);
    }

    #[test]
    fn determinant_and_charpoly() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        assert_eq!(m.determinant().unwrap(), rat(5));
        let p = charpoly(&m).unwrap();
        assert_eq!(p, RatPoly::from_i64(&[5, -5, 1]));
        let half = RatMatrix::from_rows(vec![vec![ratio(1, 2)]]).unwrap();
        assert_eq!(charpoly(&half).unwrap().coeffs(), &[ratio(-1, 2), rat(1)]);
        assert!(charpoly(&RatMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn charpoly_of_identity_is_binomial_power() {
        let p = charpoly(&RatMatrix::identity(4)).unwrap();
        assert_eq!(p, RatPoly::from_i64(&[1, -4, 6, -4, 1]));
    }
}
