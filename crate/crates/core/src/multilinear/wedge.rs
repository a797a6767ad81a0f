//! Exterior powers: lexicographic multi-index bases, compound matrices and
//! the sign rule for wedge products of basis monomials.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Strictly increasing `k`-tuples from `0..n`, lexicographically ordered.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Bitmask of a multi-index.
pub fn mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1 << i))
}

/// Sign `s` with `e_a ∧ e_b = s · e_{a ∪ b}`, or `None` when the monomials
/// share an index.
pub fn wedge_sign(a: u64, b: u64) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    // count pairs (x in a, y in b) with x > y
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> y).count_ones();
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndexBasis {
    ambient_dim: usize,
    k: usize,
    indices: Vec<Vec<usize>>,
    lookup: HashMap<u64, usize>,
}

impl MultiIndexBasis {
    pub fn new(ambient_dim: usize, k: usize) -> Self {
        let indices = subsets(ambient_dim, k);
        let lookup = indices.iter().enumerate().map(|(i, s)| (mask(s), i)).collect();
        Self {
            ambient_dim,
            k,
            indices,
            lookup,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[Vec<usize>] {
        &self.indices
    }

    pub fn position(&self, multi_index: &[usize]) -> Option<usize> {
        self.lookup.get(&mask(multi_index)).copied()
    }

    pub fn position_of_mask(&self, m: u64) -> Option<usize> {
        self.lookup.get(&m).copied()
    }
}

/// Matrix of `∧^k m`: the entry at `(I, J)` is the minor on rows `I`, columns `J`.
/// Works for rectangular `m`.
pub fn compound_matrix(m: &RatMatrix, k: usize) -> RatMatrix {
    let rows = subsets(m.rows(), k);
    let cols = subsets(m.cols(), k);
    let mut out = RatMatrix::zeros(rows.len(), cols.len());
    if k == 0 {
        out.set(0, 0, Rational::from_integer(1.into()));
        return out;
    }
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            let d = m.submatrix(r, c).determinant().expect("square minor");
            out.set(i, j, d);
        }
    }
    out
}

/// `∧^k φ` on the lexicographic basis of `∧^k`.
pub fn wedge_power_map(phi: &RatMatrix, k: usize) -> Result<RatMatrix> {
    if !phi.is_square() {
        return Err(Error::NotSquare {
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    if k == 0 || k > phi.rows() {
        return Err(Error::DegreeOutOfRange(format!("k = {k} for a {}x{} matrix", phi.rows(), phi.cols())));
    }
    Ok(compound_matrix(phi, k))
}
