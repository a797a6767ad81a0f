//! Sparse rational vectors and an incremental row-echelon accumulator.
//!
//! Products in the ring models are mostly single-monomial vectors, so spans
//! in the large graded pieces are built here instead of through dense RREF.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use super::rational::Rational;

/// Sorted `(index, value)` pairs with no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize) -> Self {
        Self {
            entries: vec![(index, Rational::one())],
        }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        Self {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// Builds from unsorted pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, x) in pairs {
            *acc.entry(i).or_insert_with(Rational::zero) += x;
        }
        Self {
            entries: acc.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Rational {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, xa)), Some((ib, xb))) => {
                    if ia < ib {
                        out.push((*ia, xa.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, xb * c));
                        b.next();
                    } else {
                        let s = xa + xb * c;
                        if !s.is_zero() {
                            out.push((*ia, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, xa)), None) => {
                    out.push((*ia, xa.clone()));
                    a.next();
                }
                (None, Some((ib, xb))) => {
                    out.push((*ib, xb * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    /// Reindexes every entry by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (i + offset, x.clone())).collect(),
        }
    }
}

/// Incrementally maintained row echelon form of a span.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    dim: usize,
    // pivot column -> row with leading 1 at the pivot
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = v.entries().iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let next = acc
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, coeff)) = next else { break };
            for (j, y) in self.rows[&c].entries() {
                let e = acc.entry(*j).or_insert_with(Rational::zero);
                *e -= &coeff * y;
                if e.is_zero() {
                    acc.remove(j);
                }
            }
            cursor = c + 1;
        }
        SparseVec {
            entries: acc.into_iter().collect(),
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        debug_assert!(v.entries().iter().all(|(i, _)| *i < self.dim));
        let r = self.reduce(v);
        let Some((p, lead)) = r.leading() else {
            return false;
        };
        let inv = lead.recip();
        let row = r.scaled(&inv);
        self.rows.insert(p, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Fully reduced rows, ordered by pivot.
    pub fn reduced_rows(&self) -> Vec<SparseVec> {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &p in pivots.iter().rev() {
            let mut row = self.rows[&p].clone();
            for &q in pivots.iter().filter(|&&q| q > p) {
                let c = row.get(q);
                if !c.is_zero() {
                    row = row.add_scaled(&(-c), &done[&q]);
                }
            }
            done.insert(p, row);
        }
        done.into_values().collect()
    }

    pub fn to_rref_matrix(&self) -> RatMatrix {
        let rows = self.reduced_rows();
        let mut m = RatMatrix::zeros(rows.len(), self.dim);
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row.entries() {
                m.set(r, *c, x.clone());
            }
        }
        m
    }
}

/// Rank of the span of `vectors` in an ambient space of size `dim`.
pub fn span_rank<'a, I: IntoIterator<Item = &'a SparseVec>>(dim: usize, vectors: I) -> usize {
    let mut ech = SparseEchelon::new(dim);
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}
