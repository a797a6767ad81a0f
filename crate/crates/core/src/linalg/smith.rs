//! Integer matrices, Smith normal form and torsion point counts on `R^d / Z^d`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::RatMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} {:?}", self.rows, self.cols, self.data)
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged integer literal");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|x| x.iter().map(|&v| BigInt::from(v))).collect(),
        }
    }

    /// Fails unless every entry is an integer.
    pub fn from_rational(m: &RatMatrix) -> Result<Self> {
        let mut out = Self::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let x = m.get(r, c);
                if !x.is_integer() {
                    return Err(Error::Precondition(format!("entry ({r},{c}) = {x} is not an integer")));
                }
                out.set(r, c, x.to_integer());
            }
        }
        Ok(out)
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_vec(
            self.rows,
            self.cols,
            self.data.iter().map(|x| Rational::from_integer(x.clone())).collect(),
        )
        .expect("shape preserved")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row_dst += k * row_src
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * k;
            self.data[dst * self.cols + c] += v;
        }
    }

    /// col_dst += k * col_src
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * k;
            self.data[r * self.cols + dst] += v;
        }
    }
}

/// `diag = P m Q` with `P`, `Q` unimodular; only `Q` is tracked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub col_transform: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut q = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    let mut diagonal = Vec::with_capacity(n);
    for t in 0..n {
        // smallest nonzero entry in the trailing block becomes the pivot
        let best = (t..a.rows)
            .flat_map(|r| (t..a.cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a.get(r, c).is_zero())
            .min_by_key(|&(r, c)| a.get(r, c).abs());
        let Some((pr, pc)) = best else {
            diagonal.extend(std::iter::repeat_n(BigInt::zero(), n - t));
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        q.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            for r in t + 1..a.rows {
                if a.get(r, t).is_zero() {
                    continue;
                }
                let k = -a.get(r, t).div_floor(a.get(t, t));
                a.add_row(r, t, &k);
                if !a.get(r, t).is_zero() {
                    a.swap_rows(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..a.cols {
                if a.get(t, c).is_zero() {
                    continue;
                }
                let k = -a.get(t, c).div_floor(a.get(t, t));
                a.add_col(c, t, &k);
                q.add_col(c, t, &k);
                if !a.get(t, c).is_zero() {
                    a.swap_cols(t, c);
                    q.swap_cols(t, c);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let offender = (t + 1..a.rows)
                .find(|&r| (t + 1..a.cols).any(|c| !a.get(r, c).is_multiple_of(a.get(t, t))));
            match offender {
                Some(r) => a.add_row(t, r, &BigInt::one()),
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            let v = -a.get(t, t);
            a.set(t, t, v);
        }
        diagonal.push(a.get(t, t).clone());
    }
    SmithForm {
        diagonal,
        col_transform: q,
    }
}

/// Number of solutions of `m x ≡ 0` on the real torus `R^d / Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionCount {
    Finite(#[serde(with = "bigint_str")] BigInt),
    Infinite,
}

impl TorsionCount {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            TorsionCount::Finite(n) => Some(n),
            TorsionCount::Infinite => None,
        }
    }
}

mod bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn torsion_solution_count(m: &IntMatrix) -> Result<TorsionCount> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let snf = smith_normal_form(m);
    if snf.diagonal.iter().any(Zero::is_zero) {
        return Ok(TorsionCount::Infinite);
    }
    Ok(TorsionCount::Finite(snf.diagonal.iter().product()))
}

/// The solutions themselves, as coordinate vectors in `[0, 1)^d`.
///
/// Fails when the solution set is infinite or larger than `limit`.
pub fn torsion_points(m: &IntMatrix, limit: usize) -> Result<Vec<Vec<Rational>>> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let snf = smith_normal_form(m);
    if snf.diagonal.iter().any(Zero::is_zero) {
        return Err(Error::NotTransverse("infinitely many torsion solutions".into()));
    }
    let total: BigInt = snf.diagonal.iter().product();
    if total > BigInt::from(limit) {
        return Err(Error::Precondition(format!("{total} torsion points exceed the limit {limit}")));
    }
    let d = m.cols;
    let moduli: Vec<u64> = snf.diagonal.iter().map(|x| x.to_u64().expect("bounded by limit")).collect();
    let mut points = Vec::new();
    let mut digits = vec![0u64; d];
    loop {
        // y_k = digits_k / s_k, x = Q y mod 1
        let x: Vec<Rational> = (0..d)
            .map(|r| {
                let s = (0..d).fold(Rational::zero(), |acc, k| {
                    acc + Rational::from_integer(snf.col_transform.get(r, k).clone())
                        * Rational::new(BigInt::from(digits[k]), BigInt::from(moduli[k]))
                });
                let fl = s.floor();
                s - fl
            })
            .collect();
        points.push(x);
        let mut k = 0;
        loop {
            if k == d {
                points.sort();
                points.dedup();
                return Ok(points);
            }
            digits[k] += 1;
            if digits[k] < moduli[k] {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}
