//! Univariate polynomials over ℚ, factorization and Galois certificates.

mod factor;
mod galois;
pub mod modp;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::rational::{format_rational, parse_rational, rat, Rational};

pub use factor::{factor_rational, FactorizationResult};
pub use galois::{degrees_by_splitting, galois_sn_certificate, GaloisCertificate, GaloisVerdict, PrimeEvidence};

/// Coefficients low degree first; the stored leading coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// `(x - r)` for each root, multiplied out.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Self::new(vec![-r.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn divrem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let Some(dd) = d.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = d.lead().recip();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Exact quotient; fails when `d` does not divide `self`.
    pub fn exact_div(&self, d: &RatPoly) -> Result<RatPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Precondition("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.positive_primitive();
        }
        a.monic()
    }

    /// Content (sign chosen so the primitive part has positive leading
    /// coefficient) and primitive integer part.
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().expect("nonzero").is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn positive_primitive(&self) -> RatPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let (c, prim) = self.primitive_integer();
        let p = Self::from_integers(&prim);
        if c.is_negative() {
            -&p
        } else {
            p
        }
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &Rational) -> RatPoly {
        let lin = Self::new(vec![c.clone(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, k| &(&acc * &lin) + &Self::constant(k.clone()))
    }

    /// Parses `c0 c1 c2 ...`, low degree first.
    pub fn parse(text: &str) -> Result<RatPoly> {
        let coeffs: Vec<Rational> = text.split_whitespace().map(parse_rational).collect::<Result<_>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        Ok(Self::new(coeffs))
    }

    /// Inverse of [`RatPoly::parse`].
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(format_rational).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&a))?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as the list of coefficient strings, low degree first.
impl serde::Serialize for RatPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for RatPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let c: Vec<Rational> = v
            .iter()
            .map(|x| parse_rational(x))
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)?;
        Ok(RatPoly::new(c))
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// `p / gcd(p, p')`, made primitive with positive leading coefficient.
pub fn squarefree_part(p: &RatPoly) -> Result<RatPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    Ok(p.exact_div(&g)?.positive_primitive())
}

pub fn is_squarefree(p: &RatPoly) -> bool {
    !p.is_zero() && p.gcd(&p.derivative()).is_constant()
}

/// Yun's algorithm: monic `(a_k, k)` with `p = lead · ∏ a_k^k`, skipping
/// trivial `a_k`.
pub fn squarefree_decomposition(p: &RatPoly) -> Result<Vec<(RatPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0)?;
    let mut c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut k = 1u32;
    loop {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), k));
        }
        b = b.exact_div(&a)?;
        if b.is_constant() {
            break;
        }
        c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        k += 1;
    }
    Ok(out)
}

/// Resultant by the Euclidean remainder sequence.
pub fn resultant(a: &RatPoly, b: &RatPoly) -> Rational {
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = Rational::one();
    loop {
        let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
            return Rational::zero();
        };
        if n == 0 {
            return acc * pow_rat(&b.lead(), m);
        }
        if m == 0 {
            return acc * pow_rat(&a.lead(), n);
        }
        let (_, r) = a.divrem(&b).expect("nonzero divisor");
        let Some(dr) = r.degree() else {
            return Rational::zero();
        };
        // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_rat(&b.lead(), m - dr);
        a = b;
        b = r;
    }
}

fn pow_rat(x: &Rational, e: usize) -> Rational {
    num_traits::pow(x.clone(), e)
}

/// `(-1)^{n(n-1)/2} Res(p, p') / lead(p)`.
pub fn discriminant(p: &RatPoly) -> Result<Rational> {
    let n = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    let r = resultant(p, &p.derivative()) / p.lead();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::ratio;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64(c)
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(RatPoly::from_i64(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(RatPoly::from_i64(&[0, 0]).degree(), None);
        assert_eq!(p(&[1, -1, 0, 0, 1]).to_string(), "x^4 - x + 1");
        assert_eq!(p(&[0, -2]).to_string(), "-2x");
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
        assert!(a.divrem(&RatPoly::zero()).is_err());
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&p(&[1, -2, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(squarefree_part(&p(&[1, -1, 0, 0, 1])).unwrap(), p(&[1, -1, 0, 0, 1]));
        assert_eq!(squarefree_part(&p(&[0, 0, 0, 1])).unwrap(), p(&[0, 1]));
        assert!(squarefree_part(&RatPoly::zero()).is_err());
    }

    #[test]
    fn yun_decomposition() {
        // (x-1) (x+2)^3
        let f = &p(&[-1, 1]) * &p(&[2, 1]).pow(3);
        let d = squarefree_decomposition(&f.scale(&rat(5))).unwrap();
        assert_eq!(d, vec![(p(&[-1, 1]), 1), (p(&[2, 1]), 3)]);
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&p(&[1, 0, 1])).unwrap(), rat(-4));
        assert_eq!(discriminant(&p(&[1, -1, 0, 0, 1])).unwrap(), rat(229));
        assert_eq!(discriminant(&p(&[1, -2, 1])).unwrap(), rat(0));
        assert!(discriminant(&p(&[3])).is_err());
        // b^2 - 4ac with a = 2, b = 3, c = -1/2
        let q = RatPoly::new(vec![ratio(-1, 2), rat(3), rat(2)]);
        assert_eq!(discriminant(&q).unwrap(), rat(13));
    }

    #[test]
    fn text_round_trip() {
        let q = RatPoly::parse("1/2 0 -3").unwrap();
        assert_eq!(q.coeff(0), ratio(1, 2));
        assert_eq!(RatPoly::parse(&q.to_text()).unwrap(), q);
        assert!(RatPoly::parse("").is_err());
    }

    #[test]
    fn shift_and_primitive() {
        assert_eq!(p(&[0, 0, 1]).shift(&rat(1)), p(&[1, 2, 1]));
        let (c, prim) = RatPoly::new(vec![ratio(-1, 2), ratio(-3, 4)]).primitive_integer();
        assert_eq!(c, ratio(-1, 4));
        assert_eq!(prim, vec![BigInt::from(2), BigInt::from(3)]);
    }
}
