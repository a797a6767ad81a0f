//! Factorization over ℚ: squarefree decomposition, factorization modulo a
//! small prime, quadratic Hensel lifting and exhaustive recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::modp::{is_prime, FpPoly};
use super::{squarefree_decomposition, RatPoly};
use crate::error::{Error, Result};
use crate::linalg::rational::{serde_str, Rational};

/// `input = content · ∏ factor^multiplicity`, each factor a primitive integer
/// polynomial with positive leading coefficient, irreducible over ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationResult {
    #[serde(with = "serde_str")]
    pub content: Rational,
    pub factors: Vec<(RatPoly, u32)>,
}

impl FactorizationResult {
    pub fn product(&self) -> RatPoly {
        self.factors
            .iter()
            .fold(RatPoly::constant(self.content.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    /// Irreducible over ℚ: exactly one factor, of multiplicity one.
    pub fn is_irreducible(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    pub fn factor_degrees(&self) -> Vec<usize> {
        self.factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree().expect("nonconstant"), *m as usize))
            .collect()
    }
}

pub fn factor_rational(p: &RatPoly) -> Result<FactorizationResult> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut factors: Vec<(RatPoly, u32)> = Vec::new();
    for (a, k) in squarefree_decomposition(p)? {
        let (_, prim) = a.primitive_integer();
        for f in factor_squarefree_primitive(&prim) {
            factors.push((RatPoly::from_integers(&f), k));
        }
    }
    factors.sort_by(|(a, ka), (b, kb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
            .then(ka.cmp(kb))
    });
    let lead_product = factors
        .iter()
        .fold(Rational::one(), |acc, (f, k)| acc * num_traits::pow(f.lead(), *k as usize));
    Ok(FactorizationResult {
        content: p.lead() / lead_product,
        factors,
    })
}

type ZPoly = Vec<BigInt>;

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn zmod(v: &[BigInt], m: &BigInt) -> ZPoly {
    trim(v.iter().map(|x| x.mod_floor(m)).collect())
}

/// Coefficients moved into `(-m/2, m/2]`.
fn symmetric(v: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        v.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z)).collect())
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let dh = h.len() - 1;
    let mut r = zmod(a, m);
    if r.len() <= dh {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dh];
    for k in (0..q.len()).rev() {
        let c = r[k + dh].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, hj) in h.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * hj).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(dh);
    (zmod(&q, m), zmod(&r, m))
}

/// One quadratic Hensel step: from `f ≡ g h`, `s g + t h ≡ 1 (mod m)` to the
/// same relations modulo `m²`. `h` stays monic.
fn hensel_step(f: &[BigInt], g: &[BigInt], h: &[BigInt], s: &[BigInt], t: &[BigInt], m: &BigInt) -> [ZPoly; 4] {
    let mm = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &mm);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &mm);
    let g2 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &mm);
    let h2 = zmod(&zadd(h, &r), &mm);
    let b = zmod(&zsub(&zadd(&zmul(s, &g2), &zmul(t, &h2)), &[BigInt::one()]), &mm);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h2, &mm);
    let s2 = zmod(&zsub(s, &d), &mm);
    let t2 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g2)), &mm);
    [g2, h2, s2, t2]
}

/// Lifts `f ≡ lc · ∏ u_i (mod p)` to monic factors modulo `p^(2^j) ≥ bound`.
fn hensel_lift(f: &[BigInt], factors: &[FpPoly], p: u64, bound: &BigInt) -> (Vec<ZPoly>, BigInt) {
    let pb = BigInt::from(p);
    let lc = f.last().expect("nonzero").clone();
    let mut modulus = pb.clone();
    while &modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let mut lifted = Vec::with_capacity(factors.len());
    let mut current: ZPoly = f.to_vec();
    for i in 0..factors.len() - 1 {
        let h_p = &factors[i];
        let rest = factors[i + 1..]
            .iter()
            .fold(FpPoly::from_integers(p, std::slice::from_ref(&lc)), |acc, u| acc.mul(u));
        let (_, s_p, t_p) = rest.ext_gcd(h_p);
        let (mut g, mut h) = (rest.to_integers(), h_p.to_integers());
        let (mut s, mut t) = (s_p.to_integers(), t_p.to_integers());
        let mut m = pb.clone();
        while m < modulus {
            let fm = zmod(&current, &(&m * &m));
            [g, h, s, t] = hensel_step(&fm, &g, &h, &s, &t, &m);
            m = &m * &m;
        }
        lifted.push(h);
        current = g;
    }
    // current ≡ lc · u_last; divide out lc modulo p^k
    let inv = mod_inverse(&lc, &modulus);
    lifted.push(zmod(&current.iter().map(|c| c * &inv).collect::<Vec<_>>(), &modulus));
    (lifted, modulus)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

/// Factor coefficients of `f` are bounded by `2^deg · ‖f‖₂`.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = sq.sqrt() + 1;
    let lc = f.last().expect("nonzero").abs();
    BigInt::from(2) * lc * (BigInt::one() << (f.len() - 1)) * norm
}

/// Smallest prime above `2 deg` not dividing the leading coefficient and
/// keeping `f` squarefree.
fn choose_prime(f: &[BigInt]) -> u64 {
    let lc = f.last().expect("nonzero");
    let mut p = 2 * (f.len() as u64 - 1) + 1;
    loop {
        if is_prime(p) && !(lc % BigInt::from(p)).is_zero() && FpPoly::from_integers(p, f).is_squarefree() {
            return p;
        }
        p += 1;
    }
}

fn primitive(v: &[BigInt]) -> ZPoly {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if v.last().is_some_and(Signed::is_negative) { -BigInt::one() } else { BigInt::one() };
    v.iter().map(|c| c / &g * &sign).collect()
}

/// Exact division of integer polynomials, `None` if it does not divide.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = RatPoly::from_integers(a).divrem(&RatPoly::from_integers(b)).ok()?;
    if !r.is_zero() || q.coeffs().iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

/// Irreducible factors of a squarefree primitive integer polynomial with
/// positive leading coefficient.
fn factor_squarefree_primitive(f: &[BigInt]) -> Vec<ZPoly> {
    if f.len() <= 2 {
        return vec![f.to_vec()];
    }
    let p = choose_prime(f);
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let modular = FpPoly::from_integers(p, f).monic().factor_squarefree(&mut rng);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let bound = coefficient_bound(f);
    let (lifted, modulus) = hensel_lift(f, &modular, p, &bound);
    recombine(f, lifted, &modulus)
}

fn recombine(f: &[BigInt], mut local: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut rest = f.to_vec();
    let mut size = 1;
    while 2 * size <= local.len() {
        let mut hit = None;
        for subset in Subsets::new(local.len(), size) {
            let lc = rest.last().expect("nonzero").clone();
            let cand = subset
                .iter()
                .fold(vec![lc], |acc, &i| zmod(&zmul(&acc, &local[i]), modulus));
            let cand = primitive(&symmetric(&cand, modulus));
            if let Some(q) = zdiv_exact(&rest, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    local.remove(i);
                }
            }
            None => size += 1,
        }
    }
    found.push(rest);
    found
}

/// `k`-subsets of `0..n` in lexicographic order.
struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            cur: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{rat, ratio};

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64(c)
    }

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(Subsets::new(5, 2).count(), 10);
        assert_eq!(Subsets::new(3, 0).count(), 1);
        assert_eq!(Subsets::new(2, 3).count(), 0);
    }

    #[test]
    fn difference_of_squares() {
        let r = factor_rational(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(r.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        assert_eq!(r.content, rat(1));
    }

    #[test]
    fn irreducible_quartic() {
        let r = factor_rational(&p(&[1, -1, 0, 0, 1])).unwrap();
        assert!(r.is_irreducible());
    }

    #[test]
    fn perfect_square() {
        let r = factor_rational(&p(&[1, 0, 2, 0, 1])).unwrap();
        assert_eq!(r.factors, vec![(p(&[1, 0, 1]), 2)]);
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // x^4 + 1 is irreducible over ℚ but splits modulo every prime
        let r = factor_rational(&p(&[1, 0, 0, 0, 1])).unwrap();
        assert!(r.is_irreducible());
        // x^4 - 10x^2 + 1 likewise
        assert!(factor_rational(&p(&[1, 0, -10, 0, 1])).unwrap().is_irreducible());
    }

    #[test]
    fn non_monic_with_content() {
        // (3/2)(2x + 1)(x^2 - 3)^2 (x - 5)
        let f = p(&[1, 2]).scale(&ratio(3, 2));
        let f = &(&f * &p(&[-3, 0, 1]).pow(2)) * &p(&[-5, 1]);
        let r = factor_rational(&f).unwrap();
        assert_eq!(r.product(), f);
        assert_eq!(r.factors.len(), 3);
        assert_eq!(r.factor_degrees(), vec![1, 1, 2, 2]);
    }

    #[test]
    fn product_of_many_linears() {
        let f = RatPoly::from_roots(&(1..=8).map(|k| rat(k * k - 20)).collect::<Vec<_>>());
        let r = factor_rational(&f).unwrap();
        assert_eq!(r.factors.len(), 8);
        assert_eq!(r.product(), f);
    }
}
