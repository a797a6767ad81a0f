//! Polynomials over a prime field `F_p` with word-sized `p`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

/// Dense coefficients in `[0, p)`, low degree first, trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        let mut out = Self {
            p,
            c: c.into_iter().map(|x| x % p).collect(),
        };
        out.trim();
        out
    }

    pub fn zero(p: u64) -> Self {
        Self { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// Reduction of an integer polynomial.
    pub fn from_integers(p: u64, coeffs: &[BigInt]) -> Self {
        let m = BigInt::from(p);
        Self::new(
            p,
            coeffs
                .iter()
                .map(|x| {
                    let r = ((x % &m) + &m) % &m;
                    r.to_u64().expect("residue fits")
                })
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let get = |v: &Vec<u64>, k: usize| v.get(k).copied().unwrap_or(0);
        Self::new(self.p, (0..n).map(|k| (get(&self.c, k) + get(&o.c, k)) % self.p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let get = |v: &Vec<u64>, k: usize| v.get(k).copied().unwrap_or(0);
        Self::new(
            self.p,
            (0..n).map(|k| (get(&self.c, k) + self.p - get(&o.c, k)) % self.p).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&a| mul_mod(a, k, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.p))
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        if self.c.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let inv = inv_mod(d.lead(), self.p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, self.p);
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + self.p - mul_mod(c, dj, self.p)) % self.p;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(self.p, q), Self::new(self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| mul_mod(a, k as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s a + t b = g` and `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = inv_mod(r0.lead(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).is_one()
            }
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// `(d, product of all irreducible factors of degree d)`.
    pub fn distinct_degree(&self) -> Vec<(usize, FpPoly)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let mut h = Self::x(p).rem(&f);
        let mut d = 0;
        while let Some(df) = f.degree() {
            if df < 2 * (d + 1) {
                if df > 0 {
                    out.push((df, f.clone()));
                }
                break;
            }
            d += 1;
            h = h.pow_mod(p, &f);
            let g = f.gcd(&h.sub(&Self::x(p)));
            if !g.is_one() {
                f = f.divrem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        out
    }

    /// Degrees of the irreducible factors, largest first.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .distinct_degree()
            .into_iter()
            .flat_map(|(d, g)| std::iter::repeat_n(d, g.degree().expect("nonzero") / d))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles
    /// (odd `p` only).
    fn equal_degree<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<FpPoly> {
        let p = self.p;
        let n = self.degree().expect("nonzero");
        if n == d {
            return vec![self.monic()];
        }
        // (p^d - 1) / 2 may overflow u64; exponentiate in steps instead
        loop {
            let a = Self::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree().is_none_or(|k| k == 0) {
                continue;
            }
            let g = self.gcd(&a);
            let split = if !g.is_one() {
                g
            } else {
                let b = half_power(&a, d, self).sub(&Self::one(p));
                self.gcd(&b)
            };
            if !split.is_one() && split.degree() != self.degree() {
                let other = self.divrem(&split).0.monic();
                let mut out = split.equal_degree(d, rng);
                out.extend(other.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted.
    pub fn factor_squarefree<R: Rng>(&self, rng: &mut R) -> Vec<FpPoly> {
        assert!(self.p > 2, "equal-degree splitting needs an odd prime");
        let mut out: Vec<FpPoly> = self
            .distinct_degree()
            .into_iter()
            .flat_map(|(d, g)| g.equal_degree(d, rng))
            .collect();
        out.sort();
        out
    }

    /// Integer lift with coefficients in `[0, p)`.
    pub fn to_integers(&self) -> Vec<BigInt> {
        self.c.iter().map(|&a| BigInt::from(a)).collect()
    }
}

/// `a^((p^d - 1) / 2) mod f`, using `(p^d - 1)/2 = (p-1)/2 · (1 + p + … + p^{d-1})`.
fn half_power(a: &FpPoly, d: usize, f: &FpPoly) -> FpPoly {
    let p = a.p;
    let mut acc = FpPoly::one(p);
    let mut cur = a.rem(f);
    for _ in 0..d {
        acc = acc.mul(&cur).rem(f);
        cur = cur.pow_mod(p, f);
    }
    acc.pow_mod((p - 1) / 2, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn arithmetic() {
        let a = fp(7, &[1, 1]);
        let b = fp(7, &[6, 1]);
        assert_eq!(a.mul(&b), fp(7, &[6, 0, 1]));
        let (q, r) = fp(7, &[6, 0, 1]).divrem(&a);
        assert_eq!(q, b);
        assert!(r.is_zero());
        let (g, s, t) = a.ext_gcd(&b);
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn multisets_of_small_polynomials() {
        // x^2 + 1 splits mod 5, stays irreducible mod 7
        assert_eq!(fp(5, &[1, 0, 1]).degree_multiset(), vec![1, 1]);
        assert_eq!(fp(7, &[1, 0, 1]).degree_multiset(), vec![2]);
        assert!(!fp(5, &[1, 2, 1]).is_squarefree());
    }

    #[test]
    fn full_factorization_multiplies_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x-1)(x-2)(x^2+1)(x^3+x+1) over F_7
        let parts = [fp(7, &[6, 1]), fp(7, &[5, 1]), fp(7, &[1, 0, 1]), fp(7, &[1, 1, 0, 1])];
        let f = parts.iter().fold(FpPoly::one(7), |acc, g| acc.mul(g));
        let facs = f.factor_squarefree(&mut rng);
        assert_eq!(facs.len(), 4);
        let prod = facs.iter().fold(FpPoly::one(7), |acc, g| acc.mul(g));
        assert_eq!(prod, f);
        let mut degs: Vec<usize> = facs.iter().map(|g| g.degree().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 3]);
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
