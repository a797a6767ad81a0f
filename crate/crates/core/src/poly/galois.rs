//! Dedekind cycle-type evidence that a Galois group is the full symmetric group.
//!
//! For a prime `p` not dividing `disc · lead`, the degrees of the irreducible
//! factors modulo `p` are the cycle type of a Frobenius element. Irreducibility
//! gives transitivity; an `(n-1)`-cycle then gives double transitivity, and a
//! doubly transitive group containing a transposition is `S_n`.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::modp::{is_prime, FpPoly};
use super::{discriminant, factor_rational, is_squarefree, RatPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaloisVerdict {
    #[serde(rename = "Proven-Sn")]
    ProvenSn,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEvidence {
    pub prime: u64,
    /// Factor degrees modulo `prime`, largest first.
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisCertificate {
    pub poly: RatPoly,
    pub n: usize,
    pub irreducible: bool,
    pub evidence: Vec<PrimeEvidence>,
    pub long_cycle_prime: Option<u64>,
    pub transposition_prime: Option<u64>,
    pub verdict: GaloisVerdict,
    pub rationale: String,
}

fn is_long_cycle(d: &[usize], n: usize) -> bool {
    d == [n - 1, 1]
}

fn is_transposition(d: &[usize], n: usize) -> bool {
    d.len() == n - 1 && d[0] == 2 && d[1..].iter().all(|&k| k == 1)
}

/// Factor degrees of `prim` modulo `p` by full Cantor–Zassenhaus splitting,
/// independent of the distinct-degree count used during the sweep.
pub fn degrees_by_splitting(prim: &[BigInt], p: u64) -> Vec<usize> {
    let f = FpPoly::from_integers(p, prim).monic();
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ 0x5eed);
    let mut d: Vec<usize> = if p == 2 {
        brute_force_degrees(&f)
    } else {
        f.factor_squarefree(&mut rng).iter().map(|g| g.degree().expect("nonzero")).collect()
    };
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

// trial division by every monic polynomial, degree by degree; p = 2 only
fn brute_force_degrees(f: &FpPoly) -> Vec<usize> {
    let p = f.modulus();
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while f.degree().is_some_and(|k| k > 0) {
        if 2 * d > f.degree().expect("nonzero") {
            out.push(f.degree().expect("nonzero"));
            break;
        }
        let mut found = false;
        for code in 0..p.pow(d as u32) {
            let mut c: Vec<u64> = (0..d).map(|k| (code / p.pow(k as u32)) % p).collect();
            c.push(1);
            let g = FpPoly::new(p, c);
            let (q, r) = f.divrem(&g);
            if r.is_zero() {
                out.push(d);
                f = q;
                found = true;
                break;
            }
        }
        if !found {
            d += 1;
        }
    }
    out
}

pub fn galois_sn_certificate(p: &RatPoly, prime_bound: u64) -> Result<GaloisCertificate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.degree().expect("nonzero");
    if n < 2 {
        return Err(Error::DegreeOutOfRange(format!("degree {n} < 2")));
    }
    if !is_squarefree(p) {
        return Err(Error::NotSquarefree);
    }
    let (_, prim) = p.primitive_integer();
    let fac = factor_rational(p)?;
    let mut cert = GaloisCertificate {
        poly: p.clone(),
        n,
        irreducible: fac.is_irreducible(),
        evidence: Vec::new(),
        long_cycle_prime: None,
        transposition_prime: None,
        verdict: GaloisVerdict::Inconclusive,
        rationale: String::new(),
    };
    if !cert.irreducible {
        cert.verdict = GaloisVerdict::Refuted;
        cert.rationale = format!(
            "reducible over Q with factor degrees {:?}, so the group is not transitive",
            fac.factor_degrees()
        );
        return Ok(cert);
    }
    if n == 2 {
        cert.verdict = GaloisVerdict::ProvenSn;
        cert.rationale = "irreducible quadratic: the group is transitive of order 2".into();
        return Ok(cert);
    }
    let disc = discriminant(&RatPoly::from_integers(&prim))?.to_integer();
    let bad = &disc * prim.last().expect("nonzero");
    for q in (2..prime_bound).filter(|&q| is_prime(q)) {
        if (&bad % BigInt::from(q)).is_zero() {
            continue;
        }
        let degrees = FpPoly::from_integers(q, &prim).monic().degree_multiset();
        let long = is_long_cycle(&degrees, n);
        let trans = is_transposition(&degrees, n);
        let useful = (long && cert.long_cycle_prime.is_none()) || (trans && cert.transposition_prime.is_none());
        if long && cert.long_cycle_prime.is_none() {
            cert.long_cycle_prime = Some(q);
        }
        if trans && cert.transposition_prime.is_none() {
            cert.transposition_prime = Some(q);
        }
        cert.evidence.push(PrimeEvidence { prime: q, degrees });
        if useful && cert.long_cycle_prime.is_some() && cert.transposition_prime.is_some() {
            break;
        }
    }
    match (cert.long_cycle_prime, cert.transposition_prime) {
        (Some(a), Some(b)) => {
            cert.verdict = GaloisVerdict::ProvenSn;
            cert.rationale = format!(
                "irreducible over Q; an ({}, 1) cycle type mod {a} and a transposition mod {b}; \
                 a doubly transitive group containing a transposition is S_{n}",
                n - 1,
                b = b
            );
        }
        _ => {
            cert.rationale = format!(
                "irreducible over Q, but no prime below {prime_bound} gave both an ({}, 1) cycle type and a transposition",
                n - 1
            );
        }
    }
    Ok(cert)
}

impl GaloisCertificate {
    /// Recomputes every evidence line by independent mod-p factorization and
    /// checks that the verdict follows from the recorded facts.
    pub fn recheck(&self) -> bool {
        let (_, prim) = self.poly.primitive_integer();
        let lines_ok = self
            .evidence
            .iter()
            .all(|e| degrees_by_splitting(&prim, e.prime) == e.degrees);
        let find = |q: Option<u64>, pred: &dyn Fn(&[usize]) -> bool| {
            q.is_some_and(|q| self.evidence.iter().any(|e| e.prime == q && pred(&e.degrees)))
        };
        let verdict_ok = match self.verdict {
            GaloisVerdict::ProvenSn => {
                self.irreducible
                    && (self.n == 2
                        || (find(self.long_cycle_prime, &|d| is_long_cycle(d, self.n))
                            && find(self.transposition_prime, &|d| is_transposition(d, self.n))))
            }
            GaloisVerdict::Refuted => !self.irreducible,
            GaloisVerdict::Inconclusive => self.irreducible,
        };
        lines_ok && verdict_ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_is_symmetric() {
        let c = galois_sn_certificate(&RatPoly::from_i64(&[1, -1, 0, 0, 1]), 200).unwrap();
        assert_eq!(c.verdict, GaloisVerdict::ProvenSn);
        assert!(c.long_cycle_prime.is_some() && c.transposition_prime.is_some());
        assert!(c.recheck());
        let primes: Vec<u64> = c.evidence.iter().map(|e| e.prime).collect();
        assert!(primes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn quadratic_needs_only_irreducibility() {
        let c = galois_sn_certificate(&RatPoly::from_i64(&[1, 0, 1]), 10).unwrap();
        assert_eq!(c.verdict, GaloisVerdict::ProvenSn);
    }

    #[test]
    fn cyclotomic_quartic_is_inconclusive() {
        let c = galois_sn_certificate(&RatPoly::from_i64(&[1, 0, 0, 0, 1]), 1000).unwrap();
        assert_eq!(c.verdict, GaloisVerdict::Inconclusive);
        assert!(c.evidence.iter().all(|e| e.degrees.iter().all(|&d| d <= 2) && e.degrees.iter().all(|&d| d == e.degrees[0])));
        assert!(c.recheck());
    }

    #[test]
    fn reducible_is_refuted_and_repeated_roots_rejected() {
        let c = galois_sn_certificate(&RatPoly::from_i64(&[-1, 0, 1]), 50).unwrap();
        assert_eq!(c.verdict, GaloisVerdict::Refuted);
        assert!(matches!(
            galois_sn_certificate(&RatPoly::from_i64(&[1, 2, 1]), 50),
            Err(Error::NotSquarefree)
        ));
    }

    #[test]
    fn brute_force_matches_splitting() {
        let prim: Vec<BigInt> = [1, -1, 0, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        for q in [3u64, 5, 7, 11, 13] {
            let f = FpPoly::from_integers(q, &prim);
            let mut b = brute_force_degrees(&f);
            b.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(b, degrees_by_splitting(&prim, q), "prime {q}");
        }
    }
}
