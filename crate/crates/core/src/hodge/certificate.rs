//! Exact facts about an endomorphism `Φ` and the certificate that the
//! weight-two structure on `∧²A` has no nontrivial Hodge classes.
//!
//! Every [`Fact`] records the polynomial it was computed from and the output
//! of the exact operation that decided it, so it can be rechecked alone.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::io::MatrixDoc;
use crate::linalg::rational::serde_str;
use crate::linalg::{sturm_real_root_count, RatMatrix, Rational};
use crate::multilinear::wedge_power_map;
use crate::poly::{factor_rational, galois_sn_certificate, is_squarefree, FactorizationResult, GaloisCertificate, GaloisVerdict, RatPoly};

/// Which polynomial a fact is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subject {
    /// `charpoly(Φ)`
    Phi,
    /// `charpoly(∧²Φ)`
    Wedge2,
    /// `charpoly(∧²Φᵗ)`, the induced map on `∧²A*`
    Wedge2Transpose,
}

impl Subject {
    pub fn polynomial(self, phi: &RatMatrix) -> Result<RatPoly> {
        match self {
            Subject::Phi => phi.charpoly(),
            Subject::Wedge2 => wedge_power_map(phi, 2)?.charpoly(),
            Subject::Wedge2Transpose => wedge_power_map(&phi.transpose(), 2)?.charpoly(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    NoRealRoots,
    CharpolySquarefree,
    CharpolyIrreducible,
    SnVerdict,
    Wedge2CharpolySquarefree,
    Wedge2CharpolyIrreducible,
    TransposeWedge2CharpolyIrreducible,
    OneNotEigenvalue,
    OneNotEigenvalueOfWedge2,
}

impl Claim {
    pub fn subject(self) -> Subject {
        match self {
            Claim::NoRealRoots | Claim::CharpolySquarefree | Claim::CharpolyIrreducible | Claim::SnVerdict | Claim::OneNotEigenvalue => {
                Subject::Phi
            }
            Claim::Wedge2CharpolySquarefree | Claim::Wedge2CharpolyIrreducible | Claim::OneNotEigenvalueOfWedge2 => Subject::Wedge2,
            Claim::TransposeWedge2CharpolyIrreducible => Subject::Wedge2Transpose,
        }
    }

    /// The exact operation that decides the claim.
    pub fn operation(self) -> &'static str {
        match self {
            Claim::NoRealRoots => "sturm_real_root_count",
            Claim::CharpolySquarefree | Claim::Wedge2CharpolySquarefree => "squarefree_part",
            Claim::CharpolyIrreducible | Claim::Wedge2CharpolyIrreducible | Claim::TransposeWedge2CharpolyIrreducible => "factor_rational",
            Claim::SnVerdict => "galois_sn_certificate",
            Claim::OneNotEigenvalue | Claim::OneNotEigenvalueOfWedge2 => "charpoly evaluation at 1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Evidence {
    SturmCount {
        poly: RatPoly,
        real_roots: usize,
    },
    Squarefree {
        poly: RatPoly,
        gcd_with_derivative: RatPoly,
    },
    Factorization {
        poly: RatPoly,
        factorization: FactorizationResult,
    },
    Evaluation {
        poly: RatPoly,
        #[serde(with = "serde_str")]
        value_at_one: Rational,
    },
    Galois {
        certificate: GaloisCertificate,
    },
}

impl Evidence {
    pub fn poly(&self) -> &RatPoly {
        match self {
            Evidence::SturmCount { poly, .. }
            | Evidence::Squarefree { poly, .. }
            | Evidence::Factorization { poly, .. }
            | Evidence::Evaluation { poly, .. } => poly,
            Evidence::Galois { certificate } => &certificate.poly,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub claim: Claim,
    pub holds: bool,
    pub operation: String,
    pub evidence: Evidence,
}

fn decide(claim: Claim, poly: RatPoly, prime_bound: u64) -> Result<Fact> {
    let (holds, evidence) = match claim {
        Claim::NoRealRoots => {
            let real_roots = sturm_real_root_count(&poly)?;
            (real_roots == 0, Evidence::SturmCount { poly, real_roots })
        }
        Claim::CharpolySquarefree | Claim::Wedge2CharpolySquarefree => {
            let g = poly.gcd(&poly.derivative());
            (g.is_constant() && !g.is_zero(), Evidence::Squarefree { poly, gcd_with_derivative: g })
        }
        Claim::CharpolyIrreducible | Claim::Wedge2CharpolyIrreducible | Claim::TransposeWedge2CharpolyIrreducible => {
            let f = factor_rational(&poly)?;
            (f.is_irreducible(), Evidence::Factorization { poly, factorization: f })
        }
        Claim::OneNotEigenvalue | Claim::OneNotEigenvalueOfWedge2 => {
            let v = poly.eval(&Rational::one());
            (!v.is_zero(), Evidence::Evaluation { poly, value_at_one: v })
        }
        Claim::SnVerdict => {
            if !is_squarefree(&poly) {
                return Err(Error::NotSquarefree);
            }
            let c = galois_sn_certificate(&poly, prime_bound)?;
            (c.verdict == GaloisVerdict::ProvenSn, Evidence::Galois { certificate: c })
        }
    };
    Ok(Fact {
        claim,
        holds,
        operation: claim.operation().to_string(),
        evidence,
    })
}

impl Fact {
    /// Decides `claim` for `phi`.
    pub fn evaluate(claim: Claim, phi: &RatMatrix, prime_bound: u64) -> Result<Fact> {
        decide(claim, claim.subject().polynomial(phi)?, prime_bound)
    }

    /// Recomputes the fact from `phi` with its cited operation and compares
    /// against what was recorded.
    pub fn recheck(&self, phi: &RatMatrix) -> bool {
        let Ok(poly) = self.claim.subject().polynomial(phi) else {
            return false;
        };
        if &poly != self.evidence.poly() {
            return false;
        }
        if let Evidence::Galois { certificate } = &self.evidence {
            return certificate.recheck() && self.holds == (certificate.verdict == GaloisVerdict::ProvenSn);
        }
        match decide(self.claim, poly, 0) {
            Ok(fresh) => fresh == *self,
            Err(_) => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndoVerdict {
    Proven,
    #[serde(rename = "Proven-Consequences")]
    ProvenConsequences,
    #[serde(rename = "Not-proven")]
    NotProven,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeEndoCertificate {
    pub phi: MatrixDoc,
    pub facts: Vec<Fact>,
    pub verdict: EndoVerdict,
    /// Short failure reasons such as `"real eigenvalues"`.
    pub reasons: Vec<String>,
    pub conclusion: String,
}

impl HodgeEndoCertificate {
    pub fn fact(&self, claim: Claim) -> Option<&Fact> {
        self.facts.iter().find(|f| f.claim == claim)
    }

    pub fn holds(&self, claim: Claim) -> bool {
        self.fact(claim).is_some_and(|f| f.holds)
    }

    /// Rechecks every fact against the recorded matrix.
    pub fn recheck(&self) -> bool {
        match RatMatrix::try_from(&self.phi) {
            Ok(phi) => self.facts.iter().all(|f| f.recheck(&phi)),
            Err(_) => false,
        }
    }
}

/// `∧²Φ` and `∧²Φᵗ` have irreducible characteristic polynomials, so neither
/// has a nontrivial rational invariant subspace; a `Φ`-compatible weight-one
/// structure with `n ≥ 2` then has `A₂^{2,0} ≠ 0`, and `A₂^{1,1} ∩ ∧²A` is
/// an invariant rational subspace, hence zero.
pub fn hodge_class_certificate(phi: &RatMatrix) -> Result<HodgeEndoCertificate> {
    if !phi.is_square() {
        return Err(Error::NotSquare {
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    if phi.rows() < 4 || !phi.rows().is_multiple_of(2) {
        return Err(Error::TooSmall(format!(
            "size {} but 2n >= 4 is required: the assumption n >= 2 is needed to have A2^(2,0) != 0",
            phi.rows()
        )));
    }
    let facts = vec![
        Fact::evaluate(Claim::Wedge2CharpolyIrreducible, phi, 0)?,
        Fact::evaluate(Claim::TransposeWedge2CharpolyIrreducible, phi, 0)?,
    ];
    let proven = facts.iter().all(|f| f.holds);
    let (verdict, conclusion, reasons) = if proven {
        (
            EndoVerdict::Proven,
            "charpoly of the wedge-square is irreducible over Q: no nontrivial invariant rational subspace of wedge^2 A, \
             so every Phi-compatible weight-two structure on wedge^2 A with A^(2,0) != 0 has no nonzero Hodge classes; \
             the same holds on wedge^2 A* for Phi*, so no compatible weight-one structure admits a polarization"
                .to_string(),
            Vec::new(),
        )
    } else {
        (
            EndoVerdict::NotProven,
            "charpoly of the wedge-square is reducible over Q: invariant rational subspaces may carry Hodge classes".to_string(),
            vec!["wedge2 charpoly reducible".to_string()],
        )
    };
    Ok(HodgeEndoCertificate {
        phi: MatrixDoc::from(phi),
        facts,
        verdict,
        reasons,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi4() -> RatMatrix {
        RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]])
    }

    #[test]
    fn quartic_certificate() {
        let c = hodge_class_certificate(&phi4()).unwrap();
        assert_eq!(c.verdict, EndoVerdict::Proven);
        assert!(c.recheck());
    }

    #[test]
    fn split_examples_are_not_proven() {
        let r = RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let c = hodge_class_certificate(&RatMatrix::block_diag(&[&r, &r])).unwrap();
        assert_eq!(c.verdict, EndoVerdict::NotProven);
        let id = hodge_class_certificate(&RatMatrix::identity(4)).unwrap();
        assert_eq!(id.verdict, EndoVerdict::NotProven);
        assert!(matches!(hodge_class_certificate(&r), Err(Error::TooSmall(_))));
    }

    #[test]
    fn tampered_fact_fails_recheck() {
        let mut c = hodge_class_certificate(&phi4()).unwrap();
        c.facts[0].holds = false;
        assert!(!c.recheck());
        let f = Fact::evaluate(Claim::OneNotEigenvalue, &phi4(), 0).unwrap();
        assert!(f.holds && f.recheck(&phi4()));
        assert!(!f.recheck(&RatMatrix::identity(4)));
    }
}
