use crate::error::{Error, Result};
use crate::hodge::certificate::{Claim, EndoVerdict, Fact, HodgeEndoCertificate};
use crate::linalg::io::MatrixDoc;
use crate::linalg::RatMatrix;

/// Facts needed by the weight-one and weight-two propositions. Their
/// conjunction gives the `Proven-Consequences` level.
pub const CONSEQUENCE_CLAIMS: [Claim; 6] = [
    Claim::NoRealRoots,
    Claim::Wedge2CharpolySquarefree,
    Claim::Wedge2CharpolyIrreducible,
    Claim::TransposeWedge2CharpolyIrreducible,
    Claim::OneNotEigenvalue,
    Claim::OneNotEigenvalueOfWedge2,
];

/// Verdict implied by the recorded `holds` flags alone.
pub fn endo_verdict(facts: &[Fact]) -> EndoVerdict {
    let holds = |c: Claim| facts.iter().any(|f| f.claim == c && f.holds);
    let consequences = CONSEQUENCE_CLAIMS.iter().all(|&c| holds(c));
    if !consequences {
        EndoVerdict::Failed
    } else if holds(Claim::CharpolySquarefree) && holds(Claim::CharpolyIrreducible) && holds(Claim::SnVerdict) {
        EndoVerdict::Proven
    } else {
        EndoVerdict::ProvenConsequences
    }
}

/// Checks the conditions on `Φ`: no real eigenvalue and Galois group `S_{2n}`,
/// together with the consequences used downstream.
pub fn check_hypo_endo(phi: &RatMatrix, prime_bound: u64) -> Result<HodgeEndoCertificate> {
    if !phi.is_square() {
        return Err(Error::NotSquare {
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    if phi.rows() < 4 || phi.rows() % 2 == 1 {
        return Err(Error::TooSmall(format!("size {}: an even size 2n >= 4 is required", phi.rows())));
    }
    let mut facts = Vec::new();
    for claim in [Claim::NoRealRoots, Claim::CharpolySquarefree, Claim::CharpolyIrreducible] {
        facts.push(Fact::evaluate(claim, phi, prime_bound)?);
    }
    let squarefree = facts[1].holds;
    if squarefree {
        facts.push(Fact::evaluate(Claim::SnVerdict, phi, prime_bound)?);
    }
    for claim in &CONSEQUENCE_CLAIMS[1..] {
        facts.push(Fact::evaluate(*claim, phi, prime_bound)?);
    }

    let mut reasons = Vec::new();
    let failed = |c: Claim| facts.iter().any(|f| f.claim == c && !f.holds);
    if failed(Claim::NoRealRoots) {
        reasons.push("real eigenvalues".to_string());
    }
    if !squarefree {
        reasons.push("not squarefree".to_string());
    } else if failed(Claim::CharpolyIrreducible) {
        reasons.push("charpoly reducible".to_string());
    }
    if failed(Claim::SnVerdict) {
        reasons.push("Galois group not certified as S_2n".to_string());
    }
    if failed(Claim::Wedge2CharpolySquarefree) {
        reasons.push("wedge2 charpoly not squarefree".to_string());
    }
    if failed(Claim::Wedge2CharpolyIrreducible) || failed(Claim::TransposeWedge2CharpolyIrreducible) {
        reasons.push("wedge2 charpoly reducible".to_string());
    }
    if failed(Claim::OneNotEigenvalue) {
        reasons.push("1 is an eigenvalue".to_string());
    }
    if failed(Claim::OneNotEigenvalueOfWedge2) {
        reasons.push("1 is an eigenvalue of wedge2".to_string());
    }

    let verdict = endo_verdict(&facts);
    let conclusion = match verdict {
        EndoVerdict::Proven => "no real eigenvalues and Galois group S_2n: every implemented consequence holds",
        EndoVerdict::ProvenConsequences => {
            "the consequences used by the propositions hold exactly; the S_2n condition itself is not certified"
        }
        _ => "the endomorphism conditions fail",
    }
    .to_string();
    Ok(HodgeEndoCertificate {
        phi: MatrixDoc::from(phi),
        facts,
        verdict,
        reasons,
        conclusion,
    })
}
