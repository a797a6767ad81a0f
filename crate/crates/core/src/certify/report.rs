use serde::{Deserialize, Serialize};

use crate::blowup::{assemble_weight1_example, assemble_weight2_example, product_with_p1, BlowupPoints, ExampleRing, Relation, Variant};
use crate::error::{Error, Result};
use crate::hodge::certificate::{hodge_class_certificate, EndoVerdict, HodgeEndoCertificate};
use crate::linalg::io::MatrixDoc;
use crate::linalg::RatMatrix;

use super::endo::{check_hypo_endo, endo_verdict};
use super::hypothesis::{check_hypothesis_weight1, check_hypothesis_weight2, item_status, HypothesisItem, ItemStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    #[serde(rename = "NonProjective-Certified")]
    NonProjectiveCertified,
    Failed,
    Partial,
}

impl Conclusion {
    pub fn exit_code(self) -> i32 {
        match self {
            Conclusion::NonProjectiveCertified => 0,
            Conclusion::Failed => 1,
            Conclusion::Partial => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub prime_bound: u64,
    pub samples: usize,
    pub seed: u64,
    /// Accept the sampled item of the weight-two hypothesis as passing.
    pub acknowledge_sampled: bool,
    pub times_p1: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            prime_bound: 2000,
            samples: 1000,
            seed: 0,
            acknowledge_sampled: false,
            times_p1: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportInput {
    pub phi: MatrixDoc,
    pub variant: Variant,
    pub n: usize,
    pub times_p1: bool,
    pub options: CertifyOptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReasoningStep {
    pub id: String,
    pub statement: String,
    /// Ids of items, checks or facts the step relies on.
    pub uses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub anchor: String,
    pub quote: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub input: ReportInput,
    pub endo_facts: HodgeEndoCertificate,
    pub hodge_class: HodgeEndoCertificate,
    pub betti_numbers: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub blowup_points: Option<BlowupPoints>,
    pub relations: Vec<Relation>,
    pub hypothesis_items: Vec<HypothesisItem>,
    pub reasoning: Vec<ReasoningStep>,
    /// Set when `Φ` violates a precondition of the ring construction.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub assembly_error: Option<String>,
    pub conclusion: Conclusion,
    pub conclusion_reasons: Vec<String>,
    pub citations: Vec<Citation>,
}

fn cite(anchor: &str, quote: &str) -> Citation {
    Citation {
        anchor: anchor.into(),
        quote: quote.into(),
    }
}

fn citations(variant: Variant, times_p1: bool) -> Vec<Citation> {
    let mut out = vec![
        cite("theorem", "cannot be realized as the rational cohomology ring of a projective manifold"),
        cite(
            "endomorphism hypothesis",
            "whose Galois group is the symmetric group (see [Ch.14.6]) and which clearly has no real eigenvalues",
        ),
        cite("no polarization", "does not admit a polarization"),
        cite("Deligne lemma", "an algebraic subset which is invariant"),
        cite("hyperplane class", "any hyperplane class [ω] is contained in P"),
        cite("rational homotopy", "Both statements are equivalent due to [DGMS]"),
    ];
    if variant.is_weight_one() {
        out.push(cite("weight-one guard", "The assumption n ≥ 2 is needed"));
        out.push(cite(
            "weight-one proposition",
            "Then H* cannot be realized as the rational cohomology ring H*(X,ℚ) of a projective manifold X.",
        ));
    } else {
        out.push(cite("weight-two guard", "Let n ≥ 3."));
        out.push(cite("weight-two corollary", "is not realized by any projective manifold."));
    }
    if times_p1 {
        out.push(cite("odd dimension", "but this time R = H²(ℙ¹,ℚ)"));
    }
    out
}

fn step(id: &str, statement: &str, uses: &[&str]) -> ReasoningStep {
    ReasoningStep {
        id: id.into(),
        statement: statement.into(),
        uses: uses.iter().map(|s| s.to_string()).collect(),
    }
}

fn reasoning(variant: Variant) -> Vec<ReasoningStep> {
    let mut out = vec![step(
        "assume",
        "Suppose a projective manifold X realizes H*; every H^k carries a Hodge structure of weight k and cup products are morphisms of Hodge structures.",
        &[],
    )];
    if variant.is_weight_one() {
        out.extend([
            step(
                "deligne",
                "P = P_{4n-2}(H¹) is a sub-Hodge structure; the lines ℂe_i are components of Z, so each ē_i ∈ P/P₁ is of type (1,1).",
                &["ii", "iii", "components"],
            ),
            step(
                "substructures",
                "The kernels A⊕0, 0⊕A, Δ and Γ_Φ of ·e_i are sub-Hodge structures of H¹.",
                &["i", "iv"],
            ),
            step(
                "endomorphism",
                "Through the isomorphisms A ≅ A⊕0 ≅ Δ ≅ 0⊕A the graph Γ_Φ makes Φ an endomorphism of the Hodge structure on A.",
                &["iv", "endo:one-not-eigenvalue"],
            ),
            step(
                "no-polarization",
                "Φ has no real eigenvalue and ∧²Φ, ∧²Φᵗ have irreducible characteristic polynomials, so no Φ-compatible weight-one structure is polarizable.",
                &["endo:no-real-roots", "hodge-class:wedge2-charpoly-irreducible", "hodge-class:transpose-wedge2-charpoly-irreducible"],
            ),
            step(
                "contradiction",
                "A hyperplane class restricts to a polarization of H¹ ≅ A⊕A and hence of A; contradiction, so X is not projective.",
                &["deligne", "substructures", "endomorphism", "no-polarization"],
            ),
        ]);
    } else {
        out.extend([
            step(
                "deligne",
                "P = P_{2n-1}(B₁⊕B₂) is a sub-Hodge structure and the lines ℂe₁, ℂe₂ are components of Z, so e₁, e₂ are Hodge classes; the square-zero cone identifies B₁ and B₂ as sub-Hodge structures.",
                &["i", "ii", "iii", "iv", "components"],
            ),
            step(
                "substructures",
                "Ker(·e₁) = Δ and Ker(·e₂) = Γ_{∧²Φ} are sub-Hodge structures of B₁⊕B₂, and Δ ∩ Γ_{∧²Φ} = 0.",
                &["v", "endo:one-not-eigenvalue-of-wedge2"],
            ),
            step(
                "endomorphism",
                "∧²Φ is an endomorphism of the induced Hodge structure of weight two on B ≅ ∧²A.",
                &["v"],
            ),
            step(
                "no-polarization",
                "The characteristic polynomial of ∧²Φ is squarefree and irreducible, so ∧²A has no nonzero rational Hodge class and admits no polarization.",
                &["endo:wedge2-charpoly-squarefree", "hodge-class:wedge2-charpoly-irreducible"],
            ),
            step(
                "contradiction",
                "The primitive part of H² for a hyperplane class lies in P, so the form q restricted to B₁ would polarize it; contradiction, so X is not projective.",
                &["deligne", "substructures", "endomorphism", "no-polarization"],
            ),
        ]);
    }
    out
}

/// Conclusion and reasons implied by the recorded flags. Stored statuses and
/// verdicts are ignored so that a flipped flag cannot hide behind them.
pub fn derive_conclusion(report: &CertificateReport) -> (Conclusion, Vec<String>) {
    let mut reasons = Vec::new();
    let mut failed = false;
    let mut partial = false;

    match endo_verdict(&report.endo_facts.facts) {
        EndoVerdict::Proven => {}
        EndoVerdict::ProvenConsequences => {
            partial = true;
            reasons.push("endomorphism: only the consequences are proven, S_2n is not certified".into());
        }
        _ => {
            failed = true;
            reasons.push("endomorphism conditions fail".into());
        }
    }
    if report.hodge_class.facts.is_empty() || report.hodge_class.facts.iter().any(|f| !f.holds) {
        failed = true;
        reasons.push("Hodge-class certificate fails".into());
    }
    if let Some(e) = &report.assembly_error {
        failed = true;
        reasons.push(format!("ring cannot be assembled: {e}"));
    }
    let required: &[&str] = if report.input.variant.is_weight_one() {
        &["i", "ii", "iii", "iv", "components"]
    } else {
        &["i", "ii", "iii", "iv", "v", "components"]
    };
    for id in required {
        if !report.hypothesis_items.iter().any(|it| it.id == *id) {
            failed = true;
            reasons.push(format!("item {id} missing"));
        }
    }
    for item in &report.hypothesis_items {
        match item_status(&item.checks) {
            ItemStatus::Pass if !item.checks.is_empty() => {}
            ItemStatus::Pass => {
                failed = true;
                reasons.push(format!("item {} has no checks", item.id));
            }
            ItemStatus::Fail => {
                failed = true;
                for c in item.checks.iter().filter(|c| !c.holds) {
                    reasons.push(format!("{} fails: {}", c.id, c.detail));
                }
            }
            ItemStatus::SampledPass => {
                let sampled_item = !report.input.variant.is_weight_one() && item.id == "iii";
                if !sampled_item {
                    failed = true;
                    reasons.push(format!("item {} relies on sampling", item.id));
                } else if !report.input.options.acknowledge_sampled {
                    partial = true;
                    reasons.push("item iii is sampled-pass and was not acknowledged".into());
                }
            }
        }
    }
    let conclusion = if failed {
        Conclusion::Failed
    } else if partial {
        Conclusion::Partial
    } else {
        Conclusion::NonProjectiveCertified
    };
    (conclusion, reasons)
}

fn guard_size(phi: &RatMatrix, variant: Variant) -> Result<usize> {
    if !phi.is_square() {
        return Err(Error::NotSquare {
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    let size = phi.rows();
    if size % 2 == 1 {
        return Err(Error::TooSmall(format!("size {size} is odd; Φ acts on A = ℚ^(2n)")));
    }
    let n = size / 2;
    if variant.is_weight_one() && n < 2 {
        return Err(Error::TooSmall(format!("size {size} < 4: The assumption n ≥ 2 is needed")));
    }
    if !variant.is_weight_one() && n < 3 {
        return Err(Error::TooSmall(format!("n = {n}: Let n ≥ 3 (n >= 3 is required)")));
    }
    Ok(n)
}

/// Builds the model ring named by `variant`.
pub fn build_example(phi: &RatMatrix, variant: Variant, times_p1: bool) -> Result<ExampleRing> {
    guard_size(phi, variant)?;
    let ring = match variant {
        Variant::Weight1 => assemble_weight1_example(phi, false)?,
        Variant::Weight1NoP1 => assemble_weight1_example(phi, true)?,
        Variant::Weight2 => assemble_weight2_example(phi)?,
    };
    if times_p1 {
        product_with_p1(&ring)
    } else {
        Ok(ring)
    }
}

pub fn certify_nonprojective(phi: &RatMatrix, variant: Variant, options: &CertifyOptions) -> Result<CertificateReport> {
    let n = guard_size(phi, variant)?;
    match build_example(phi, variant, options.times_p1) {
        Ok(ring) => certify_ring(phi, &ring, options),
        Err(e @ (Error::Precondition(_) | Error::NotTransverse(_))) => {
            let mut report = assemble_report(phi, n, variant, options, None, Vec::new())?;
            report.assembly_error = Some(e.to_string());
            finish(report)
        }
        Err(e) => Err(e),
    }
}

fn assemble_report(
    phi: &RatMatrix,
    n: usize,
    variant: Variant,
    options: &CertifyOptions,
    ring: Option<&ExampleRing>,
    hypothesis_items: Vec<HypothesisItem>,
) -> Result<CertificateReport> {
    let times_p1 = ring.map_or(options.times_p1, |r| r.times_p1);
    Ok(CertificateReport {
        input: ReportInput {
            phi: MatrixDoc::from(phi),
            variant,
            n,
            times_p1,
            options: CertifyOptions {
                times_p1,
                ..options.clone()
            },
        },
        endo_facts: check_hypo_endo(phi, options.prime_bound)?,
        hodge_class: hodge_class_certificate(phi)?,
        betti_numbers: ring.map(ExampleRing::betti_numbers).unwrap_or_default(),
        blowup_points: ring.and_then(|r| r.points.clone()),
        relations: ring.map(|r| r.relations.clone()).unwrap_or_default(),
        hypothesis_items,
        reasoning: reasoning(variant),
        assembly_error: None,
        conclusion: Conclusion::Failed,
        conclusion_reasons: Vec::new(),
        citations: citations(variant, times_p1),
    })
}

fn finish(mut report: CertificateReport) -> Result<CertificateReport> {
    let (conclusion, reasons) = derive_conclusion(&report);
    report.conclusion = conclusion;
    report.conclusion_reasons = reasons;
    Ok(report)
}

/// Certifies a ring that has already been built. The ring is taken as given;
/// [`CertificateReport::recheck`] compares against a freshly built one.
pub fn certify_ring(phi: &RatMatrix, ring: &ExampleRing, options: &CertifyOptions) -> Result<CertificateReport> {
    let n = guard_size(phi, ring.variant)?;
    if ring.n != n {
        return Err(Error::DimensionMismatch(format!("ring has n = {} but Φ has n = {n}", ring.n)));
    }
    let hypothesis_items = if ring.variant.is_weight_one() {
        check_hypothesis_weight1(ring)?
    } else {
        check_hypothesis_weight2(ring, options.samples, options.seed)?
    };
    finish(assemble_report(phi, n, ring.variant, options, Some(ring), hypothesis_items)?)
}

impl CertificateReport {
    /// The stored conclusion agrees with the recorded flags, and every item
    /// status agrees with its checks.
    pub fn validate(&self) -> bool {
        let (c, reasons) = derive_conclusion(self);
        c == self.conclusion
            && reasons == self.conclusion_reasons
            && self.hypothesis_items.iter().all(|it| it.status == item_status(&it.checks))
    }

    /// Rebuilds the ring from the recorded input and re-evaluates every fact
    /// and check in isolation.
    pub fn recheck(&self) -> Result<bool> {
        let phi = RatMatrix::try_from(&self.input.phi)?;
        if self.assembly_error.is_some() {
            let fresh = certify_nonprojective(&phi, self.input.variant, &self.input.options)?;
            return Ok(fresh.assembly_error == self.assembly_error && self.endo_facts.recheck() && self.validate());
        }
        let ring = build_example(&phi, self.input.variant, self.input.times_p1)?;
        if ring.betti_numbers() != self.betti_numbers {
            return Ok(false);
        }
        let checks_ok = self.hypothesis_items.iter().flat_map(|it| &it.checks).all(|c| c.recheck(&ring));
        Ok(checks_ok && self.endo_facts.recheck() && self.hodge_class.recheck() && self.validate())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn exit_code(&self) -> i32 {
        self.conclusion.exit_code()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi4() -> RatMatrix {
        RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]])
    }

    #[test]
    fn weight1_certifies() {
        let r = certify_nonprojective(&phi4(), Variant::Weight1, &CertifyOptions::default()).unwrap();
        assert_eq!(r.conclusion, Conclusion::NonProjectiveCertified, "{:?}", r.conclusion_reasons);
        assert!(r.validate());
        assert!(r.recheck().unwrap());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn guards_quote_the_assumptions() {
        let phi2 = RatMatrix::from_i64(&[&[0, -1], &[1, 1]]);
        let e = certify_nonprojective(&phi2, Variant::Weight1, &CertifyOptions::default()).unwrap_err();
        assert!(e.to_string().contains("The assumption n ≥ 2 is needed"));
        let e = certify_nonprojective(&phi4(), Variant::Weight2, &CertifyOptions::default()).unwrap_err();
        assert!(e.to_string().contains("Let n ≥ 3"));
    }

    #[test]
    fn unassemblable_phi_gives_a_failed_report() {
        let r = certify_nonprojective(&RatMatrix::identity(4), Variant::Weight1, &CertifyOptions::default()).unwrap();
        assert_eq!(r.conclusion, Conclusion::Failed);
        assert!(r.assembly_error.as_deref().unwrap().contains("eigenvalue"));
        assert!(r.validate());
        assert!(r.recheck().unwrap());
    }

    #[test]
    fn json_round_trip_is_stable() {
        let r = certify_nonprojective(&phi4(), Variant::Weight1NoP1, &CertifyOptions::default()).unwrap();
        let text = r.to_json().unwrap();
        let back = CertificateReport::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), text);
    }
}
