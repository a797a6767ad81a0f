//! The ring hypotheses as lists of [`RingClaim`]s, grouped by item.

use serde::{Deserialize, Serialize};

use crate::blowup::{ExampleRing, Variant};
use crate::error::{Error, Result};

use super::claims::{ClassRef, RingClaim, Space};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ItemStatus {
    Pass,
    Fail,
    SampledPass,
}

/// One evaluated claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub claim: RingClaim,
    pub operation: String,
    pub exact: bool,
    pub holds: bool,
    pub detail: String,
}

impl Check {
    fn run(id: &str, claim: RingClaim, ring: &ExampleRing) -> Result<Self> {
        let out = claim.evaluate(ring)?;
        Ok(Self {
            id: id.into(),
            operation: claim.operation().into(),
            exact: claim.exact(),
            claim,
            holds: out.holds,
            detail: out.detail,
        })
    }

    /// Evaluates the claim again on `ring` and compares with the record.
    pub fn recheck(&self, ring: &ExampleRing) -> bool {
        match self.claim.evaluate(ring) {
            Ok(out) => {
                out.holds == self.holds
                    && out.detail == self.detail
                    && self.exact == self.claim.exact()
                    && self.operation == self.claim.operation()
            }
            Err(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisItem {
    pub id: String,
    pub statement: String,
    pub status: ItemStatus,
    pub checks: Vec<Check>,
}

impl HypothesisItem {
    fn new(id: &str, statement: &str, checks: Vec<Check>) -> Self {
        let status = item_status(&checks);
        Self {
            id: id.into(),
            statement: statement.into(),
            status,
            checks,
        }
    }
}

/// Status implied by the recorded checks.
pub fn item_status(checks: &[Check]) -> ItemStatus {
    if checks.iter().any(|c| !c.holds) {
        ItemStatus::Fail
    } else if checks.iter().any(|c| !c.exact) {
        ItemStatus::SampledPass
    } else {
        ItemStatus::Pass
    }
}

fn full(degree: usize) -> Space {
    Space::Full { degree }
}

fn class(name: &str) -> ClassRef {
    ClassRef::new(name)
}

pub fn check_hypothesis_weight1(ring: &ExampleRing) -> Result<Vec<HypothesisItem>> {
    if !ring.variant.is_weight_one() {
        return Err(Error::WrongVariant(format!("{} is not a weight-one ring", ring.variant_label())));
    }
    let n = ring.n;
    let p = Space::p(1, full(1), 4 * n - 2);
    let p1 = Space::p(1, full(1), 1);
    let mut h2_parts = vec![Space::marked(&["Wedge2"]), p.clone()];
    if ring.times_p1 {
        h2_parts.push(Space::marked(&["R"]));
    }
    let e_names = ["E1", "E2", "E3", "E4"];
    let kernels = ["A+0", "0+A", "Delta", "Gamma_Phi"];

    let item_i = vec![Check::run(
        "i.h1-decomposition",
        RingClaim::DirectSum {
            parts: vec![Space::marked(&["A+0"]), Space::marked(&["0+A"])],
            total: Some(full(1)),
        },
        ring,
    )?];
    let item_ii = vec![
        Check::run(
            "ii.p-equals-f-and-e",
            RingClaim::SubspaceEqual {
                left: p.clone(),
                right: Space::marked(&["F", "E1", "E2", "E3", "E4"]),
            },
            ring,
        )?,
        Check::run(
            "ii.h2-decomposition",
            RingClaim::DirectSum {
                parts: h2_parts,
                total: Some(full(2)),
            },
            ring,
        )?,
    ];
    let mut iii_parts = vec![p1.clone()];
    iii_parts.extend(e_names.iter().map(|e| Space::marked(&[e])));
    let item_iii = vec![
        Check::run(
            "iii.p1-equals-f",
            RingClaim::SubspaceEqual {
                left: p1,
                right: Space::marked(&["F"]),
            },
            ring,
        )?,
        Check::run(
            "iii.p-decomposition",
            RingClaim::DirectSum {
                parts: iii_parts,
                total: Some(p.clone()),
            },
            ring,
        )?,
    ];
    let mut item_iv = Vec::new();
    for (i, (e, k)) in e_names.iter().zip(kernels).enumerate() {
        item_iv.push(Check::run(
            &format!("iv.kernel-e{}", i + 1),
            RingClaim::KernelEqual {
                class: class(e),
                domain: full(1),
                expected: Space::marked(&[k]),
            },
            ring,
        )?);
    }
    item_iv.push(Check::run(
        "iv.kernels-pairwise-trivial",
        RingClaim::PairwiseIntersectionsTrivial {
            spaces: kernels.iter().map(|k| Space::marked(&[k])).collect(),
        },
        ring,
    )?);
    item_iv.push(Check::run(
        "iv.images-direct",
        RingClaim::ProductsDirect {
            terms: e_names.iter().map(|e| (Space::marked(&[e]), full(1))).collect(),
        },
        ring,
    )?);
    let components = vec![Check::run(
        "components.e-lines",
        RingClaim::ComponentCriterion {
            ell: 1,
            h: full(1),
            classes: e_names.iter().map(|e| class(e)).collect(),
            p,
        },
        ring,
    )?];

    Ok(vec![
        HypothesisItem::new("i", "A⊕A = H¹", item_i),
        HypothesisItem::new("ii", "H² = ∧²(A⊕A) ⊕ P ⊕ R with P = P_{4n-2}", item_ii),
        HypothesisItem::new("iii", "P = P₁ ⊕ ⊕ e_i ℚ", item_iii),
        HypothesisItem::new(
            "iv",
            "Ker(·e_i : H¹ → H³) = A⊕0, 0⊕A, Δ, Γ_Φ and Σ Im(·e_i) is direct",
            item_iv,
        ),
        HypothesisItem::new("components", "the lines ℂe_i are irreducible components of Z̄", components),
    ])
}

pub fn check_hypothesis_weight2(ring: &ExampleRing, samples: usize, seed: u64) -> Result<Vec<HypothesisItem>> {
    if ring.variant != Variant::Weight2 {
        return Err(Error::WrongVariant(format!("{} is not a weight-two ring", ring.variant_label())));
    }
    let n = ring.n;
    let h = Space::marked(&["B1", "B2"]);
    let p = Space::p(2, h.clone(), 2 * n - 1);
    let mut h2_parts = vec![Space::marked(&["B1"]), Space::marked(&["B2"]), p.clone()];
    let mut summands = vec!["B1", "B2", "Q1", "Q2", "E1", "E2"];
    if ring.times_p1 {
        h2_parts.push(Space::marked(&["R"]));
        summands.push("R");
    }

    let item_i = vec![Check::run(
        "i.h2-decomposition",
        RingClaim::DirectSum {
            parts: h2_parts,
            total: Some(full(2)),
        },
        ring,
    )?];
    let item_ii = vec![
        Check::run(
            "ii.p-equals-q-and-e",
            RingClaim::SubspaceEqual {
                left: p.clone(),
                right: Space::marked(&["Q1", "Q2", "E1", "E2"]),
            },
            ring,
        )?,
        Check::run(
            "ii.p-decomposition",
            RingClaim::DirectSum {
                parts: ["Q1", "Q2", "E1", "E2"].iter().map(|x| Space::marked(&[x])).collect(),
                total: None,
            },
            ring,
        )?,
        Check::run(
            "ii.p1-zero",
            RingClaim::SubspaceEqual {
                left: Space::p(2, h.clone(), 1),
                right: Space::Zero { degree: 2 },
            },
            ring,
        )?,
    ];
    let mut item_iii = vec![
        Check::run("iii.b1-squares", RingClaim::SquaresVanish { name: "B1".into() }, ring)?,
        Check::run("iii.b2-squares", RingClaim::SquaresVanish { name: "B2".into() }, ring)?,
    ];
    if ring.times_p1 {
        item_iii.push(Check::run("iii.r-square", RingClaim::SquaresVanish { name: "R".into() }, ring)?);
    }
    let plane = Space::Basis {
        name: "B1".into(),
        indices: vec![0, 1],
    };
    item_iii.push(Check::run(
        "iii.isotropic-plane",
        RingClaim::ProductsVanish {
            left: plane.clone(),
            right: plane,
        },
        ring,
    )?);
    item_iii.push(Check::run(
        "iii.sampled-mixed-squares",
        RingClaim::SampledSquares {
            summands: summands.iter().map(|s| s.to_string()).collect(),
            samples,
            seed,
        },
        ring,
    )?);
    let item_iv = vec![
        Check::run(
            "iv.b1-kills-q1",
            RingClaim::ProductsVanish {
                left: Space::marked(&["B1"]),
                right: Space::marked(&["Q1"]),
            },
            ring,
        )?,
        Check::run("iv.q2-distinct-products", RingClaim::DistinctProductsVanish { name: "Q2".into() }, ring)?,
        Check::run(
            "iv.monomial-coverage",
            RingClaim::MonomialCoverage {
                generators: ["Q1", "Q2", "E1", "E2"].iter().map(|s| s.to_string()).collect(),
                degree: 2 * n - 2,
            },
            ring,
        )?,
    ];
    let mut per_class_terms = Vec::new();
    for (q, b) in [("Q1", "B2"), ("Q2", "B1")] {
        let len = ring.marked(q)?.vectors.len();
        per_class_terms.extend((0..len).map(|j| {
            (
                Space::Basis {
                    name: q.into(),
                    indices: vec![j],
                },
                Space::marked(&[b]),
            )
        }));
    }
    per_class_terms.push((Space::marked(&["E1"]), h.clone()));
    per_class_terms.push((Space::marked(&["E2"]), h.clone()));
    let item_v = vec![
        Check::run(
            "v.kernel-e1",
            RingClaim::KernelEqual {
                class: class("E1"),
                domain: h.clone(),
                expected: Space::marked(&["Delta"]),
            },
            ring,
        )?,
        Check::run(
            "v.kernel-e2",
            RingClaim::KernelEqual {
                class: class("E2"),
                domain: h.clone(),
                expected: Space::marked(&["Gamma_Wedge2Phi"]),
            },
            ring,
        )?,
        Check::run(
            "v.kernel-q1",
            RingClaim::KernelsOfBasisEqual {
                name: "Q1".into(),
                domain: h.clone(),
                expected: Space::marked(&["B1"]),
            },
            ring,
        )?,
        Check::run(
            "v.kernel-q2",
            RingClaim::KernelsOfBasisEqual {
                name: "Q2".into(),
                domain: h.clone(),
                expected: Space::marked(&["B2"]),
            },
            ring,
        )?,
        Check::run(
            "v.images-direct",
            RingClaim::ProductsDirect {
                terms: vec![
                    (Space::marked(&["Q1"]), Space::marked(&["B2"])),
                    (Space::marked(&["Q2"]), Space::marked(&["B1"])),
                    (Space::marked(&["E1"]), h.clone()),
                    (Space::marked(&["E2"]), h.clone()),
                ],
            },
            ring,
        )?,
        Check::run("v.images-direct-per-class", RingClaim::ProductsDirect { terms: per_class_terms }, ring)?,
        Check::run(
            "v.delta-meets-graph-trivially",
            RingClaim::PairwiseIntersectionsTrivial {
                spaces: vec![Space::marked(&["Delta"]), Space::marked(&["Gamma_Wedge2Phi"])],
            },
            ring,
        )?,
    ];
    let components = vec![Check::run(
        "components.e-lines",
        RingClaim::ComponentCriterion {
            ell: 2,
            h,
            classes: vec![class("E1"), class("E2")],
            p,
        },
        ring,
    )?];

    Ok(vec![
        HypothesisItem::new("i", "H² = B₁ ⊕ B₂ ⊕ P (⊕ R) with P = P_{2n-1}", item_i),
        HypothesisItem::new("ii", "P = Q₁ ⊕ Q₂ ⊕ ℚe₁ ⊕ ℚe₂ and P₁ = 0", item_ii),
        HypothesisItem::new(
            "iii",
            "{α ∈ H²_ℂ : α² = 0} is the union of the square-zero cones of B₁ and B₂ (and R)",
            item_iii,
        ),
        HypothesisItem::new("iv", "α²a^{2n-2} = 0 for α ∈ B₁, a ∈ P", item_iv),
        HypothesisItem::new(
            "v",
            "Ker(·e₁) = Δ, Ker(·e₂) = Γ_{∧²Φ}, Ker(·a_i) = B_i, and the image sum is direct",
            item_v,
        ),
        HypothesisItem::new("components", "the lines ℂe₁, ℂe₂ are irreducible components of Z", components),
    ])
}
