//! Orchestration: endomorphism facts, ring hypotheses, and the final report.

pub mod claims;
pub mod endo;
pub mod hypothesis;
pub mod report;

pub use claims::{ClassRef, Outcome, RingClaim, Space, MONOMIAL_RULES};
pub use endo::{check_hypo_endo, endo_verdict, CONSEQUENCE_CLAIMS};
pub use hypothesis::{check_hypothesis_weight1, check_hypothesis_weight2, item_status, Check, HypothesisItem, ItemStatus};
pub use report::{
    build_example, certify_nonprojective, certify_ring, derive_conclusion, CertificateReport, CertifyOptions, Citation, Conclusion,
    ReasoningStep, ReportInput,
};
