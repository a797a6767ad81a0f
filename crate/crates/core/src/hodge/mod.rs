//! Hodge structures, polarization checks, Hodge-class certificates and the
//! algebraic detectors `P_i`, `Z`.

pub mod certificate;
pub mod deligne;
pub mod morphism;
pub mod numeric;
pub mod polarization;
pub mod structures;

pub use certificate::{hodge_class_certificate, Claim, EndoVerdict, Evidence, Fact, HodgeEndoCertificate, Subject};
pub use morphism::morphism_check;
pub use deligne::{component_criterion, deligne_p_subspace, z_membership, ComponentReport};
pub use polarization::{polarization_check_w1, polarization_check_w2, FailedCondition, PolarizationVerdict};
pub use structures::{torus_hs_from_phi, wedge2_hs, Provenance, WeightOneHS, WeightTwoHS, DEFAULT_TOL};
