//! Hodge–Riemann verifiers for candidate polarizations.
//!
//! Weight one uses `(v, w) ↦ i q(v, conj w)`, weight two uses
//! `(v, w) ↦ q(v, conj w)` with the sign `-i^{p-q}` on `A^{p,q}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::numeric::{hermitian_eigenvalues, max_norm, to_complex_matrix, CMatrix};
use super::structures::{WeightOneHS, WeightTwoHS};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailedCondition {
    Orthogonality,
    Definiteness,
    /// Reserved for the document format: a form of the wrong symmetry type
    /// is rejected with an error before any check runs.
    SymmetryType,
    /// Reserved for the document format: forms are rational by construction.
    Rationality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    /// Offending value (a pairing or a Gram eigenvalue) as `[re, im]`.
    pub value: [f64; 2],
    /// Set when the value is within the numeric margin of passing or failing.
    pub marginal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarizationVerdict {
    pub passes: bool,
    pub failed_condition: Option<FailedCondition>,
    pub witness: Option<Witness>,
}

impl PolarizationVerdict {
    fn pass() -> Self {
        Self {
            passes: true,
            failed_condition: None,
            witness: None,
        }
    }

    fn fail(c: FailedCondition, description: String, value: Complex64, marginal: bool) -> Self {
        Self {
            passes: false,
            failed_condition: Some(c),
            witness: Some(Witness {
                description,
                value: [value.re, value.im],
                marginal,
            }),
        }
    }
}

fn bilinear(q: &CMatrix, v: &[Complex64], w: &[Complex64]) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for (r, vr) in v.iter().enumerate() {
        for (c, wc) in w.iter().enumerate() {
            s += vr * q[(r, c)] * wc;
        }
    }
    s
}

fn conj(v: &[Complex64]) -> Vec<Complex64> {
    v.iter().map(|z| z.conj()).collect()
}

fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

struct Piece<'a> {
    name: &'static str,
    vectors: &'a [Vec<Complex64>],
    /// Real factor `c` such that `c · pairing` must be positive definite.
    sign: f64,
}

/// Shared engine: `pairing(v, w)` is the sesquilinear form, `scale` sets the margin.
fn verify(pieces: &[Piece<'_>], pairing: impl Fn(&[Complex64], &[Complex64]) -> Complex64, margin: f64) -> PolarizationVerdict {
    for (a, pa) in pieces.iter().enumerate() {
        for pb in &pieces[a + 1..] {
            for (i, v) in pa.vectors.iter().enumerate() {
                for (j, w) in pb.vectors.iter().enumerate() {
                    let x = pairing(v, w);
                    if x.norm() > margin {
                        return PolarizationVerdict::fail(
                            FailedCondition::Orthogonality,
                            format!("{}[{i}] and {}[{j}] pair nontrivially", pa.name, pb.name),
                            x,
                            x.norm() <= 10.0 * margin,
                        );
                    }
                }
            }
        }
    }
    for p in pieces {
        let k = p.vectors.len();
        let gram = CMatrix::from_fn(k, k, |r, c| pairing(&p.vectors[r], &p.vectors[c]) * p.sign);
        for (idx, &lambda) in hermitian_eigenvalues(&gram).iter().enumerate() {
            if lambda <= margin {
                return PolarizationVerdict::fail(
                    FailedCondition::Definiteness,
                    format!("Gram eigenvalue {idx} on {} has the wrong sign", p.name),
                    Complex64::new(lambda, 0.0),
                    lambda.abs() <= margin,
                );
            }
        }
    }
    PolarizationVerdict::pass()
}

fn margin_for(q: &CMatrix, vectors: &[&[Vec<Complex64>]], tol: f64) -> f64 {
    let v = vectors.iter().map(|vs| max_norm(vs)).fold(0.0, f64::max);
    tol * frobenius(q) * v * v
}

/// Hodge–Riemann relations for a skew form on a weight-one structure.
pub fn polarization_check_w1(h: &WeightOneHS, q: &RatMatrix, tol: f64) -> Result<PolarizationVerdict> {
    if !q.is_square() || q.rows() != h.dim() {
        return Err(Error::DimensionMismatch(format!("form of size {}x{} on dimension {}", q.rows(), q.cols(), h.dim())));
    }
    if !q.is_skew() {
        return Err(Error::WrongSymmetry("weight one needs a skew-symmetric form".into()));
    }
    let qc = to_complex_matrix(q);
    let b10 = h.basis_10().to_vec();
    let b01 = h.basis_01();
    let i = Complex64::new(0.0, 1.0);
    let pieces = [
        Piece {
            name: "A(1,0)",
            vectors: &b10,
            sign: 1.0,
        },
        Piece {
            name: "A(0,1)",
            vectors: &b01,
            sign: -1.0,
        },
    ];
    let margin = margin_for(&qc, &[&b10], tol);
    Ok(verify(&pieces, |v, w| i * bilinear(&qc, v, &conj(w)), margin))
}

/// Hodge–Riemann relations for a symmetric form on a weight-two structure:
/// `q(v, conj v)` must be positive on `A^{2,0}` and `A^{0,2}` and negative on `A^{1,1}`.
pub fn polarization_check_w2(h: &WeightTwoHS, q: &RatMatrix, tol: f64) -> Result<PolarizationVerdict> {
    if !q.is_square() || q.rows() != h.dim() {
        return Err(Error::DimensionMismatch(format!("form of size {}x{} on dimension {}", q.rows(), q.cols(), h.dim())));
    }
    if !q.is_symmetric() {
        return Err(Error::WrongSymmetry("weight two needs a symmetric form".into()));
    }
    let qc = to_complex_matrix(q);
    let pieces = [
        Piece {
            name: "A(2,0)",
            vectors: h.basis_20(),
            sign: 1.0,
        },
        Piece {
            name: "A(1,1)",
            vectors: h.basis_11(),
            sign: -1.0,
        },
        Piece {
            name: "A(0,2)",
            vectors: h.basis_02(),
            sign: 1.0,
        },
    ];
    let margin = margin_for(&qc, &[h.basis_20(), h.basis_11()], tol);
    Ok(verify(&pieces, |v, w| bilinear(&qc, v, &conj(w)), margin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::structures::{torus_hs_from_phi, DEFAULT_TOL};
    use crate::linalg::rat;

    fn elliptic() -> WeightOneHS {
        WeightOneHS::explicit(2, vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]]).unwrap()
    }

    #[test]
    fn elliptic_curve() {
        let q = RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert!(polarization_check_w1(&elliptic(), &q, DEFAULT_TOL).unwrap().passes);
        let neg = polarization_check_w1(&elliptic(), &(-&q), DEFAULT_TOL).unwrap();
        assert_eq!(neg.failed_condition, Some(FailedCondition::Definiteness));
        let scaled = q.scale(&crate::linalg::ratio(7, 3));
        assert!(polarization_check_w1(&elliptic(), &scaled, DEFAULT_TOL).unwrap().passes);
    }

    #[test]
    fn zero_form_is_marginal() {
        let v = polarization_check_w1(&elliptic(), &RatMatrix::zeros(2, 2), DEFAULT_TOL).unwrap();
        assert_eq!(v.failed_condition, Some(FailedCondition::Definiteness));
        assert!(v.witness.unwrap().marginal);
    }

    #[test]
    fn symmetry_type_is_enforced() {
        assert!(matches!(
            polarization_check_w1(&elliptic(), &RatMatrix::identity(2), DEFAULT_TOL),
            Err(Error::WrongSymmetry(_))
        ));
        let h2 = WeightTwoHS::explicit(1, vec![], vec![vec![Complex64::new(1.0, 0.0)]], DEFAULT_TOL).unwrap();
        assert!(polarization_check_w2(&h2, &RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]), DEFAULT_TOL).is_err());
    }

    #[test]
    fn pure_one_one_sign() {
        let h2 = WeightTwoHS::explicit(1, vec![], vec![vec![Complex64::new(1.0, 0.0)]], DEFAULT_TOL).unwrap();
        // -i^0 q(v, conj v) > 0 forces q negative on A^{1,1}
        assert!(polarization_check_w2(&h2, &RatMatrix::from_i64(&[&[-1]]), DEFAULT_TOL).unwrap().passes);
        let v = polarization_check_w2(&h2, &RatMatrix::from_i64(&[&[1]]), DEFAULT_TOL).unwrap();
        assert_eq!(v.failed_condition, Some(FailedCondition::Definiteness));
    }

    #[test]
    fn mixed_pieces_orthogonality() {
        // weight-two structure of an elliptic curve squared: A^{2,0} ⊕ A^{1,1} ⊕ A^{0,2} on ∧²Q^4
        let phi = RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let h = crate::hodge::structures::wedge2_hs(&torus_hs_from_phi(&phi, &[0, 1], DEFAULT_TOL).unwrap());
        let v = polarization_check_w2(&h, &RatMatrix::zeros(6, 6), DEFAULT_TOL).unwrap();
        assert!(!v.passes);
        let id = polarization_check_w2(&h, &RatMatrix::identity(6).scale(&rat(1)), DEFAULT_TOL).unwrap();
        assert!(!id.passes);
    }
}
