//! The report validator must notice any single corrupted structure constant
//! or flipped fact.

use hodgecert::blowup::{ExampleRing, Variant};
use hodgecert::certify::{build_example, certify_nonprojective, certify_ring, derive_conclusion, CertificateReport, CertifyOptions, Conclusion};
use hodgecert::linalg::{rat, RatMatrix, SparseVec};

fn phi4() -> RatMatrix {
    RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]])
}

fn e_index(ring: &ExampleRing, name: &str) -> usize {
    let v = ring.class(name).unwrap();
    assert_eq!(v.nnz(), 1, "{name} is not a basis vector");
    v.entries()[0].0
}

fn certified_report() -> CertificateReport {
    let r = certify_nonprojective(&phi4(), Variant::Weight1, &CertifyOptions::default()).unwrap();
    assert_eq!(r.conclusion, Conclusion::NonProjectiveCertified);
    r
}

#[test]
fn every_e_times_h1_column_corruption_flips_the_verdict() {
    let ring = build_example(&phi4(), Variant::Weight1, false).unwrap();
    let opts = CertifyOptions::default();
    let h3 = ring.alg.dim(3);
    let mut mutants = 0;
    for name in ["E1", "E2", "E3", "E4"] {
        let e = e_index(&ring, name);
        for b in 0..ring.alg.dim(1) {
            let old = ring.alg.basis_product(2, e, 1, b).unwrap();
            let new = if old.is_zero() {
                SparseVec::unit(b % h3)
            } else {
                SparseVec::new()
            };
            let mut bad = ring.clone();
            bad.alg.set_product(2, e, 1, b, new).unwrap();
            let r = certify_ring(&phi4(), &bad, &opts).unwrap();
            assert_ne!(r.conclusion, Conclusion::NonProjectiveCertified, "{name} x basis {b} corruption went unnoticed");
            mutants += 1;
        }
    }
    assert_eq!(mutants, 32);
}

/// Dense-matrix oracle for item iv: each `Ker(·e_i)` equals its marked locus
/// and the four images are independent.
fn item_iv_oracle(ring: &ExampleRing, reference: &ExampleRing) -> bool {
    let names = [("E1", "A+0"), ("E2", "0+A"), ("E3", "Delta"), ("E4", "Gamma_Phi")];
    let mut ops = Vec::new();
    for (e, locus) in names {
        let dense = ring.class(e).unwrap().to_dense(ring.alg.dim(2));
        let op = ring.alg.multiplication_operator(2, &dense, 1).unwrap();
        if op.kernel() != reference.subspace(locus).unwrap() {
            return false;
        }
        ops.push(op);
    }
    let refs: Vec<&RatMatrix> = ops.iter().collect();
    let total: usize = ops.iter().map(RatMatrix::rank).sum();
    RatMatrix::hstack(&refs).unwrap().rank() == total
}

#[test]
fn coefficient_changes_flip_the_verdict_exactly_when_item_iv_breaks() {
    let ring = build_example(&phi4(), Variant::Weight1, false).unwrap();
    let opts = CertifyOptions::default();
    let (mut broken, mut harmless) = (0, 0);
    for name in ["E1", "E2", "E3", "E4"] {
        let e = e_index(&ring, name);
        for b in 0..ring.alg.dim(1) {
            let old = ring.alg.basis_product(2, e, 1, b).unwrap();
            for (t, c) in old.entries() {
                for factor in [0, 2] {
                    let mut bad = ring.clone();
                    let v = old.add_scaled(&(c * rat(factor - 1)), &SparseVec::unit(*t));
                    bad.alg.set_product(2, e, 1, b, v).unwrap();
                    let holds = item_iv_oracle(&bad, &ring);
                    let r = certify_ring(&phi4(), &bad, &opts).unwrap();
                    let certified = r.conclusion == Conclusion::NonProjectiveCertified;
                    assert_eq!(certified, holds, "{name} x {b} at {t}, factor {factor}");
                    if holds {
                        harmless += 1;
                    } else {
                        broken += 1;
                    }
                }
            }
        }
    }
    assert!(broken > 0 && harmless > 0, "broken {broken}, harmless {harmless}");
}

#[test]
fn flipping_any_recorded_fact_leaves_certified() {
    let report = certified_report();
    assert!(report.validate());
    for k in 0..report.endo_facts.facts.len() {
        let mut r = report.clone();
        r.endo_facts.facts[k].holds = !r.endo_facts.facts[k].holds;
        assert_ne!(derive_conclusion(&r).0, Conclusion::NonProjectiveCertified, "endo fact {k}");
        assert!(!r.validate());
    }
    for k in 0..report.hodge_class.facts.len() {
        let mut r = report.clone();
        r.hodge_class.facts[k].holds = false;
        assert_ne!(derive_conclusion(&r).0, Conclusion::NonProjectiveCertified, "hodge-class fact {k}");
    }
    for (i, item) in report.hypothesis_items.iter().enumerate() {
        for j in 0..item.checks.len() {
            let mut r = report.clone();
            r.hypothesis_items[i].checks[j].holds = false;
            assert_ne!(derive_conclusion(&r).0, Conclusion::NonProjectiveCertified, "{}", item.checks[j].id);
            assert!(!r.validate());
            assert!(!r.recheck().unwrap());
        }
    }
    let mut r = report.clone();
    r.hypothesis_items.pop();
    assert_ne!(derive_conclusion(&r).0, Conclusion::NonProjectiveCertified);
}

#[test]
fn weight_two_flips_and_acknowledgement() {
    let phi = RatMatrix::from_i64(&[
        &[0, 0, 0, 0, 0, -1],
        &[1, 0, 0, 0, 0, 1],
        &[0, 1, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 1, 0],
    ]);
    let opts = CertifyOptions {
        samples: 200,
        acknowledge_sampled: true,
        ..Default::default()
    };
    let report = certify_nonprojective(&phi, Variant::Weight2, &opts).unwrap();
    assert_eq!(report.conclusion, Conclusion::NonProjectiveCertified, "{:?}", report.conclusion_reasons);
    for (i, item) in report.hypothesis_items.iter().enumerate() {
        for j in 0..item.checks.len() {
            let mut r = report.clone();
            r.hypothesis_items[i].checks[j].holds = false;
            assert_eq!(derive_conclusion(&r).0, Conclusion::Failed, "{}", item.checks[j].id);
        }
    }
    let mut r = report.clone();
    r.input.options.acknowledge_sampled = false;
    assert_eq!(derive_conclusion(&r).0, Conclusion::Partial);
}

#[test]
fn weight_one_chain_is_float_free() {
    const EXACT: [&str; 14] = [
        "sturm_real_root_count",
        "squarefree_part",
        "factor_rational",
        "galois_sn_certificate",
        "charpoly evaluation at 1",
        "rref-subspace-equality",
        "direct-sum-rank",
        "restricted-kernel",
        "product-image-rank",
        "subspace-intersection",
        "structure-constant-product",
        "monomial-enumeration",
        "component-criterion",
        "seeded-sampling-of-squares",
    ];
    for variant in [Variant::Weight1, Variant::Weight1NoP1] {
        for times_p1 in [false, true] {
            let opts = CertifyOptions {
                times_p1,
                ..Default::default()
            };
            let r = certify_nonprojective(&phi4(), variant, &opts).unwrap();
            let facts = r.endo_facts.facts.iter().chain(&r.hodge_class.facts);
            for f in facts {
                assert!(EXACT[..5].contains(&f.operation.as_str()), "{}", f.operation);
            }
            for c in r.hypothesis_items.iter().flat_map(|it| &it.checks) {
                assert!(EXACT[5..13].contains(&c.operation.as_str()), "{}", c.operation);
                assert!(c.exact);
            }
            let json = r.to_json().unwrap();
            for word in ["tol", "f64", "numeric", "complex", "margin", "seeded"] {
                assert!(!json.to_lowercase().contains(word), "{word} appears in the weight-one evidence");
            }
        }
    }
}

#[test]
fn reports_are_byte_identical() {
    let a = certify_nonprojective(&phi4(), Variant::Weight1, &CertifyOptions::default()).unwrap();
    let b = certify_nonprojective(&phi4(), Variant::Weight1, &CertifyOptions::default()).unwrap();
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
}
