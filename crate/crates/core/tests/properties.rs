use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use hodgecert::blowup::{assemble_weight1_example, product_with_p1, Variant};
use hodgecert::certify::build_example;
use hodgecert::hodge::structures::WeightOneHS;
use hodgecert::hodge::{deligne_p_subspace, polarization_check_w1, z_membership, DEFAULT_TOL};
use hodgecert::linalg::{
    rat, ratio, rref, sturm_real_root_count, torsion_solution_count, IntMatrix, RatMatrix, Rational, Subspace, TorsionCount,
};
use hodgecert::multilinear::wedge_power_map;
use hodgecert::poly::{degrees_by_splitting, discriminant, factor_rational, galois_sn_certificate, is_squarefree, squarefree_part, GaloisVerdict, RatPoly};

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-range..=range, rows * cols)
        .prop_map(move |v| RatMatrix::from_vec(rows, cols, v.into_iter().map(rat).collect()).unwrap())
}

fn any_matrix(max: usize, range: i64) -> impl Strategy<Value = RatMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| matrix(r, c, range))
}

fn square(max: usize, range: i64) -> impl Strategy<Value = RatMatrix> {
    (1..=max).prop_flat_map(move |n| matrix(n, n, range))
}

fn poly(max_deg: usize, range: i64) -> impl Strategy<Value = RatPoly> {
    (1..=max_deg)
        .prop_flat_map(move |d| (prop::collection::vec(-range..=range, d), 1..=range))
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            RatPoly::from_i64(&c)
        })
}

fn elliptic() -> WeightOneHS {
    WeightOneHS::explicit(2, vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in any_matrix(6, 4)) {
        let once = rref(&m).reduced;
        prop_assert_eq!(rref(&once).reduced, once);
    }

    #[test]
    fn rank_nullity(m in any_matrix(7, 3)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
    }

    #[test]
    fn cayley_hamilton(m in square(8, 4)) {
        let chi = m.charpoly().unwrap();
        prop_assert!(m.eval_poly(&chi).unwrap().is_zero());
    }

    #[test]
    fn sturm_matches_sign_changes(
        roots in prop::collection::btree_set(-6i64..=6, 0..=4),
        c in 1i64..=5,
        with_quadratic in any::<bool>(),
    ) {
        // Integer roots are isolated by the half-integer grid.
        let mut p = RatPoly::from_roots(&roots.iter().map(|&r| rat(r)).collect::<Vec<_>>());
        if with_quadratic {
            p = &p * &RatPoly::from_i64(&[c, 0, 1]);
        }
        prop_assume!(p.degree().unwrap_or(0) >= 1);
        let grid: Vec<Rational> = (-30..=30).map(|k| ratio(2 * k + 1, 4)).collect();
        let signs: Vec<bool> = grid.iter().map(|x| p.eval(x).is_positive()).collect();
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        prop_assert_eq!(sturm_real_root_count(&p).unwrap(), changes);
    }

    #[test]
    fn torsion_count_is_abs_det(m in matrix(3, 3, 4)) {
        let det = m.determinant().unwrap();
        let count = torsion_solution_count(&IntMatrix::from_rational(&m).unwrap()).unwrap();
        if det.is_zero() {
            prop_assert_eq!(count, TorsionCount::Infinite);
        } else {
            prop_assert_eq!(count, TorsionCount::Finite(det.abs().to_integer()));
        }
    }

    #[test]
    fn factorization_multiplies_back(p in poly(8, 8)) {
        let f = factor_rational(&p).unwrap();
        prop_assert_eq!(f.product(), p);
        for (g, _) in &f.factors {
            // degree ≤ 3 factors of an irreducible have no rational root
            if g.degree().unwrap() > 1 && g.degree().unwrap() <= 3 {
                let lin = factor_rational(g).unwrap();
                prop_assert!(lin.is_irreducible());
            }
        }
    }

    #[test]
    fn discriminant_vanishes_iff_not_squarefree(p in poly(6, 4)) {
        let sf = squarefree_part(&p).unwrap();
        let same = sf.monic() == p.monic();
        prop_assert_eq!(discriminant(&p).unwrap().is_zero(), !same);
        prop_assert_eq!(is_squarefree(&p), same);
    }

    #[test]
    fn proven_sn_evidence_reverifies(p in poly(6, 5)) {
        prop_assume!(p.degree().unwrap() >= 2 && is_squarefree(&p));
        let cert = galois_sn_certificate(&p, 150).unwrap();
        if cert.verdict == GaloisVerdict::ProvenSn {
            let prim: Vec<BigInt> = p.primitive_integer().1;
            for ev in &cert.evidence {
                let mut d = degrees_by_splitting(&prim, ev.prime);
                d.sort_unstable_by(|a, b| b.cmp(a));
                prop_assert_eq!(&d, &ev.degrees);
            }
        }
        prop_assert!(cert.recheck());
    }

    #[test]
    fn wedge_power_is_functorial(a in matrix(4, 4, 3), b in matrix(4, 4, 3), k in 1usize..=4) {
        let ab = wedge_power_map(&a.try_mul(&b).unwrap(), k).unwrap();
        let prod = wedge_power_map(&a, k).unwrap().try_mul(&wedge_power_map(&b, k).unwrap()).unwrap();
        prop_assert_eq!(ab, prod);
    }

    #[test]
    fn wedge_square_trace(phi in (2usize..=6).prop_flat_map(|n| matrix(n, n, 4))) {
        let w = wedge_power_map(&phi, 2).unwrap();
        let t = phi.trace();
        let t2 = phi.try_mul(&phi).unwrap().trace();
        prop_assert_eq!(w.trace(), (&t * &t - t2) / rat(2));
    }

    #[test]
    fn polarization_scaling(num in 1i64..50, den in 1i64..50, a in -3i64..=3) {
        let q = RatMatrix::from_i64(&[&[0, a], &[-a, 0]]);
        let base = polarization_check_w1(&elliptic(), &q, DEFAULT_TOL).unwrap().passes;
        let scaled = polarization_check_w1(&elliptic(), &q.scale(&ratio(num, den)), DEFAULT_TOL).unwrap().passes;
        prop_assert_eq!(base, scaled);
        if a != 0 {
            let neg = polarization_check_w1(&elliptic(), &(-&q), DEFAULT_TOL).unwrap().passes;
            prop_assert_ne!(base, neg);
        }
    }
}

#[test]
fn torsion_count_matches_enumeration_for_small_2x2() {
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in -3i64..=3 {
                for d in -3i64..=3 {
                    let det = a * d - b * c;
                    if det == 0 {
                        continue;
                    }
                    let n = det.abs();
                    // Solutions lie in (1/|det|)Z^2 mod Z^2.
                    let mut count = 0;
                    for x in 0..n {
                        for y in 0..n {
                            if (a * x + b * y) % n == 0 && (c * x + d * y) % n == 0 {
                                count += 1;
                            }
                        }
                    }
                    let m = IntMatrix::from_i64(&[&[a, b], &[c, d]]);
                    assert_eq!(torsion_solution_count(&m).unwrap(), TorsionCount::Finite(BigInt::from(count)), "{a} {b} {c} {d}");
                }
            }
        }
    }
}

#[test]
fn no_small_rational_invariant_line_in_wedge2_phi4() {
    let phi = RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
    let w = wedge_power_map(&phi, 2).unwrap();
    let values: Vec<Rational> = [-2, -1, 0, 1, 2]
        .iter()
        .map(|&k| rat(k))
        .chain([ratio(-1, 2), ratio(1, 2)])
        .collect();
    let mut idx = [0usize; 6];
    let mut tested = 0;
    loop {
        let v: Vec<Rational> = idx.iter().map(|&i| values[i].clone()).collect();
        if v.iter().any(|x| !x.is_zero()) {
            let wv = w.mul_vec(&v).unwrap();
            let line = Subspace::from_vectors(6, std::slice::from_ref(&v)).unwrap();
            assert!(!line.contains(&wv), "invariant line {v:?}");
            tested += 1;
        }
        let mut k = 0;
        while k < 6 {
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == 6 {
            break;
        }
    }
    assert_eq!(tested, 7usize.pow(6) - 1);
}

#[test]
fn point_blowups_keep_odd_degrees() {
    let phi = RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
    let full = assemble_weight1_example(&phi, false).unwrap().betti_numbers();
    let skip = assemble_weight1_example(&phi, true).unwrap().betti_numbers();
    for k in (1..full.len()).step_by(2) {
        assert_eq!(full[k], skip[k], "b{k}");
    }
}

#[test]
fn p1_inside_p_and_in_z_on_assembled_rings() {
    let phi = RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
    let w1 = assemble_weight1_example(&phi, false).unwrap();
    let rings = [
        (w1.clone(), 6),
        (assemble_weight1_example(&phi, true).unwrap(), 6),
        (product_with_p1(&w1).unwrap(), 6),
    ];
    for (ring, m) in rings {
        let h = Subspace::full(ring.alg.dim(1));
        let p1 = deligne_p_subspace(&ring.alg, 1, &h, 1).unwrap();
        let pm = deligne_p_subspace(&ring.alg, 1, &h, m).unwrap();
        assert!(p1.is_subspace_of(&pm), "{}", ring.variant_label());
        for v in p1.sparse_basis() {
            assert!(z_membership(&ring.alg, 1, &h, &pm, v).unwrap());
        }
    }
    let phi6 = RatMatrix::companion(&RatPoly::from_i64(&[1, -1, 0, 0, 0, 0, 1])).unwrap();
    let w2 = build_example(&phi6, Variant::Weight2, false).unwrap();
    let h = w2.span_of(&["B1", "B2"]).unwrap();
    assert!(deligne_p_subspace(&w2.alg, 2, &h, 1).unwrap().is_zero());
}
