//! Weight-two example: `K×K` with `K` the Kummer-type blow-up of `T/±1` at
//! its `2^{2n}` two-torsion points, blown up along the diagonal and along the
//! graph-type locus `Γ'`. Both centers are copies of `K`.
//!
//! `H*(K)` lives in even degrees: `∧^{2m}A ⊕ ℚ^{2^{2n}}` for `1 <= m <= n-1`,
//! with the point classes written as powers `f_j^m`.
//!
//! The second factor of `K×K` is identified through the ring automorphism
//! `(-1)^{deg/2}` of `H*(K)`. With that identification the restriction to the
//! diagonal reads `(x, y) ↦ x − y` in degree two, and the restriction to
//! `Γ'` reads `(β₁, β₂) ↦ ∧²Φ β₁ − β₂` on `∧²A`. Its kernels are `Δ` and
//! `Γ_{∧²Φ}`.
//!
//! Materialized products: all of `H²×H²`, the pullback classes of `H²`
//! against the pullback classes `∧^{even}A ⊗ ∧^{even}A` of every degree, and
//! the vanishing of the remaining `H²` classes against the pullback part of
//! `H^{4n-2}`. Degrees 6 to `4n-2` carry an unlabeled complement block.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational, SparseVec};
use crate::multilinear::{binomial, wedge_power_map, ExteriorBases, GradedAlgebra};

use super::{half_size, ExampleRing, MarkedSubspace, Relation, RelationBasis, Variant};

/// Even-degree Betti numbers of `K`, indexed by half-degree.
fn kummer_betti(n: usize) -> Vec<usize> {
    let pts = 1usize << (2 * n);
    (0..=n)
        .map(|m| {
            if m == 0 || m == n {
                1
            } else {
                binomial(2 * n, 2 * m) + pts
            }
        })
        .collect()
}

/// Betti numbers of the weight-two example from the blow-up formula.
pub fn weight2_betti_numbers(n: usize) -> Vec<usize> {
    let hk = kummer_betti(n);
    let h = |m: isize| -> usize {
        if m < 0 || m as usize > n {
            0
        } else {
            hk[m as usize]
        }
    };
    (0..=4 * n)
        .map(|k| {
            if k % 2 == 1 {
                return 0;
            }
            let s = (k / 2) as isize;
            let base: usize = (0..=s).map(|a| h(a) * h(s - a)).sum();
            let centers: usize = (0..=n as isize - 2).map(|ell| h(s - 1 - ell)).sum();
            base + 2 * centers
        })
        .collect()
}

/// Pullback block `⊕_{a+b=k} ∧^a A ⊗ ∧^b A` (a, b even), ordered by `a` descending.
struct PullbackBlock {
    /// `(a, offset)` pairs.
    parts: Vec<(usize, usize)>,
    len: usize,
}

impl PullbackBlock {
    fn new(n: usize, k: usize) -> Self {
        let d = 2 * n;
        let mut parts = Vec::new();
        let mut len = 0;
        let mut a = k.min(d);
        loop {
            if a.is_multiple_of(2) && k - a <= d {
                parts.push((a, len));
                len += binomial(d, a) * binomial(d, k - a);
            }
            if a == 0 || k - a >= d {
                break;
            }
            a -= 1;
        }
        Self { parts, len }
    }

    fn index(&self, n: usize, k: usize, a: usize, s: usize, t: usize) -> usize {
        let off = self.parts.iter().find(|(x, _)| *x == a).expect("part exists").1;
        off + s * binomial(2 * n, k - a) + t
    }

    fn decode(&self, n: usize, k: usize, idx: usize) -> (usize, usize, usize) {
        for &(a, off) in self.parts.iter().rev() {
            if idx >= off {
                let width = binomial(2 * n, k - a);
                return (a, (idx - off) / width, (idx - off) % width);
            }
        }
        unreachable!("index inside the block")
    }
}

/// Offsets inside `H²` and `H⁴`.
struct Layout {
    n: usize,
    pts: usize,
    w2: usize,
    dims: Vec<usize>,
    pullback: Vec<PullbackBlock>,
}

impl Layout {
    fn new(n: usize) -> Self {
        Self {
            n,
            pts: 1 << (2 * n),
            w2: binomial(2 * n, 2),
            dims: weight2_betti_numbers(n),
            pullback: (0..=4 * n).map(|k| PullbackBlock::new(n, k)).collect(),
        }
    }

    // H² = B1 | B2 | Q1 | Q2 | e1 | e2
    fn b1(&self, s: usize) -> usize {
        s
    }
    fn b2(&self, s: usize) -> usize {
        self.w2 + s
    }
    fn q1(&self, j: usize) -> usize {
        2 * self.w2 + j
    }
    fn q2(&self, j: usize) -> usize {
        2 * self.w2 + self.pts + j
    }
    fn e(&self, t: usize) -> usize {
        2 * self.w2 + 2 * self.pts + t
    }

    // H⁴ = pullback | G1 | G2 | ∧²⊗F | F⊗∧² | F⊗F | E1 | E2
    // with E_t = ι_{t,0}(∧²A ⊕ F) | ι_{t,1}(1)
    fn g1(&self, j: usize) -> usize {
        self.pullback[4].len + j
    }
    fn g2(&self, j: usize) -> usize {
        self.pullback[4].len + self.pts + j
    }
    fn wedge_f(&self, s: usize, k: usize) -> usize {
        self.pullback[4].len + 2 * self.pts + s * self.pts + k
    }
    fn f_wedge(&self, j: usize, s: usize) -> usize {
        self.pullback[4].len + 2 * self.pts + self.w2 * self.pts + j * self.w2 + s
    }
    fn f_f(&self, j: usize, k: usize) -> usize {
        self.pullback[4].len + 2 * self.pts + 2 * self.w2 * self.pts + j * self.pts + k
    }
    fn e_block(&self, t: usize) -> usize {
        self.pullback[4].len + 2 * self.pts + 2 * self.w2 * self.pts + self.pts * self.pts + t * (self.w2 + self.pts + 1)
    }
    fn iota0(&self, t: usize, c: usize) -> usize {
        self.e_block(t) + c
    }
    fn iota1(&self, t: usize) -> usize {
        self.e_block(t) + self.w2 + self.pts
    }
}

/// Weight-two ring for a `2n × 2n` matrix `Φ`, `n >= 3`.
pub fn assemble_weight2_example(phi: &RatMatrix) -> Result<ExampleRing> {
    let n = half_size(phi)?;
    if n < 3 {
        return Err(Error::TooSmall(format!("size {} < 6: n >= 3 is required", phi.rows())));
    }
    let lay = Layout::new(n);
    let psi = wedge_power_map(phi, 2)?;
    let top = 4 * n;
    let (w2, pts) = (lay.w2, lay.pts);
    debug_assert_eq!(lay.dims[4], lay.e_block(2));
    let mut alg = GradedAlgebra::new(lay.dims.clone())?;
    let ext = ExteriorBases::new(2 * n);
    set_labels(&mut alg, &lay, &ext)?;

    // pullback(2) × pullback(k)
    for k in (2..=top - 2).step_by(2) {
        let pb2 = &lay.pullback[2];
        let pbk = &lay.pullback[k];
        alg.specify_block(2, 0..pb2.len, k, 0..pbk.len)?;
        for x in 0..pb2.len {
            let (a, s, t) = pb2.decode(n, 2, x);
            for y in 0..pbk.len {
                let (a2, s2, t2) = pbk.decode(n, k, y);
                let Some((sc, ss)) = ext.product(a, s, a2, s2) else { continue };
                let Some((tc, ts)) = ext.product(2 - a, t, k - a2, t2) else { continue };
                let idx = lay.pullback[k + 2].index(n, k + 2, a + a2, sc, tc);
                alg.set_product(2, x, k, y, SparseVec::unit(idx).scaled(&Rational::from_integer((ss * ts).into())))?;
            }
        }
    }

    // H² × H²: everything outside the pullback block
    alg.specify_all(2, 2)?;
    let one = Rational::one();
    let minus = -Rational::one();
    for s in 0..w2 {
        for k in 0..pts {
            alg.set_product(2, lay.b1(s), 2, lay.q2(k), SparseVec::unit(lay.wedge_f(s, k)))?;
            alg.set_product(2, lay.b2(s), 2, lay.q1(k), SparseVec::unit(lay.f_wedge(k, s)))?;
        }
    }
    for j in 0..pts {
        alg.set_product(2, lay.q1(j), 2, lay.q1(j), SparseVec::unit(lay.g1(j)))?;
        alg.set_product(2, lay.q2(j), 2, lay.q2(j), SparseVec::unit(lay.g2(j)))?;
        for k in 0..pts {
            alg.set_product(2, lay.q1(j), 2, lay.q2(k), SparseVec::unit(lay.f_f(j, k)))?;
        }
    }
    // e_t · x = ι_{t,0}(r_t x)
    for t in 0..2 {
        let et = lay.e(t);
        for s in 0..w2 {
            let r_b1 = if t == 0 {
                SparseVec::unit(lay.iota0(t, s))
            } else {
                SparseVec::from_pairs((0..w2).map(|r| (lay.iota0(t, r), psi.get(r, s).clone())))
            };
            alg.set_product(2, et, 2, lay.b1(s), r_b1)?;
            alg.set_product(2, et, 2, lay.b2(s), SparseVec::unit(lay.iota0(t, s)).scaled(&minus))?;
        }
        for j in 0..pts {
            alg.set_product(2, et, 2, lay.q1(j), SparseVec::unit(lay.iota0(t, w2 + j)).scaled(&one))?;
            alg.set_product(2, et, 2, lay.q2(j), SparseVec::unit(lay.iota0(t, w2 + j)).scaled(&minus))?;
        }
        alg.set_product(2, et, 2, et, SparseVec::unit(lay.iota1(t)).scaled(&minus))?;
    }

    // non-pullback H² classes against the pullback part of H^{4n-2}
    alg.specify_block(2, lay.pullback[2].len..lay.dims[2], top - 2, 0..lay.pullback[top - 2].len)?;

    let mut marked = BTreeMap::new();
    marked.insert("B1".into(), MarkedSubspace::coordinate(2, 0..w2));
    marked.insert("B2".into(), MarkedSubspace::coordinate(2, w2..2 * w2));
    marked.insert("Q1".into(), MarkedSubspace::coordinate(2, lay.q1(0)..lay.q1(pts)));
    marked.insert("Q2".into(), MarkedSubspace::coordinate(2, lay.q2(0)..lay.q2(pts)));
    marked.insert("E1".into(), MarkedSubspace::coordinate(2, lay.e(0)..lay.e(1)));
    marked.insert("E2".into(), MarkedSubspace::coordinate(2, lay.e(1)..lay.e(2)));
    marked.insert(
        "Delta".into(),
        MarkedSubspace::new(2, (0..w2).map(|s| SparseVec::from_pairs([(lay.b1(s), one.clone()), (lay.b2(s), one.clone())])).collect()),
    );
    marked.insert(
        "Gamma_Wedge2Phi".into(),
        MarkedSubspace::new(
            2,
            (0..w2)
                .map(|s| {
                    let mut pairs = vec![(lay.b1(s), one.clone())];
                    pairs.extend((0..w2).map(|r| (lay.b2(r), psi.get(r, s).clone())));
                    SparseVec::from_pairs(pairs)
                })
                .collect(),
        ),
    );

    Ok(ExampleRing {
        alg,
        marked,
        n,
        variant: Variant::Weight2,
        times_p1: false,
        phi: Some(phi.clone()),
        points: None,
        point_counts: vec![pts, pts],
        relations: relation_table(n),
    })
}

fn relation_table(n: usize) -> Vec<Relation> {
    let rel = |name: &str, statement: String, basis| Relation {
        name: name.into(),
        statement,
        basis,
    };
    vec![
        rel("b1-kills-q1", "α·f_{1j} = 0 for α ∈ B₁".into(), RelationBasis::Verified),
        rel("q2-distinct", "f_{2j}·f_{2k} = 0 for j ≠ k".into(), RelationBasis::Verified),
        rel(
            "q2-power",
            format!("f_{{2j}}^k = 0 for k > n = {n}; degree-{} powers vanish", 2 * n - 2),
            RelationBasis::Axiom,
        ),
        rel(
            "points-support",
            "f_{2j}·e_k and e₁·e₂ are supported over finitely many points, so α² times them is 0 for α ∈ B₁".into(),
            RelationBasis::Axiom,
        ),
        rel(
            "exceptional-power",
            format!("c₁(O(-1))^k = 0 for k ≥ n on the exceptional divisor, so α²·e_i^{} = 0", 2 * n - 2),
            RelationBasis::Axiom,
        ),
    ]
}

fn set_labels(alg: &mut GradedAlgebra, lay: &Layout, ext: &ExteriorBases) -> Result<()> {
    let n = lay.n;
    let name = |k: usize, ix: &[usize], g: char| -> String {
        if k == 0 {
            "1".into()
        } else {
            ix.iter().map(|t| format!("{g}{t}")).collect::<Vec<_>>().join("∧")
        }
    };
    let pullback_labels = |k: usize| -> Vec<String> {
        let pb = &lay.pullback[k];
        (0..pb.len)
            .map(|x| {
                let (a, s, t) = pb.decode(n, k, x);
                format!(
                    "{}⊗{}",
                    name(a, &ext.basis(a).indices()[s], 'x'),
                    name(k - a, &ext.basis(k - a).indices()[t], 'y')
                )
            })
            .collect()
    };
    alg.set_labels(0, vec!["1".into()])?;
    let mut h2 = pullback_labels(2);
    h2.extend((0..lay.pts).map(|j| format!("f1_{j}")));
    h2.extend((0..lay.pts).map(|j| format!("f2_{j}")));
    h2.extend(["e1".to_string(), "e2".to_string()]);
    alg.set_labels(2, h2)?;

    let w2_names: Vec<String> = ext.basis(2).indices().iter().map(|ix| name(2, ix, 'x')).collect();
    let mut h4 = pullback_labels(4);
    h4.extend((0..lay.pts).map(|j| format!("f1_{j}^2")));
    h4.extend((0..lay.pts).map(|j| format!("f2_{j}^2")));
    for s in &w2_names {
        h4.extend((0..lay.pts).map(|k| format!("{s}⊗f_{k}")));
    }
    for j in 0..lay.pts {
        h4.extend(w2_names.iter().map(|s| format!("f_{j}⊗{s}")));
    }
    for j in 0..lay.pts {
        h4.extend((0..lay.pts).map(|k| format!("f_{j}⊗f_{k}")));
    }
    for t in 1..=2 {
        h4.extend(w2_names.iter().map(|s| format!("e{t}:0({s})")));
        h4.extend((0..lay.pts).map(|j| format!("e{t}:0(f_{j})")));
        h4.push(format!("e{t}:1(1)"));
    }
    alg.set_labels(4, h4)?;
    let top = 4 * n;
    for k in (6..=top).step_by(2) {
        let mut labels = pullback_labels(k);
        let rest = lay.dims[k] - labels.len();
        labels.extend((0..rest).map(|i| format!("rest{k}_{i}")));
        alg.set_labels(k, labels)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Subspace;
    use crate::poly::RatPoly;

    fn phi6() -> RatMatrix {
        RatMatrix::companion(&RatPoly::from_i64(&[1, -1, 0, 0, 0, 0, 1])).unwrap()
    }

    #[test]
    fn dimensions_for_n3() {
        let b = weight2_betti_numbers(3);
        assert_eq!(b[2], 160);
        assert_eq!(b[4], 6559);
        assert_eq!(b[12], 1);
        assert!(b.iter().skip(1).step_by(2).all(|&x| x == 0));
        let layout = Layout::new(3);
        let pb: Vec<usize> = (2..=12).step_by(2).map(|k| layout.pullback[k].len).collect();
        assert_eq!(pb, vec![30, 255, 452, 255, 30, 1]);
    }

    #[test]
    fn kernel_of_e2_is_the_graph() {
        let ring = assemble_weight2_example(&phi6()).unwrap();
        let h = ring.span_of(&["B1", "B2"]).unwrap();
        let e2 = ring.class("E2").unwrap();
        let k = ring.alg.restricted_kernel(2, &e2, 2, &h).unwrap();
        assert_eq!(k.dim(), 15);
        assert_eq!(k, ring.subspace("Gamma_Wedge2Phi").unwrap());
        let e1 = ring.class("E1").unwrap();
        assert_eq!(ring.alg.restricted_kernel(2, &e1, 2, &h).unwrap(), ring.subspace("Delta").unwrap());
    }

    #[test]
    fn decomposable_classes_square_to_zero() {
        let ring = assemble_weight2_example(&phi6()).unwrap();
        let b = SparseVec::unit(0);
        assert!(ring.alg.multiply(2, &b, 2, &b).unwrap().is_zero());
        let be = b.add_scaled(&Rational::one(), &ring.class("E1").unwrap());
        assert!(!ring.alg.multiply(2, &be, 2, &be).unwrap().is_zero());
    }

    #[test]
    fn small_n_rejected() {
        let phi4 = RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert!(matches!(assemble_weight2_example(&phi4), Err(Error::TooSmall(_))));
    }

    #[test]
    fn graded_commutativity_holds() {
        let ring = assemble_weight2_example(&phi6()).unwrap();
        assert!(ring.alg.check_graded_commutativity().is_ok());
        let top = Subspace::full(1);
        assert_eq!(top.dim(), ring.alg.dim(12));
    }
}
