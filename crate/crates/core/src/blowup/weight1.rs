//! Weight-one example: `T×T` blown up at the points `z_1..z_M`, then along the
//! proper transforms of `T1, T2, Δ1, Δ2`.
//!
//! Degree-`k` layout: `∧^k(A⊕A)`, then one class per point (even `k` in
//! `2..=4n-2`), then for each center `Ỹ_i` the summands
//! `ι_{i,ℓ} H^{k-2-2ℓ}(Ỹ_i)` for `ℓ = 0..=n-2`. Each `H^m(Ỹ_i)` is `∧^m A`
//! followed by `p_i` point classes when `m` is even and `2 <= m <= 2n-2`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational, SparseVec};
use crate::multilinear::{binomial, compound_matrix, ExteriorBases, GradedAlgebra, MAX_EXTERIOR_DIM};

use super::locus::{count_blowup_points, restriction_map_h1, LocusKind, LocusSpec};
use super::{half_size, ExampleRing, MarkedSubspace, Variant};

struct Layout {
    n: usize,
    m: usize,
    p: [usize; 4],
    dims: Vec<usize>,
    f_offset: Vec<usize>,
    /// `(i, ℓ, m) -> offset` inside degree `m + 2 + 2ℓ`.
    e_offset: BTreeMap<(usize, usize, usize), usize>,
}

impl Layout {
    fn new(n: usize, m: usize, p: [usize; 4]) -> Self {
        let top = 4 * n;
        let mut dims = vec![0; top + 1];
        let mut f_offset = vec![0; top + 1];
        let mut e_offset = BTreeMap::new();
        let mut layout = Self {
            n,
            m,
            p,
            dims: Vec::new(),
            f_offset: Vec::new(),
            e_offset: BTreeMap::new(),
        };
        for k in 0..=top {
            let mut size = binomial(4 * n, k);
            f_offset[k] = size;
            size += layout.f_count(k);
            for i in 0..4 {
                for ell in 0..=n.saturating_sub(2) {
                    if k < 2 + 2 * ell || k - 2 - 2 * ell > 2 * n {
                        continue;
                    }
                    let mdeg = k - 2 - 2 * ell;
                    e_offset.insert((i, ell, mdeg), size);
                    size += layout.center_dim(i, mdeg);
                }
            }
            dims[k] = size;
        }
        layout.dims = dims;
        layout.f_offset = f_offset;
        layout.e_offset = e_offset;
        layout
    }

    fn f_count(&self, k: usize) -> usize {
        if k.is_multiple_of(2) && k >= 2 && k + 2 <= 4 * self.n {
            self.m
        } else {
            0
        }
    }

    fn center_points(&self, i: usize, mdeg: usize) -> usize {
        if mdeg.is_multiple_of(2) && mdeg >= 2 && mdeg + 2 <= 2 * self.n {
            self.p[i]
        } else {
            0
        }
    }

    fn center_dim(&self, i: usize, mdeg: usize) -> usize {
        binomial(2 * self.n, mdeg) + self.center_points(i, mdeg)
    }
}

fn generator_label(n: usize, t: usize) -> String {
    if t < 2 * n {
        format!("a{t}")
    } else {
        format!("b{}", t - 2 * n)
    }
}

fn monomial_label(ix: &[usize], name: impl Fn(usize) -> String) -> String {
    if ix.is_empty() {
        "1".into()
    } else {
        ix.iter().map(|&t| name(t)).collect::<Vec<_>>().join("∧")
    }
}

/// Weight-one ring for `Φ`: counts the blow-up points, then assembles.
pub fn assemble_weight1_example(phi: &RatMatrix, skip_point_blowups: bool) -> Result<ExampleRing> {
    let n = half_size(phi)?;
    if n < 2 {
        return Err(Error::TooSmall(format!(
            "size {} < 4: the assumption n >= 2 is needed",
            phi.rows()
        )));
    }
    let points = count_blowup_points(phi)?;
    let (m, counts) = if skip_point_blowups {
        (0, points.earlier_intersections())
    } else {
        (points.m, points.per_locus())
    };
    let mut ring = assemble_weight1_model(phi, m, [counts[0], counts[1], counts[2], counts[3]])?;
    ring.variant = if skip_point_blowups {
        Variant::Weight1NoP1
    } else {
        Variant::Weight1
    };
    ring.points = Some(points);
    Ok(ring)
}

/// Weight-one ring from explicit data: `m` initial point blow-ups and `p_i`
/// points on the `i`-th center. `Φ` fixes the graph center and is not
/// required to satisfy any hypothesis, which makes negative controls possible.
pub fn assemble_weight1_model(phi: &RatMatrix, m: usize, point_counts: [usize; 4]) -> Result<ExampleRing> {
    let n = half_size(phi)?;
    if n == 0 {
        return Err(Error::TooSmall("empty matrix".into()));
    }
    if 4 * n > MAX_EXTERIOR_DIM {
        return Err(Error::DegreeOutOfRange(format!("4n = {} exceeds {MAX_EXTERIOR_DIM}", 4 * n)));
    }
    let lay = Layout::new(n, m, point_counts);
    let top = 4 * n;
    let mut alg = GradedAlgebra::new(lay.dims.clone())?;
    let big = ExteriorBases::new(4 * n);
    let small = ExteriorBases::new(2 * n);

    let restrictions: Vec<RatMatrix> = LocusKind::WEIGHT_ONE
        .iter()
        .map(|&k| {
            let spec = if k.needs_phi() {
                LocusSpec::with_phi(k, phi.clone())
            } else {
                LocusSpec::new(k)
            };
            restriction_map_h1(&spec, n)
        })
        .collect::<Result<_>>()?;

    set_labels(&mut alg, &lay, &big)?;

    // pullback × pullback: the exterior algebra of A⊕A
    for i in 1..=top {
        for j in i..=top - i {
            alg.specify_block(i, 0..binomial(4 * n, i), j, 0..binomial(4 * n, j))?;
            for a in 0..binomial(4 * n, i) {
                for b in 0..binomial(4 * n, j) {
                    if let Some((c, s)) = big.product(i, a, j, b) {
                        alg.set_product(i, a, j, b, signed_unit(c, s))?;
                    }
                }
            }
        }
    }

    // pullback × point classes: zero
    for i in 1..=top {
        for k in 2..=top - i {
            let f = lay.f_count(k);
            if f > 0 {
                alg.specify_block(i, 0..binomial(4 * n, i), k, lay.f_offset[k]..lay.f_offset[k] + f)?;
            }
        }
    }

    // pullback × ι_{i,ℓ}(y) = ι_{i,ℓ}(r_i(α) · y)
    for (&(ci, ell, mdeg), &off) in &lay.e_offset {
        let k = mdeg + 2 + 2 * ell;
        let size = lay.center_dim(ci, mdeg);
        for a in 1..=top.saturating_sub(k) {
            alg.specify_block(a, 0..binomial(4 * n, a), k, off..off + size)?;
            if a + mdeg > 2 * n {
                continue;
            }
            let target = lay.e_offset[&(ci, ell, a + mdeg)];
            let wedge_r = compound_matrix(&restrictions[ci], a);
            for alpha in 0..binomial(4 * n, a) {
                for s in 0..binomial(2 * n, a) {
                    let coeff = wedge_r.get(s, alpha);
                    if coeff.is_zero() {
                        continue;
                    }
                    for y in 0..binomial(2 * n, mdeg) {
                        if let Some((c, sign)) = small.product(a, s, mdeg, y) {
                            let prev = alg.basis_product(a, alpha, k, off + y)?;
                            let term = SparseVec::unit(target + c).scaled(&(coeff * Rational::from_integer(sign.into())));
                            alg.set_product(a, alpha, k, off + y, prev.add_scaled(&Rational::one(), &term))?;
                        }
                    }
                }
            }
        }
    }

    // f_j · f_k = -δ_jk f_j[4]
    if m > 0 {
        let f2 = lay.f_offset[2];
        alg.specify_block(2, f2..f2 + m, 2, f2..f2 + m)?;
        for j in 0..m {
            alg.set_product(2, f2 + j, 2, f2 + j, SparseVec::unit(lay.f_offset[4] + j).scaled(&-Rational::one()))?;
        }
    }

    let mut marked = BTreeMap::new();
    let d = 2 * n;
    marked.insert("A+0".into(), MarkedSubspace::coordinate(1, 0..d));
    marked.insert("0+A".into(), MarkedSubspace::coordinate(1, d..2 * d));
    marked.insert(
        "Delta".into(),
        MarkedSubspace::new(1, (0..d).map(|t| sparse(&[(t, Rational::one()), (d + t, Rational::one())])).collect()),
    );
    marked.insert(
        "Gamma_Phi".into(),
        MarkedSubspace::new(
            1,
            (0..d)
                .map(|t| {
                    let mut pairs = vec![(t, Rational::one())];
                    pairs.extend((0..d).map(|s| (d + s, phi.get(s, t).clone())));
                    sparse(&pairs)
                })
                .collect(),
        ),
    );
    marked.insert("Wedge2".into(), MarkedSubspace::coordinate(2, 0..binomial(4 * n, 2)));
    marked.insert("F".into(), MarkedSubspace::coordinate(2, lay.f_offset[2]..lay.f_offset[2] + m));
    for i in 0..4 {
        marked.insert(format!("E{}", i + 1), MarkedSubspace::coordinate(2, lay.e_offset[&(i, 0, 0)]..lay.e_offset[&(i, 0, 0)] + 1));
    }

    Ok(ExampleRing {
        alg,
        marked,
        n,
        variant: if m == 0 { Variant::Weight1NoP1 } else { Variant::Weight1 },
        times_p1: false,
        phi: Some(phi.clone()),
        points: None,
        point_counts: point_counts.to_vec(),
        relations: Vec::new(),
    })
}

fn set_labels(alg: &mut GradedAlgebra, lay: &Layout, big: &ExteriorBases) -> Result<()> {
    let n = lay.n;
    let small = ExteriorBases::new(2 * n);
    for k in 0..=4 * n {
        let mut labels: Vec<String> = big.basis(k).indices().iter().map(|ix| monomial_label(ix, |t| generator_label(n, t))).collect();
        for j in 0..lay.f_count(k) {
            labels.push(if k == 2 { format!("f{}", j + 1) } else { format!("f{}[{k}]", j + 1) });
        }
        for (&(ci, ell, mdeg), _) in lay.e_offset.iter().filter(|(&(_, ell, mdeg), _)| mdeg + 2 + 2 * ell == k) {
            for ix in small.basis(mdeg).indices() {
                if ell == 0 && mdeg == 0 {
                    labels.push(format!("e{}", ci + 1));
                } else {
                    labels.push(format!("e{}:{ell}({})", ci + 1, monomial_label(ix, |t| format!("y{t}"))));
                }
            }
            for q in 0..lay.center_points(ci, mdeg) {
                labels.push(format!("e{}:{ell}(p{}[{mdeg}])", ci + 1, q + 1));
            }
        }
        alg.set_labels(k, labels)?;
    }
    Ok(())
}

fn signed_unit(c: usize, s: i32) -> SparseVec {
    SparseVec::unit(c).scaled(&Rational::from_integer(s.into()))
}

fn sparse(pairs: &[(usize, Rational)]) -> SparseVec {
    SparseVec::from_pairs(pairs.iter().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi4() -> RatMatrix {
        RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]])
    }

    #[test]
    fn betti_numbers_of_phi4() {
        let ring = assemble_weight1_example(&phi4(), false).unwrap();
        assert_eq!(ring.betti_numbers(), vec![1, 8, 33, 72, 99, 72, 33, 8, 1]);
        let skip = assemble_weight1_example(&phi4(), true).unwrap();
        assert_eq!(skip.betti_numbers()[2], 32);
        assert_eq!(skip.variant, Variant::Weight1NoP1);
    }

    #[test]
    fn e3_kills_the_diagonal() {
        let ring = assemble_weight1_example(&phi4(), false).unwrap();
        let e3 = ring.class("E3").unwrap();
        let h1 = crate::linalg::Subspace::full(8);
        let k = ring.alg.restricted_kernel(2, &e3, 1, &h1).unwrap();
        assert_eq!(k, ring.subspace("Delta").unwrap());
    }

    #[test]
    fn labels_cover_every_basis_vector() {
        let ring = assemble_weight1_example(&phi4(), false).unwrap();
        for k in 0..=8 {
            assert_eq!(ring.alg.labels(k).len(), ring.alg.dim(k));
        }
        assert_eq!(ring.alg.label(2, 29), "e1");
    }

    #[test]
    fn structure_is_commutative_and_associative() {
        let ring = assemble_weight1_example(&phi4(), false).unwrap();
        assert!(ring.alg.check_graded_commutativity().is_ok());
        let rep = ring.alg.check_associativity(0, 2000, 7);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn small_matrix_rejected() {
        let phi2 = RatMatrix::from_i64(&[&[0, -1], &[1, 1]]);
        assert!(matches!(assemble_weight1_example(&phi2, false), Err(Error::TooSmall(_))));
    }
}
