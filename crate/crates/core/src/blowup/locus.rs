//! The four loci `T1 = {0}×T`, `T2 = T×{0}`, `Δ1 = {(x,-x)}`, `Δ2 = {(x,-Φ*x)}`
//! in `T×T`, their first-cohomology restrictions and their intersection points.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rational::{format_rational, is_integer};
use crate::linalg::smith::TorsionCount;
use crate::linalg::{torsion_points, torsion_solution_count, IntMatrix, RatMatrix, Rational};

use super::half_size;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LocusKind {
    T1,
    T2,
    AntiDiag,
    GraphPhi,
    Diag,
    GraphWedge2Phi,
    TwoTorsionPoints,
    IntersectionPoint,
}

impl LocusKind {
    /// The loci blown up in the weight-one example, in blow-up order.
    pub const WEIGHT_ONE: [LocusKind; 4] = [LocusKind::T1, LocusKind::T2, LocusKind::AntiDiag, LocusKind::GraphPhi];

    pub fn needs_phi(self) -> bool {
        matches!(self, LocusKind::GraphPhi | LocusKind::GraphWedge2Phi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusSpec {
    pub kind: LocusKind,
    pub phi: Option<RatMatrix>,
}

impl LocusSpec {
    pub fn new(kind: LocusKind) -> Self {
        Self { kind, phi: None }
    }

    pub fn with_phi(kind: LocusKind, phi: RatMatrix) -> Self {
        Self { kind, phi: Some(phi) }
    }

    fn phi_of_size(&self, size: usize) -> Result<&RatMatrix> {
        let phi = self
            .phi
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("{:?} needs a matrix", self.kind)))?;
        if !phi.is_square() || phi.rows() != size {
            return Err(Error::DimensionMismatch(format!(
                "{:?} needs a {size}x{size} matrix, got {}x{}",
                self.kind,
                phi.rows(),
                phi.cols()
            )));
        }
        Ok(phi)
    }
}

/// Pullback `H¹(T×T) = A⊕A → H¹(Y) = A` for one of the four weight-one loci.
///
/// The graph locus uses `(a, b) ↦ Φa − b`, whose kernel is exactly
/// `Γ_Φ = {(a, Φa)}`. This is the one convention for the graph everywhere.
pub fn restriction_map_h1(spec: &LocusSpec, n: usize) -> Result<RatMatrix> {
    let d = 2 * n;
    let id = RatMatrix::identity(d);
    let zero = RatMatrix::zeros(d, d);
    match spec.kind {
        LocusKind::T1 => RatMatrix::hstack(&[&zero, &id]),
        LocusKind::T2 => RatMatrix::hstack(&[&id, &zero]),
        LocusKind::AntiDiag => RatMatrix::hstack(&[&id, &-&id]),
        LocusKind::GraphPhi => {
            let phi = spec.phi_of_size(d)?;
            RatMatrix::hstack(&[phi, &-&id])
        }
        other => Err(Error::Precondition(format!("{other:?} is not a first-cohomology locus"))),
    }
}

/// Integer equations `E (x, y) ≡ 0 mod Z^{2n}` cutting out the locus in
/// `T×T = R^{4n}/Z^{4n}`. `Φ*` acts on lattice coordinates by `Φᵗ`.
pub fn locus_equation(spec: &LocusSpec, n: usize) -> Result<RatMatrix> {
    let d = 2 * n;
    let id = RatMatrix::identity(d);
    let zero = RatMatrix::zeros(d, d);
    match spec.kind {
        LocusKind::T1 => RatMatrix::hstack(&[&id, &zero]),
        LocusKind::T2 => RatMatrix::hstack(&[&zero, &id]),
        LocusKind::AntiDiag => RatMatrix::hstack(&[&id, &id]),
        LocusKind::GraphPhi => {
            let phi = spec.phi_of_size(d)?;
            if phi.entries().iter().any(|x| !is_integer(x)) {
                return Err(Error::Precondition("Φ must be integral to preserve the lattice".into()));
            }
            RatMatrix::hstack(&[&phi.transpose(), &id])
        }
        other => Err(Error::Precondition(format!("{other:?} has no equation in T×T"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub first: LocusKind,
    pub second: LocusKind,
    pub count: usize,
}

/// Intersection points of the four weight-one loci.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupPoints {
    /// Number of distinct points `z_1..z_M`.
    pub m: usize,
    pub pairs: Vec<PairCount>,
    /// Coordinates in `[0,1)^{4n}`, sorted.
    pub points: Vec<Vec<String>>,
    /// For each locus in blow-up order, the indices of the points on it.
    pub on_locus: Vec<Vec<usize>>,
    /// Set when distinct pairs share points, so `M` is smaller than the sum
    /// of the pair counts.
    pub merged: bool,
}

impl BlowupPoints {
    /// Points on each locus: the blow-up centers after all point blow-ups.
    pub fn per_locus(&self) -> Vec<usize> {
        self.on_locus.iter().map(Vec::len).collect()
    }

    /// Points on locus `i` that also lie on an earlier locus. Without the
    /// initial point blow-ups, these are the points where the proper
    /// transform of the `i`-th center has been blown up by earlier steps.
    pub fn earlier_intersections(&self) -> Vec<usize> {
        (0..self.on_locus.len())
            .map(|i| {
                self.on_locus[i]
                    .iter()
                    .filter(|p| self.on_locus[..i].iter().any(|earlier| earlier.contains(p)))
                    .count()
            })
            .collect()
    }
}

const POINT_LIMIT: usize = 1 << 16;

/// Counts the pairwise intersection points of `T1, T2, Δ1, Δ2` by Smith
/// normal form and collects the distinct ones.
pub fn count_blowup_points(phi: &RatMatrix) -> Result<BlowupPoints> {
    let n = half_size(phi)?;
    let d = 2 * n;
    let chi_at_one = (phi - &RatMatrix::identity(d)).determinant()?;
    if chi_at_one.is_zero() {
        return Err(Error::Precondition("1 is an eigenvalue of Φ".into()));
    }
    let specs: Vec<LocusSpec> = LocusKind::WEIGHT_ONE
        .iter()
        .map(|&k| {
            if k.needs_phi() {
                LocusSpec::with_phi(k, phi.clone())
            } else {
                LocusSpec::new(k)
            }
        })
        .collect();
    let equations: Vec<RatMatrix> = specs.iter().map(|s| locus_equation(s, n)).collect::<Result<_>>()?;

    let mut pairs = Vec::new();
    let mut all: Vec<Vec<Rational>> = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            let stacked = IntMatrix::from_rational(&RatMatrix::vstack(&[&equations[a], &equations[b]])?)?;
            let count = match torsion_solution_count(&stacked)? {
                TorsionCount::Infinite => {
                    return Err(Error::NotTransverse(format!(
                        "{:?} and {:?} meet in a positive-dimensional set",
                        specs[a].kind, specs[b].kind
                    )))
                }
                TorsionCount::Finite(c) => c,
            };
            if count > BigInt::from(POINT_LIMIT) {
                return Err(Error::Precondition(format!("{count} intersection points exceed {POINT_LIMIT}")));
            }
            let pts = torsion_points(&stacked, POINT_LIMIT)?;
            debug_assert_eq!(BigInt::from(pts.len()), count);
            pairs.push(PairCount {
                first: specs[a].kind,
                second: specs[b].kind,
                count: count.to_usize().expect("bounded"),
            });
            all.extend(pts);
        }
    }
    all.sort();
    all.dedup();

    let on_locus = equations
        .iter()
        .map(|e| {
            (0..all.len())
                .filter(|&p| e.mul_vec(&all[p]).expect("sizes agree").iter().all(is_integer))
                .collect()
        })
        .collect();
    let total: usize = pairs.iter().map(|p| p.count).sum();
    Ok(BlowupPoints {
        m: all.len(),
        merged: total > all.len(),
        pairs,
        points: all.iter().map(|p| p.iter().map(format_rational).collect()).collect(),
        on_locus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn phi4() -> RatMatrix {
        RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]])
    }

    #[test]
    fn kernels_of_the_four_restrictions() {
        let n = 2;
        let t1 = restriction_map_h1(&LocusSpec::new(LocusKind::T1), n).unwrap().kernel();
        assert_eq!(t1.dim(), 4);
        assert!(t1.contains(&[1, 0, 0, 0, 0, 0, 0, 0].map(rat)));
        let anti = restriction_map_h1(&LocusSpec::new(LocusKind::AntiDiag), n).unwrap().kernel();
        assert!(anti.contains(&[0, 1, 0, 0, 0, 1, 0, 0].map(rat)));
        let graph = restriction_map_h1(&LocusSpec::with_phi(LocusKind::GraphPhi, phi4()), n).unwrap().kernel();
        assert_eq!(graph.dim(), 4);
        // (e_0, Φ e_0) = (e_0, e_1)
        assert!(graph.contains(&[1, 0, 0, 0, 0, 1, 0, 0].map(rat)));
    }

    #[test]
    fn wrong_kind_is_rejected() {
        assert!(restriction_map_h1(&LocusSpec::new(LocusKind::Diag), 2).is_err());
        assert!(restriction_map_h1(&LocusSpec::new(LocusKind::GraphPhi), 2).is_err());
    }

    #[test]
    fn phi4_has_one_point() {
        let pts = count_blowup_points(&phi4()).unwrap();
        assert_eq!(pts.m, 1);
        assert_eq!(pts.pairs.len(), 6);
        assert!(pts.pairs.iter().all(|p| p.count == 1));
        assert!(pts.merged);
        assert_eq!(pts.per_locus(), vec![1, 1, 1, 1]);
        assert_eq!(pts.earlier_intersections(), vec![0, 1, 1, 1]);
    }

    #[test]
    fn identity_is_rejected() {
        assert!(matches!(count_blowup_points(&RatMatrix::identity(4)), Err(Error::Precondition(_))));
    }
}
