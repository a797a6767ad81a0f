//! Declarative ring claims. A claim names the marked subspaces it talks
//! about, so it can be evaluated again on a freshly assembled ring.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blowup::ExampleRing;
use crate::error::{Error, Result};
use crate::hodge::deligne::{component_criterion, deligne_p_subspace};
use crate::linalg::{Rational, SparseEchelon, SparseVec, Subspace};

/// A subspace of one graded piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "kebab-case")]
pub enum Space {
    /// Span of the named marked subspaces.
    Marked { names: Vec<String> },
    /// Selected vectors of one marked subspace.
    Basis { name: String, indices: Vec<usize> },
    Full { degree: usize },
    Zero { degree: usize },
    /// `P_m` for `H' = h ⊂ H^ℓ`.
    DelignePm { ell: usize, h: Box<Space>, m: usize },
}

impl Space {
    pub fn marked(names: &[&str]) -> Self {
        Space::Marked {
            names: names.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn p(ell: usize, h: Space, m: usize) -> Self {
        Space::DelignePm { ell, h: Box::new(h), m }
    }

    pub fn describe(&self) -> String {
        match self {
            Space::Marked { names } => names.join("+"),
            Space::Basis { name, indices } => format!("{name}{indices:?}"),
            Space::Full { degree } => format!("H^{degree}"),
            Space::Zero { degree } => format!("0 ⊂ H^{degree}"),
            Space::DelignePm { h, m, .. } => format!("P_{m}({})", h.describe()),
        }
    }

    /// Degree and subspace.
    pub fn eval(&self, ring: &ExampleRing) -> Result<(usize, Subspace)> {
        let alg = &ring.alg;
        match self {
            Space::Marked { names } => {
                let first = names.first().ok_or_else(|| Error::Precondition("empty name list".into()))?;
                let degree = ring.marked(first)?.degree;
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                Ok((degree, ring.span_of(&refs)?))
            }
            Space::Basis { name, indices } => {
                let m = ring.marked(name)?;
                let vs = indices
                    .iter()
                    .map(|&i| {
                        m.vectors
                            .get(i)
                            .cloned()
                            .ok_or_else(|| Error::DimensionMismatch(format!("{name} has no vector {i}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((m.degree, Subspace::from_sparse(alg.dim(m.degree), &vs)))
            }
            Space::Full { degree } => Ok((*degree, Subspace::full(alg.dim(*degree)))),
            Space::Zero { degree } => Ok((*degree, Subspace::zero(alg.dim(*degree)))),
            Space::DelignePm { ell, h, m } => {
                let (hd, hs) = h.eval(ring)?;
                if hd != *ell {
                    return Err(Error::DimensionMismatch(format!("H' has degree {hd}, expected {ell}")));
                }
                Ok((2, deligne_p_subspace(alg, *ell, &hs, *m)?))
            }
        }
    }
}

/// A marked vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRef {
    pub name: String,
    pub index: usize,
}

impl ClassRef {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            index: 0,
        }
    }

    fn eval(&self, ring: &ExampleRing) -> Result<(usize, SparseVec)> {
        let m = ring.marked(&self.name)?;
        let v = m
            .vectors
            .get(self.index)
            .cloned()
            .ok_or_else(|| Error::DimensionMismatch(format!("{} has no vector {}", self.name, self.index)))?;
        Ok((m.degree, v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "kebab-case")]
pub enum RingClaim {
    SubspaceEqual { left: Space, right: Space },
    /// The parts are independent; with `total`, they also sum to it.
    DirectSum { parts: Vec<Space>, total: Option<Space> },
    /// `Ker(·class : domain → H^{ℓ+2}) = expected`.
    KernelEqual { class: ClassRef, domain: Space, expected: Space },
    /// The same kernel identity for every vector of a marked subspace.
    KernelsOfBasisEqual { name: String, domain: Space, expected: Space },
    /// `rank(Σ span(A_t · B_t)) = Σ rank(span(A_t · B_t))`.
    ProductsDirect { terms: Vec<(Space, Space)> },
    PairwiseIntersectionsTrivial { spaces: Vec<Space> },
    ProductsVanish { left: Space, right: Space },
    /// `x_j · x_k = 0` for distinct vectors of a marked subspace.
    DistinctProductsVanish { name: String },
    /// `x² = 0` for every vector of a marked subspace.
    SquaresVanish { name: String },
    /// Random `α` with components in at least two summands have `α² ≠ 0`.
    SampledSquares { summands: Vec<String>, samples: usize, seed: u64 },
    /// Every monomial of the given degree in the generators falls under a
    /// recorded vanishing rule for `α² · monomial`, `α ∈ B₁`.
    MonomialCoverage { generators: Vec<String>, degree: usize },
    ComponentCriterion { ell: usize, h: Space, classes: Vec<ClassRef>, p: Space },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub holds: bool,
    pub detail: String,
}

impl Outcome {
    fn new(holds: bool, detail: String) -> Self {
        Self { holds, detail }
    }
}

impl RingClaim {
    /// Name of the exact routine behind the claim.
    pub fn operation(&self) -> &'static str {
        match self {
            RingClaim::SubspaceEqual { .. } => "rref-subspace-equality",
            RingClaim::DirectSum { .. } => "direct-sum-rank",
            RingClaim::KernelEqual { .. } | RingClaim::KernelsOfBasisEqual { .. } => "restricted-kernel",
            RingClaim::ProductsDirect { .. } => "product-image-rank",
            RingClaim::PairwiseIntersectionsTrivial { .. } => "subspace-intersection",
            RingClaim::ProductsVanish { .. } | RingClaim::DistinctProductsVanish { .. } | RingClaim::SquaresVanish { .. } => {
                "structure-constant-product"
            }
            RingClaim::SampledSquares { .. } => "seeded-sampling-of-squares",
            RingClaim::MonomialCoverage { .. } => "monomial-enumeration",
            RingClaim::ComponentCriterion { .. } => "component-criterion",
        }
    }

    /// Whether a `true` outcome is a proof rather than a sampled search.
    pub fn exact(&self) -> bool {
        !matches!(self, RingClaim::SampledSquares { .. })
    }

    pub fn evaluate(&self, ring: &ExampleRing) -> Result<Outcome> {
        let alg = &ring.alg;
        match self {
            RingClaim::SubspaceEqual { left, right } => {
                let (dl, l) = left.eval(ring)?;
                let (dr, r) = right.eval(ring)?;
                let holds = dl == dr && l == r;
                Ok(Outcome::new(holds, format!("dims {} and {}", l.dim(), r.dim())))
            }
            RingClaim::DirectSum { parts, total } => {
                let evaluated = parts.iter().map(|p| p.eval(ring)).collect::<Result<Vec<_>>>()?;
                let degree = evaluated.first().map(|(d, _)| *d).unwrap_or(0);
                if evaluated.iter().any(|(d, _)| *d != degree) {
                    return Err(Error::DimensionMismatch("parts of different degrees".into()));
                }
                let mut e = SparseEchelon::new(alg.dim(degree));
                for (_, s) in &evaluated {
                    for v in s.sparse_basis() {
                        e.insert(v);
                    }
                }
                let dims: Vec<usize> = evaluated.iter().map(|(_, s)| s.dim()).collect();
                let sum: usize = dims.iter().sum();
                let mut holds = e.rank() == sum;
                let mut detail = format!("part dims {dims:?}, rank of sum {}", e.rank());
                if let Some(t) = total {
                    let (dt, ts) = t.eval(ring)?;
                    let spans = dt == degree && Subspace::from_echelon(&e) == ts;
                    holds &= spans;
                    detail.push_str(&format!(", total dim {}", ts.dim()));
                }
                Ok(Outcome::new(holds, detail))
            }
            RingClaim::KernelEqual { class, domain, expected } => {
                let (cd, v) = class.eval(ring)?;
                let (dd, dom) = domain.eval(ring)?;
                let (_, exp) = expected.eval(ring)?;
                let k = alg.restricted_kernel(cd, &v, dd, &dom)?;
                Ok(Outcome::new(k == exp, format!("kernel dim {}, expected dim {}", k.dim(), exp.dim())))
            }
            RingClaim::KernelsOfBasisEqual { name, domain, expected } => {
                let m = ring.marked(name)?;
                let (dd, dom) = domain.eval(ring)?;
                let (_, exp) = expected.eval(ring)?;
                let mut bad = Vec::new();
                for (i, v) in m.vectors.iter().enumerate() {
                    if alg.restricted_kernel(m.degree, v, dd, &dom)? != exp {
                        bad.push(i);
                    }
                }
                Ok(Outcome::new(
                    bad.is_empty(),
                    format!("{} classes, {} with a different kernel", m.vectors.len(), bad.len()),
                ))
            }
            RingClaim::ProductsDirect { terms } => {
                let mut ranks = Vec::new();
                let mut total: Option<SparseEchelon> = None;
                for (a, b) in terms {
                    let (da, sa) = a.eval(ring)?;
                    let (db, sb) = b.eval(ring)?;
                    let mut e = SparseEchelon::new(alg.dim(da + db));
                    let acc = total.get_or_insert_with(|| SparseEchelon::new(alg.dim(da + db)));
                    if acc.dim() != alg.dim(da + db) {
                        return Err(Error::DimensionMismatch("terms land in different degrees".into()));
                    }
                    for x in sa.sparse_basis() {
                        for y in sb.sparse_basis() {
                            let p = alg.multiply(da, x, db, y)?;
                            e.insert(&p);
                            acc.insert(&p);
                        }
                    }
                    ranks.push(e.rank());
                }
                let combined = total.map(|e| e.rank()).unwrap_or(0);
                let sum: usize = ranks.iter().sum();
                let shown = if ranks.len() > 8 {
                    format!("{} terms", ranks.len())
                } else {
                    format!("ranks {ranks:?}")
                };
                Ok(Outcome::new(combined == sum, format!("{shown}, sum {sum}, combined rank {combined}")))
            }
            RingClaim::PairwiseIntersectionsTrivial { spaces } => {
                let evaluated = spaces.iter().map(|s| s.eval(ring)).collect::<Result<Vec<_>>>()?;
                let mut bad = Vec::new();
                for i in 0..evaluated.len() {
                    for j in i + 1..evaluated.len() {
                        let d = evaluated[i].1.intersect(&evaluated[j].1)?.dim();
                        if d > 0 {
                            bad.push(format!("{} ∩ {} has dim {d}", spaces[i].describe(), spaces[j].describe()));
                        }
                    }
                }
                let detail = if bad.is_empty() {
                    format!("{} pairs, all trivial", evaluated.len() * (evaluated.len().saturating_sub(1)) / 2)
                } else {
                    bad.join("; ")
                };
                Ok(Outcome::new(bad.is_empty(), detail))
            }
            RingClaim::ProductsVanish { left, right } => {
                let (dl, l) = left.eval(ring)?;
                let (dr, r) = right.eval(ring)?;
                let mut nonzero = 0;
                for x in l.sparse_basis() {
                    for y in r.sparse_basis() {
                        if !alg.multiply(dl, x, dr, y)?.is_zero() {
                            nonzero += 1;
                        }
                    }
                }
                Ok(Outcome::new(
                    nonzero == 0,
                    format!("{} products, {nonzero} nonzero", l.dim() * r.dim()),
                ))
            }
            RingClaim::DistinctProductsVanish { name } => {
                let m = ring.marked(name)?;
                let mut nonzero = 0;
                let k = m.vectors.len();
                for i in 0..k {
                    for j in i + 1..k {
                        if !alg.multiply(m.degree, &m.vectors[i], m.degree, &m.vectors[j])?.is_zero() {
                            nonzero += 1;
                        }
                    }
                }
                Ok(Outcome::new(nonzero == 0, format!("{} pairs, {nonzero} nonzero", k * k.saturating_sub(1) / 2)))
            }
            RingClaim::SquaresVanish { name } => {
                let m = ring.marked(name)?;
                let mut nonzero = 0;
                for v in &m.vectors {
                    if !alg.multiply(m.degree, v, m.degree, v)?.is_zero() {
                        nonzero += 1;
                    }
                }
                Ok(Outcome::new(nonzero == 0, format!("{} squares, {nonzero} nonzero", m.vectors.len())))
            }
            RingClaim::SampledSquares { summands, samples, seed } => sampled_squares(ring, summands, *samples, *seed),
            RingClaim::MonomialCoverage { generators, degree } => monomial_coverage(ring, generators, *degree),
            RingClaim::ComponentCriterion { ell, h, classes, p } => {
                let (hd, hs) = h.eval(ring)?;
                if hd != *ell {
                    return Err(Error::DimensionMismatch(format!("H' has degree {hd}, expected {ell}")));
                }
                let (_, ps) = p.eval(ring)?;
                let es = classes.iter().map(|c| c.eval(ring).map(|(_, v)| v)).collect::<Result<Vec<_>>>()?;
                let rep = component_criterion(&ring.alg, *ell, &hs, &es, &ps)?;
                Ok(Outcome::new(
                    rep.passes(),
                    format!(
                        "in P: {}, kernel dims {:?}, pairwise trivial: {}, image ranks {:?} combined {}",
                        rep.members_of_p, rep.kernel_dims, rep.kernels_pairwise_trivial, rep.image_ranks, rep.combined_image_rank
                    ),
                ))
            }
        }
    }
}

fn sampled_squares(ring: &ExampleRing, summands: &[String], samples: usize, seed: u64) -> Result<Outcome> {
    if summands.len() < 2 {
        return Err(Error::Precondition("need at least two summands".into()));
    }
    let parts = summands.iter().map(|s| ring.marked(s)).collect::<Result<Vec<_>>>()?;
    let degree = parts[0].degree;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = 0;
    let mut order: Vec<usize> = (0..parts.len()).collect();
    for _ in 0..samples {
        let k = rng.gen_range(2..=parts.len().min(4));
        order.shuffle(&mut rng);
        let mut alpha = SparseVec::new();
        for &p in &order[..k] {
            let vs = &parts[p].vectors;
            let terms = rng.gen_range(1..=vs.len().min(3));
            let mut component = SparseVec::new();
            while component.is_zero() {
                for _ in 0..terms {
                    let v = &vs[rng.gen_range(0..vs.len())];
                    let c = loop {
                        let c: i64 = rng.gen_range(-3..=3);
                        if c != 0 {
                            break c;
                        }
                    };
                    component = component.add_scaled(&Rational::from_integer(c.into()), v);
                }
            }
            alpha = alpha.add_scaled(&Rational::from_integer(1.into()), &component);
        }
        if ring.alg.multiply(degree, &alpha, degree, &alpha)?.is_zero() {
            counterexamples += 1;
        }
    }
    Ok(Outcome::new(
        counterexamples == 0,
        format!("{samples} samples (seed {seed}), {counterexamples} with vanishing square"),
    ))
}

/// Rules, in the order they are tried, for `α² · m = 0` with `α ∈ B₁` and
/// `m` a monomial in `f_{1j}, f_{2j}, e₁, e₂`.
pub const MONOMIAL_RULES: [&str; 5] = [
    "contains f_1j: α·f_1j = 0",
    "contains f_2j·e_k or e_1·e_2: supported over points",
    "contains f_2j·f_2k with j != k: product vanishes",
    "pure power f_2j^k with k > n: vanishes",
    "pure power e_i^k with k >= n: c1(O(-1))^k = 0",
];

fn monomial_coverage(ring: &ExampleRing, generators: &[String], degree: usize) -> Result<Outcome> {
    let [q1, q2, e1, e2] = generators else {
        return Err(Error::Precondition("expected generators Q1, Q2, E1, E2".into()));
    };
    let size = |g: &String| ring.marked(g).map(|m| m.vectors.len());
    let (s1, s2, s3, s4) = (size(q1)?, size(q2)?, size(e1)?, size(e2)?);
    if s3 != 1 || s4 != 1 {
        return Err(Error::Precondition("E1 and E2 must be single classes".into()));
    }
    let n = ring.n;
    let total = s1 + s2 + 2;
    // generator g: [0, s1) f_1j, [s1, s1+s2) f_2j, s1+s2 = e1, s1+s2+1 = e2
    let group = |g: usize| -> u8 {
        if g < s1 {
            0
        } else if g < s1 + s2 {
            1
        } else {
            2
        }
    };
    let mut counts = [0u64; 5];
    let mut unclassified = 0u64;
    if degree == 0 {
        return Ok(Outcome::new(false, "degree 0: α² itself is not covered".into()));
    }
    let mut mono = vec![0usize; degree];
    loop {
        // mono is nondecreasing
        let first = group(mono[0]);
        let last = group(mono[degree - 1]);
        let rule = if first == 0 {
            Some(0)
        } else if last == 2 && (first == 1 || mono[0] != mono[degree - 1]) {
            Some(1)
        } else if last == 1 {
            if mono[0] != mono[degree - 1] {
                Some(2)
            } else if degree > n {
                Some(3)
            } else {
                None
            }
        } else if degree >= n {
            Some(4)
        } else {
            None
        };
        match rule {
            Some(r) => counts[r] += 1,
            None => unclassified += 1,
        }
        // next nondecreasing sequence
        let mut i = degree;
        loop {
            if i == 0 {
                let covered: u64 = counts.iter().sum();
                let detail = format!(
                    "{} monomials of degree {degree} in {total} generators; per rule {:?}; unclassified {unclassified}",
                    covered + unclassified,
                    counts
                );
                return Ok(Outcome::new(unclassified == 0, detail));
            }
            i -= 1;
            if mono[i] + 1 < total {
                let v = mono[i] + 1;
                for x in &mut mono[i..] {
                    *x = v;
                }
                break;
            }
        }
    }
}
