//! Graded-ring models of iterated blow-ups of tori and Kummer-type varieties.
//!
//! The rings are assembled from the blow-up decomposition
//! `H^k(X̃) = H^k(X) ⊕ ⊕_ℓ H^{k-2-2ℓ}(Y)`, together with the exceptional
//! classes and restriction maps needed by the hypothesis checks. Products that
//! no check uses stay unspecified.

mod locus;
mod p1;
mod weight1;
mod weight2;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::io::MatrixDoc;
use crate::linalg::rational::{format_rational, parse_rational};
use crate::linalg::{RatMatrix, SparseVec, Subspace};
use crate::multilinear::{AlgebraDoc, GradedAlgebra};

pub use locus::{count_blowup_points, locus_equation, restriction_map_h1, BlowupPoints, LocusKind, LocusSpec, PairCount};
pub use p1::product_with_p1;
pub use weight1::{assemble_weight1_example, assemble_weight1_model};
pub use weight2::{assemble_weight2_example, weight2_betti_numbers};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "weight1")]
    Weight1,
    #[serde(rename = "weight1-noP1")]
    Weight1NoP1,
    #[serde(rename = "weight2")]
    Weight2,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Weight1 => "weight1",
            Variant::Weight1NoP1 => "weight1-noP1",
            Variant::Weight2 => "weight2",
        }
    }

    pub fn is_weight_one(self) -> bool {
        matches!(self, Variant::Weight1 | Variant::Weight1NoP1)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weight1" => Ok(Variant::Weight1),
            "weight1-noP1" => Ok(Variant::Weight1NoP1),
            "weight2" => Ok(Variant::Weight2),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

/// Named vectors of one degree. Single-vector entries (`E1`, `R`) keep their
/// exact scaling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSubspace {
    pub degree: usize,
    pub vectors: Vec<SparseVec>,
}

impl MarkedSubspace {
    pub fn new(degree: usize, vectors: Vec<SparseVec>) -> Self {
        Self { degree, vectors }
    }

    pub fn coordinate(degree: usize, range: std::ops::Range<usize>) -> Self {
        Self::new(degree, range.map(SparseVec::unit).collect())
    }

    pub fn span(&self, ambient_dim: usize) -> Subspace {
        Subspace::from_sparse(ambient_dim, &self.vectors)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationBasis {
    /// Read off the stored structure constants.
    Verified,
    /// Geometric input recorded with the model.
    Axiom,
}

/// Entry of the top-degree relation table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub statement: String,
    pub basis: RelationBasis,
}

#[derive(Debug, Clone)]
pub struct ExampleRing {
    pub alg: GradedAlgebra,
    pub marked: BTreeMap<String, MarkedSubspace>,
    /// Complex dimension of the torus factor.
    pub n: usize,
    pub variant: Variant,
    pub times_p1: bool,
    pub phi: Option<RatMatrix>,
    pub points: Option<BlowupPoints>,
    /// Points blown up on each center before it is blown up (weight one).
    pub point_counts: Vec<usize>,
    pub relations: Vec<Relation>,
}

impl ExampleRing {
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.alg.dims().to_vec()
    }

    pub fn marked(&self, name: &str) -> Result<&MarkedSubspace> {
        self.marked
            .get(name)
            .ok_or_else(|| Error::Precondition(format!("ring has no marked subspace {name:?}")))
    }

    pub fn subspace(&self, name: &str) -> Result<Subspace> {
        let m = self.marked(name)?;
        Ok(m.span(self.alg.dim(m.degree)))
    }

    /// The single class stored under `name`.
    pub fn class(&self, name: &str) -> Result<SparseVec> {
        let m = self.marked(name)?;
        match m.vectors.as_slice() {
            [v] => Ok(v.clone()),
            _ => Err(Error::Precondition(format!("{name:?} is not a single class"))),
        }
    }

    /// Sum of the named subspaces, all of the same degree.
    pub fn span_of(&self, names: &[&str]) -> Result<Subspace> {
        let degree = self.marked(names[0])?.degree;
        let mut vs = Vec::new();
        for name in names {
            let m = self.marked(name)?;
            if m.degree != degree {
                return Err(Error::DimensionMismatch(format!("{name:?} is not in degree {degree}")));
            }
            vs.extend(m.vectors.iter().cloned());
        }
        Ok(Subspace::from_sparse(self.alg.dim(degree), &vs))
    }

    pub fn variant_label(&self) -> String {
        if self.times_p1 {
            format!("{}×P1", self.variant)
        } else {
            self.variant.to_string()
        }
    }

    pub fn to_doc(&self) -> ExampleRingDoc {
        ExampleRingDoc {
            variant: self.variant,
            times_p1: self.times_p1,
            n: self.n,
            phi: self.phi.as_ref().map(MatrixDoc::from),
            point_counts: self.point_counts.clone(),
            points: self.points.clone(),
            relations: self.relations.clone(),
            marked: self
                .marked
                .iter()
                .map(|(name, m)| MarkedDoc {
                    name: name.clone(),
                    degree: m.degree,
                    vectors: m.vectors.iter().map(sparse_to_doc).collect(),
                })
                .collect(),
            algebra: self.alg.to_doc(),
        }
    }

    pub fn from_doc(doc: &ExampleRingDoc) -> Result<Self> {
        let alg = GradedAlgebra::from_doc(&doc.algebra)?;
        let mut marked = BTreeMap::new();
        for m in &doc.marked {
            if m.degree > alg.top() {
                return Err(Error::Parse(format!("marked subspace {:?} has degree {}", m.name, m.degree)));
            }
            let vectors = m
                .vectors
                .iter()
                .map(|v| sparse_from_doc(v, alg.dim(m.degree)))
                .collect::<Result<_>>()?;
            marked.insert(m.name.clone(), MarkedSubspace::new(m.degree, vectors));
        }
        Ok(Self {
            alg,
            marked,
            n: doc.n,
            variant: doc.variant,
            times_p1: doc.times_p1,
            phi: doc.phi.as_ref().map(RatMatrix::try_from).transpose()?,
            points: doc.points.clone(),
            point_counts: doc.point_counts.clone(),
            relations: doc.relations.clone(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_doc())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedDoc {
    pub name: String,
    pub degree: usize,
    pub vectors: Vec<Vec<(usize, String)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleRingDoc {
    pub variant: Variant,
    pub times_p1: bool,
    pub n: usize,
    pub phi: Option<MatrixDoc>,
    pub point_counts: Vec<usize>,
    pub points: Option<BlowupPoints>,
    pub relations: Vec<Relation>,
    pub marked: Vec<MarkedDoc>,
    pub algebra: AlgebraDoc,
}

fn sparse_to_doc(v: &SparseVec) -> Vec<(usize, String)> {
    v.entries().iter().map(|(i, x)| (*i, format_rational(x))).collect()
}

fn sparse_from_doc(v: &[(usize, String)], dim: usize) -> Result<SparseVec> {
    let mut pairs = Vec::with_capacity(v.len());
    for (i, x) in v {
        if *i >= dim {
            return Err(Error::Parse(format!("coordinate {i} outside dimension {dim}")));
        }
        pairs.push((*i, parse_rational(x)?));
    }
    Ok(SparseVec::from_pairs(pairs))
}

/// `n` for a square matrix of even size `2n`.
pub(crate) fn half_size(phi: &RatMatrix) -> Result<usize> {
    if !phi.is_square() {
        return Err(Error::NotSquare {
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    if phi.rows() % 2 == 1 {
        return Err(Error::TooSmall(format!("size {} is odd", phi.rows())));
    }
    Ok(phi.rows() / 2)
}
