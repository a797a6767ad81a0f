//! `X × ℙ¹`: tensor with `ℚ[r]/r²`, `deg r = 2`.
//!
//! Degree-`k` layout: `H^k ⊗ 1` followed by `H^{k-2} ⊗ r`.

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::multilinear::GradedAlgebra;

use super::{ExampleRing, MarkedSubspace};

pub fn product_with_p1(ring: &ExampleRing) -> Result<ExampleRing> {
    if ring.times_p1 {
        return Err(Error::Precondition("only one projective-line factor is modeled".into()));
    }
    let old = &ring.alg;
    let top = old.top();
    let d = |k: usize| if k <= top { old.dim(k) } else { 0 };
    // offset of the ⊗r part in new degree k
    let r_off = |k: usize| d(k);
    let dims: Vec<usize> = (0..=top + 2).map(|k| d(k) + if k >= 2 { d(k - 2) } else { 0 }).collect();
    let mut alg = GradedAlgebra::new(dims)?;

    for k in 0..=top + 2 {
        let mut labels: Vec<String> = (0..d(k)).map(|b| old.label(k, b)).collect();
        if k >= 2 {
            labels.extend((0..d(k - 2)).map(|b| {
                if k == 2 {
                    "r".to_string()
                } else {
                    format!("{}·r", old.label(k - 2, b))
                }
            }));
        }
        alg.set_labels(k, labels)?;
    }

    let tensor_r = |v: &SparseVec, deg: usize| v.shifted(r_off(deg + 2));

    for (i, ri, j, rj) in old.specified_blocks() {
        let ri_r = ri.start + r_off(i + 2)..ri.end + r_off(i + 2);
        let rj_r = rj.start + r_off(j + 2)..rj.end + r_off(j + 2);
        alg.specify_block(i, ri.clone(), j, rj.clone())?;
        alg.specify_block(i, ri.clone(), j + 2, rj_r)?;
        alg.specify_block(i + 2, ri_r, j, rj)?;
    }
    for ((i, bi, j, bj), v) in old.stored_products() {
        alg.set_product(i, bi, j, bj, v.clone())?;
        alg.set_product(i, bi, j + 2, r_off(j + 2) + bj, tensor_r(v, i + j))?;
        alg.set_product(i + 2, r_off(i + 2) + bi, j, bj, tensor_r(v, i + j))?;
    }
    // r · (x ⊗ 1) = x ⊗ r, and (x ⊗ r)(y ⊗ r) = 0
    let r = r_off(2);
    for k in 1..=top {
        alg.specify_block(2, r..r + 1, k, 0..d(k))?;
        for b in 0..d(k) {
            alg.set_product(2, r, k, b, SparseVec::unit(r_off(k + 2) + b))?;
        }
    }
    for i in 2..=top + 2 {
        for j in i..=(top + 2).saturating_sub(i) {
            alg.specify_block(i, r_off(i)..r_off(i) + d(i - 2), j, r_off(j)..r_off(j) + d(j - 2))?;
        }
    }

    let mut marked = ring.marked.clone();
    marked.insert("R".into(), MarkedSubspace::new(2, vec![SparseVec::unit(r)]));
    Ok(ExampleRing {
        alg,
        marked,
        times_p1: true,
        ..ring.clone()
    })
}
