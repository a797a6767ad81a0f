//! Floating-point helpers: roots of exact polynomials, null vectors,
//! Hermitian spectra. Nothing here feeds an exact certificate.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::rational::to_f64;
use crate::linalg::RatMatrix;
use crate::poly::RatPoly;

pub type CMatrix = DMatrix<Complex64>;

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Complex roots of `p` with multiplicity.
///
/// Order: roots in the upper half plane sorted by real then imaginary part,
/// then their conjugates in the same order, then the real roots ascending.
/// Roots come from the companion matrix and are polished by Newton steps on
/// the exact coefficients.
pub fn complex_roots(p: &RatPoly, tol: f64) -> Result<Vec<Complex64>> {
    let n = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    let monic = p.monic();
    let coeffs: Vec<f64> = monic.coeffs().iter().map(to_f64).collect();
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -coeffs[i];
    }
    let mut roots: Vec<Complex64> = companion.complex_eigenvalues().iter().copied().collect();
    for r in &mut roots {
        for _ in 0..50 {
            let (v, dv) = horner(&coeffs, *r);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            *r -= step;
            if step.norm() <= f64::EPSILON * r.norm().max(1.0) {
                break;
            }
        }
    }
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let cut = tol.max(1e-12) * scale;
    let mut upper: Vec<Complex64> = roots.iter().filter(|r| r.im > cut).copied().collect();
    let mut real: Vec<Complex64> = roots
        .iter()
        .filter(|r| r.im.abs() <= cut)
        .map(|r| Complex64::new(r.re, 0.0))
        .collect();
    let lower = roots.iter().filter(|r| r.im < -cut).count();
    if lower != upper.len() {
        return Err(Error::Degenerate("roots do not pair into conjugates".into()));
    }
    upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    real.sort_by(|a, b| a.re.total_cmp(&b.re));
    let mut out = upper.clone();
    out.extend(upper.iter().map(|r| r.conj()));
    out.extend(real);
    Ok(out)
}

pub fn to_complex_matrix(m: &RatMatrix) -> CMatrix {
    CMatrix::from_fn(m.rows(), m.cols(), |r, c| Complex64::new(to_f64(m.get(r, c)), 0.0))
}

/// Matrix whose columns are the given vectors.
pub fn columns(vs: &[Vec<Complex64>], rows: usize) -> CMatrix {
    CMatrix::from_fn(rows, vs.len(), |r, c| vs[c][r])
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// `σ_max / σ_min` of a matrix with at least as many rows as columns.
pub fn condition_number(m: &CMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if s.len() == m.ncols() && lo > 0.0 => hi / lo,
        (Some(_), _) => f64::INFINITY,
        _ => 1.0,
    }
}

pub fn numeric_rank(m: &CMatrix, tol: f64) -> usize {
    let s = singular_values(m);
    let cut = tol * s.first().copied().unwrap_or(0.0).max(1.0);
    s.iter().filter(|&&x| x > cut).count()
}

/// Right singular vector of the smallest singular value, scaled so that its
/// first largest-modulus component is 1. Also returns `(σ_min, σ_next)`.
pub fn null_vector(m: &CMatrix) -> (Vec<Complex64>, f64, f64) {
    let n = m.ncols();
    // pad to square so the SVD yields a full set of right singular vectors
    let mut a = CMatrix::zeros(m.nrows().max(n), n);
    a.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let (k, &smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    let snext = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, s)| *s)
        .fold(f64::INFINITY, f64::min);
    let mut v: Vec<Complex64> = vt.row(k).iter().map(|z| z.conj()).collect();
    // first component of (nearly) maximal modulus, so ties resolve to the left
    let top = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = v
        .iter()
        .copied()
        .find(|z| z.norm() >= top * (1.0 - 1e-8))
        .unwrap_or(Complex64::new(1.0, 0.0));
    for z in &mut v {
        *z /= pivot;
    }
    (v, smin, snext)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    if h.is_empty() {
        return Vec::new();
    }
    let sym = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let mut e: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(|a, b| a.total_cmp(b));
    e
}

pub fn conj_vec(v: &[Complex64]) -> Vec<Complex64> {
    v.iter().map(|z| z.conj()).collect()
}

pub fn max_norm(vs: &[Vec<Complex64>]) -> f64 {
    vs.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_quartic() {
        let r = complex_roots(&RatPoly::from_i64(&[1, -1, 0, 0, 1]), 1e-9).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r[0].im > 0.0 && r[1].im > 0.0);
        assert!((r[2] - r[0].conj()).norm() < 1e-14);
        let c = [1.0, -1.0, 0.0, 0.0, 1.0];
        for z in &r {
            assert!(horner(&c, *z).0.norm() < 1e-12);
        }
    }

    #[test]
    fn roots_order_for_i() {
        let r = complex_roots(&RatPoly::from_i64(&[1, 0, 1]), 1e-9).unwrap();
        assert!((r[0] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        let real = complex_roots(&RatPoly::from_i64(&[-2, 1, 1]), 1e-9).unwrap();
        assert!((real[0].re + 2.0).abs() < 1e-12 && (real[1].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn null_vector_of_rotation() {
        let phi = to_complex_matrix(&RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]));
        let m = phi - CMatrix::identity(2, 2) * Complex64::new(0.0, 1.0);
        let (v, smin, snext) = null_vector(&m);
        assert!(smin < 1e-12 && snext > 0.5);
        assert!((v[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((v[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn hermitian_spectrum() {
        let h = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, 0.0),
            ],
        );
        let e = hermitian_eigenvalues(&h);
        assert!((e[0] - 1.0).abs() < 1e-12 && (e[1] - 3.0).abs() < 1e-12);
    }
}
