use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::numeric::{columns, numeric_rank, to_complex_matrix, CMatrix};
use super::structures::WeightOneHS;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

/// Numerical test that `f` is a morphism of weight `m` between weight-one
/// structures: `f(A^{1,0}) ⊂ A'^{1,0}`, and `f ρ(z) v = |z|^{2m} ρ'(z) f v`
/// for `samples` seeded `z` on the unit circle and random real `v`.
///
/// Residuals are compared against `sqrt(tol)` times the problem scale.
pub fn morphism_check(src: &WeightOneHS, dst: &WeightOneHS, f: &RatMatrix, m: i32, tol: f64, samples: usize, seed: u64) -> Result<bool> {
    if f.cols() != src.dim() || f.rows() != dst.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map {}x{} between dimensions {} and {}",
            f.rows(),
            f.cols(),
            src.dim(),
            dst.dim()
        )));
    }
    let fc = to_complex_matrix(f);
    let scale = fc.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let cut = tol.sqrt() * scale;
    for v in src.basis_10() {
        let img = &fc * CMatrix::from_column_slice(v.len(), 1, v);
        let mut all = dst.basis_10().to_vec();
        all.push(img.iter().copied().collect());
        if numeric_rank(&columns(&all, dst.dim()), cut) > dst.n() {
            return Ok(false);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = Complex64::from_polar(1.0, theta);
        let v = CMatrix::from_fn(src.dim(), 1, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
        let lhs = &fc * (src.rho(z) * &v);
        let rhs = dst.rho(z) * (&fc * &v) * Complex64::new(z.norm().powi(2 * m), 0.0);
        if (lhs - rhs).iter().map(|x| x.norm()).fold(0.0, f64::max) > cut {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::structures::{torus_hs_from_phi, DEFAULT_TOL};

    fn phi4() -> RatMatrix {
        RatMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]])
    }

    #[test]
    fn identity_and_phi_are_morphisms() {
        let h = torus_hs_from_phi(&phi4(), &[0, 1], DEFAULT_TOL).unwrap();
        assert!(morphism_check(&h, &h, &RatMatrix::identity(4), 0, DEFAULT_TOL, 64, 1).unwrap());
        assert!(morphism_check(&h, &h, &phi4(), 0, DEFAULT_TOL, 64, 1).unwrap());
    }

    #[test]
    fn generic_map_is_not() {
        let h = torus_hs_from_phi(&phi4(), &[0, 1], DEFAULT_TOL).unwrap();
        let g = RatMatrix::from_i64(&[&[1, 2, 0, 3], &[0, 1, -1, 2], &[5, 0, 1, 1], &[2, -3, 0, 1]]);
        assert!(!morphism_check(&h, &h, &g, 0, DEFAULT_TOL, 64, 1).unwrap());
        assert!(morphism_check(&h, &h, &RatMatrix::identity(2), 0, DEFAULT_TOL, 4, 1).is_err());
    }
}
