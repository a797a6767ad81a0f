use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::RatPoly;

/// Sturm chain `p, p', -rem(...)`, each member scaled by a positive constant
/// to keep coefficients integral and small.
pub fn sturm_chain(p: &RatPoly) -> Result<Vec<RatPoly>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut chain = vec![p.positive_primitive(), p.derivative().positive_primitive()];
    while let Some(last) = chain.last() {
        if last.is_zero() {
            chain.pop();
            break;
        }
        let prev = &chain[chain.len() - 2];
        let (_, r) = prev.divrem(last)?;
        if r.is_zero() {
            break;
        }
        chain.push((-&r).positive_primitive());
    }
    Ok(chain)
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let nonzero: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_at_infinity(p: &RatPoly, positive: bool) -> i8 {
    let lead = p.lead();
    let s: i8 = if lead.is_positive() { 1 } else { -1 };
    match p.degree() {
        Some(d) if !positive && d % 2 == 1 => -s,
        _ => s,
    }
}

/// Number of distinct real roots of `p`.
pub fn sturm_real_root_count(p: &RatPoly) -> Result<usize> {
    let chain = sturm_chain(p)?;
    let neg = sign_changes(chain.iter().map(|q| sign_at_infinity(q, false)));
    let pos = sign_changes(chain.iter().map(|q| sign_at_infinity(q, true)));
    Ok(neg - pos)
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn sturm_count_between(p: &RatPoly, a: &crate::linalg::Rational, b: &crate::linalg::Rational) -> Result<usize> {
    let chain = sturm_chain(p)?;
    let at = |x: &crate::linalg::Rational| {
        sign_changes(chain.iter().map(|q| {
            let v = q.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        }))
    };
    Ok(at(a).saturating_sub(at(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    #[test]
    fn root_counts() {
        assert_eq!(sturm_real_root_count(&RatPoly::from_i64(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(sturm_real_root_count(&RatPoly::from_i64(&[1, -1, 0, 0, 1])).unwrap(), 0);
        assert_eq!(sturm_real_root_count(&RatPoly::from_i64(&[-1, 0, 1])).unwrap(), 2);
        // (x-1)^2 (x+2): distinct roots only
        assert_eq!(sturm_real_root_count(&RatPoly::from_i64(&[2, -3, 0, 1])).unwrap(), 2);
        assert_eq!(sturm_real_root_count(&RatPoly::from_i64(&[7])).unwrap(), 0);
        assert!(sturm_real_root_count(&RatPoly::zero()).is_err());
    }

    #[test]
    fn interval_count() {
        let p = RatPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(sturm_count_between(&p, &rat(0), &rat(5)).unwrap(), 1);
        assert_eq!(sturm_count_between(&p, &rat(-5), &rat(5)).unwrap(), 2);
    }
}
