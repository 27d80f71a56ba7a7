use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{prime_power, FieldSpec};
use crate::matrix::Matrix;
use crate::rng::SplitMix64;

/// Uniform sample from GL(p, q) by rejection: uniform `p x p` matrices are
/// drawn until one is invertible.
pub fn random_invertible(p: usize, field: FieldSpec, rng: &mut SplitMix64) -> Matrix {
    assert!(p >= 1, "p must be positive");
    loop {
        let m = Matrix::random(p, p, field, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// `|GL(p, q)| = prod_{i=0}^{p-1} (q^p - q^i)`.
pub fn gl_count(p: usize, q: u64) -> Result<BigUint> {
    if prime_power(q).is_none() {
        return Err(Error::BadOrder(q));
    }
    if p == 0 {
        return Err(Error::InvalidConfig("p must be at least 1".into()));
    }
    let q = BigUint::from(q);
    let qp = q.pow(p as u32);
    let mut qi = BigUint::one();
    let mut acc = BigUint::one();
    for _ in 0..p {
        acc *= &qp - &qi;
        qi *= &q;
    }
    Ok(acc)
}

/// Probability that a uniform `p x p` matrix over GF(q) is invertible, as the
/// unreduced pair `(|GL(p, q)|, q^(p^2))`.
pub fn acceptance_ratio(p: usize, q: u64) -> Result<(BigUint, BigUint)> {
    let count = gl_count(p, q)?;
    Ok((count, BigUint::from(q).pow((p * p) as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(gl_count(1, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(gl_count(2, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(gl_count(3, 2).unwrap(), BigUint::from(168u32));
        assert_eq!(gl_count(2, 3).unwrap(), BigUint::from(48u32));
        assert_eq!(gl_count(2, 5).unwrap(), BigUint::from(480u32));
        assert_eq!(gl_count(2, 4).unwrap(), BigUint::from(180u32));
    }

    #[test]
    fn bad_order() {
        assert_eq!(gl_count(2, 6), Err(Error::BadOrder(6)));
        assert_eq!(gl_count(2, 1), Err(Error::BadOrder(1)));
        assert!(gl_count(0, 2).is_err());
    }

    #[test]
    fn one_by_one_over_gf2_is_always_one() {
        let f = FieldSpec::prime(2).unwrap();
        let mut rng = SplitMix64::new(0);
        for _ in 0..20 {
            assert_eq!(random_invertible(1, f, &mut rng), Matrix::identity(1, f));
        }
    }

    #[test]
    fn samples_are_invertible() {
        let f = FieldSpec::binary(3).unwrap();
        let mut rng = SplitMix64::new(4);
        for p in 1..6 {
            assert!(random_invertible(p, f, &mut rng).inverse().is_ok());
        }
    }
}
