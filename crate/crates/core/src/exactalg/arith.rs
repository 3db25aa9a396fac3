//! Integer identities for the degrees of projection maps between products of
//! projective spaces and their quotients by symmetric groups.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::field::is_prime;

/// `v_p(n!)` by Legendre's formula.
pub fn vp_factorial(p: u64, n: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let mut total = 0;
    let mut pk = p;
    loop {
        total += n / pk;
        match pk.checked_mul(p) {
            Some(next) if next <= n => pk = next,
            _ => break,
        }
    }
    Ok(total)
}

/// `v_p(m)` for `m > 0`.
pub fn vp(p: u64, m: &BigUint) -> u64 {
    let mut m = m.clone();
    let bp = BigUint::from(p);
    let mut v = 0;
    while !m.is_zero() && (&m % &bp).is_zero() {
        m /= &bp;
        v += 1;
    }
    v
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Degree `(nm)! / ((n!)^m m!)` of the map `(P^n)^m -> (P^n)^m / (S_n)^m -> ... `
/// used for `m` blocks of size `n`, and whether it is prime to `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiDegree {
    pub degree: BigUint,
    pub prime_to_p: bool,
}

pub fn pi_degree(p: u64, n: u64, m: u64) -> Result<PiDegree> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if n == 0 || m == 0 {
        return Err(Error::invalid("block size and block count must be positive"));
    }
    let num = factorial(n * m);
    let den = factorial(n).pow(m as u32) * factorial(m);
    let degree = &num / &den;
    debug_assert!((&num % &den).is_zero());
    let prime_to_p = !(&degree % p).is_zero();
    Ok(PiDegree { degree, prime_to_p })
}

/// Checks `v_p((p^r)!) = (p^r - 1)/(p - 1)`.
pub fn legendre_prime_power_identity(p: u64, r: u32) -> Result<bool> {
    let n = p
        .checked_pow(r)
        .ok_or_else(|| Error::BudgetExceeded("p^r overflows".into()))?;
    Ok(vp_factorial(p, n)? == (n - 1) / (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(vp_factorial(2, 10).unwrap(), 8);
        assert_eq!(vp_factorial(5, 100).unwrap(), 24);
        let d = pi_degree(2, 2, 2).unwrap();
        assert_eq!(d.degree, BigUint::from(3u32));
        assert!(d.prime_to_p);
        let d = pi_degree(3, 3, 3).unwrap();
        assert_eq!(d.degree, BigUint::from(280u32));
        assert!(d.prime_to_p);
        assert!(!pi_degree(5, 3, 3).unwrap().prime_to_p);
        assert!(vp_factorial(4, 3).is_err());
    }

    #[test]
    fn prime_power_blocks_are_prime_to_p() {
        // (p^r m)! / ((p^r)!^m m!) is prime to p when m is small relative to p
        for (p, r) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let n = p.pow(r);
            assert!(pi_degree(p, n, 2).unwrap().prime_to_p || p == 2);
            assert!(legendre_prime_power_identity(p, r).unwrap());
        }
    }

    proptest! {
        #[test]
        fn legendre_matches_direct_valuation(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), n in 0u64..300) {
            prop_assert_eq!(vp_factorial(p, n).unwrap(), vp(p, &factorial(n)));
        }

        #[test]
        fn pi_degree_times_denominator(n in 1u64..6, m in 1u64..5) {
            let d = pi_degree(2, n, m).unwrap();
            prop_assert_eq!(d.degree * factorial(n).pow(m as u32) * factorial(m), factorial(n * m));
        }
    }
}
