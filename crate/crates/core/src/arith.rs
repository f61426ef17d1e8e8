//! Exact natural-number arithmetic: binomials, trial division, prime-power splits.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision natural number; every operation on it here is exact.
pub type Natural = BigUint;

/// Shorthand conversion used throughout the crate and its tests.
pub fn nat(value: u64) -> Natural {
    Natural::from(value)
}

/// Exact binomial coefficient C(n, k); 0 when k > n, never an error.
///
/// Multiplicative evaluation over the smaller side of the symmetry: after step i
/// the accumulator is exactly C(n - s + i, i), so each division is exact.
pub fn binom_exact(n: &Natural, k: &Natural) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let other = n - k;
    let small = if *k <= other { k.clone() } else { other };
    let steps = small
        .to_u64()
        .expect("binomial too large to materialize exactly");
    let base = n - &small;
    let mut acc = Natural::one();
    for i in 1..=steps {
        acc = acc * (&base + i) / i;
    }
    acc
}

/// Multiplicity of the prime `p` in `n`; `n` must be nonzero.
pub fn padic_valuation(n: &Natural, p: &Natural) -> u32 {
    assert!(!n.is_zero(), "valuation of 0 is undefined");
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

/// Trial-division primality; false for 0 and 1. Exact at any size, but meant
/// for desk-scale inputs (the cost is the square root of p).
pub fn is_prime_trial(p: &Natural) -> bool {
    if let Some(p64) = p.to_u64() {
        return is_prime_u64(p64);
    }
    // Beyond u64 the same ladder runs on big integers; correct, just slow.
    if p.is_even() {
        return false;
    }
    let mut d = nat(3);
    while &d * &d <= *p {
        if (p % &d).is_zero() {
            return false;
        }
        d += 2u32;
    }
    true
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 || p % 3 == 0 {
        return false;
    }
    // 6k +/- 1 ladder; d <= p / d avoids overflow near u64::MAX.
    let mut d = 5;
    while d <= p / d {
        if p % d == 0 || p % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Least prime factor of p >= 2 (p itself exactly when p is prime).
pub fn smallest_prime_factor(p: &Natural) -> Result<Natural> {
    if *p < nat(2) {
        return Err(Error::Domain(format!(
            "smallest_prime_factor requires p >= 2, got {p}"
        )));
    }
    if let Some(p64) = p.to_u64() {
        return Ok(nat(smallest_prime_factor_u64(p64)));
    }
    if p.is_even() {
        return Ok(nat(2));
    }
    let mut d = nat(3);
    while &d * &d <= *p {
        if (p % &d).is_zero() {
            return Ok(d);
        }
        d += 2u32;
    }
    Ok(p.clone())
}

fn smallest_prime_factor_u64(p: u64) -> u64 {
    if p % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d <= p / d {
        if p % d == 0 {
            return d;
        }
        d += 2;
    }
    p
}

/// How a composite splits over its least prime factor:
/// `value = prime^exponent * cofactor` with the cofactor coprime to the prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerSplit {
    /// The composite that was split.
    pub value: Natural,
    /// Least prime factor of `value`.
    pub prime: Natural,
    /// Multiplicity of `prime` in `value`; at least 1.
    pub exponent: u32,
    /// `value / prime^exponent`; shares no factor with `prime`.
    pub cofactor: Natural,
}

impl PrimePowerSplit {
    /// `prime^exponent`, the modulus the witness congruences are read against.
    pub fn prime_power(&self) -> Natural {
        self.prime.pow(self.exponent)
    }
}

/// Split a composite p >= 4 over its least prime factor; primes are refused.
pub fn prime_power_split(p: &Natural) -> Result<PrimePowerSplit> {
    let prime = smallest_prime_factor(p)?;
    if prime == *p {
        return Err(Error::PrimeInput(p.clone()));
    }
    let mut exponent = 0u32;
    let mut cofactor = p.clone();
    loop {
        let (q, r) = cofactor.div_rem(&prime);
        if !r.is_zero() {
            break;
        }
        cofactor = q;
        exponent += 1;
    }
    Ok(PrimePowerSplit {
        value: p.clone(),
        prime,
        exponent,
        cofactor,
    })
}
