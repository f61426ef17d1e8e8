//! Binomial residues modulo a prime through base-p digits, and the
//! freshman's-dream coefficient test.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{is_prime_trial, nat, Natural};
use crate::error::{Error, Result};

/// Upper bound on multiplicative steps a single digit evaluation may spend.
/// Beyond it the prime is too large for this route and the call is refused.
const DIGIT_WORK_CAP: u64 = 100_000_000;

/// Positional digits of a value in one base, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseDigits {
    pub base: Natural,
    /// `[0]` for value 0; otherwise the most significant digit is nonzero.
    pub digits: Vec<Natural>,
    pub value: Natural,
}

/// Decompose `value` in base `base` >= 2, least significant digit first.
pub fn digits_base(value: &Natural, base: &Natural) -> Result<BaseDigits> {
    if *base < nat(2) {
        return Err(Error::Domain(format!(
            "digits_base requires base >= 2, got {base}"
        )));
    }
    let mut digits = Vec::new();
    let mut rest = value.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(base);
        digits.push(r);
        rest = q;
    }
    if digits.is_empty() {
        digits.push(Natural::zero());
    }
    Ok(BaseDigits {
        base: base.clone(),
        digits,
        value: value.clone(),
    })
}

/// C(n, k) mod p for prime p, evaluated digit by digit in base p.
///
/// The residue is the product of the per-digit binomials C(n_i, k_i) mod p;
/// any digit with k_i > n_i short-circuits the whole product to 0. p is
/// verified by trial division before anything else runs.
pub fn binom_mod_prime_lucas(n: &Natural, k: &Natural, p: &Natural) -> Result<Natural> {
    if !is_prime_trial(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if let (Some(n64), Some(k64), Some(p64)) = (n.to_u64(), k.to_u64(), p.to_u64()) {
        return digit_product_u64(n64, k64, p64).map(nat);
    }
    digit_product_big(n, k, p)
}

fn digit_product_u64(mut n: u64, mut k: u64, p: u64) -> Result<u64> {
    let mut budget = DIGIT_WORK_CAP;
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        n /= p;
        k /= p;
        if kd > nd {
            return Ok(0);
        }
        acc = mulmod(acc, binom_digit_u64(nd, kd, p, &mut budget)?, p);
    }
    Ok(acc)
}

/// C(a, b) mod p for digits 0 <= b <= a < p: numerator product times the
/// inverse of b! mod p. Neither product is divisible by p, so the result is
/// a unit times a unit -- never 0.
fn binom_digit_u64(a: u64, b: u64, p: u64, budget: &mut u64) -> Result<u64> {
    let s = b.min(a - b);
    if *budget < s {
        return Err(Error::CapExceeded(format!(
            "digit binomial C({a},{b}) mod {p} needs {s} steps, beyond the work cap"
        )));
    }
    *budget -= s;
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 1..=s {
        num = mulmod(num, (a - s + i) % p, p);
        den = mulmod(den, i % p, p);
    }
    Ok(mulmod(num, powmod(den, p - 2, p), p))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Arbitrary-precision fallback for arguments or primes beyond u64.
fn digit_product_big(n: &Natural, k: &Natural, p: &Natural) -> Result<Natural> {
    let n_digits = digits_base(n, p)?.digits;
    let k_digits = digits_base(k, p)?.digits;
    let mut budget = DIGIT_WORK_CAP;
    let mut acc = Natural::one();
    let zero = Natural::zero();
    for i in 0..n_digits.len().max(k_digits.len()) {
        let nd = n_digits.get(i).unwrap_or(&zero);
        let kd = k_digits.get(i).unwrap_or(&zero);
        if kd > nd {
            return Ok(Natural::zero());
        }
        acc = acc * binom_digit_big(nd, kd, p, &mut budget)? % p;
    }
    Ok(acc)
}

fn binom_digit_big(a: &Natural, b: &Natural, p: &Natural, budget: &mut u64) -> Result<Natural> {
    let s = b.min(&(a - b)).clone();
    let steps = s.to_u64().filter(|&steps| steps <= *budget).ok_or_else(|| {
        Error::CapExceeded(format!(
            "digit binomial C({a},{b}) mod {p} needs {s} steps, beyond the work cap"
        ))
    })?;
    *budget -= steps;
    let mut num = Natural::one();
    let mut den = Natural::one();
    let base = a - &s;
    for i in 1..=steps {
        num = num * ((&base + i) % p) % p;
        den = den * i % p;
    }
    let inv = den.modpow(&(p - 2u32), p);
    Ok(num * inv % p)
}

/// Whether p divides C(p, k), for prime p and 0 <= k <= p.
/// True exactly on the interior 0 < k < p.
pub fn binom_p_divisibility(p: &Natural, k: &Natural) -> Result<bool> {
    if !is_prime_trial(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if k > p {
        return Err(Error::Domain(format!(
            "binom_p_divisibility requires k <= p, got k = {k} with p = {p}"
        )));
    }
    Ok(binom_mod_prime_lucas(p, k, p)?.is_zero())
}

/// Coefficients of (1 + x)^m with every entry reduced mod m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffVectorModM {
    pub modulus: Natural,
    /// Entry i is C(m, i) mod m; all entries are below the modulus.
    pub coefficients: Vec<Natural>,
}

/// Coefficients of (1 + x)^m mod m for m >= 2, up to degree min(m, deg_cap).
///
/// The interior entries (degrees 1..m-1) vanish simultaneously exactly when m
/// is prime. Each entry is the exact binomial C(m, i) reduced afterwards; the
/// running product keeps every intermediate an exact binomial.
pub fn freshman_dream_coeffs(m: &Natural, deg_cap: &Natural) -> Result<CoeffVectorModM> {
    if *m < nat(2) {
        return Err(Error::Domain(format!(
            "freshman_dream_coeffs requires m >= 2, got {m}"
        )));
    }
    let top = m.min(deg_cap);
    let entries = top
        .to_u64()
        .and_then(|t| t.checked_add(1))
        .filter(|t| *t <= 10_000_000)
        .ok_or_else(|| {
            Error::CapExceeded(format!("{top}+1 coefficients cannot be materialized"))
        })?;
    let mut coefficients = Vec::with_capacity(entries as usize);
    let mut binom = Natural::one(); // running exact C(m, i)
    coefficients.push(&binom % m);
    for i in 1..entries {
        binom = binom * (m - (i - 1)) / i;
        coefficients.push(&binom % m);
    }
    Ok(CoeffVectorModM {
        modulus: m.clone(),
        coefficients,
    })
}
