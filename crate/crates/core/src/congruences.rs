//! Classical binomial-coefficient congruences, checked in exact arithmetic:
//! scaled arguments mod p and mod p^3, a divisibility transfer from the floor
//! quotient, a falsifier for the scaled congruence at mismatched moduli, and
//! a sweep measuring how deep the prime-power congruence really holds.

use num_traits::Zero;

use crate::arith::{binom_exact, is_prime_trial, nat, padic_valuation, Natural};
use crate::characterization::CongruenceCheck;
use crate::error::{Error, Result};

/// C(np, mp) vs C(n, m) mod p, for prime p and n >= m >= 0.
pub fn check_lucas_corollary(n: &Natural, m: &Natural, p: &Natural) -> Result<CongruenceCheck> {
    if !is_prime_trial(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if m > n {
        return Err(Error::Domain(format!(
            "scaled congruence requires n >= m >= 0, got n = {n}, m = {m}"
        )));
    }
    let (np, mp) = (n * p, m * p);
    let lhs = binom_exact(&np, &mp) % p;
    let rhs = binom_exact(n, m) % p;
    Ok(CongruenceCheck::new(
        lhs,
        rhs,
        p.clone(),
        format!("C({np},{mp}) vs C({n},{m}) mod {p}"),
    ))
}

/// C(np, rp) vs C(n, r) mod p^3, for prime p >= 5.
///
/// Arguments with r > n fall back to the empty selection count 0 on both sides.
pub fn check_bailey_np_rp(n: &Natural, r: &Natural, p: &Natural) -> Result<CongruenceCheck> {
    require_prime_at_least_5(p, "mod-p^3 scaled congruence")?;
    let cube = p.pow(3);
    let (np, rp) = (n * p, r * p);
    let lhs = binom_exact(&np, &rp) % &cube;
    let rhs = binom_exact(n, r) % &cube;
    Ok(CongruenceCheck::new(
        lhs,
        rhs,
        cube,
        format!("C({np},{rp}) vs C({n},{r}) mod {p}^3"),
    ))
}

/// C(N p^3 + n, R p^3 + r) vs C(N, R) * C(n, r) mod p^3, for prime p >= 5
/// and low digits n, r < p.
pub fn check_bailey_digits(
    high_n: &Natural,
    high_r: &Natural,
    low_n: &Natural,
    low_r: &Natural,
    p: &Natural,
) -> Result<CongruenceCheck> {
    require_prime_at_least_5(p, "mod-p^3 digit congruence")?;
    if low_n >= p || low_r >= p {
        return Err(Error::Hypothesis(format!(
            "mod-p^3 digit congruence requires low digits below p, got n = {low_n}, r = {low_r} with p = {p}"
        )));
    }
    let cube = p.pow(3);
    let big_n = high_n * &cube + low_n;
    let big_r = high_r * &cube + low_r;
    let lhs = binom_exact(&big_n, &big_r) % &cube;
    let rhs = binom_exact(high_n, high_r) * binom_exact(low_n, low_r) % &cube;
    Ok(CongruenceCheck::new(
        lhs,
        rhs,
        cube,
        format!("C({big_n},{big_r}) vs C({high_n},{high_r})*C({low_n},{low_r}) mod {p}^3"),
    ))
}

fn require_prime_at_least_5(p: &Natural, what: &str) -> Result<()> {
    if !is_prime_trial(p) || *p < nat(5) {
        return Err(Error::Hypothesis(format!(
            "{what} requires a prime p >= 5, got {p}"
        )));
    }
    Ok(())
}

/// Outcome of the divisibility transfer: when p^alpha divides floor(n/p),
/// it must divide C(n, p) as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApostolCheck {
    /// Whether p^alpha divides floor(n/p) -- the hypothesis side.
    pub applicable: bool,
    /// Present when applicable: C(n, p) mod p^alpha against 0.
    pub check: Option<CongruenceCheck>,
}

/// Check the divisibility transfer for prime p and alpha >= 1.
pub fn check_apostol(n: &Natural, p: &Natural, alpha: u32) -> Result<ApostolCheck> {
    if !is_prime_trial(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if alpha == 0 {
        return Err(Error::Domain(
            "divisibility transfer requires alpha >= 1".into(),
        ));
    }
    let modulus = p.pow(alpha);
    if !((n / p) % &modulus).is_zero() {
        return Ok(ApostolCheck {
            applicable: false,
            check: None,
        });
    }
    let lhs = binom_exact(n, p) % &modulus;
    let description = format!("C({n},{p}) vs 0 mod {p}^{alpha}");
    Ok(ApostolCheck {
        applicable: true,
        check: Some(CongruenceCheck::new(
            lhs,
            Natural::zero(),
            modulus,
            description,
        )),
    })
}

/// Outcome of hunting a pair with C(nd, md) != C(n, m) mod q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FalsifierResult {
    pub d: Natural,
    pub q: Natural,
    pub search_bound: u64,
    /// First violating (n, m) in increasing (n, then m) order, if any.
    pub counterexample: Option<(Natural, Natural)>,
    /// Pairs examined, the violating one included.
    pub checks_performed: u64,
}

/// Search n in [0, bound], m in [0, n] for C(nd, md) != C(n, m) mod q.
///
/// When d and q are powers of one prime the congruence can survive every
/// bound; an exhausted search is evidence of that shape, not proof.
pub fn mestrovic_falsify(d: &Natural, q: &Natural, search_bound: u64) -> Result<FalsifierResult> {
    if *d < nat(2) || *q < nat(2) {
        return Err(Error::Domain(format!(
            "falsifier requires d > 1 and q > 1, got d = {d}, q = {q}"
        )));
    }
    let mut checks = 0u64;
    for n in 0..=search_bound {
        let n_nat = nat(n);
        let nd = &n_nat * d;
        for m in 0..=n {
            checks += 1;
            let m_nat = nat(m);
            let lhs = binom_exact(&nd, &(&m_nat * d)) % q;
            let rhs = binom_exact(&n_nat, &m_nat) % q;
            if lhs != rhs {
                return Ok(FalsifierResult {
                    d: d.clone(),
                    q: q.clone(),
                    search_bound,
                    counterexample: Some((n_nat, m_nat)),
                    checks_performed: checks,
                });
            }
        }
    }
    Ok(FalsifierResult {
        d: d.clone(),
        q: q.clone(),
        search_bound,
        counterexample: None,
        checks_performed: checks,
    })
}

/// How deep the congruence C(n p^k, m p^k) = C(n, m) holds modulo powers of p
/// over a sweep of pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerExplorationReport {
    pub p: Natural,
    /// Exponent k scaling both binomial arguments by p^k.
    pub scale_exponent: u32,
    pub sweep_bound: u64,
    /// Largest l with the congruence mod p^l intact for every pair
    /// 1 <= m <= n <= sweep_bound.
    pub max_power: u32,
    /// First pair (n, m) breaking the congruence at max_power + 1.
    pub tightness_example: (Natural, Natural),
}

/// Sweep all pairs 1 <= m <= n <= sweep_bound and measure the tight modulus
/// exponent, with the pair that stops it from going higher.
pub fn explore_power_congruence(
    p: &Natural,
    scale_exponent: u32,
    sweep_bound: u64,
) -> Result<PowerExplorationReport> {
    if !is_prime_trial(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if scale_exponent == 0 {
        return Err(Error::Domain("power exploration requires k >= 1".into()));
    }
    if sweep_bound < 2 {
        return Err(Error::Domain(format!(
            "power exploration requires a sweep bound >= 2, got {sweep_bound}"
        )));
    }
    let scale = p.pow(scale_exponent);
    // The congruence holds mod p^l for all pairs iff l <= the least valuation
    // of the differences; pairs with difference 0 (n = m) bound nothing.
    let mut tightest: Option<(u32, (Natural, Natural))> = None;
    for n in 1..=sweep_bound {
        let n_nat = nat(n);
        let n_scaled = &n_nat * &scale;
        for m in 1..=n {
            let m_nat = nat(m);
            let diff = binom_exact(&n_scaled, &(&m_nat * &scale)) - binom_exact(&n_nat, &m_nat);
            if diff.is_zero() {
                continue;
            }
            let val = padic_valuation(&diff, p);
            if tightest.as_ref().map_or(true, |(v, _)| val < *v) {
                tightest = Some((val, (n_nat.clone(), m_nat)));
            }
        }
    }
    let (max_power, tightness_example) =
        tightest.expect("a sweep bound >= 2 always meets a nonzero difference");
    Ok(PowerExplorationReport {
        p: p.clone(),
        scale_exponent,
        sweep_bound,
        max_power,
        tightness_example,
    })
}
