//! The floor-quotient congruence C(n, p) = floor(n/p) (mod p): it holds at
//! every n exactly when p is prime, and every composite p has a one-shot
//! refutation at n = p + q for q its least prime factor.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{
    binom_exact, is_prime_trial, nat, prime_power_split, Natural, PrimePowerSplit,
};
use crate::error::{Error, Result};
use crate::lucas::binom_mod_prime_lucas;

/// Default cap on the number of full blocks the decomposition will enumerate.
pub const DEFAULT_BLOCK_CAP: u64 = 8;

/// Ceiling on compositions the decomposition may enumerate before refusing.
const COMPOSITION_CAP: u64 = 2_000_000;

/// Two residues compared against one modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceCheck {
    pub lhs_residue: Natural,
    pub rhs_residue: Natural,
    pub modulus: Natural,
    /// Forced to `lhs_residue == rhs_residue` on construction.
    pub holds: bool,
    pub description: String,
}

impl CongruenceCheck {
    pub fn new(
        lhs_residue: Natural,
        rhs_residue: Natural,
        modulus: Natural,
        description: String,
    ) -> Self {
        debug_assert!(lhs_residue < modulus && rhs_residue < modulus);
        let holds = lhs_residue == rhs_residue;
        CongruenceCheck {
            lhs_residue,
            rhs_residue,
            modulus,
            holds,
            description,
        }
    }
}

/// Compare C(n, p) with floor(n/p) mod p, any p >= 2.
///
/// For prime p the left side goes through the base-p digit evaluator; for
/// composite p the exact binomial is reduced directly. The routes agree
/// wherever both apply, which the test suite checks against a third,
/// addition-only route.
pub fn check_thm21(n: &Natural, p: &Natural) -> Result<CongruenceCheck> {
    if *p < nat(2) {
        return Err(Error::Domain(format!(
            "floor congruence check requires p >= 2, got {p}"
        )));
    }
    let lhs = if is_prime_trial(p) {
        binom_mod_prime_lucas(n, p, p)?
    } else {
        binom_exact(n, p) % p
    };
    let rhs = (n / p) % p;
    Ok(CongruenceCheck::new(
        lhs,
        rhs,
        p.clone(),
        format!("C({n},{p}) vs floor({n}/{p}) mod {p}"),
    ))
}

/// The congruence refuted at the single point n = p + q, with the residues
/// that pin down *why* it fails for composite p.
///
/// All three `*_residue` fields are read modulo `split.prime_power()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub p: Natural,
    pub split: PrimePowerSplit,
    /// p plus the least prime factor of p.
    pub witness_n: Natural,
    /// C(witness_n, p) mod prime^exponent, from the exact binomial.
    pub binom_residue: Natural,
    /// (prime^(exponent-1) * cofactor + 1) mod prime^exponent.
    /// Always equals `binom_residue`, and never 1, which forces the failure.
    pub predicted_residue: Natural,
    /// floor(witness_n / p) mod prime^exponent; the quotient is exactly 1
    /// because witness_n < 2p.
    pub floor_residue: Natural,
    /// The failed floor-congruence comparison mod p itself.
    pub check_mod_p: CongruenceCheck,
}

/// Residue of C(p + q, p) mod prime^exponent for a composite split of p.
pub fn witness_predicted_residue(split: &PrimePowerSplit) -> Natural {
    let modulus = split.prime_power();
    (split.prime.pow(split.exponent - 1) * &split.cofactor + 1u32) % modulus
}

/// Build the refutation of the floor congruence at n = p + q for composite p >= 4.
pub fn composite_witness(p: &Natural) -> Result<WitnessReport> {
    if *p < nat(4) {
        return Err(Error::Domain(format!(
            "composite_witness requires a composite p >= 4, got {p}"
        )));
    }
    let split = prime_power_split(p)?;
    let witness_n = p + &split.prime;
    let binom = binom_exact(&witness_n, p);
    let prime_power = split.prime_power();
    let binom_residue = &binom % &prime_power;
    let predicted_residue = witness_predicted_residue(&split);
    let floor_residue = (&witness_n / p) % &prime_power;
    let check_mod_p = CongruenceCheck::new(
        &binom % p,
        (&witness_n / p) % p,
        p.clone(),
        format!("C({witness_n},{p}) vs floor({witness_n}/{p}) mod {p}"),
    );
    Ok(WitnessReport {
        p: p.clone(),
        split,
        witness_n,
        binom_residue,
        predicted_residue,
        floor_residue,
        check_mod_p,
    })
}

/// What backs a primality verdict from the floor congruence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimalityEvidence {
    /// A single n where the congruence fails, with the full refutation.
    Witness(Box<WitnessReport>),
    /// The congruence held at every n in [0, n_max].
    RangeVerified { n_max: Natural },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationVerdict {
    pub p: Natural,
    pub is_prime: bool,
    pub evidence: PrimalityEvidence,
}

/// Primality of p >= 2 decided through the floor congruence, sweeping
/// n in [0, 4p] when p is prime. Deliberately naive; it always agrees with
/// trial division, which the tests assert.
pub fn is_prime_by_characterization(p: &Natural) -> Result<CharacterizationVerdict> {
    is_prime_by_characterization_with_range(p, &(p * 4u32))
}

/// As [`is_prime_by_characterization`] with an explicit verification range.
pub fn is_prime_by_characterization_with_range(
    p: &Natural,
    n_max: &Natural,
) -> Result<CharacterizationVerdict> {
    if *p < nat(2) {
        return Err(Error::Domain(format!(
            "primality check requires p >= 2, got {p}"
        )));
    }
    if is_prime_trial(p) {
        let mut n = Natural::zero();
        while n <= *n_max {
            let check = check_thm21(&n, p)?;
            // The prime direction of the characterization: a failure here
            // would be an arithmetic bug, not new mathematics.
            assert!(
                check.holds,
                "floor congruence failed for prime {p} at n = {n}"
            );
            n += 1u32;
        }
        Ok(CharacterizationVerdict {
            p: p.clone(),
            is_prime: true,
            evidence: PrimalityEvidence::RangeVerified {
                n_max: n_max.clone(),
            },
        })
    } else {
        let report = composite_witness(p)?;
        Ok(CharacterizationVerdict {
            p: p.clone(),
            is_prime: false,
            evidence: PrimalityEvidence::Witness(Box::new(report)),
        })
    }
}

/// One way of drawing p items that touches more than a single block:
/// its per-compartment pick counts and how many selections realize them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedTerm {
    /// Picks from each of the q full blocks, then from the remainder.
    pub composition: Vec<Natural>,
    /// C(r, a_last) * product of C(p, a_i): selections with these counts.
    pub term_value: Natural,
}

/// C(n, p) split combinatorially: items in q blocks of p plus a remainder r,
/// full-block draws counted apart from everything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub n: Natural,
    pub p: Natural,
    /// floor(n/p), the number of full blocks.
    pub full_blocks: Natural,
    /// n mod p, the size of the leftover compartment.
    pub remainder: Natural,
    /// Selections that drain one whole block; counted during enumeration and
    /// always equal to `full_blocks`.
    pub full_block_count: Natural,
    /// Every other composition, ordered lexicographically by pick counts.
    pub mixed_terms: Vec<MixedTerm>,
    /// full_block_count + sum of mixed terms; equals C(n, p) exactly.
    pub total: Natural,
}

/// Decompose C(n, p) over blocks of size p, under the default block cap.
pub fn block_selection_decomposition(n: &Natural, p: &Natural) -> Result<BlockDecomposition> {
    block_selection_decomposition_capped(n, p, DEFAULT_BLOCK_CAP)
}

/// As [`block_selection_decomposition`] with an explicit cap on ⌊n/p⌋.
pub fn block_selection_decomposition_capped(
    n: &Natural,
    p: &Natural,
    block_cap: u64,
) -> Result<BlockDecomposition> {
    if *p < nat(2) {
        return Err(Error::Domain(format!(
            "block decomposition requires p >= 2, got {p}"
        )));
    }
    if n < p {
        return Err(Error::Domain(format!(
            "block decomposition requires n >= p, got n = {n}, p = {p}"
        )));
    }
    let (q_nat, r_nat) = n.div_rem(p);
    let q = q_nat.to_u64().filter(|q| *q <= block_cap).ok_or_else(|| {
        Error::CapExceeded(format!(
            "decomposition of C({n},{p}) needs {q_nat} blocks, above the cap {block_cap}"
        ))
    })?;
    // Compositions of p into q+1 parts number at most C(p+q, q); refuse grids
    // that could not be enumerated anyway.
    if binom_exact(&(p + q), &nat(q)) > nat(COMPOSITION_CAP) {
        return Err(Error::CapExceeded(format!(
            "decomposition of C({n},{p}) would enumerate more than {COMPOSITION_CAP} compositions"
        )));
    }
    let p64 = p.to_u64().expect("p fits u64 once the composition cap holds");
    let r64 = r_nat.to_u64().expect("r < p");

    let mut full_block_count = 0u64;
    let mut mixed_terms = Vec::new();
    let mut mixed_sum = Natural::zero();
    let mut parts = vec![0u64; q as usize + 1];
    enumerate_compositions(
        p64,
        r64,
        0,
        p64,
        &mut parts,
        &mut |parts: &[u64]| {
            // A sum of p with one slot at p leaves every other slot 0; only
            // the q block slots can reach p since the remainder holds r < p.
            if parts[..q as usize].contains(&p64) {
                full_block_count += 1;
                return;
            }
            let mut term = binom_exact(&nat(r64), &nat(parts[q as usize]));
            for &a in &parts[..q as usize] {
                term *= binom_exact(&nat(p64), &nat(a));
            }
            mixed_sum += &term;
            mixed_terms.push(MixedTerm {
                composition: parts.iter().map(|&a| nat(a)).collect(),
                term_value: term,
            });
        },
    );
    let total = nat(full_block_count) + &mixed_sum;
    // The identity this whole structure demonstrates.
    assert_eq!(
        total,
        binom_exact(n, p),
        "block decomposition of C({n},{p}) does not add up"
    );
    Ok(BlockDecomposition {
        n: n.clone(),
        p: p.clone(),
        full_blocks: q_nat,
        remainder: r_nat,
        full_block_count: nat(full_block_count),
        mixed_terms,
        total,
    })
}

/// Emit all (a_1..a_q, a_last) with sum `remaining`, a_i <= p, a_last <= r,
/// in lexicographic order. `slot` counts from 0; the last slot is the remainder.
fn enumerate_compositions(
    remaining: u64,
    r: u64,
    slot: usize,
    p: u64,
    parts: &mut Vec<u64>,
    emit: &mut impl FnMut(&[u64]),
) {
    let last = parts.len() - 1;
    if slot == last {
        if remaining <= r {
            parts[last] = remaining;
            emit(parts);
        }
        return;
    }
    // Later slots can absorb at most this much; skipping lower values prunes
    // branches that could never reach the full sum.
    let later_cap = (last - slot - 1) as u64 * p + r;
    let lo = remaining.saturating_sub(later_cap);
    for a in lo..=remaining.min(p) {
        parts[slot] = a;
        enumerate_compositions(remaining - a, r, slot + 1, p, parts, emit);
    }
    parts[slot] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_congruence_pins() {
        let c = check_thm21(&nat(10), &nat(7)).unwrap();
        assert!(c.holds);
        assert_eq!((c.lhs_residue, c.rhs_residue), (nat(1), nat(1)));

        let c = check_thm21(&nat(0), &nat(5)).unwrap();
        assert!(c.holds);
        assert_eq!((c.lhs_residue, c.rhs_residue), (nat(0), nat(0)));

        // C(6,4) = 15 = 3 mod 4, but floor(6/4) = 1.
        let c = check_thm21(&nat(6), &nat(4)).unwrap();
        assert!(!c.holds);
        assert_eq!((c.lhs_residue, c.rhs_residue), (nat(3), nat(1)));
    }

    #[test]
    fn floor_congruence_can_hold_at_single_points_of_a_composite() {
        // Failing somewhere is not failing everywhere: C(100,9) = 2 = floor(100/9) mod 9.
        let c = check_thm21(&nat(100), &nat(9)).unwrap();
        assert!(c.holds);
        assert_eq!((c.lhs_residue, c.rhs_residue), (nat(2), nat(2)));

        let c = check_thm21(&nat(25), &nat(10)).unwrap();
        assert!(!c.holds);
        assert_eq!((c.lhs_residue, c.rhs_residue), (nat(0), nat(2)));
    }

    #[test]
    fn floor_congruence_rejects_p_below_two() {
        assert!(matches!(
            check_thm21(&nat(5), &nat(1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn witness_pins() {
        // p = 4 = 2^2: C(6,4) = 15 = 3 mod 4, predicted 2*1 + 1 = 3.
        let w = composite_witness(&nat(4)).unwrap();
        assert_eq!(w.witness_n, nat(6));
        assert_eq!(w.binom_residue, nat(3));
        assert_eq!(w.predicted_residue, nat(3));
        assert_eq!(w.floor_residue, nat(1));
        assert!(!w.check_mod_p.holds);

        // p = 9 = 3^2: C(12,9) = 220 = 4 mod 9, predicted 3*1 + 1 = 4.
        let w = composite_witness(&nat(9)).unwrap();
        assert_eq!(w.witness_n, nat(12));
        assert_eq!(w.binom_residue, nat(4));
        assert_eq!(w.predicted_residue, nat(4));
        assert!(!w.check_mod_p.holds);

        // p = 12 = 2^2 * 3: C(14,12) = 91 = 3 mod 4 = predicted (2*3 + 1) mod 4,
        // and 91 = 7 mod 12 against floor 1.
        let w = composite_witness(&nat(12)).unwrap();
        assert_eq!(w.witness_n, nat(14));
        assert_eq!(w.binom_residue, nat(3));
        assert_eq!(w.predicted_residue, nat(3));
        assert_eq!(w.check_mod_p.lhs_residue, nat(7));
        assert_eq!(w.check_mod_p.rhs_residue, nat(1));
        assert!(!w.check_mod_p.holds);
    }

    #[test]
    fn witness_rejects_primes_and_small_values() {
        assert!(matches!(
            composite_witness(&nat(7)),
            Err(Error::PrimeInput(_))
        ));
        assert!(matches!(
            composite_witness(&nat(3)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            composite_witness(&nat(1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn predicted_residue_pins() {
        let split = |q: u64, x: u32, k: u64| PrimePowerSplit {
            value: nat(q.pow(x) * k),
            prime: nat(q),
            exponent: x,
            cofactor: nat(k),
        };
        assert_eq!(witness_predicted_residue(&split(2, 2, 1)), nat(3));
        assert_eq!(witness_predicted_residue(&split(3, 2, 1)), nat(4));
        // q = 2, x = 1, k = 3: (1*3 + 1) mod 2 = 0 -- still a refutation, 0 != 1.
        assert_eq!(witness_predicted_residue(&split(2, 1, 3)), nat(0));
    }

    #[test]
    fn characterization_verdict_pins() {
        let v = is_prime_by_characterization(&nat(7)).unwrap();
        assert!(v.is_prime);
        assert_eq!(
            v.evidence,
            PrimalityEvidence::RangeVerified { n_max: nat(28) }
        );

        let v = is_prime_by_characterization(&nat(6)).unwrap();
        assert!(!v.is_prime);
        match v.evidence {
            PrimalityEvidence::Witness(w) => {
                assert_eq!(w.witness_n, nat(8));
                // C(8,6) = 28 = 4 mod 6, floor(8/6) = 1.
                assert_eq!(w.check_mod_p.lhs_residue, nat(4));
                assert_eq!(w.check_mod_p.rhs_residue, nat(1));
            }
            other => panic!("expected a witness, got {other:?}"),
        }

        assert!(is_prime_by_characterization(&nat(2)).unwrap().is_prime);
        assert!(matches!(
            is_prime_by_characterization(&nat(1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn decomposition_pins() {
        // n = 7, p = 3: two full blocks, remainder 1.
        let d = block_selection_decomposition(&nat(7), &nat(3)).unwrap();
        assert_eq!(d.full_blocks, nat(2));
        assert_eq!(d.remainder, nat(1));
        assert_eq!(d.full_block_count, nat(2));
        let terms: Vec<u64> = d
            .mixed_terms
            .iter()
            .map(|t| t.term_value.to_u64().unwrap())
            .collect();
        // Lexicographic by composition: (0,2,1), (1,1,1), (1,2,0), (2,0,1), (2,1,0).
        assert_eq!(terms, vec![3, 9, 9, 3, 9]);
        assert_eq!(d.total, nat(35));

        // n = p: the single full-block draw is the whole coefficient.
        let d = block_selection_decomposition(&nat(5), &nat(5)).unwrap();
        assert_eq!(d.full_block_count, nat(1));
        assert!(d.mixed_terms.is_empty());
        assert_eq!(d.total, nat(1));

        // Remainder 0 drops the compositions that would touch it.
        let d = block_selection_decomposition(&nat(6), &nat(3)).unwrap();
        assert_eq!(d.full_block_count, nat(2));
        let terms: Vec<u64> = d
            .mixed_terms
            .iter()
            .map(|t| t.term_value.to_u64().unwrap())
            .collect();
        assert_eq!(terms, vec![9, 9]);
        assert_eq!(d.total, nat(20));
    }

    #[test]
    fn decomposition_composition_order_is_lexicographic() {
        let d = block_selection_decomposition(&nat(7), &nat(3)).unwrap();
        let comps: Vec<Vec<u64>> = d
            .mixed_terms
            .iter()
            .map(|t| t.composition.iter().map(|a| a.to_u64().unwrap()).collect())
            .collect();
        let mut sorted = comps.clone();
        sorted.sort();
        assert_eq!(comps, sorted);
        assert_eq!(comps[0], vec![0, 2, 1]);
    }

    #[test]
    fn decomposition_rejects_bad_shapes() {
        assert!(matches!(
            block_selection_decomposition(&nat(3), &nat(7)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            block_selection_decomposition(&nat(5), &nat(1)),
            Err(Error::Domain(_))
        ));
        // floor(90/10) = 9 blocks, above the default cap of 8.
        assert!(matches!(
            block_selection_decomposition(&nat(90), &nat(10)),
            Err(Error::CapExceeded(_))
        ));
        // The same shape passes with a raised cap.
        assert!(block_selection_decomposition_capped(&nat(90), &nat(10), 9).is_ok());
    }
}
