//! Cross-route agreement: the addition-only triangle oracle against the
//! multiplicative routes (exact division-free products and digit evaluation).
//! The two sides share no arithmetic, so agreement here is the strongest
//! internal evidence either one is right.

use binomlab::{
    binom_exact, binom_mod_prime_lucas, build_pascal_mod, check_thm21, is_prime_trial, nat,
    oracle_binom_mod, sweep_thm21, Natural,
};
use num_traits::Zero;

#[test]
fn triangle_agrees_with_exact_reduction_up_to_500() {
    for m in [4u64, 7, 12, 49] {
        let triangle = build_pascal_mod(&nat(m), 500).unwrap();
        for n in (0u64..=500).step_by(7) {
            for k in 0..=n {
                let additive = oracle_binom_mod(&triangle, &nat(n), &nat(k)).unwrap();
                let multiplicative = binom_exact(&nat(n), &nat(k)) % nat(m);
                assert_eq!(
                    additive, multiplicative,
                    "routes disagree at C({n},{k}) mod {m}"
                );
            }
        }
    }
}

#[test]
fn triangle_agrees_with_digit_evaluation_for_primes() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let triangle = build_pascal_mod(&nat(p), 400).unwrap();
        for n in (0u64..=400).step_by(11) {
            for k in (0..=n).step_by(3) {
                let additive = oracle_binom_mod(&triangle, &nat(n), &nat(k)).unwrap();
                let digits = binom_mod_prime_lucas(&nat(n), &nat(k), &nat(p)).unwrap();
                assert_eq!(
                    additive, digits,
                    "additive route disagrees with digit product at C({n},{k}) mod {p}"
                );
            }
        }
    }
}

#[test]
fn triangle_rows_have_unit_borders_and_reduced_entries() {
    let triangle = build_pascal_mod(&nat(12), 200).unwrap();
    assert_eq!(triangle.n_max(), 200);
    for n in 0..=200u64 {
        let row = triangle.row(n).expect("row within height");
        assert_eq!(row.len() as u64, n + 1);
        assert_eq!(row[0], 1 % 12, "left border at row {n}");
        assert_eq!(row[n as usize], 1 % 12, "right border at row {n}");
        assert!(row.iter().all(|&e| e < 12), "unreduced entry in row {n}");
    }
}

#[test]
fn beyond_diagonal_is_zero_in_both_routes() {
    let triangle = build_pascal_mod(&nat(9), 50).unwrap();
    for n in 0u64..=50 {
        let over = oracle_binom_mod(&triangle, &nat(n), &nat(n + 1)).unwrap();
        assert!(over.is_zero());
        assert!(binom_exact(&nat(n), &nat(n + 1)).is_zero());
    }
}

#[test]
fn sweep_matches_pointwise_checks() {
    let checks = sweep_thm21(2, 13, 0, 100).unwrap();
    assert_eq!(checks.len(), 12 * 101, "sweep cell count");

    let mut idx = 0;
    for p in 2u64..=13 {
        for n in 0u64..=100 {
            let from_sweep = &checks[idx];
            let pointwise = check_thm21(&nat(n), &nat(p)).unwrap();
            assert_eq!(
                from_sweep.lhs_residue, pointwise.lhs_residue,
                "lhs mismatch at p={p} n={n}"
            );
            assert_eq!(
                from_sweep.rhs_residue, pointwise.rhs_residue,
                "rhs mismatch at p={p} n={n}"
            );
            assert_eq!(from_sweep.modulus, pointwise.modulus);
            assert_eq!(from_sweep.holds, pointwise.holds);
            assert_eq!(from_sweep.description, pointwise.description);
            idx += 1;
        }
    }
}

#[test]
fn sweep_failures_are_exactly_the_composite_moduli() {
    let checks = sweep_thm21(2, 30, 0, 60).unwrap();
    let mut idx = 0;
    for p in 2u64..=30 {
        let prime = is_prime_trial(&nat(p));
        let mut failures = 0u64;
        for _n in 0u64..=60 {
            if !checks[idx].holds {
                failures += 1;
            }
            idx += 1;
        }
        if prime {
            assert_eq!(failures, 0, "prime modulus {p} produced sweep failures");
        } else {
            assert!(
                failures > 0,
                "composite modulus {p} slipped through the sweep unrefuted"
            );
        }
    }
    assert_eq!(idx, checks.len());
}

#[test]
fn residue_types_stay_exact() {
    // The oracle hands back Natural, same as every other route; spot-check a
    // value that would overflow any fixed-width intermediate if the triangle
    // were built multiplicatively.
    let triangle = build_pascal_mod(&nat(4_000_000_007u64), 120).unwrap();
    let got = oracle_binom_mod(&triangle, &nat(120), &nat(60)).unwrap();
    let want = binom_exact(&nat(120), &nat(60)) % nat(4_000_000_007u64);
    assert_eq!(got, want);
    assert!(got < Natural::from(4_000_000_007u64));
}
