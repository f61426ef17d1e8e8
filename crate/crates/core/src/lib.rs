//! Exact integer congruences of binomial coefficients.
//!
//! The centerpiece is the floor-quotient congruence
//! `C(n, p) = floor(n/p) (mod p)`: it holds at every n exactly when p is
//! prime, and each composite p is refuted at the single point n = p + q,
//! where q is its least prime factor. Around it sit exact big-integer
//! arithmetic ([`arith`]), base-p digit evaluation of binomial residues
//! ([`lucas`]), the congruence checks, witness construction, and a
//! combinatorial decomposition of C(n, p) ([`characterization`]), classical
//! scaled-argument congruences mod p and mod p^3 with a falsifier and a
//! tightness sweep ([`congruences`]), and an addition-only Pascal-triangle
//! oracle that cross-checks the lot by an independent route ([`oracle`]).
//!
//! Everything computes in exact arbitrary-precision integer arithmetic;
//! residues are only ever taken of exactly computed values, or through
//! modular routes proven against the exact ones by the test suite.

pub mod arith;
pub mod characterization;
pub mod congruences;
pub mod error;
pub mod lucas;
pub mod oracle;

pub use arith::{
    binom_exact, is_prime_trial, nat, padic_valuation, prime_power_split, smallest_prime_factor,
    Natural, PrimePowerSplit,
};
pub use characterization::{
    block_selection_decomposition, block_selection_decomposition_capped, check_thm21,
    composite_witness, is_prime_by_characterization, is_prime_by_characterization_with_range,
    witness_predicted_residue, BlockDecomposition, CharacterizationVerdict, CongruenceCheck,
    MixedTerm, PrimalityEvidence, WitnessReport, DEFAULT_BLOCK_CAP,
};
pub use congruences::{
    check_apostol, check_bailey_digits, check_bailey_np_rp, check_lucas_corollary,
    explore_power_congruence, mestrovic_falsify, ApostolCheck, FalsifierResult,
    PowerExplorationReport,
};
pub use error::{Error, Result};
pub use lucas::{
    binom_mod_prime_lucas, binom_p_divisibility, digits_base, freshman_dream_coeffs, BaseDigits,
    CoeffVectorModM,
};
pub use oracle::{
    build_pascal_mod, build_pascal_mod_capped, oracle_binom_mod, sweep_thm21, PascalTriangleModM,
    DEFAULT_ROW_CAP,
};
