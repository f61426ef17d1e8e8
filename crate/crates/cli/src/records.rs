//! Builders turning library results into report records. The single-check
//! commands and the sweep runner both come through here, so one instance
//! always serializes the same way no matter which path computed it.

use crate::report::ReportRecord;
use anyhow::{bail, ensure, Context, Result};
use binomlab::{
    binom_exact, binom_mod_prime_lucas, build_pascal_mod_capped, check_apostol,
    check_bailey_digits, check_bailey_np_rp, check_lucas_corollary, check_thm21,
    composite_witness, explore_power_congruence, is_prime_by_characterization_with_range,
    is_prime_trial, mestrovic_falsify, nat, oracle_binom_mod, Natural, PrimalityEvidence,
    WitnessReport,
};

/// Largest n-range a full prime verification (`isprime`) will sweep.
pub const FULL_VERIFY_CAP: u64 = 10_000_000;

/// Work-size refusal thresholds, set from command-line flags. Every
/// violation is a refusal with a message naming the cap; nothing is ever
/// silently truncated.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// Largest accepted modulus-like argument (p, m, d, q).
    pub max_p: u64,
    /// Largest exact-product side (the smaller of k and n-k) computed.
    pub max_n: u64,
    /// Tallest additive Pascal triangle built.
    pub max_rows: u64,
}

/// Canonical theorem ids; hyphen and underscore spellings both accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremId {
    Thm21,
    LucasCorollary,
    BaileyNpRp,
    BaileyDigits,
    Apostol,
    Mestrovic,
    PowerExplorer,
}

impl TheoremId {
    pub fn parse(raw: &str) -> Result<Self> {
        match raw.replace('-', "_").as_str() {
            "thm21" => Ok(Self::Thm21),
            "lucas_corollary" => Ok(Self::LucasCorollary),
            "bailey_np_rp" => Ok(Self::BaileyNpRp),
            "bailey_digits" => Ok(Self::BaileyDigits),
            "apostol" => Ok(Self::Apostol),
            "mestrovic" => Ok(Self::Mestrovic),
            "power_explorer" => Ok(Self::PowerExplorer),
            other => bail!(
                "unknown theorem id {other:?}: expected thm21, lucas_corollary, bailey_np_rp, \
                 bailey_digits, apostol, mestrovic, or power_explorer"
            ),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Thm21 => "thm21",
            Self::LucasCorollary => "lucas_corollary",
            Self::BaileyNpRp => "bailey_np_rp",
            Self::BaileyDigits => "bailey_digits",
            Self::Apostol => "apostol",
            Self::Mestrovic => "mestrovic",
            Self::PowerExplorer => "power_explorer",
        }
    }
}

fn cap_modulus(value: &Natural, caps: &Caps, what: &str) -> Result<()> {
    ensure!(
        *value <= nat(caps.max_p),
        "{what} {value} exceeds --max-p {}; raise the cap to proceed",
        caps.max_p
    );
    Ok(())
}

/// Refuse exact products whose short side exceeds --max-n.
fn cap_exact_side(n: &Natural, k: &Natural, caps: &Caps) -> Result<()> {
    if k > n {
        return Ok(()); // C(n,k) = 0, no product computed
    }
    let side = (n - k).min(k.clone());
    ensure!(
        side <= nat(caps.max_n),
        "exact product for C({n},{k}) has side {side}, over --max-n {}; raise the cap to proceed",
        caps.max_n
    );
    Ok(())
}

pub fn record_thm21(n: &Natural, p: &Natural, caps: &Caps) -> Result<ReportRecord> {
    cap_modulus(p, caps, "p")?;
    if *p >= nat(2) && !is_prime_trial(p) {
        cap_exact_side(n, p, caps)?;
    }
    let check = check_thm21(n, p)?;
    Ok(ReportRecord::new("thm21")
        .param("n", n)
        .param("p", p)
        .congruence(&check))
}

pub fn record_lucas_corollary(n: &Natural, m: &Natural, p: &Natural, caps: &Caps) -> Result<ReportRecord> {
    cap_modulus(p, caps, "p")?;
    cap_exact_side(&(n * p), &(m * p), caps)?;
    let check = check_lucas_corollary(n, m, p)?;
    Ok(ReportRecord::new("lucas_corollary")
        .param("m", m)
        .param("n", n)
        .param("p", p)
        .congruence(&check))
}

pub fn record_bailey_np_rp(n: &Natural, r: &Natural, p: &Natural, caps: &Caps) -> Result<ReportRecord> {
    cap_modulus(p, caps, "p")?;
    cap_exact_side(&(n * p), &(r * p), caps)?;
    let check = check_bailey_np_rp(n, r, p)?;
    Ok(ReportRecord::new("bailey_np_rp")
        .param("n", n)
        .param("p", p)
        .param("r", r)
        .congruence(&check))
}

pub fn record_bailey_digits(
    high_n: &Natural,
    high_r: &Natural,
    low_n: &Natural,
    low_r: &Natural,
    p: &Natural,
    caps: &Caps,
) -> Result<ReportRecord> {
    cap_modulus(p, caps, "p")?;
    let cube = p.pow(3);
    cap_exact_side(&(high_n * &cube + low_n), &(high_r * &cube + low_r), caps)?;
    let check = check_bailey_digits(high_n, high_r, low_n, low_r, p)?;
    Ok(ReportRecord::new("bailey_digits")
        .param("high_n", high_n)
        .param("high_r", high_r)
        .param("n", low_n)
        .param("p", p)
        .param("r", low_r)
        .congruence(&check))
}

pub fn record_apostol(n: &Natural, p: &Natural, alpha: u32, caps: &Caps) -> Result<ReportRecord> {
    cap_modulus(p, caps, "p")?;
    cap_exact_side(n, p, caps)?;
    let result = check_apostol(n, p, alpha)?;
    let record = ReportRecord::new("apostol")
        .param("alpha", alpha)
        .param("n", n)
        .param("p", p)
        .extra_field("applicable", result.applicable);
    Ok(match result.check {
        Some(check) => record.congruence(&check),
        None => record,
    })
}

pub fn record_mestrovic(d: &Natural, q: &Natural, bound: u64, caps: &Caps) -> Result<ReportRecord> {
    cap_modulus(q, caps, "q")?;
    ensure!(
        d * nat(bound) <= nat(caps.max_n),
        "falsifier reaches C({}, _), over --max-n {}; lower --bound or raise the cap",
        d * nat(bound),
        caps.max_n
    );
    let result = mestrovic_falsify(d, q, bound)?;
    let mut record = ReportRecord::new("mestrovic")
        .param("bound", bound)
        .param("d", d)
        .param("q", q)
        .extra_field("checks_performed", result.checks_performed);
    record.modulus = Some(q.to_string());
    match &result.counterexample {
        Some((n, m)) => {
            record.lhs = Some((binom_exact(&(d * n), &(d * m)) % q).to_string());
            record.rhs = Some((binom_exact(n, m) % q).to_string());
            record.holds = Some(false);
            record = record
                .extra_field("counterexample_n", n)
                .extra_field("counterexample_m", m);
        }
        None => record.holds = Some(true),
    }
    Ok(record)
}

pub fn record_power_explorer(p: &Natural, k: u32, bound: u64, caps: &Caps) -> Result<ReportRecord> {
    cap_modulus(p, caps, "p")?;
    let scaled = nat(bound) * p.pow(k);
    ensure!(
        scaled <= nat(caps.max_n),
        "scaled binomials reach C({scaled}, _), over --max-n {}; lower --bound or raise the cap",
        caps.max_n
    );
    let report = explore_power_congruence(p, k, bound)?;
    let mut record = ReportRecord::new("power_explorer")
        .param("bound", bound)
        .param("k", k)
        .param("p", p)
        .extra_field("max_power", report.max_power)
        .extra_field("tight_n", &report.tightness_example.0)
        .extra_field("tight_m", &report.tightness_example.1);
    record.modulus = Some(p.pow(report.max_power).to_string());
    Ok(record)
}

fn witness_into_record(mut record: ReportRecord, witness: &WitnessReport) -> ReportRecord {
    record = record
        .param("p", &witness.p)
        .extra_field("witness_n", &witness.witness_n)
        .extra_field("q", &witness.split.prime)
        .extra_field("x", witness.split.exponent)
        .extra_field("k", &witness.split.cofactor)
        .extra_field("predicted", &witness.predicted_residue)
        .extra_field("binom_mod_p", &witness.check_mod_p.lhs_residue)
        .extra_field("floor_mod_p", &witness.check_mod_p.rhs_residue);
    // The headline comparison is the one the closed form pins down: residues
    // mod q^x, where the two sides can never agree.
    record.lhs = Some(witness.binom_residue.to_string());
    record.rhs = Some(witness.floor_residue.to_string());
    record.modulus = Some(witness.split.prime_power().to_string());
    record.holds = Some(false);
    record
}

pub fn record_isprime(p: &Natural, n_max: Option<u64>, caps: &Caps) -> Result<ReportRecord> {
    ensure!(*p >= nat(2), "p > 1 required");
    cap_modulus(p, caps, "p")?;
    if is_prime_trial(p) {
        let n_max = n_max.map(nat).unwrap_or_else(|| p * 4u32);
        ensure!(
            n_max <= nat(FULL_VERIFY_CAP),
            "full verification over n in [0, {n_max}] exceeds {FULL_VERIFY_CAP} checks; \
             pass a smaller --n-max"
        );
        let verdict = is_prime_by_characterization_with_range(p, &n_max)?;
        let PrimalityEvidence::RangeVerified { n_max: verified } = &verdict.evidence else {
            bail!("trial division and the characterization disagree at {p}");
        };
        let mut record = ReportRecord::new("isprime")
            .param("p", p)
            .extra_field("verdict", "prime")
            .extra_field("verified_n_max", verified);
        record.modulus = Some(p.to_string());
        record.holds = Some(true);
        Ok(record)
    } else {
        let witness = composite_witness(p)?;
        Ok(witness_into_record(ReportRecord::new("isprime"), &witness)
            .extra_field("verdict", "composite"))
    }
}

pub fn record_witness(p: &Natural, caps: &Caps) -> Result<ReportRecord> {
    cap_modulus(p, caps, "p")?;
    let witness = composite_witness(p)?;
    Ok(witness_into_record(ReportRecord::new("witness"), &witness))
}

pub fn record_binom_mod(n: &Natural, k: &Natural, m: &Natural, caps: &Caps) -> Result<ReportRecord> {
    ensure!(*m >= nat(1), "modulus must be positive");
    cap_modulus(m, caps, "modulus")?;
    let (residue, route) = if is_prime_trial(m) {
        (binom_mod_prime_lucas(n, k, m)?, "digit-product")
    } else if k > n || (n - k).min(k.clone()) <= nat(caps.max_n) {
        (binom_exact(n, k) % m, "exact-product")
    } else if *n <= nat(caps.max_rows) {
        let height = u64::try_from(n).context("triangle height")?;
        let triangle = build_pascal_mod_capped(m, height, caps.max_rows)?;
        (oracle_binom_mod(&triangle, n, k)?, "additive-triangle")
    } else {
        bail!(
            "C({n},{k}) mod {m}: side over --max-n {} and height over --max-rows {}; \
             raise one of the caps to proceed",
            caps.max_n,
            caps.max_rows
        );
    };
    let mut record = ReportRecord::new("binom_mod")
        .param("k", k)
        .param("m", m)
        .param("n", n)
        .extra_field("route", route);
    record.lhs = Some(residue.to_string());
    record.modulus = Some(m.to_string());
    Ok(record)
}
