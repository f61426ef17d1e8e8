//! Addition-only Pascal-triangle oracle.
//!
//! Rows are built with the Pascal recurrence and nothing else -- no
//! multiplication, no division, no code shared with the multiplicative
//! binomial or the digit evaluator -- so agreement between this route and
//! those is meaningful evidence. Only the result type is shared.

use num_traits::{ToPrimitive, Zero};

use crate::arith::{nat, Natural};
use crate::characterization::CongruenceCheck;
use crate::error::{Error, Result};

/// Default ceiling on triangle height; a full triangle at this cap holds
/// about two hundred million entries.
pub const DEFAULT_ROW_CAP: u64 = 20_000;

/// Widest modulus range a single sweep call will walk.
const SWEEP_MODULUS_SPAN: u64 = 10_000;

/// Rows 0..=n_max of Pascal's triangle with every entry reduced mod m.
#[derive(Debug, Clone)]
pub struct PascalTriangleModM {
    modulus: u64,
    rows: Vec<Vec<u64>>,
}

impl PascalTriangleModM {
    pub fn modulus(&self) -> Natural {
        nat(self.modulus)
    }

    /// Highest row index the triangle holds.
    pub fn n_max(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    /// Row n as raw residues, if the triangle reaches it.
    pub fn row(&self, n: u64) -> Option<&[u64]> {
        usize::try_from(n)
            .ok()
            .and_then(|n| self.rows.get(n))
            .map(Vec::as_slice)
    }
}

/// Build rows 0..=n_max of Pascal's triangle mod m (m >= 2), refusing
/// heights above the default row cap.
pub fn build_pascal_mod(modulus: &Natural, n_max: u64) -> Result<PascalTriangleModM> {
    build_pascal_mod_capped(modulus, n_max, DEFAULT_ROW_CAP)
}

/// As [`build_pascal_mod`] with an explicit row cap.
pub fn build_pascal_mod_capped(
    modulus: &Natural,
    n_max: u64,
    row_cap: u64,
) -> Result<PascalTriangleModM> {
    if *modulus < nat(2) {
        return Err(Error::Domain(format!(
            "pascal oracle requires a modulus >= 2, got {modulus}"
        )));
    }
    if n_max > row_cap {
        return Err(Error::CapExceeded(format!(
            "pascal oracle refuses n_max = {n_max} above the row cap {row_cap}"
        )));
    }
    // Dense storage wants machine words; anything bigger would not fit a
    // triangle worth building. Staying under 2^63 keeps the sums overflow-free.
    let m = modulus
        .to_u64()
        .filter(|m| *m < (1 << 63))
        .ok_or_else(|| {
            Error::CapExceeded(format!(
                "pascal oracle requires a modulus below 2^63, got {modulus}"
            ))
        })?;
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n_max as usize + 1);
    rows.push(vec![1]); // 1 is reduced already: m >= 2
    for n in 1..=n_max as usize {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        row.push(1);
        for j in 1..n {
            let s = prev[j - 1] + prev[j]; // both below m < 2^63: no overflow
            row.push(if s >= m { s - m } else { s });
        }
        row.push(1);
        rows.push(row);
    }
    Ok(PascalTriangleModM { modulus: m, rows })
}

/// C(n, k) mod m read straight out of the triangle; n must be within the
/// built height, while k > n just yields 0.
pub fn oracle_binom_mod(
    triangle: &PascalTriangleModM,
    n: &Natural,
    k: &Natural,
) -> Result<Natural> {
    let row = n
        .to_u64()
        .and_then(|n| triangle.row(n))
        .ok_or_else(|| {
            Error::OutOfRange(format!(
                "row {n} is beyond this triangle (height {})",
                triangle.n_max()
            ))
        })?;
    Ok(match k.to_usize() {
        Some(k) if k < row.len() => nat(row[k]),
        _ => Natural::zero(), // k > n
    })
}

/// Check C(n, p) against floor(n/p) mod p over a whole grid, entirely
/// through the additive triangle. Results are ordered by (p, n).
pub fn sweep_thm21(p_lo: u64, p_hi: u64, n_lo: u64, n_hi: u64) -> Result<Vec<CongruenceCheck>> {
    if p_lo < 2 {
        return Err(Error::Domain(format!(
            "floor congruence sweep requires p >= 2, got {p_lo}"
        )));
    }
    if p_hi < p_lo || n_hi < n_lo {
        return Err(Error::Domain(format!(
            "empty sweep range: p in [{p_lo}, {p_hi}], n in [{n_lo}, {n_hi}]"
        )));
    }
    if p_hi - p_lo >= SWEEP_MODULUS_SPAN {
        return Err(Error::CapExceeded(format!(
            "sweep spans {} moduli, above the cap {SWEEP_MODULUS_SPAN}",
            p_hi - p_lo + 1
        )));
    }
    let mut checks = Vec::new();
    for p in p_lo..=p_hi {
        let triangle = build_pascal_mod(&nat(p), n_hi)?;
        for n in n_lo..=n_hi {
            let row = triangle.row(n).expect("triangle built to n_hi");
            let lhs = if (p as usize) < row.len() {
                row[p as usize]
            } else {
                0 // p > n: nothing to choose
            };
            let rhs = (n / p) % p;
            checks.push(CongruenceCheck::new(
                nat(lhs),
                nat(rhs),
                nat(p),
                format!("C({n},{p}) vs floor({n}/{p}) mod {p}"),
            ));
        }
    }
    Ok(checks)
}
