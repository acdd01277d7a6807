//! Closed-form maximum sizes of the structured domains.

use crate::error::Error;
use crate::Result;

/// Domain kinds with a known closed-form size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizeFormulaKind {
    /// Single-peaked: `2^(m-1)`.
    Sp,
    /// Group-separable (binary tree): `2^(m-1)`.
    Gs,
    /// Single-peaked on the double-forked tree: `16*(2^(m-3)-1)`, m >= 5.
    SpDoubleFork,
    /// Single-peaked on a circle: `m*2^(m-2)`.
    Spoc,
    /// Single-crossing chain: `C(m,2)+1`.
    Sc,
    /// 1-Euclidean: `C(m,2)+1`.
    Euclid1d,
    /// 2-Euclidean: `s(m,m) + s(m,m-1) + s(m,m-2)` with unsigned Stirling
    /// numbers of the first kind.
    Euclid2d,
}

/// Unsigned Stirling numbers of the first kind, via the recurrence
/// `s(n+1, k) = s(n, k-1) + n * s(n, k)`.
pub fn unsigned_stirling_first(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u64; n + 1];
    row[0] = 1; // s(0, 0)
    for i in 0..n {
        let prev = row.clone();
        for j in 0..=n {
            let from_left = if j > 0 { prev[j - 1] } else { 0 };
            row[j] = from_left + (i as u64) * prev[j];
        }
    }
    row[k]
}

/// Closed-form domain size for `kind` and `m` candidates.
pub fn domain_size_formula(kind: SizeFormulaKind, m: usize) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidInput(format!(
            "size formulas need m >= 2, got {m}"
        )));
    }
    if m > 40 {
        return Err(Error::InvalidInput(format!(
            "size formulas support m <= 40, got {m}"
        )));
    }
    let pairs = (m as u64) * (m as u64 - 1) / 2;
    Ok(match kind {
        SizeFormulaKind::Sp | SizeFormulaKind::Gs => 1u64 << (m - 1),
        SizeFormulaKind::SpDoubleFork => {
            if m < 5 {
                return Err(Error::InvalidInput(format!(
                    "the double-forked tree formula needs m >= 5, got {m}"
                )));
            }
            16 * ((1u64 << (m - 3)) - 1)
        }
        SizeFormulaKind::Spoc => m as u64 * (1u64 << (m - 2)),
        SizeFormulaKind::Sc | SizeFormulaKind::Euclid1d => pairs + 1,
        SizeFormulaKind::Euclid2d => {
            unsigned_stirling_first(m, m)
                + unsigned_stirling_first(m, m - 1)
                + unsigned_stirling_first(m, m - 2)
        }
    })
}
