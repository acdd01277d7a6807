//! Single-peaked-on-a-circle: every prefix of a vote is a circular arc.

use super::{Domain, DomainDescriptor};
use crate::elections::Ranking;
use crate::error::Error;
use crate::Result;

/// True if every prefix of `vote` induces a contiguous arc of `cycle`.
pub fn is_spoc(vote: &Ranking, cycle: &Ranking) -> bool {
    let m = cycle.m();
    if vote.m() != m {
        return false;
    }
    let cpos = cycle.positions();
    let mut in_prefix = vec![false; m];
    for (t, &c) in vote.as_slice().iter().enumerate() {
        in_prefix[cpos[c as usize]] = true;
        // an arc has at most one boundary where a member is followed
        // (cyclically) by a non-member
        let mut boundaries = 0;
        for i in 0..m {
            if in_prefix[i] && !in_prefix[(i + 1) % m] {
                boundaries += 1;
            }
        }
        let expected = if t + 1 == m { 0 } else { 1 };
        if boundaries != expected {
            return false;
        }
    }
    true
}

/// Enumerate all votes single-peaked on the cycle `cycle`; there are
/// `m * 2^(m-2)` of them for `m >= 3`.
pub fn enumerate_spoc(cycle: &Ranking) -> Result<Domain> {
    let m = cycle.m();
    if m < 3 {
        return Err(Error::InvalidInput(format!(
            "a cycle needs at least 3 candidates, got {m}"
        )));
    }
    let cyc = cycle.as_slice();
    let mut votes = Vec::with_capacity(m << (m - 2).min(30));
    // choose the top candidate, then extend the arc left or right; the last
    // extension is forced
    for start in 0..m {
        for bits in 0u64..(1 << (m - 2)) {
            let mut order = Vec::with_capacity(m);
            order.push(cyc[start]);
            let (mut left, mut right) = (start, start);
            for step in 0..m - 1 {
                let go_left = step < m - 2 && (bits >> step) & 1 == 1;
                // when only one candidate remains both ends meet; extend right
                let c = if go_left {
                    left = (left + m - 1) % m;
                    cyc[left]
                } else {
                    right = (right + 1) % m;
                    cyc[right]
                };
                order.push(c);
            }
            let r = Ranking::new(order)?;
            debug_assert!(is_spoc(&r, cycle));
            votes.push(r);
        }
    }
    votes.sort();
    votes.dedup();
    assert_eq!(
        votes.len() as u64,
        m as u64 * (1u64 << (m - 2)),
        "arc decision strings must be distinct"
    );
    Ok(Domain::new(
        m,
        votes,
        DomainDescriptor::Spoc {
            cycle: cycle.clone(),
        },
    ))
}
