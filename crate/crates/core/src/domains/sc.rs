//! Single-crossing chains: ordered vote sequences in which every candidate
//! pair flips at most once.

use super::{Domain, DomainDescriptor};
use crate::elections::Ranking;
use crate::error::Error;
use crate::rng::rng_from_seed;
use crate::Result;
use rand::Rng;

/// Generate a maximal single-crossing chain: `C(m,2)+1` votes starting at
/// the identity ranking and ending at its reverse, where each step swaps one
/// uniformly chosen adjacent pair that is still in its original order.
/// Every unordered pair flips exactly once across the chain.
pub fn generate_sc_chain(m: usize, seed: u64) -> Result<Domain> {
    if m == 0 {
        return Err(Error::InvalidInput("need at least one candidate".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut current: Vec<u16> = (0..m as u16).collect();
    let mut votes = vec![Ranking::new(current.clone())?];
    loop {
        let candidates: Vec<usize> = (0..m.saturating_sub(1))
            .filter(|&i| current[i] < current[i + 1])
            .collect();
        if candidates.is_empty() {
            break;
        }
        let i = candidates[rng.gen_range(0..candidates.len())];
        current.swap(i, i + 1);
        votes.push(Ranking::new(current.clone())?);
    }
    debug_assert_eq!(votes.len(), m * (m - 1) / 2 + 1);
    debug_assert_eq!(votes.last().unwrap(), &votes[0].reverse());
    Ok(Domain::new(m, votes, DomainDescriptor::SingleCrossing))
}

/// Find a candidate pair that flips more than once along `order`, if any.
pub fn sc_order_violation(votes: &[&Ranking], m: usize) -> Option<(u16, u16)> {
    for a in 0..m as u16 {
        for b in (a + 1)..m as u16 {
            let mut flips = 0;
            let mut prev: Option<bool> = None;
            for v in votes {
                let cur = v.prefers(a, b);
                if let Some(p) = prev {
                    if p != cur {
                        flips += 1;
                    }
                }
                prev = Some(cur);
            }
            if flips > 1 {
                return Some((a, b));
            }
        }
    }
    None
}

/// Check that the given vote sequence is single-crossing in order.
pub fn validate_sc_order(votes: &[&Ranking], m: usize) -> Result<()> {
    if let Some((a, b)) = sc_order_violation(votes, m) {
        return Err(Error::InvalidCertificate(format!(
            "candidate pair ({a}, {b}) crosses more than once along the order"
        )));
    }
    Ok(())
}
