//! The single-peaked domain: every prefix of a vote is an interval of the
//! axis.

use super::{Domain, DomainDescriptor};
use crate::elections::Ranking;
use crate::Result;

/// Prefix-interval membership check against `axis`.
pub fn is_single_peaked(vote: &Ranking, axis: &Ranking) -> bool {
    if vote.m() != axis.m() {
        return false;
    }
    let apos = axis.positions();
    let mut lo = usize::MAX;
    let mut hi = 0usize;
    for (t, &c) in vote.as_slice().iter().enumerate() {
        let p = apos[c as usize];
        lo = lo.min(p);
        hi = hi.max(p);
        if hi - lo != t {
            return false;
        }
    }
    true
}

/// Enumerate all single-peaked votes for `axis`: exactly `2^(m-1)` of them.
///
/// Votes are built bottom-up; at every step the next-lowest candidate is one
/// of the two ends of the remaining axis interval, so decision strings of
/// length `m-1` are in bijection with the domain.
pub fn enumerate_sp(axis: &Ranking) -> Result<Domain> {
    let m = axis.m();
    let mut votes = Vec::with_capacity(1usize << (m - 1).min(30));
    let axis_order = axis.as_slice();
    let count = 1u64 << (m - 1);
    for bits in 0..count {
        let mut order = vec![0u16; m];
        let (mut lo, mut hi) = (0usize, m - 1);
        for step in 0..m - 1 {
            let take_low = (bits >> step) & 1 == 0;
            let c = if take_low {
                let c = axis_order[lo];
                lo += 1;
                c
            } else {
                let c = axis_order[hi];
                hi -= 1;
                c
            };
            order[m - 1 - step] = c;
        }
        order[0] = axis_order[lo];
        let r = Ranking::new(order)?;
        debug_assert!(is_single_peaked(&r, axis));
        votes.push(r);
    }
    votes.sort();
    votes.dedup();
    assert_eq!(votes.len() as u64, count, "single-peaked decision strings must be distinct");
    Ok(Domain::new(
        m,
        votes,
        DomainDescriptor::SinglePeaked { axis: axis.clone() },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::enumerate_full;
    use crate::elections::test_util::ranking;

    #[test]
    fn sp_m3_matches_bruteforce_filter() {
        let axis = ranking(&[0, 1, 2]);
        let dom = enumerate_sp(&axis).unwrap();
        // independent oracle: filter all 6 rankings by the interval property
        let filtered: Vec<_> = enumerate_full(3)
            .unwrap()
            .votes()
            .iter()
            .filter(|v| is_single_peaked(v, &axis))
            .cloned()
            .collect();
        assert_eq!(dom.votes(), filtered.as_slice());
        assert_eq!(dom.len(), 4);
        let expect = [
            ranking(&[0, 1, 2]),
            ranking(&[1, 0, 2]),
            ranking(&[1, 2, 0]),
            ranking(&[2, 1, 0]),
        ];
        for v in &expect {
            assert!(dom.contains(v));
        }
    }

    #[test]
    fn sp_sizes() {
        assert_eq!(enumerate_sp(&Ranking::identity(1)).unwrap().len(), 1);
        assert_eq!(enumerate_sp(&Ranking::identity(8)).unwrap().len(), 128);
        for m in 2..=10 {
            assert_eq!(
                enumerate_sp(&Ranking::identity(m)).unwrap().len(),
                1 << (m - 1)
            );
        }
    }

    #[test]
    fn sp_filter_equality_up_to_m6() {
        for m in 2..=6 {
            let axis = Ranking::identity(m);
            let dom = enumerate_sp(&axis).unwrap();
            let filtered: Vec<_> = enumerate_full(m)
                .unwrap()
                .votes()
                .iter()
                .filter(|v| is_single_peaked(v, &axis))
                .cloned()
                .collect();
            assert_eq!(dom.votes(), filtered.as_slice());
        }
    }

    #[test]
    fn sp_respects_arbitrary_axis() {
        let axis = ranking(&[2, 0, 3, 1]);
        let dom = enumerate_sp(&axis).unwrap();
        assert_eq!(dom.len(), 8);
        for v in dom.votes() {
            assert!(is_single_peaked(v, &axis));
        }
    }
}
