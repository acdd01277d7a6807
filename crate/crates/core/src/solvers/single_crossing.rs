//! Exact polynomial k-Kemeny for single-crossing elections.
//!
//! Some optimal center set is a subset of the votes, and along a
//! single-crossing order the prefix distances are additive:
//! `swap(v_1, v_{i+1}) = swap(v_1, v_i) + swap(v_i, v_{i+1})`. Votes thus
//! live on a line, nearest-center clusters are contiguous intervals, and an
//! interval DP with weighted-median centers solves the problem exactly.

use super::{finish_result, trivial_distinct, KemenyResult, Method};
use crate::elections::{swap_distance, Certificate, Election, Ranking};
use crate::error::Error;
use crate::Result;

pub fn solve_single_crossing(e: &Election, k: usize) -> Result<KemenyResult> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let Some(Certificate::ScOrder(order)) = e.certificate() else {
        return Err(Error::InvalidCertificate(
            "the single-crossing solver needs an SC voter-order certificate".into(),
        ));
    };
    let n = e.num_entries();
    if order.len() != n {
        return Err(Error::InvalidCertificate(format!(
            "SC order lists {} entries, election has {n}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || seen[i] {
            return Err(Error::InvalidCertificate(
                "SC order is not a permutation of the vote entries".into(),
            ));
        }
        seen[i] = true;
    }
    let ordered: Vec<&Ranking> = order.iter().map(|&i| &e.votes()[i].0).collect();
    crate::domains::validate_sc_order(&ordered, e.m())?;
    let weights: Vec<u64> = order.iter().map(|&i| e.votes()[i].1).collect();

    if k >= e.num_distinct() {
        let mut res = trivial_distinct(e, k)?;
        res.method = Method::SingleCrossing;
        return Ok(res);
    }
    let k_eff = k.min(n);

    // chain positions: consecutive distances accumulate
    let mut pos = vec![0u64; n];
    for i in 1..n {
        pos[i] = pos[i - 1] + swap_distance(ordered[i - 1], ordered[i])?;
    }
    // weighted prefix sums over chain positions
    let mut wsum = vec![0i128; n + 1];
    let mut wpos = vec![0i128; n + 1];
    for i in 0..n {
        wsum[i + 1] = wsum[i] + weights[i] as i128;
        wpos[i + 1] = wpos[i] + weights[i] as i128 * pos[i] as i128;
    }
    // cost of serving entries a..=b (order indices) from their weighted
    // median position; returns (cost, median index)
    let segment = |a: usize, b: usize| -> (u64, usize) {
        let total = wsum[b + 1] - wsum[a];
        // lowest index whose cumulative weight reaches half the segment
        let (mut lo, mut hi) = (a, b);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if 2 * (wsum[mid + 1] - wsum[a]) >= total {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let med = lo;
        let d = pos[med] as i128;
        let left = d * (wsum[med + 1] - wsum[a]) - (wpos[med + 1] - wpos[a]);
        let right = (wpos[b + 1] - wpos[med + 1]) - d * (wsum[b + 1] - wsum[med + 1]);
        debug_assert!(left >= 0 && right >= 0);
        ((left + right) as u64, med)
    };

    // dp[j][i]: first i entries served by j clusters
    let inf = u64::MAX;
    let mut dp = vec![vec![inf; n + 1]; k_eff + 1];
    let mut split = vec![vec![0usize; n + 1]; k_eff + 1];
    dp[0][0] = 0;
    for j in 1..=k_eff {
        for i in 1..=n {
            for s in (j - 1)..i {
                if dp[j - 1][s] == inf {
                    continue;
                }
                let (c, _) = segment(s, i - 1);
                let val = dp[j - 1][s] + c;
                if val < dp[j][i] {
                    dp[j][i] = val;
                    split[j][i] = s;
                }
            }
        }
    }
    let optimal = dp[k_eff][n];

    let mut centers = Vec::with_capacity(k_eff);
    let mut i = n;
    for j in (1..=k_eff).rev() {
        let s = split[j][i];
        let (_, med) = segment(s, i - 1);
        centers.push(ordered[med].clone());
        i = s;
    }
    centers.reverse();
    finish_result(e, centers, optimal, Method::SingleCrossing, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::generate_sc_chain;
    use crate::solvers::test_util::brute_force_k_kemeny;
    use crate::solvers::{solve_partition_dp, SolverBudgets};
    use rand::Rng;

    fn chain_election(m: usize, n: usize, seed: u64) -> Election {
        // sample n votes from a random maximal chain, in chain order
        let chain = generate_sc_chain(m, seed).unwrap();
        let mut rng = crate::rng::rng_from_seed(seed ^ 0xabc);
        let mut idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..chain.len())).collect();
        idx.sort_unstable();
        let votes: Vec<_> = idx
            .iter()
            .map(|&i| (chain.votes()[i].clone(), 1 + rng.gen_range(0..2)))
            .collect();
        Election::new(m, votes)
            .unwrap()
            .with_certificate(Certificate::ScOrder((0..n).collect()))
    }

    #[test]
    fn requires_certificate() {
        let e = Election::new(2, vec![(Ranking::identity(2), 1)]).unwrap();
        assert!(matches!(
            solve_single_crossing(&e, 1),
            Err(Error::InvalidCertificate(_))
        ));
    }

    #[test]
    fn rejects_invalid_order_with_pair() {
        let chain = generate_sc_chain(4, 9).unwrap();
        let votes: Vec<_> = chain.votes().iter().map(|v| (v.clone(), 1)).collect();
        let n = votes.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.swap(0, n - 1);
        let e = Election::new(4, votes)
            .unwrap()
            .with_certificate(Certificate::ScOrder(order));
        let err = solve_single_crossing(&e, 2).unwrap_err();
        assert!(matches!(err, Error::InvalidCertificate(_)));
        assert!(err.to_string().contains("crosses more than once"));
    }

    #[test]
    fn k_equals_n_scores_zero() {
        let e = chain_election(5, 6, 1);
        let res = solve_single_crossing(&e, 6).unwrap();
        assert_eq!(res.score, 0);
    }

    #[test]
    fn full_chain_k1_is_weighted_median() {
        let chain = generate_sc_chain(8, 5).unwrap();
        let e = chain.to_election().unwrap();
        let res = solve_single_crossing(&e, 1).unwrap();
        assert_eq!(res.score, 210); // sum of |i - 15| over 29 chain positions
        let exact = crate::solvers::exact_kemeny(&e, &SolverBudgets::default()).unwrap();
        assert_eq!(res.score, exact.score);
    }

    #[test]
    fn matches_partition_dp_on_random_sc_instances() {
        for seed in 0..40 {
            let mut rng = crate::rng::rng_from_seed(1000 + seed);
            let m = 3 + rng.gen_range(0..4);
            let n = 3 + rng.gen_range(0..6);
            let k = 1 + rng.gen_range(0..3);
            let e = chain_election(m, n, seed);
            let sc = solve_single_crossing(&e, k).unwrap();
            let dp = solve_partition_dp(&e, k, &SolverBudgets::default()).unwrap();
            assert_eq!(sc.score, dp.score, "seed={seed} m={m} n={n} k={k}");
            assert!(sc.verify(&e));
            // Lemma-style check: the SC optimum, whose centers are votes,
            // attains the unrestricted partition optimum
            assert!(sc.centers.iter().all(|c| e.votes().iter().any(|(v, _)| v == c)));
        }
    }

    #[test]
    fn matches_bell_oracle_small() {
        for seed in 0..10 {
            let e = chain_election(4, 5, 100 + seed);
            for k in 1..=3 {
                let sc = solve_single_crossing(&e, k).unwrap();
                assert_eq!(sc.score, brute_force_k_kemeny(&e, k), "seed={seed} k={k}");
            }
        }
    }

    #[test]
    fn weighted_medians_respect_multiplicity() {
        // heavy vote at one end pulls the center there
        let chain = generate_sc_chain(4, 3).unwrap();
        let votes = vec![
            (chain.votes()[0].clone(), 10),
            (chain.votes()[3].clone(), 1),
            (chain.votes()[6].clone(), 1),
        ];
        let e = Election::new(4, votes)
            .unwrap()
            .with_certificate(Certificate::ScOrder(vec![0, 1, 2]));
        let res = solve_single_crossing(&e, 1).unwrap();
        assert_eq!(res.centers[0], chain.votes()[0]);
    }
}
