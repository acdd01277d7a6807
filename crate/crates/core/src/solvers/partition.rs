//! Exact k-Kemeny by partitioning the vote entries: dynamic programming
//! over voter subsets with submask enumeration, O*(3^n) overall.

use super::{exact_kemeny, finish_result, trivial_distinct, KemenyResult, Method, SolverBudgets};
use crate::elections::{condorcet_ranking, kemeny_score, Election, Ranking};
use crate::error::Error;
use crate::Result;

/// Optimal k-Kemeny set via `f(S, t) = min over nonempty W ⊆ S of
/// f(W, 1) + f(S \ W, t - 1)`, where `f(S, 1)` is the exact 1-Kemeny score
/// of the sub-election on `S`.
///
/// When the election carries a domain certificate the per-subset base case
/// uses the Condorcet ranking directly (it is a Kemeny ranking whenever it
/// exists); otherwise it falls back to the bitmask DP, whose candidate
/// budget then applies.
pub fn solve_partition_dp(e: &Election, k: usize, budgets: &SolverBudgets) -> Result<KemenyResult> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let n = e.num_entries();
    if n > budgets.partition_max_n {
        return Err(Error::BudgetExceeded {
            budget: "partition_max_n",
            limit: budgets.partition_max_n as u64,
            required: n as u64,
        });
    }
    if k >= e.num_distinct() {
        let mut res = trivial_distinct(e, k)?;
        res.method = Method::PartitionDp;
        return Ok(res);
    }
    let k_eff = k.min(n);
    let full: usize = (1usize << n) - 1;

    let mut base = vec![0u64; full + 1];
    for s in 1..=full {
        base[s] = subset_one_kemeny(e, s, budgets)?.0;
    }

    // dp layers for t = 1..k_eff; choices[t-2][s] is the submask split off
    // as its own cluster at level t
    let mut prev = base.clone();
    let mut choices: Vec<Vec<u32>> = Vec::with_capacity(k_eff.saturating_sub(1));
    for _t in 2..=k_eff {
        let mut cur = vec![u64::MAX; full + 1];
        let mut ch = vec![0u32; full + 1];
        cur[0] = 0;
        for s in 1..=full {
            let mut best = u64::MAX;
            let mut best_w = 0u32;
            let mut w = s;
            loop {
                let val = base[w].saturating_add(prev[s & !w]);
                if val < best {
                    best = val;
                    best_w = w as u32;
                }
                if w == 0 {
                    break;
                }
                w = (w - 1) & s;
            }
            cur[s] = best;
            ch[s] = best_w;
        }
        choices.push(ch);
        prev = cur;
    }
    let optimal = prev[full];

    // backtrack the chosen partition and recompute its cluster centers
    let mut centers: Vec<Ranking> = Vec::with_capacity(k_eff);
    let mut s = full;
    for t in (2..=k_eff).rev() {
        if s == 0 {
            break;
        }
        let w = choices[t - 2][s] as usize;
        if w != 0 {
            centers.push(subset_one_kemeny(e, w, budgets)?.1);
        }
        s &= !w;
    }
    if s != 0 {
        centers.push(subset_one_kemeny(e, s, budgets)?.1);
    }
    finish_result(e, centers, optimal, Method::PartitionDp, true)
}

/// Exact 1-Kemeny score and an optimal center for the sub-election on the
/// entries selected by `mask`.
fn subset_one_kemeny(e: &Election, mask: usize, budgets: &SolverBudgets) -> Result<(u64, Ranking)> {
    let votes: Vec<(Ranking, u64)> = e
        .votes()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, v)| v.clone())
        .collect();
    let sub = Election::new(e.m(), votes)?;
    if e.certificate().is_some() {
        if let Some(r) = condorcet_ranking(&sub) {
            let score = kemeny_score(&sub, &r)?;
            return Ok((score, r));
        }
    }
    let res = exact_kemeny(&sub, budgets)?;
    Ok((res.score, res.centers[0].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{enumerate_sp, generate_sc_chain};
    use crate::elections::test_util::ranking;
    use crate::solvers::test_util::brute_force_k_kemeny;
    use rand::seq::SliceRandom;
    use rand::Rng;

    fn budgets() -> SolverBudgets {
        SolverBudgets::default()
    }

    #[test]
    fn k_at_least_distinct_votes_scores_zero() {
        let e = Election::new(3, vec![(ranking(&[0, 1, 2]), 2), (ranking(&[2, 1, 0]), 1)]).unwrap();
        let res = solve_partition_dp(&e, 2, &budgets()).unwrap();
        assert_eq!(res.score, 0);
        assert!(res.exact);
    }

    #[test]
    fn k_one_equals_exact_kemeny() {
        let mut rng = crate::rng::rng_from_seed(3);
        for _ in 0..30 {
            let m = 2 + rng.gen_range(0..5);
            let votes: Vec<_> = (0..6)
                .map(|_| {
                    let mut order: Vec<u16> = (0..m as u16).collect();
                    order.shuffle(&mut rng);
                    (Ranking::new(order).unwrap(), 1 + rng.gen_range(0..2))
                })
                .collect();
            let e = Election::new(m, votes).unwrap();
            let dp = solve_partition_dp(&e, 1, &budgets()).unwrap();
            let ek = exact_kemeny(&e, &budgets()).unwrap();
            assert_eq!(dp.score, ek.score);
        }
    }

    #[test]
    fn matches_bell_partition_oracle_random() {
        let mut rng = crate::rng::rng_from_seed(41);
        for _ in 0..25 {
            let m = 2 + rng.gen_range(0..4);
            let n = 2 + rng.gen_range(0..5);
            let k = 1 + rng.gen_range(0..3);
            let votes: Vec<_> = (0..n)
                .map(|_| {
                    let mut order: Vec<u16> = (0..m as u16).collect();
                    order.shuffle(&mut rng);
                    (Ranking::new(order).unwrap(), 1 + rng.gen_range(0..2))
                })
                .collect();
            let e = Election::new(m, votes).unwrap();
            let dp = solve_partition_dp(&e, k, &budgets()).unwrap();
            let oracle = brute_force_k_kemeny(&e, k);
            assert_eq!(dp.score, oracle, "m={m} n={n} k={k}");
            assert!(dp.verify(&e));
            assert!(dp.centers.len() <= k);
        }
    }

    #[test]
    fn matches_bell_partition_oracle_sp_elections() {
        // certified single-peaked elections take the Condorcet base case
        let axis = Ranking::identity(6);
        let sp = enumerate_sp(&axis).unwrap();
        let mut rng = crate::rng::rng_from_seed(8);
        for _ in 0..15 {
            let votes: Vec<_> = (0..7)
                .map(|_| (sp.votes()[rng.gen_range(0..sp.len())].clone(), 1))
                .collect();
            let e = Election::new(6, votes).unwrap().with_certificate(
                crate::elections::Certificate::SpAxis(axis.clone()),
            );
            for k in 1..=3 {
                let dp = solve_partition_dp(&e, k, &budgets()).unwrap();
                let oracle = brute_force_k_kemeny(&e, k);
                assert_eq!(dp.score, oracle, "k={k}");
            }
        }
    }

    #[test]
    fn score_nonincreasing_in_k() {
        let chain = generate_sc_chain(5, 2).unwrap();
        let votes: Vec<_> = chain.votes()[..8].iter().map(|v| (v.clone(), 1)).collect();
        let e = Election::new(5, votes).unwrap();
        let mut prev = u64::MAX;
        for k in 1..=8 {
            let res = solve_partition_dp(&e, k, &budgets()).unwrap();
            assert!(res.score <= prev, "k={k}");
            prev = res.score;
        }
        assert_eq!(prev, 0);
    }

    #[test]
    fn budget_error_names_partition_budget() {
        let votes: Vec<_> = (0..3).map(|_| (Ranking::identity(3), 1)).collect();
        let e = Election::new(3, votes).unwrap();
        let tight = SolverBudgets {
            partition_max_n: 2,
            ..SolverBudgets::default()
        };
        match solve_partition_dp(&e, 2, &tight) {
            Err(Error::BudgetExceeded { budget, .. }) => assert_eq!(budget, "partition_max_n"),
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
