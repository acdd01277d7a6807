//! Brute-force k-Kemeny over the enumerated domain of a Euclidean
//! embedding: scans every k-subset of domain rankings. Exact for d <= 2,
//! where the enumeration is exact.

use super::{finish_result, KemenyResult, Method, SolverBudgets};
use crate::domains::{enumerate_euclidean, Embedding};
use crate::elections::{swap_distance, Election};
use crate::error::Error;
use crate::Result;

pub fn solve_embeddable(
    e: &Election,
    emb: &Embedding,
    k: usize,
    budgets: &SolverBudgets,
) -> Result<KemenyResult> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if emb.m() != e.m() {
        return Err(Error::LengthMismatch {
            expected: e.m(),
            got: emb.m(),
        });
    }
    let domain = enumerate_euclidean(emb)?;
    let space = domain.votes();
    let k_eff = k.min(space.len());
    let total = binomial(space.len() as u64, k_eff as u64);
    if total > budgets.embeddable_max_sets as u128 {
        return Err(Error::BudgetExceeded {
            budget: "embeddable_max_sets",
            limit: budgets.embeddable_max_sets,
            required: total.min(u64::MAX as u128) as u64,
        });
    }

    // distance of each vote entry to each domain ranking, pre-weighted
    let n = e.num_entries();
    let dist: Vec<Vec<u64>> = e
        .votes()
        .iter()
        .map(|(v, w)| {
            space
                .iter()
                .map(|c| swap_distance(v, c).unwrap() * w)
                .collect()
        })
        .collect();

    let mut combo: Vec<usize> = (0..k_eff).collect();
    let mut best = u64::MAX;
    let mut best_combo = combo.clone();
    loop {
        let mut score = 0u64;
        for row in dist.iter().take(n) {
            score += combo.iter().map(|&c| row[c]).min().unwrap();
            if score >= best {
                break;
            }
        }
        if score < best {
            best = score;
            best_combo = combo.clone();
        }
        if !next_combination(&mut combo, space.len()) {
            break;
        }
    }
    let centers = best_combo.iter().map(|&c| space[c].clone()).collect();
    finish_result(e, centers, best, Method::Embeddable, emb.d() <= 2)
}

/// Advance to the next k-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] != i + n - k {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{solve_partition_dp, solve_single_crossing};
    use rand::Rng;

    fn budgets() -> SolverBudgets {
        SolverBudgets::default()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(29, 3), 3654);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(4, 5), 0);
    }

    #[test]
    fn k_equal_domain_size_scores_zero_on_domain_election() {
        let emb = Embedding::sample_general_position(1, 4, 3).unwrap();
        let dom = enumerate_euclidean(&emb).unwrap();
        let e = dom.to_election().unwrap();
        let res = solve_embeddable(&e, &emb, dom.len(), &budgets()).unwrap();
        assert_eq!(res.score, 0);
    }

    #[test]
    fn one_dimensional_matches_sc_solver() {
        for seed in 0..10 {
            let emb = Embedding::sample_general_position(1, 5, seed).unwrap();
            let dom = enumerate_euclidean(&emb).unwrap();
            let e = dom.to_election().unwrap();
            for k in 1..=3 {
                let bf = solve_embeddable(&e, &emb, k, &budgets()).unwrap();
                let sc = solve_single_crossing(&e, k).unwrap();
                assert_eq!(bf.score, sc.score, "seed={seed} k={k}");
            }
        }
    }

    #[test]
    fn two_dimensional_on_sampled_elections_vs_partition_dp() {
        // the unconstrained optimum may leave the domain, so the embeddable
        // score can only be >= the partition-DP optimum, with equality when
        // the optimum is realizable
        let mut rng = crate::rng::rng_from_seed(17);
        for seed in 0..6 {
            let emb = Embedding::sample_general_position(2, 5, 300 + seed).unwrap();
            let dom = enumerate_euclidean(&emb).unwrap();
            let votes: Vec<_> = (0..8)
                .map(|_| (dom.votes()[rng.gen_range(0..dom.len())].clone(), 1))
                .collect();
            let e = Election::new(5, votes).unwrap();
            let bf = solve_embeddable(&e, &emb, 2, &budgets()).unwrap();
            let dp = solve_partition_dp(&e, 2, &budgets()).unwrap();
            assert!(bf.score >= dp.score, "seed={seed}");
            assert!(bf.verify(&e));
        }
    }

    #[test]
    fn budget_error_reports_subset_count() {
        let emb = Embedding::sample_general_position(2, 6, 1).unwrap();
        let dom = enumerate_euclidean(&emb).unwrap();
        let e = dom.to_election().unwrap();
        let tight = SolverBudgets {
            embeddable_max_sets: 10,
            ..SolverBudgets::default()
        };
        match solve_embeddable(&e, &emb, 3, &tight) {
            Err(Error::BudgetExceeded { budget, .. }) => {
                assert_eq!(budget, "embeddable_max_sets")
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
