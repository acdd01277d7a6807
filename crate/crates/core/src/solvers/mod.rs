//! k-Kemeny solvers: an exact 1-Kemeny bitmask DP, an O*(3^n) partition DP
//! over voter subsets, a polynomial exact algorithm for single-crossing
//! elections, brute force over enumerable Euclidean domains, and a restarted
//! local-search heuristic.
//!
//! All solvers treat vote multiplicity as a multiplier on distance terms.
//! Every returned result satisfies `score == k_kemeny_score(e, centers)`.

mod embeddable;
mod exact;
mod local_search;
mod partition;
mod single_crossing;

pub use embeddable::solve_embeddable;
pub use exact::exact_kemeny;
pub use local_search::{build_search_space, local_search};
pub use partition::solve_partition_dp;
pub use single_crossing::solve_single_crossing;

use crate::domains::Domain;
use crate::elections::{k_kemeny_score, Certificate, Election, Ranking};
use crate::error::Error;
use crate::rng::derive_seed;
use crate::Result;

/// Resource limits; errors name the violated budget.
#[derive(Debug, Clone)]
pub struct SolverBudgets {
    /// Maximum candidate count for the 1-Kemeny bitmask DP.
    pub exact_max_m: usize,
    /// Maximum vote-entry count for the partition DP.
    pub partition_max_n: usize,
    /// Maximum number of k-subsets the embeddable brute force may scan.
    pub embeddable_max_sets: u64,
}

impl Default for SolverBudgets {
    fn default() -> Self {
        SolverBudgets {
            exact_max_m: 20,
            partition_max_n: 15,
            embeddable_max_sets: 5_000_000,
        }
    }
}

/// Which algorithm produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BitmaskDp,
    PartitionDp,
    SingleCrossing,
    Embeddable,
    LocalSearch,
    /// k at least the number of distinct votes; the votes themselves are
    /// centers with score zero.
    TrivialDistinct,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::BitmaskDp => "bitmask-dp",
            Method::PartitionDp => "partition-dp",
            Method::SingleCrossing => "single-crossing",
            Method::Embeddable => "embeddable",
            Method::LocalSearch => "local-search",
            Method::TrivialDistinct => "trivial-distinct",
        };
        f.write_str(s)
    }
}

/// A set of center rankings with the realized k-Kemeny score and the
/// per-vote-entry assignment to the nearest center.
#[derive(Debug, Clone)]
pub struct KemenyResult {
    pub centers: Vec<Ranking>,
    pub score: u64,
    pub assignment: Vec<usize>,
    pub method: Method,
    pub exact: bool,
}

impl KemenyResult {
    /// Recompute the score from the centers and check it matches.
    pub fn verify(&self, e: &Election) -> bool {
        match k_kemeny_score(e, &self.centers) {
            Ok((score, _)) => score == self.score,
            Err(_) => false,
        }
    }
}

pub(crate) fn finish_result(
    e: &Election,
    mut centers: Vec<Ranking>,
    expected_score: u64,
    method: Method,
    exact: bool,
) -> Result<KemenyResult> {
    centers.dedup();
    let (score, assignment) = k_kemeny_score(e, &centers)?;
    assert_eq!(
        score, expected_score,
        "{method} solver invariant violated: recomputed score differs"
    );
    Ok(KemenyResult {
        centers,
        score,
        assignment,
        method,
        exact,
    })
}

/// Zero-score result for `k >= #distinct votes`: the distinct votes are the
/// centers.
pub(crate) fn trivial_distinct(e: &Election, k: usize) -> Result<KemenyResult> {
    let mut centers: Vec<Ranking> = Vec::new();
    for (v, _) in e.votes() {
        if !centers.contains(v) {
            centers.push(v.clone());
        }
    }
    debug_assert!(centers.len() <= k);
    finish_result(e, centers, 0, Method::TrivialDistinct, true)
}

/// Solver selection used by the analysis layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolverConfig {
    /// Certificate-aware exact solving: `k = 1` uses the bitmask DP,
    /// single-crossing certificates use the polynomial algorithm, everything
    /// else goes through the partition DP.
    Exact,
    /// Restarted steepest-descent local search over a search space built
    /// from the domain (plus IC votes for non-Condorcet domains).
    Heuristic { restarts: usize, extra_ic: usize },
}

/// Dispatch a k-Kemeny computation according to `cfg`.
pub fn solve(
    e: &Election,
    k: usize,
    cfg: &SolverConfig,
    seed: u64,
    budgets: &SolverBudgets,
    domain: Option<&Domain>,
) -> Result<KemenyResult> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if k >= e.num_distinct() {
        return trivial_distinct(e, k);
    }
    match cfg {
        SolverConfig::Exact => {
            if k == 1 {
                exact_kemeny(e, budgets)
            } else if matches!(e.certificate(), Some(Certificate::ScOrder(_))) {
                solve_single_crossing(e, k)
            } else {
                solve_partition_dp(e, k, budgets)
            }
        }
        SolverConfig::Heuristic { restarts, extra_ic } => {
            let space = build_search_space(e, domain, *extra_ic, derive_seed(seed, 0x5face));
            local_search(e, k, &space, *restarts, derive_seed(seed, 0x10ca1))
        }
    }
}

#[cfg(test)]
pub mod test_util {
    use super::*;
    use crate::elections::{swap_distance, test_util::all_rankings};

    /// Brute-force 1-Kemeny over all m! rankings.
    pub fn brute_force_kemeny(e: &Election) -> (u64, Ranking) {
        let mut best = u64::MAX;
        let mut best_r = None;
        for r in all_rankings(e.m()) {
            let s = crate::elections::kemeny_score(e, &r).unwrap();
            if s < best {
                best = s;
                best_r = Some(r);
            }
        }
        (best, best_r.unwrap())
    }

    /// Brute-force k-Kemeny over all partitions of vote entries into at most
    /// k groups; each group is centered independently by scanning all m!
    /// rankings. Independent of the solver implementations.
    pub fn brute_force_k_kemeny(e: &Election, k: usize) -> u64 {
        let n = e.num_entries();
        let rankings = all_rankings(e.m());
        // distance from each ranking to each vote entry
        let dist: Vec<Vec<u64>> = rankings
            .iter()
            .map(|r| {
                e.votes()
                    .iter()
                    .map(|(v, w)| swap_distance(v, r).unwrap() * w)
                    .collect()
            })
            .collect();
        let group_cost = |members: &[usize]| -> u64 {
            dist.iter()
                .map(|row| members.iter().map(|&i| row[i]).sum::<u64>())
                .min()
                .unwrap()
        };
        // enumerate set partitions via restricted growth strings
        fn rec(
            i: usize,
            n: usize,
            k: usize,
            labels: &mut Vec<usize>,
            used: usize,
            best: &mut u64,
            group_cost: &dyn Fn(&[usize]) -> u64,
        ) {
            if i == n {
                let mut total = 0u64;
                for g in 0..used {
                    let members: Vec<usize> =
                        (0..n).filter(|&j| labels[j] == g).collect();
                    total += group_cost(&members);
                    if total >= *best {
                        return;
                    }
                }
                *best = (*best).min(total);
                return;
            }
            for g in 0..used.min(k) {
                labels.push(g);
                rec(i + 1, n, k, labels, used, best, group_cost);
                labels.pop();
            }
            if used < k {
                labels.push(used);
                rec(i + 1, n, k, labels, used + 1, best, group_cost);
                labels.pop();
            }
        }
        let mut best = u64::MAX;
        let mut labels = Vec::with_capacity(n);
        rec(0, n, k, &mut labels, 0, &mut best, &group_cost);
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elections::test_util::ranking;

    #[test]
    fn trivial_distinct_covers_all_votes() {
        let e = Election::new(
            3,
            vec![(ranking(&[0, 1, 2]), 3), (ranking(&[2, 1, 0]), 1), (ranking(&[0, 1, 2]), 2)],
        )
        .unwrap();
        let res = trivial_distinct(&e, 5).unwrap();
        assert_eq!(res.score, 0);
        assert_eq!(res.centers.len(), 2);
        assert!(res.verify(&e));
    }

    #[test]
    fn solve_rejects_k_zero() {
        let e = Election::new(2, vec![(ranking(&[0, 1]), 1)]).unwrap();
        assert!(solve(&e, 0, &SolverConfig::Exact, 0, &SolverBudgets::default(), None).is_err());
    }
}
