//! Exact 1-Kemeny via dynamic programming over candidate subsets.

use super::{finish_result, KemenyResult, Method, SolverBudgets};
use crate::elections::{condorcet_ranking, kemeny_score, tournament, Election, Ranking};
use crate::error::Error;
use crate::Result;

/// Optimal Kemeny ranking.
///
/// Subset DP: with `S` the set of candidates occupying the top `|S|`
/// positions and `c` the lowest-placed of them,
/// `best(S) = min_{c in S} best(S \ {c}) + sum_{d not in S} w(d, c)`.
/// When a Condorcet ranking exists its score must equal the DP optimum
/// (it is itself a Kemeny ranking); this is checked on every call.
pub fn exact_kemeny(e: &Election, budgets: &SolverBudgets) -> Result<KemenyResult> {
    let m = e.m();
    if m > budgets.exact_max_m {
        return Err(Error::BudgetExceeded {
            budget: "exact_max_m",
            limit: budgets.exact_max_m as u64,
            required: m as u64,
        });
    }
    let t = tournament(e);
    let full: usize = (1usize << m) - 1;
    let mut best = vec![u64::MAX; full + 1];
    let mut choice = vec![0u16; full + 1];
    best[0] = 0;
    for s in 1..=full {
        let mut b = u64::MAX;
        let mut ch = 0u16;
        let mut bits = s;
        while bits != 0 {
            let c = bits.trailing_zeros() as u16;
            bits &= bits - 1;
            // pairs (c, d) with d already placed below the block
            let mut cost = 0u64;
            let mut outside = full & !s;
            while outside != 0 {
                let d = outside.trailing_zeros() as u16;
                outside &= outside - 1;
                cost += t.get(d, c);
            }
            let val = best[s & !(1usize << c)].saturating_add(cost);
            if val < b {
                b = val;
                ch = c;
            }
        }
        best[s] = b;
        choice[s] = ch;
    }

    let mut order = vec![0u16; m];
    let mut s = full;
    for pos in (0..m).rev() {
        let c = choice[s];
        order[pos] = c;
        s &= !(1usize << c);
    }
    let center = Ranking::new(order)?;
    debug_assert_eq!(kemeny_score(e, &center)?, best[full]);

    if let Some(cr) = condorcet_ranking(e) {
        let cr_score = kemeny_score(e, &cr)?;
        assert_eq!(
            cr_score, best[full],
            "a Condorcet ranking must attain the exact Kemeny optimum"
        );
    }

    finish_result(e, vec![center], best[full], Method::BitmaskDp, true)
}
