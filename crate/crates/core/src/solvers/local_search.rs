//! Restarted steepest-descent local search: start from k random centers
//! drawn from a search space, repeatedly apply the single-center
//! replacement with the largest score decrease until none improves, and
//! keep the best outcome over the restarts.

use super::{finish_result, KemenyResult, Method};
use crate::domains::Domain;
use crate::elections::{swap_distance, Election, Ranking};
use crate::error::Error;
use crate::rng::{derive_seed, rng_from_seed};
use crate::Result;
use rand::Rng;
use rayon::prelude::*;

/// Search space for the heuristic: a Condorcet-certified domain is used
/// as-is; otherwise the domain votes (or, with no domain, the election's
/// distinct votes) are united with `extra_ic` impartial-culture samples,
/// deduplicated.
pub fn build_search_space(
    e: &Election,
    domain: Option<&Domain>,
    extra_ic: usize,
    seed: u64,
) -> Vec<Ranking> {
    let m = e.m();
    let mut space: Vec<Ranking> = Vec::new();
    let mut push_unique = |space: &mut Vec<Ranking>, r: Ranking| {
        if !space.contains(&r) {
            space.push(r);
        }
    };
    match domain {
        Some(d) => {
            space.extend(d.votes().iter().cloned());
            if d.is_condorcet() {
                return space;
            }
        }
        None => {
            for (v, _) in e.votes() {
                push_unique(&mut space, v.clone());
            }
        }
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..extra_ic {
        let mut order: Vec<u16> = (0..m as u16).collect();
        for i in (1..m).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        push_unique(&mut space, Ranking::new(order).expect("permutation"));
    }
    space
}

const NO_SECOND: u64 = u64::MAX / 4;

pub fn local_search(
    e: &Election,
    k: usize,
    space: &[Ranking],
    restarts: usize,
    seed: u64,
) -> Result<KemenyResult> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if space.is_empty() {
        return Err(Error::InvalidInput("search space is empty".into()));
    }
    if restarts == 0 {
        return Err(Error::InvalidInput("need at least one restart".into()));
    }
    for r in space {
        if r.m() != e.m() {
            return Err(Error::LengthMismatch {
                expected: e.m(),
                got: r.m(),
            });
        }
    }
    let n = e.num_entries();
    let s_len = space.len();
    let k_eff = k.min(s_len);

    // distance matrix, row per vote entry
    let dist: Vec<u32> = e
        .votes()
        .par_iter()
        .flat_map_iter(|(v, _)| {
            space
                .iter()
                .map(|c| swap_distance(v, c).unwrap() as u32)
                .collect::<Vec<_>>()
        })
        .collect();
    let weights: Vec<u64> = e.votes().iter().map(|(_, w)| *w).collect();

    let run_restart = |restart: usize| -> (u64, Vec<usize>) {
        let mut rng = rng_from_seed(derive_seed(seed, restart as u64));
        // k distinct center indices, uniform over the space
        let mut centers: Vec<usize> = Vec::with_capacity(k_eff);
        while centers.len() < k_eff {
            let c = rng.gen_range(0..s_len);
            if !centers.contains(&c) {
                centers.push(c);
            }
        }
        let mut in_centers = vec![false; s_len];
        for &c in &centers {
            in_centers[c] = true;
        }

        // per entry: assigned slot, best distance, second-best distance
        let mut slot = vec![0usize; n];
        let mut best_d = vec![0u64; n];
        let mut second_d = vec![NO_SECOND; n];
        let reassign = |centers: &[usize], slot: &mut [usize], best_d: &mut [u64], second_d: &mut [u64]| {
            for v in 0..n {
                let row = &dist[v * s_len..(v + 1) * s_len];
                let (mut b, mut s2, mut bs) = (u64::MAX, NO_SECOND, 0usize);
                for (si, &c) in centers.iter().enumerate() {
                    let d = row[c] as u64;
                    if d < b {
                        s2 = b;
                        b = d;
                        bs = si;
                    } else if d < s2 {
                        s2 = d;
                    }
                }
                slot[v] = bs;
                best_d[v] = b;
                second_d[v] = if centers.len() > 1 { s2 } else { NO_SECOND };
            }
        };
        reassign(&centers, &mut slot, &mut best_d, &mut second_d);

        loop {
            // delta of replacing slot s with candidate c:
            //   shared[c]  = sum_v w_v * min(0, d_vc - best_v)
            //   corr[c][s] = per-slot correction for votes currently on s
            let mut shared = vec![0i64; s_len];
            let mut corr = vec![0i64; s_len * k_eff];
            for v in 0..n {
                let row = &dist[v * s_len..(v + 1) * s_len];
                let w = weights[v] as i64;
                let b = best_d[v];
                let s2 = second_d[v];
                let sv = slot[v];
                for c in 0..s_len {
                    let d = row[c] as u64;
                    let gain = if d < b { (d as i64 - b as i64) * w } else { 0 };
                    shared[c] += gain;
                    // losing the current center: vote moves to min(d, second)
                    let after = d.min(s2);
                    corr[c * k_eff + sv] += (after as i64 - b as i64) * w - gain;
                }
            }
            let mut best_delta = 0i64;
            let mut best_move: Option<(usize, usize)> = None;
            for s in 0..k_eff {
                for c in 0..s_len {
                    if in_centers[c] {
                        continue;
                    }
                    let delta = shared[c] + corr[c * k_eff + s];
                    if delta < best_delta {
                        best_delta = delta;
                        best_move = Some((s, c));
                    }
                }
            }
            match best_move {
                Some((s, c)) => {
                    in_centers[centers[s]] = false;
                    in_centers[c] = true;
                    centers[s] = c;
                    reassign(&centers, &mut slot, &mut best_d, &mut second_d);
                }
                None => break,
            }
        }
        let score: u64 = (0..n).map(|v| best_d[v] * weights[v]).sum();
        (score, centers)
    };

    let (_, _, centers) = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let (score, centers) = run_restart(r);
            (score, r, centers)
        })
        .min_by_key(|(score, r, _)| (*score, *r))
        .expect("at least one restart");

    let center_rankings: Vec<Ranking> = centers.iter().map(|&c| space[c].clone()).collect();
    let (score, _) = crate::elections::k_kemeny_score(e, &center_rankings)?;
    finish_result(e, center_rankings, score, Method::LocalSearch, false)
}
