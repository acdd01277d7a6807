//! Hypercube 2-Segmentation (H2S) and its translations into 2-Kemeny
//! instances on structured domains, used as correctness fixtures for the
//! solvers.
//!
//! An H2S instance asks whether a set of binary strings can be split into
//! two groups whose Hamming scores (per-position minority counts) sum to at
//! most `t`. Two constructions turn such an instance into an election:
//! aligned votes over candidate pairs (single-peaked and balanced
//! group-separable at once, threshold `q = t`), and mirrored votes around a
//! block of dummy candidates (caterpillar group-separable, threshold
//! `q = 2Mt + 2nm^2`).

use crate::domains::{GsNode, GsTree};
use crate::elections::{Certificate, Election, Ranking};
use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct H2sInstance {
    pub strings: Vec<Vec<bool>>,
    pub budget: u64,
}

impl H2sInstance {
    pub fn new(strings: Vec<Vec<bool>>, budget: u64) -> Result<Self> {
        if strings.is_empty() {
            return Err(Error::InvalidInput("H2S needs at least one string".into()));
        }
        let len = strings[0].len();
        if len == 0 {
            return Err(Error::InvalidInput("H2S strings must be nonempty".into()));
        }
        if strings.iter().any(|s| s.len() != len) {
            return Err(Error::LengthMismatch {
                expected: len,
                got: strings.iter().map(|s| s.len()).find(|&l| l != len).unwrap(),
            });
        }
        Ok(H2sInstance { strings, budget })
    }

    pub fn n(&self) -> usize {
        self.strings.len()
    }

    pub fn len(&self) -> usize {
        self.strings[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Hamming score of a group: summed over positions, the count of strings
/// disagreeing with the majority symbol (the minority count).
pub fn hamming_score(group: &[Vec<bool>]) -> Result<u64> {
    if group.is_empty() {
        return Err(Error::InvalidInput("hamming score of an empty group".into()));
    }
    let len = group[0].len();
    let mut total = 0u64;
    for j in 0..len {
        let ones = group.iter().filter(|s| s[j]).count() as u64;
        let zeros = group.len() as u64 - ones;
        total += ones.min(zeros);
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct H2sSolution {
    pub yes: bool,
    pub best_score: u64,
    /// Group membership per string in a minimizing bipartition.
    pub partition: Vec<bool>,
}

/// Decide H2S by scanning all bipartitions (first string pinned to group A;
/// an empty side contributes score 0).
pub fn solve_h2s_bruteforce(inst: &H2sInstance) -> Result<H2sSolution> {
    let n = inst.n();
    if n > 15 {
        return Err(Error::BudgetExceeded {
            budget: "h2s_bruteforce_n",
            limit: 15,
            required: n as u64,
        });
    }
    let mut best_score = u64::MAX;
    let mut best_mask = 0usize;
    for mask in 0..(1usize << (n - 1)) {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        a.push(inst.strings[0].clone());
        for (i, s) in inst.strings.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 0 {
                a.push(s.clone());
            } else {
                b.push(s.clone());
            }
        }
        let score = hamming_score(&a)? + if b.is_empty() { 0 } else { hamming_score(&b)? };
        if score < best_score {
            best_score = score;
            best_mask = mask;
        }
    }
    let partition = (0..n)
        .map(|i| i > 0 && best_mask >> (i - 1) & 1 == 1)
        .collect();
    Ok(H2sSolution {
        yes: best_score <= inst.budget,
        best_score,
        partition,
    })
}

/// Election whose 2-Kemeny decision at threshold `q` matches the H2S
/// instance, realized inside both the single-peaked and the balanced
/// group-separable domain.
#[derive(Debug, Clone)]
pub struct AlignedReduction {
    pub election: Election,
    pub k: usize,
    pub q: u64,
    pub sp_axis: Ranking,
    pub gs_tree: GsTree,
    /// String length after padding to a power of two.
    pub padded_len: usize,
}

/// Aligned-votes construction: candidates come in pairs `{a_j, b_j}`
/// occupying positions `2j-1, 2j` of every vote, ordered by the j-th string
/// symbol. The election is single-peaked on
/// `a_m' <| ... <| a_1 <| b_1 <| ... <| b_m'` and balanced group-separable
/// for the tree reading `a_1 b_1 a_2 b_2 ...`; the threshold is `q = t`.
///
/// Strings are padded with identical symbols to a power-of-two length,
/// which changes no Hamming score.
pub fn reduce_sp_gsbal(inst: &H2sInstance) -> Result<AlignedReduction> {
    let n = inst.n();
    let m0 = inst.len();
    let mp = m0.next_power_of_two();
    let padded: Vec<Vec<bool>> = inst
        .strings
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.resize(mp, false);
            s
        })
        .collect();
    // candidate indices: a_j -> j-1, b_j -> mp + j - 1 (0-based j below)
    let a = |j: usize| j as u16;
    let b = |j: usize| (mp + j) as u16;
    let votes: Vec<(Ranking, u64)> = padded
        .iter()
        .map(|s| {
            let mut order = Vec::with_capacity(2 * mp);
            for (j, &bit) in s.iter().enumerate() {
                if bit {
                    order.push(a(j));
                    order.push(b(j));
                } else {
                    order.push(b(j));
                    order.push(a(j));
                }
            }
            Ok((Ranking::new(order)?, 1))
        })
        .collect::<Result<_>>()?;
    let mut axis = Vec::with_capacity(2 * mp);
    for j in (0..mp).rev() {
        axis.push(a(j));
    }
    for j in 0..mp {
        axis.push(b(j));
    }
    let sp_axis = Ranking::new(axis)?;
    // balanced tree over the frontier a_1 b_1 a_2 b_2 ... (2mp leaves, a
    // power of two)
    let mut frontier = Vec::with_capacity(2 * mp);
    for j in 0..mp {
        frontier.push(a(j));
        frontier.push(b(j));
    }
    fn perfect(leaves: &[u16]) -> GsNode {
        if leaves.len() == 1 {
            GsNode::Leaf(leaves[0])
        } else {
            let half = leaves.len() / 2;
            GsNode::Internal(vec![perfect(&leaves[..half]), perfect(&leaves[half..])])
        }
    }
    let gs_tree = GsTree::new(perfect(&frontier))?;
    let election = Election::new(2 * mp, votes)?
        .with_certificate(Certificate::SpAxis(sp_axis.clone()));
    let _ = n;
    Ok(AlignedReduction {
        election,
        k: 2,
        q: inst.budget,
        sp_axis,
        gs_tree,
        padded_len: mp,
    })
}

/// Election for the caterpillar construction, with the dummy-block size
/// actually used and the derived threshold.
#[derive(Debug, Clone)]
pub struct CaterpillarReduction {
    pub election: Election,
    pub k: usize,
    pub q: u64,
    /// Caterpillar axis `a_1 <| b_1 <| ... <| a_m <| b_m <| x_1 <| ...`.
    pub axis: Ranking,
    pub dummies: u64,
}

/// Mirrored-votes construction: each string becomes a vote
/// `c(1) > ... > c(m) > X > complement(m) > ... > complement(1)` over the
/// paired candidates plus `M` dummies, caterpillar group-separable, with
/// threshold `q = 2Mt + 2nm^2`.
///
/// The canonical `M = m^10 n^10` exists only to make the argument obvious;
/// any `M > nm^2` keeps the separation sound, since one mismatched
/// position already forces `2M` swaps across the dummy block while the
/// non-dummy positions can contribute at most `2nm^2` in total. Overrides
/// below that bound are rejected.
pub fn reduce_gscat(inst: &H2sInstance, m_override: Option<u64>) -> Result<CaterpillarReduction> {
    let n = inst.n() as u64;
    let m = inst.len() as u64;
    let minimal_sound = n * m * m;
    let dummies = match m_override {
        Some(mo) => {
            if mo <= minimal_sound {
                return Err(Error::InvalidInput(format!(
                    "dummy count must exceed n*m^2 = {minimal_sound} to keep the reduction sound, got {mo}"
                )));
            }
            mo
        }
        None => {
            let big = (m as u128).pow(10).saturating_mul((n as u128).pow(10));
            if big > 100_000 {
                return Err(Error::BudgetExceeded {
                    budget: "reduction_candidates",
                    limit: 100_000,
                    required: big.min(u64::MAX as u128) as u64,
                });
            }
            big as u64
        }
    };
    let total_candidates = 2 * (m as usize) + dummies as usize;
    if total_candidates > u16::MAX as usize {
        return Err(Error::BudgetExceeded {
            budget: "reduction_candidates",
            limit: u16::MAX as u64,
            required: total_candidates as u64,
        });
    }
    // candidate indices: a_j -> 2j, b_j -> 2j+1 (0-based j), x_i after
    let a = |j: usize| (2 * j) as u16;
    let b = |j: usize| (2 * j + 1) as u16;
    let x = |i: usize| (2 * m as usize + i) as u16;
    let votes: Vec<(Ranking, u64)> = inst
        .strings
        .iter()
        .map(|s| {
            let mut order = Vec::with_capacity(total_candidates);
            for (j, &bit) in s.iter().enumerate() {
                order.push(if bit { a(j) } else { b(j) });
            }
            for i in 0..dummies as usize {
                order.push(x(i));
            }
            for (j, &bit) in s.iter().enumerate().rev() {
                order.push(if bit { b(j) } else { a(j) });
            }
            Ok((Ranking::new(order)?, 1))
        })
        .collect::<Result<_>>()?;
    let mut axis = Vec::with_capacity(total_candidates);
    for j in 0..m as usize {
        axis.push(a(j));
        axis.push(b(j));
    }
    for i in 0..dummies as usize {
        axis.push(x(i));
    }
    let axis = Ranking::new(axis)?;
    let election = Election::new(total_candidates, votes)?
        .with_certificate(Certificate::GsTree(GsTree::caterpillar(&axis)));
    let q = 2 * dummies * inst.budget + 2 * n * m * m;
    Ok(CaterpillarReduction {
        election,
        k: 2,
        q,
        axis,
        dummies,
    })
}
