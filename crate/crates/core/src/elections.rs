//! Rankings, elections, swap distance, and pairwise-majority machinery.
//!
//! Candidates are dense integer indices `0..m`; any external naming lives in
//! the I/O layer. All types are immutable after construction and safe to
//! share across threads; the operations here are pure functions.

use crate::error::Error;
use crate::Result;

/// A strict ranking of `m` candidates: `order[0]` is the most preferred.
///
/// Always a permutation of `0..m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    order: Vec<u16>,
}

impl std::fmt::Debug for Ranking {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ranking(")?;
        for (i, c) in self.order.iter().enumerate() {
            if i > 0 {
                write!(f, ">")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Ranking {
    /// Build a ranking, checking that `order` is a permutation of `0..m`.
    pub fn new(order: Vec<u16>) -> Result<Self> {
        let m = order.len();
        if m == 0 {
            return Err(Error::InvalidPermutation {
                m,
                reason: "empty ranking".into(),
            });
        }
        let mut seen = vec![false; m];
        for &c in &order {
            let c = c as usize;
            if c >= m {
                return Err(Error::InvalidPermutation {
                    m,
                    reason: format!("index {c} out of range"),
                });
            }
            if seen[c] {
                return Err(Error::InvalidPermutation {
                    m,
                    reason: format!("index {c} repeated"),
                });
            }
            seen[c] = true;
        }
        Ok(Ranking { order })
    }

    /// The identity ranking `0 > 1 > ... > m-1`.
    pub fn identity(m: usize) -> Self {
        Ranking {
            order: (0..m as u16).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.order.len()
    }

    /// Candidate at position `pos` (0 = top).
    pub fn candidate_at(&self, pos: usize) -> u16 {
        self.order[pos]
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.order
    }

    /// Position of candidate `c` (0 = top).
    pub fn position_of(&self, c: u16) -> usize {
        self.order.iter().position(|&x| x == c).expect("candidate in ranking")
    }

    /// Inverse permutation: `positions()[c]` is the position of candidate `c`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0usize; self.m()];
        for (i, &c) in self.order.iter().enumerate() {
            pos[c as usize] = i;
        }
        pos
    }

    /// True if this ranking prefers `a` to `b`.
    pub fn prefers(&self, a: u16, b: u16) -> bool {
        let pos = self.positions();
        pos[a as usize] < pos[b as usize]
    }

    /// The ranking read bottom-to-top. Involution.
    pub fn reverse(&self) -> Ranking {
        let mut order = self.order.clone();
        order.reverse();
        Ranking { order }
    }
}

/// Swap distance (Kendall tau): the number of adjacent transpositions needed
/// to transform `u` into `v`, i.e. the number of candidate pairs ordered
/// differently. Computed by inversion counting in O(m log m).
pub fn swap_distance(u: &Ranking, v: &Ranking) -> Result<u64> {
    if u.m() != v.m() {
        return Err(Error::LengthMismatch {
            expected: u.m(),
            got: v.m(),
        });
    }
    let pos_u = u.positions();
    // Express v in u's coordinates; inversions of this sequence are exactly
    // the discordant pairs.
    let seq: Vec<u32> = v.order.iter().map(|&c| pos_u[c as usize] as u32).collect();
    Ok(count_inversions(seq))
}

fn count_inversions(mut seq: Vec<u32>) -> u64 {
    let n = seq.len();
    let mut buf = vec![0u32; n];
    merge_count(&mut seq, &mut buf)
}

fn merge_count(seq: &mut [u32], buf: &mut [u32]) -> u64 {
    let n = seq.len();
    if n <= 1 {
        return 0;
    }
    let mid = n / 2;
    let (left, right) = seq.split_at_mut(mid);
    let mut inv = merge_count(left, &mut buf[..mid]) + merge_count(right, &mut buf[mid..]);
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        if left[i] <= right[j] {
            buf[k] = left[i];
            i += 1;
        } else {
            buf[k] = right[j];
            inv += (left.len() - i) as u64;
            j += 1;
        }
        k += 1;
    }
    while i < left.len() {
        buf[k] = left[i];
        i += 1;
        k += 1;
    }
    while j < right.len() {
        buf[k] = right[j];
        j += 1;
        k += 1;
    }
    seq.copy_from_slice(&buf[..n]);
    inv
}

/// Optional structural metadata attached to an election, naming the domain
/// it was drawn from. Solvers use certificates to unlock shortcuts; they are
/// validated where consumed.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Single-peaked axis.
    SpAxis(Ranking),
    /// Group-separable tree.
    GsTree(crate::domains::GsTree),
    /// Single-crossing order of the vote entries (indices into `votes`).
    ScOrder(Vec<usize>),
    /// Euclidean embedding of the candidates.
    Embedding(crate::domains::Embedding),
}

/// An election: `m` candidates and a list of votes with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct Election {
    m: usize,
    votes: Vec<(Ranking, u64)>,
    certificate: Option<Certificate>,
}

impl Election {
    /// Build an election from `(vote, multiplicity)` pairs.
    pub fn new(m: usize, votes: Vec<(Ranking, u64)>) -> Result<Self> {
        if votes.is_empty() {
            return Err(Error::InvalidInput("election has no votes".into()));
        }
        for (v, mult) in &votes {
            if v.m() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    got: v.m(),
                });
            }
            if *mult == 0 {
                return Err(Error::InvalidInput("vote multiplicity must be >= 1".into()));
            }
        }
        Ok(Election {
            m,
            votes,
            certificate: None,
        })
    }

    /// Build from unit-multiplicity votes.
    pub fn from_rankings(m: usize, rankings: Vec<Ranking>) -> Result<Self> {
        Election::new(m, rankings.into_iter().map(|r| (r, 1)).collect())
    }

    pub fn with_certificate(mut self, cert: Certificate) -> Self {
        self.certificate = Some(cert);
        self
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Vote entries; an entry is a ranking plus its multiplicity.
    pub fn votes(&self) -> &[(Ranking, u64)] {
        &self.votes
    }

    /// Number of vote entries (not voters).
    pub fn num_entries(&self) -> usize {
        self.votes.len()
    }

    /// Total number of voters, i.e. the sum of multiplicities.
    pub fn num_voters(&self) -> u64 {
        self.votes.iter().map(|(_, w)| w).sum()
    }

    /// Number of distinct rankings among the votes.
    pub fn num_distinct(&self) -> usize {
        let mut seen: Vec<&Ranking> = self.votes.iter().map(|(r, _)| r).collect();
        seen.sort();
        seen.dedup();
        seen.len()
    }
}

/// Pairwise-majority counts: `w[a][b]` is the number of voters preferring
/// `a` to `b`. Satisfies `w[a][b] + w[b][a] = n` for `a != b`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTournament {
    m: usize,
    w: Vec<u64>,
}

impl WeightedTournament {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, a: u16, b: u16) -> u64 {
        self.w[a as usize * self.m + b as usize]
    }
}

/// Count, for every ordered candidate pair, how many voters prefer the first
/// to the second.
pub fn tournament(e: &Election) -> WeightedTournament {
    let m = e.m();
    let mut w = vec![0u64; m * m];
    for (v, mult) in e.votes() {
        let ord = v.as_slice();
        for i in 0..m {
            for j in (i + 1)..m {
                w[ord[i] as usize * m + ord[j] as usize] += mult;
            }
        }
    }
    WeightedTournament { m, w }
}

/// Kemeny score of `r`: multiplicity-weighted sum of swap distances from
/// every vote to `r`.
pub fn kemeny_score(e: &Election, r: &Ranking) -> Result<u64> {
    if r.m() != e.m() {
        return Err(Error::LengthMismatch {
            expected: e.m(),
            got: r.m(),
        });
    }
    let mut total = 0u64;
    for (v, mult) in e.votes() {
        total += swap_distance(v, r)? * mult;
    }
    Ok(total)
}

/// k-Kemeny score of a center set: every voter contributes its distance to
/// the nearest center. Returns the score and, per vote entry, the index of
/// the nearest center (ties break toward the lowest center index).
pub fn k_kemeny_score(e: &Election, centers: &[Ranking]) -> Result<(u64, Vec<usize>)> {
    if centers.is_empty() {
        return Err(Error::EmptyCenters);
    }
    for c in centers {
        if c.m() != e.m() {
            return Err(Error::LengthMismatch {
                expected: e.m(),
                got: c.m(),
            });
        }
    }
    let mut total = 0u64;
    let mut assignment = Vec::with_capacity(e.num_entries());
    for (v, mult) in e.votes() {
        let mut best = u64::MAX;
        let mut best_idx = 0usize;
        for (i, c) in centers.iter().enumerate() {
            let d = swap_distance(v, c)?;
            if d < best {
                best = d;
                best_idx = i;
            }
        }
        total += best * mult;
        assignment.push(best_idx);
    }
    Ok((total, assignment))
}

/// A ranking `r` such that `r: a > b` implies at least half of the voters
/// prefer `a` to `b`, if one exists.
///
/// Search: topological order of the strict-majority relation with ties
/// broken toward the lowest candidate index, then a verification pass of the
/// weak-majority condition. Any topological order of the strict-majority
/// digraph satisfies the weak condition, and the digraph is acyclic whenever
/// such a ranking exists, so the search is complete.
pub fn condorcet_ranking(e: &Election) -> Option<Ranking> {
    let m = e.m();
    let t = tournament(e);
    let n = e.num_voters();
    // indegree under the strict-majority relation a -> b iff 2*w[a][b] > n
    let mut indeg = vec![0usize; m];
    for a in 0..m as u16 {
        for b in 0..m as u16 {
            if a != b && 2 * t.get(a, b) > n {
                indeg[b as usize] += 1;
            }
        }
    }
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let next = (0..m).find(|&c| !placed[c] && indeg[c] == 0)?;
        placed[next] = true;
        order.push(next as u16);
        for b in 0..m as u16 {
            if !placed[b as usize] && 2 * t.get(next as u16, b) > n {
                indeg[b as usize] -= 1;
            }
        }
    }
    let r = Ranking { order };
    // verify the weak-majority condition
    for i in 0..m {
        for j in (i + 1)..m {
            if 2 * t.get(r.order[i], r.order[j]) < n {
                return None;
            }
        }
    }
    Some(r)
}

#[cfg(test)]
pub mod test_util {
    use super::*;

    /// All m! rankings of `m` candidates, in lexicographic order.
    pub fn all_rankings(m: usize) -> Vec<Ranking> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        let mut used = vec![false; m];
        fn rec(m: usize, cur: &mut Vec<u16>, used: &mut [bool], out: &mut Vec<Ranking>) {
            if cur.len() == m {
                out.push(Ranking::new(cur.clone()).unwrap());
                return;
            }
            for c in 0..m as u16 {
                if !used[c as usize] {
                    used[c as usize] = true;
                    cur.push(c);
                    rec(m, cur, used, out);
                    cur.pop();
                    used[c as usize] = false;
                }
            }
        }
        rec(m, &mut cur, &mut used, &mut out);
        out
    }

    /// Quadratic discordant-pair count, used as the independent oracle for
    /// `swap_distance`.
    pub fn swap_distance_quadratic(u: &Ranking, v: &Ranking) -> u64 {
        let m = u.m();
        let pu = u.positions();
        let pv = v.positions();
        let mut count = 0u64;
        for a in 0..m {
            for b in (a + 1)..m {
                let in_u = pu[a] < pu[b];
                let in_v = pv[a] < pv[b];
                if in_u != in_v {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn ranking(order: &[u16]) -> Ranking {
        Ranking::new(order.to_vec()).unwrap()
    }
}
