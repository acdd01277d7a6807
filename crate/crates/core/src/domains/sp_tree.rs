//! Votes single-peaked on a tree (or any connected graph for the membership
//! check): every prefix must induce a connected subgraph.

use super::{Domain, DomainDescriptor};
use crate::elections::Ranking;
use crate::error::Error;
use crate::Result;

/// Per-prefix connectivity check via BFS; works for arbitrary graphs.
pub fn is_sp_on_graph(vote: &Ranking, m: usize, edges: &[(u16, u16)]) -> bool {
    if vote.m() != m {
        return false;
    }
    let adj = adjacency(m, edges);
    let order = vote.as_slice();
    for t in 1..=m {
        let prefix: Vec<u16> = order[..t].to_vec();
        let in_prefix = {
            let mut b = vec![false; m];
            for &c in &prefix {
                b[c as usize] = true;
            }
            b
        };
        // BFS within the prefix
        let mut seen = vec![false; m];
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(prefix[0]);
        seen[prefix[0] as usize] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u as usize] {
                if in_prefix[v as usize] && !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        if count != t {
            return false;
        }
    }
    true
}

fn adjacency(m: usize, edges: &[(u16, u16)]) -> Vec<Vec<u16>> {
    let mut adj = vec![Vec::new(); m];
    for &(a, b) in edges {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    for nbrs in &mut adj {
        nbrs.sort_unstable();
    }
    adj
}

fn validate_tree(m: usize, edges: &[(u16, u16)]) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidInput("tree must have at least one vertex".into()));
    }
    if edges.len() != m - 1 {
        return Err(Error::InvalidTree(format!(
            "a tree on {m} vertices has {} edges, got {}",
            m - 1,
            edges.len()
        )));
    }
    for &(a, b) in edges {
        if a as usize >= m || b as usize >= m || a == b {
            return Err(Error::InvalidTree(format!("bad edge ({a}, {b})")));
        }
    }
    let adj = adjacency(m, edges);
    let mut seen = vec![false; m];
    let mut queue = std::collections::VecDeque::from([0u16]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u as usize] {
            if !seen[v as usize] {
                seen[v as usize] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    if count != m {
        return Err(Error::InvalidTree("graph is disconnected".into()));
    }
    Ok(())
}

/// Enumerate all votes single-peaked on the given tree by extending
/// prefixes along the frontier of already-chosen vertices. Each decision
/// sequence yields a distinct vote.
pub fn enumerate_sp_tree(m: usize, edges: &[(u16, u16)]) -> Result<Domain> {
    validate_tree(m, edges)?;
    let adj = adjacency(m, edges);
    let mut votes = Vec::new();
    let mut prefix: Vec<u16> = Vec::with_capacity(m);
    let mut in_prefix = vec![false; m];

    fn rec(
        m: usize,
        adj: &[Vec<u16>],
        prefix: &mut Vec<u16>,
        in_prefix: &mut [bool],
        out: &mut Vec<Ranking>,
    ) {
        if prefix.len() == m {
            out.push(Ranking::new(prefix.clone()).unwrap());
            return;
        }
        // frontier: vertices adjacent to the prefix but not in it
        let mut frontier: Vec<u16> = Vec::new();
        for &u in prefix.iter() {
            for &v in &adj[u as usize] {
                if !in_prefix[v as usize] && !frontier.contains(&v) {
                    frontier.push(v);
                }
            }
        }
        frontier.sort_unstable();
        for v in frontier {
            prefix.push(v);
            in_prefix[v as usize] = true;
            rec(m, adj, prefix, in_prefix, out);
            in_prefix[v as usize] = false;
            prefix.pop();
        }
    }

    for start in 0..m as u16 {
        prefix.push(start);
        in_prefix[start as usize] = true;
        rec(m, &adj, &mut prefix, &mut in_prefix, &mut votes);
        in_prefix[start as usize] = false;
        prefix.pop();
    }
    votes.sort();
    votes.dedup();
    for v in &votes {
        debug_assert!(is_sp_on_graph(v, m, edges));
    }
    Ok(Domain::new(
        m,
        votes,
        DomainDescriptor::SpOnTree {
            edges: edges.to_vec(),
        },
    ))
}

/// The double-forked tree: two leaves fork into each end of a path.
///
///   0          6
///    \        /
///     2-3-4-5
///    /        \
///   1          7        (shown for m = 8)
pub fn double_fork_edges(m: usize) -> Result<Vec<(u16, u16)>> {
    if m < 5 {
        return Err(Error::InvalidInput(format!(
            "the double-forked tree needs at least 5 candidates, got {m}"
        )));
    }
    let mut edges = vec![(0u16, 2u16), (1, 2)];
    for i in 2..m - 3 {
        edges.push((i as u16, i as u16 + 1));
    }
    edges.push((m as u16 - 3, m as u16 - 2));
    edges.push((m as u16 - 3, m as u16 - 1));
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{enumerate_full, enumerate_sp};

    fn path_edges(m: usize) -> Vec<(u16, u16)> {
        (0..m - 1).map(|i| (i as u16, i as u16 + 1)).collect()
    }

    #[test]
    fn rejects_disconnected_and_malformed() {
        assert!(enumerate_sp_tree(4, &[(0, 1), (2, 3)]).is_err());
        assert!(enumerate_sp_tree(3, &[(0, 1)]).is_err());
        assert!(enumerate_sp_tree(3, &[(0, 1), (1, 1)]).is_err());
    }

    #[test]
    fn path_graph_equals_single_peaked() {
        for m in 2..=8 {
            let tree = enumerate_sp_tree(m, &path_edges(m)).unwrap();
            let sp = enumerate_sp(&Ranking::identity(m)).unwrap();
            assert_eq!(tree.votes(), sp.votes(), "m={m}");
        }
    }

    #[test]
    fn star_votes_rank_center_first_or_second() {
        // star with center 0 and leaves 1..3
        let dom = enumerate_sp_tree(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        // independent oracle: connectivity filter over all rankings
        let filtered: Vec<_> = enumerate_full(4)
            .unwrap()
            .votes()
            .iter()
            .filter(|v| is_sp_on_graph(v, 4, &[(0, 1), (0, 2), (0, 3)]))
            .cloned()
            .collect();
        assert_eq!(dom.votes(), filtered.as_slice());
        for v in dom.votes() {
            let center_pos = v.position_of(0);
            assert!(center_pos <= 1, "{v:?}");
        }
    }

    #[test]
    fn double_fork_sizes_match_closed_form() {
        for m in 5..=10 {
            let dom = enumerate_sp_tree(m, &double_fork_edges(m).unwrap()).unwrap();
            assert_eq!(dom.len() as u64, 16 * ((1u64 << (m - 3)) - 1), "m={m}");
        }
        let dom = enumerate_sp_tree(8, &double_fork_edges(8).unwrap()).unwrap();
        assert_eq!(dom.len(), 496);
    }

    #[test]
    fn double_fork_is_reverse_free() {
        let dom = enumerate_sp_tree(8, &double_fork_edges(8).unwrap()).unwrap();
        for v in dom.votes() {
            assert!(!dom.contains(&v.reverse()), "{v:?}");
        }
    }
}
