//! Group-separable domains: frontier readings of a rooted ordered tree
//! under per-node child reversals.

use super::{Domain, DomainDescriptor};
use crate::elections::Ranking;
use crate::error::Error;
use crate::Result;

/// A rooted ordered tree whose leaves are labeled with distinct candidates
/// and whose internal nodes have at least two children.
#[derive(Debug, Clone, PartialEq)]
pub enum GsNode {
    Leaf(u16),
    Internal(Vec<GsNode>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GsTree {
    root: GsNode,
    m: usize,
}

impl GsTree {
    pub fn new(root: GsNode) -> Result<Self> {
        let mut leaves = Vec::new();
        collect_leaves(&root, &mut leaves)?;
        let m = leaves.len();
        let mut seen = vec![false; m];
        for &c in &leaves {
            if (c as usize) >= m || seen[c as usize] {
                return Err(Error::InvalidTree(format!(
                    "leaf labels must form a permutation of 0..{m}"
                )));
            }
            seen[c as usize] = true;
        }
        Ok(GsTree { root, m })
    }

    /// Binary caterpillar tree: the frontier read left to right equals
    /// `axis`, and every internal node has a leaf child.
    pub fn caterpillar(axis: &Ranking) -> Self {
        let order = axis.as_slice();
        let m = order.len();
        let mut node = GsNode::Leaf(order[m - 1]);
        for i in (0..m - 1).rev() {
            node = GsNode::Internal(vec![GsNode::Leaf(order[i]), node]);
        }
        GsTree { root: node, m }
    }

    /// Complete ("balanced") binary tree: every level except possibly the
    /// last is full, with the frontier read left to right equal to `axis`.
    pub fn balanced(axis: &Ranking) -> Self {
        fn build(leaves: &[u16]) -> GsNode {
            let m = leaves.len();
            if m == 1 {
                return GsNode::Leaf(leaves[0]);
            }
            let p = m.next_power_of_two();
            let left = if m == p {
                m / 2
            } else {
                // capacity p/2 was perfect; the extra leaves split from the left
                let extra = m - p / 2;
                p / 4 + extra.min(p / 4)
            };
            GsNode::Internal(vec![build(&leaves[..left]), build(&leaves[left..])])
        }
        GsTree {
            root: build(axis.as_slice()),
            m: axis.m(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn root(&self) -> &GsNode {
        &self.root
    }

    /// Frontier read left to right with no reversals.
    pub fn frontier(&self) -> Vec<u16> {
        let mut leaves = Vec::with_capacity(self.m);
        collect_leaves(&self.root, &mut leaves).expect("validated tree");
        leaves
    }

    pub fn internal_nodes(&self) -> usize {
        fn count(n: &GsNode) -> usize {
            match n {
                GsNode::Leaf(_) => 0,
                GsNode::Internal(ch) => 1 + ch.iter().map(count).sum::<usize>(),
            }
        }
        count(&self.root)
    }
}

fn collect_leaves(node: &GsNode, out: &mut Vec<u16>) -> Result<()> {
    match node {
        GsNode::Leaf(c) => out.push(*c),
        GsNode::Internal(children) => {
            if children.len() < 2 {
                return Err(Error::InvalidTree(
                    "internal nodes must have at least two children".into(),
                ));
            }
            for ch in children {
                collect_leaves(ch, out)?;
            }
        }
    }
    Ok(())
}

/// All distinct frontier readings of `tree` over per-node child reversals.
/// For a binary tree with m leaves this yields `2^(m-1)` votes.
pub fn enumerate_gs(tree: &GsTree) -> Result<Domain> {
    fn readings(node: &GsNode) -> Vec<Vec<u16>> {
        match node {
            GsNode::Leaf(c) => vec![vec![*c]],
            GsNode::Internal(children) => {
                let child_reads: Vec<Vec<Vec<u16>>> = children.iter().map(readings).collect();
                let mut out = Vec::new();
                for rev in [false, true] {
                    let mut acc: Vec<Vec<u16>> = vec![Vec::new()];
                    let iter: Box<dyn Iterator<Item = &Vec<Vec<u16>>>> = if rev {
                        Box::new(child_reads.iter().rev())
                    } else {
                        Box::new(child_reads.iter())
                    };
                    for reads in iter {
                        let mut next = Vec::with_capacity(acc.len() * reads.len());
                        for prefix in &acc {
                            for r in reads {
                                let mut v = prefix.clone();
                                v.extend_from_slice(r);
                                next.push(v);
                            }
                        }
                        acc = next;
                    }
                    out.extend(acc);
                }
                out
            }
        }
    }
    let mut votes: Vec<Ranking> = readings(&tree.root)
        .into_iter()
        .map(Ranking::new)
        .collect::<Result<_>>()?;
    votes.sort();
    votes.dedup();
    for v in &votes {
        debug_assert!(is_gs_consistent(v, tree));
    }
    Ok(Domain::new(
        tree.m,
        votes,
        DomainDescriptor::GroupSeparable { tree: tree.clone() },
    ))
}

/// Membership check: the vote restricted to each internal node's leaves
/// must list the children's leaf sets as contiguous blocks, in the original
/// or reversed child order, recursively.
pub fn is_gs_consistent(vote: &Ranking, tree: &GsTree) -> bool {
    if vote.m() != tree.m {
        return false;
    }
    let pos = vote.positions();
    fn check(node: &GsNode, pos: &[usize]) -> Option<(usize, usize)> {
        // returns the (min, max) vote-position span of the node's leaves if
        // consistent, None otherwise
        match node {
            GsNode::Leaf(c) => {
                let p = pos[*c as usize];
                Some((p, p))
            }
            GsNode::Internal(children) => {
                let spans: Vec<(usize, usize)> = children
                    .iter()
                    .map(|ch| check(ch, pos))
                    .collect::<Option<_>>()?;
                let forward = spans.windows(2).all(|w| w[0].1 < w[1].0);
                let backward = spans.windows(2).all(|w| w[1].1 < w[0].0);
                if !(forward || backward) {
                    return None;
                }
                let lo = spans.iter().map(|s| s.0).min().unwrap();
                let hi = spans.iter().map(|s| s.1).max().unwrap();
                Some((lo, hi))
            }
        }
    }
    check(&tree.root, &pos).is_some()
}

/// Caterpillar membership via decision-sequence reconstruction: walking the
/// axis, each candidate must sit at the top or bottom of what remains of
/// the vote.
pub fn is_gs_caterpillar(vote: &Ranking, axis: &Ranking) -> bool {
    if vote.m() != axis.m() {
        return false;
    }
    let mut rest: std::collections::VecDeque<u16> = vote.as_slice().iter().copied().collect();
    for &c in axis.as_slice() {
        if rest.front() == Some(&c) {
            rest.pop_front();
        } else if rest.back() == Some(&c) {
            rest.pop_back();
        } else {
            return false;
        }
    }
    true
}

/// Enumerate the caterpillar group-separable domain via decision sequences:
/// each candidate along the axis goes to the highest or lowest still-free
/// position. One vote per binary decision string of length `m-1`.
pub fn cvc_enumerate(axis: &Ranking) -> Result<Domain> {
    let m = axis.m();
    let order = axis.as_slice();
    let count = 1u64 << (m.saturating_sub(1)).min(30);
    let mut votes = Vec::with_capacity(count as usize);
    for bits in 0..count {
        let mut slots = vec![u16::MAX; m];
        let (mut top, mut bottom) = (0usize, m - 1);
        for (i, &c) in order.iter().enumerate() {
            let high = i == m - 1 || (bits >> i) & 1 == 0;
            if high {
                slots[top] = c;
                top += 1;
            } else {
                slots[bottom] = c;
                bottom -= 1;
            }
        }
        let r = Ranking::new(slots)?;
        debug_assert!(is_gs_caterpillar(&r, axis));
        votes.push(r);
    }
    votes.sort();
    votes.dedup();
    assert_eq!(votes.len() as u64, count, "caterpillar decision strings must be distinct");
    Ok(Domain::new(
        m,
        votes,
        DomainDescriptor::GroupSeparable {
            tree: GsTree::caterpillar(axis),
        },
    ))
}
