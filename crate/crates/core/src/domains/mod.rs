//! Exact enumeration of structured preference domains, closed-form size
//! formulas, and reverse-symmetric extensions.
//!
//! Every enumerator produces a deduplicated [`Domain`]. Set-like domains are
//! canonically sorted lexicographically for reproducible output; chain-like
//! domains (single-crossing, 1D Euclidean) keep their chain/sweep order,
//! which carries the structure downstream solvers rely on.

mod euclidean;
mod gs;
mod sc;
mod sizes;
mod sp;
mod sp_tree;
mod spoc;

pub(crate) use euclidean::cells_in_box;
pub use euclidean::{enumerate_euclidean, enumerate_with_witnesses, Embedding, SamplingOptions};
pub use gs::{cvc_enumerate, enumerate_gs, is_gs_caterpillar, is_gs_consistent, GsNode, GsTree};
pub use sc::{generate_sc_chain, sc_order_violation, validate_sc_order};
pub use sizes::{domain_size_formula, unsigned_stirling_first, SizeFormulaKind};
pub use sp::{enumerate_sp, is_single_peaked};
pub use sp_tree::{double_fork_edges, enumerate_sp_tree, is_sp_on_graph};
pub use spoc::{enumerate_spoc, is_spoc};

use crate::elections::{Certificate, Election, Ranking};
use crate::error::Error;
use crate::Result;

/// How a domain was built.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainDescriptor {
    SinglePeaked { axis: Ranking },
    GroupSeparable { tree: GsTree },
    Spoc { cycle: Ranking },
    SpOnTree { edges: Vec<(u16, u16)> },
    /// Ordered single-crossing chain; votes are stored in chain order.
    SingleCrossing,
    Euclidean { embedding: Embedding, lower_bound: bool },
    Full,
    Custom(String),
}

/// A deduplicated set of rankings together with its build descriptor and
/// optional per-vote weights (used as sampling probabilities).
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    m: usize,
    votes: Vec<Ranking>,
    weights: Option<Vec<f64>>,
    descriptor: DomainDescriptor,
}

impl Domain {
    pub(crate) fn new(m: usize, votes: Vec<Ranking>, descriptor: DomainDescriptor) -> Self {
        debug_assert!(votes.iter().all(|v| v.m() == m));
        Domain {
            m,
            votes,
            weights: None,
            descriptor,
        }
    }

    pub(crate) fn with_weights(mut self, weights: Vec<f64>) -> Self {
        assert_eq!(weights.len(), self.votes.len());
        assert!(weights.iter().all(|&w| w > 0.0));
        self.weights = Some(weights);
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn votes(&self) -> &[Ranking] {
        &self.votes
    }

    pub fn len(&self) -> usize {
        self.votes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.votes.is_empty()
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn descriptor(&self) -> &DomainDescriptor {
        &self.descriptor
    }

    pub fn contains(&self, r: &Ranking) -> bool {
        match self.descriptor {
            // chain-ordered domains are not sorted
            DomainDescriptor::SingleCrossing | DomainDescriptor::Euclidean { .. } => {
                self.votes.iter().any(|v| v == r)
            }
            _ => self.votes.binary_search(r).is_ok(),
        }
    }

    /// True if elections drawn from this domain are guaranteed a Condorcet
    /// ranking (single-peaked, group-separable, single-crossing, and
    /// 1-Euclidean domains).
    pub fn is_condorcet(&self) -> bool {
        match &self.descriptor {
            DomainDescriptor::SinglePeaked { .. }
            | DomainDescriptor::GroupSeparable { .. }
            | DomainDescriptor::SingleCrossing => true,
            DomainDescriptor::Euclidean { embedding, .. } => embedding.d() == 1,
            _ => false,
        }
    }

    /// View the domain as an election with one copy of each vote.
    ///
    /// Weights, if any, are sampling metadata and are not carried over. The
    /// election gets the strongest certificate the descriptor supports.
    pub fn to_election(&self) -> Result<Election> {
        let e = Election::from_rankings(self.m, self.votes.clone())?;
        Ok(match &self.descriptor {
            DomainDescriptor::SinglePeaked { axis } => {
                e.with_certificate(Certificate::SpAxis(axis.clone()))
            }
            DomainDescriptor::GroupSeparable { tree } => {
                e.with_certificate(Certificate::GsTree(tree.clone()))
            }
            DomainDescriptor::SingleCrossing => {
                e.with_certificate(Certificate::ScOrder((0..self.votes.len()).collect()))
            }
            DomainDescriptor::Euclidean { embedding, .. } => {
                if embedding.d() == 1 {
                    // sweep order doubles as a single-crossing order
                    e.with_certificate(Certificate::ScOrder((0..self.votes.len()).collect()))
                } else {
                    e.with_certificate(Certificate::Embedding(embedding.clone()))
                }
            }
            _ => e,
        })
    }
}

/// All m! rankings.
pub fn enumerate_full(m: usize) -> Result<Domain> {
    if m == 0 || m > 10 {
        return Err(Error::InvalidInput(format!(
            "full-domain enumeration supports 1..=10 candidates, got {m}"
        )));
    }
    let mut votes = Vec::new();
    let mut cur: Vec<u16> = Vec::with_capacity(m);
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
    rec(m, &mut cur, &mut used, &mut votes);
    Ok(Domain::new(m, votes, DomainDescriptor::Full))
}

/// Extend a domain with the reversal of each vote (when not already
/// present). Returns the extension and the size ratio, which lies in
/// `[1, 2]`: 1 for reverse-symmetric domains, 2 for reverse-free ones.
pub fn reverse_extension(d: &Domain) -> (Domain, f64) {
    let mut votes: Vec<Ranking> = d.votes.clone();
    let original: std::collections::BTreeSet<&Ranking> = d.votes.iter().collect();
    let mut added: Vec<Ranking> = Vec::new();
    for v in &d.votes {
        let rev = v.reverse();
        if !original.contains(&rev) {
            added.push(rev);
        }
    }
    added.sort();
    added.dedup();
    votes.extend(added);
    votes.sort();
    votes.dedup();
    let ratio = votes.len() as f64 / d.votes.len() as f64;
    let label = format!("reverse extension of {:?}", kind_name(&d.descriptor));
    (
        Domain::new(d.m, votes, DomainDescriptor::Custom(label)),
        ratio,
    )
}

fn kind_name(d: &DomainDescriptor) -> &'static str {
    match d {
        DomainDescriptor::SinglePeaked { .. } => "SP",
        DomainDescriptor::GroupSeparable { .. } => "GS",
        DomainDescriptor::Spoc { .. } => "SPOC",
        DomainDescriptor::SpOnTree { .. } => "SP/T",
        DomainDescriptor::SingleCrossing => "SC",
        DomainDescriptor::Euclidean { .. } => "Euclidean",
        DomainDescriptor::Full => "full",
        DomainDescriptor::Custom(_) => "custom",
    }
}
