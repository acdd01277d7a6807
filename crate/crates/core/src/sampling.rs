//! Statistical cultures: seeded, reproducible vote distributions.
//!
//! Every voter draws from its own derived stream `derive_seed(seed, voter)`,
//! so elections are byte-identical across runs and thread counts, and each
//! sampled vote is checked against its culture's support.

use crate::domains::{
    generate_sc_chain, is_gs_caterpillar, is_single_peaked, Domain, DomainDescriptor, Embedding,
    GsTree,
};
use crate::elections::{Certificate, Election, Ranking};
use crate::error::Error;
use crate::rng::{derive_seed, rng_from_seed};
use crate::Result;
use rand::Rng;

/// Stream tag for the chain underlying the SC-gaps culture.
const SC_GAPS_CHAIN_TAG: u64 = 0xc4a1;

/// A statistical culture over votes.
#[derive(Debug, Clone, PartialEq)]
pub enum CultureKind {
    /// Uniform over all rankings.
    IcFull,
    /// Uniform over a supplied domain.
    IcOverDomain,
    /// Uniform over the single-peaked domain for `axis`, sampled bottom-up
    /// by taking an end of the remaining axis interval at each step.
    Walsh { axis: Ranking },
    /// Single-peaked sampling that picks a peak uniformly, then grows the
    /// axis interval one candidate at a time (uniformly between at most two
    /// choices).
    Conitzer { axis: Ranking },
    /// Uniform decisions in the caterpillar vote construction over `axis`.
    CvcRandom { axis: Ranking },
    /// Voter points uniform in `[-r, r]^d`, ranking a supplied embedding by
    /// distance.
    RBox { d: usize, r: f64 },
    /// Weighted sampling from an SC-gaps chain domain: blocks of sizes
    /// 1, 2, 4, ... separated by `gap` skipped votes, with block weights
    /// 1, 1/2, 1/4, ...
    ScGaps { gap: usize },
}

impl CultureKind {
    pub fn name(&self) -> &'static str {
        match self {
            CultureKind::IcFull => "ic",
            CultureKind::IcOverDomain => "ic-over-domain",
            CultureKind::Walsh { .. } => "walsh",
            CultureKind::Conitzer { .. } => "conitzer",
            CultureKind::CvcRandom { .. } => "cvc-random",
            CultureKind::RBox { .. } => "r-box",
            CultureKind::ScGaps { .. } => "sc-gaps",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CultureSpec {
    pub kind: CultureKind,
    pub seed: u64,
}

/// Context some cultures require.
#[derive(Debug, Clone, Copy)]
pub enum SampleContext<'a> {
    None,
    Domain(&'a Domain),
    Embedding(&'a Embedding),
}

/// Weighted sub-chain of a maximal single-crossing chain: take the first
/// vote, skip `gap`, take two, skip `gap`, take four, and so on; block `b`
/// (1-based) gets weight `2^(1-b)`. Blocks that do not fit entirely within
/// the `C(m,2)+1` chain votes are dropped.
pub fn sc_gaps_domain(m: usize, gap: usize, chain_seed: u64) -> Result<Domain> {
    if m < 2 {
        return Err(Error::InvalidInput("sc-gaps needs at least 2 candidates".into()));
    }
    let chain = generate_sc_chain(m, chain_seed)?;
    let mut votes = Vec::new();
    let mut weights = Vec::new();
    let mut start = 0usize;
    let mut size = 1usize;
    let mut weight = 1.0f64;
    while start + size <= chain.len() {
        for i in start..start + size {
            votes.push(chain.votes()[i].clone());
            weights.push(weight);
        }
        start += size + gap;
        size *= 2;
        weight /= 2.0;
    }
    Ok(Domain::new(m, votes, DomainDescriptor::SingleCrossing).with_weights(weights))
}

/// Number of take-blocks an SC-gaps domain has for `m` candidates and the
/// given gap.
pub fn sc_gaps_block_count(m: usize, gap: usize) -> usize {
    let chain_len = m * (m - 1) / 2 + 1;
    let mut blocks = 0;
    let mut start = 0usize;
    let mut size = 1usize;
    while start + size <= chain_len {
        blocks += 1;
        start += size + gap;
        size *= 2;
    }
    blocks
}

/// Sample an `n`-voter election from the culture. Deterministic under the
/// spec's seed; every vote is checked against the culture's support.
pub fn sample_election(
    spec: &CultureSpec,
    m: usize,
    n: usize,
    ctx: SampleContext<'_>,
) -> Result<Election> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one voter".into()));
    }
    match &spec.kind {
        CultureKind::IcFull => {
            let votes = (0..n)
                .map(|v| (random_permutation(m, derive_seed(spec.seed, v as u64)), 1))
                .collect();
            Election::new(m, votes)
        }
        CultureKind::IcOverDomain => {
            let SampleContext::Domain(domain) = ctx else {
                return Err(Error::MissingContext {
                    culture: "ic-over-domain",
                    needed: "a Domain",
                });
            };
            sample_from_domain_uniform(domain, m, n, spec.seed)
        }
        CultureKind::Walsh { axis } => {
            check_axis(axis, m)?;
            let votes: Vec<(Ranking, u64)> = (0..n)
                .map(|v| (walsh_vote(axis, derive_seed(spec.seed, v as u64)), 1))
                .collect();
            for (v, _) in &votes {
                if !is_single_peaked(v, axis) {
                    return Err(Error::InvalidInput(format!(
                        "walsh sampler produced a non-single-peaked vote {v:?}"
                    )));
                }
            }
            Ok(Election::new(m, votes)?.with_certificate(Certificate::SpAxis(axis.clone())))
        }
        CultureKind::Conitzer { axis } => {
            check_axis(axis, m)?;
            let votes: Vec<(Ranking, u64)> = (0..n)
                .map(|v| (conitzer_vote(axis, derive_seed(spec.seed, v as u64)), 1))
                .collect();
            for (v, _) in &votes {
                if !is_single_peaked(v, axis) {
                    return Err(Error::InvalidInput(format!(
                        "conitzer sampler produced a non-single-peaked vote {v:?}"
                    )));
                }
            }
            Ok(Election::new(m, votes)?.with_certificate(Certificate::SpAxis(axis.clone())))
        }
        CultureKind::CvcRandom { axis } => {
            check_axis(axis, m)?;
            let votes: Vec<(Ranking, u64)> = (0..n)
                .map(|v| (cvc_vote(axis, derive_seed(spec.seed, v as u64)), 1))
                .collect();
            for (v, _) in &votes {
                if !is_gs_caterpillar(v, axis) {
                    return Err(Error::InvalidInput(format!(
                        "caterpillar sampler produced an inconsistent vote {v:?}"
                    )));
                }
            }
            Ok(Election::new(m, votes)?
                .with_certificate(Certificate::GsTree(GsTree::caterpillar(axis))))
        }
        CultureKind::RBox { d, r } => {
            let SampleContext::Embedding(emb) = ctx else {
                return Err(Error::MissingContext {
                    culture: "r-box",
                    needed: "an Embedding",
                });
            };
            if emb.d() != *d || emb.m() != m {
                return Err(Error::InvalidInput(format!(
                    "embedding shape ({}, {}) does not match r-box request ({d}, {m})",
                    emb.d(),
                    emb.m()
                )));
            }
            if !(*r > 0.0) {
                return Err(Error::InvalidInput("box radius must be positive".into()));
            }
            if !emb.is_general_position() {
                return Err(Error::DegenerateEmbedding(
                    "r-box sampling needs a general-position embedding".into(),
                ));
            }
            let votes = (0..n)
                .map(|v| Ok((rbox_vote(emb, *r, derive_seed(spec.seed, v as u64))?, 1)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Election::new(m, votes)?.with_certificate(Certificate::Embedding(emb.clone())))
        }
        CultureKind::ScGaps { gap } => {
            let owned;
            let domain = match ctx {
                SampleContext::Domain(d) => d,
                SampleContext::None => {
                    owned = sc_gaps_domain(m, *gap, derive_seed(spec.seed, SC_GAPS_CHAIN_TAG))?;
                    &owned
                }
                SampleContext::Embedding(_) => {
                    return Err(Error::MissingContext {
                        culture: "sc-gaps",
                        needed: "a weighted Domain (or no context)",
                    })
                }
            };
            let Some(weights) = domain.weights() else {
                return Err(Error::InvalidInput(
                    "sc-gaps sampling needs a weighted domain".into(),
                ));
            };
            let cumulative: Vec<f64> = weights
                .iter()
                .scan(0.0, |acc, w| {
                    *acc += w;
                    Some(*acc)
                })
                .collect();
            let total = *cumulative.last().unwrap();
            let mut picks: Vec<usize> = (0..n)
                .map(|v| {
                    let mut rng = rng_from_seed(derive_seed(spec.seed, v as u64));
                    let x = rng.gen_range(0.0..total);
                    cumulative.partition_point(|&c| c <= x).min(weights.len() - 1)
                })
                .collect();
            picks.sort_unstable();
            let votes: Vec<(Ranking, u64)> = picks
                .iter()
                .map(|&i| (domain.votes()[i].clone(), 1))
                .collect();
            Ok(Election::new(m, votes)?
                .with_certificate(Certificate::ScOrder((0..n).collect())))
        }
    }
}

fn check_axis(axis: &Ranking, m: usize) -> Result<()> {
    if axis.m() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            got: axis.m(),
        });
    }
    Ok(())
}

fn random_permutation(m: usize, seed: u64) -> Ranking {
    let mut rng = rng_from_seed(seed);
    let mut order: Vec<u16> = (0..m as u16).collect();
    for i in (1..m).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    Ranking::new(order).expect("permutation")
}

fn sample_from_domain_uniform(domain: &Domain, m: usize, n: usize, seed: u64) -> Result<Election> {
    if domain.m() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            got: domain.m(),
        });
    }
    let mut picks: Vec<usize> = (0..n)
        .map(|v| {
            let mut rng = rng_from_seed(derive_seed(seed, v as u64));
            rng.gen_range(0..domain.len())
        })
        .collect();
    let cert = match domain.descriptor() {
        DomainDescriptor::SinglePeaked { axis } => Some(Certificate::SpAxis(axis.clone())),
        DomainDescriptor::GroupSeparable { tree } => Some(Certificate::GsTree(tree.clone())),
        DomainDescriptor::SingleCrossing => {
            // chain order doubles as the election's single-crossing order
            picks.sort_unstable();
            Some(Certificate::ScOrder((0..n).collect()))
        }
        DomainDescriptor::Euclidean { embedding, .. } => {
            if embedding.d() == 1 {
                picks.sort_unstable();
                Some(Certificate::ScOrder((0..n).collect()))
            } else {
                Some(Certificate::Embedding(embedding.clone()))
            }
        }
        _ => None,
    };
    let votes: Vec<(Ranking, u64)> = picks
        .iter()
        .map(|&i| {
            debug_assert!(domain.contains(&domain.votes()[i]));
            (domain.votes()[i].clone(), 1)
        })
        .collect();
    let e = Election::new(m, votes)?;
    Ok(match cert {
        Some(c) => e.with_certificate(c),
        None => e,
    })
}

/// Build a vote from the bottom: repeatedly take one end of the remaining
/// axis interval, uniformly. Bijective with the single-peaked domain.
fn walsh_vote(axis: &Ranking, seed: u64) -> Ranking {
    let m = axis.m();
    let mut rng = rng_from_seed(seed);
    let order_axis = axis.as_slice();
    let mut order = vec![0u16; m];
    let (mut lo, mut hi) = (0usize, m - 1);
    for step in 0..m.saturating_sub(1) {
        let take_low = rng.gen::<bool>();
        let c = if take_low {
            let c = order_axis[lo];
            lo += 1;
            c
        } else {
            let c = order_axis[hi];
            hi -= 1;
            c
        };
        order[m - 1 - step] = c;
    }
    order[0] = order_axis[lo];
    Ranking::new(order).expect("permutation")
}

/// Pick the peak uniformly, then extend the axis interval downward one
/// candidate at a time; when both ends are available each is taken with
/// probability one half, otherwise the single extension is forced.
fn conitzer_vote(axis: &Ranking, seed: u64) -> Ranking {
    let m = axis.m();
    let mut rng = rng_from_seed(seed);
    let order_axis = axis.as_slice();
    let peak = rng.gen_range(0..m);
    let mut order = Vec::with_capacity(m);
    order.push(order_axis[peak]);
    let (mut lo, mut hi) = (peak, peak);
    for _ in 1..m {
        let can_left = lo > 0;
        let can_right = hi + 1 < m;
        let go_left = match (can_left, can_right) {
            (true, true) => rng.gen::<bool>(),
            (true, false) => true,
            (false, true) => false,
            (false, false) => unreachable!("interval cannot be full here"),
        };
        if go_left {
            lo -= 1;
            order.push(order_axis[lo]);
        } else {
            hi += 1;
            order.push(order_axis[hi]);
        }
    }
    Ranking::new(order).expect("permutation")
}

fn cvc_vote(axis: &Ranking, seed: u64) -> Ranking {
    let m = axis.m();
    let mut rng = rng_from_seed(seed);
    let mut slots = vec![u16::MAX; m];
    let (mut top, mut bottom) = (0usize, m - 1);
    for (i, &c) in axis.as_slice().iter().enumerate() {
        let high = i == m - 1 || rng.gen::<bool>();
        if high {
            slots[top] = c;
            top += 1;
        } else {
            slots[bottom] = c;
            bottom -= 1;
        }
    }
    Ranking::new(slots).expect("permutation")
}

fn rbox_vote(emb: &Embedding, r: f64, seed: u64) -> Result<Ranking> {
    // ties sit on a bisector (measure zero): resample the voter point
    for attempt in 0..64 {
        let mut rng = rng_from_seed(derive_seed(seed, attempt));
        let p: Vec<f64> = (0..emb.d()).map(|_| rng.gen_range(-r..r)).collect();
        if let Some(v) = emb.rank_from(&p) {
            return Ok(v);
        }
    }
    Err(Error::DegenerateEmbedding(
        "r-box voter kept landing on a bisector".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{enumerate_euclidean, enumerate_sp};
    use std::collections::BTreeSet;

    #[test]
    fn ic_over_domain_is_uniform() {
        let axis = Ranking::identity(3);
        let dom = enumerate_sp(&axis).unwrap(); // 4 votes
        let spec = CultureSpec {
            kind: CultureKind::IcOverDomain,
            seed: 123,
        };
        let n = 100_000;
        let e = sample_election(&spec, 3, n, SampleContext::Domain(&dom)).unwrap();
        let mut counts = std::collections::HashMap::new();
        for (v, _) in e.votes() {
            *counts.entry(v.clone()).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 4);
        // each frequency within 3 sigma of 1/4
        let sigma = (0.25 * 0.75 / n as f64).sqrt();
        for (_, c) in counts {
            let freq = c as f64 / n as f64;
            assert!((freq - 0.25).abs() < 3.0 * sigma, "freq {freq}");
        }
    }

    #[test]
    fn missing_context_errors() {
        let spec = CultureSpec {
            kind: CultureKind::IcOverDomain,
            seed: 0,
        };
        assert!(matches!(
            sample_election(&spec, 3, 5, SampleContext::None),
            Err(Error::MissingContext { .. })
        ));
        let spec = CultureSpec {
            kind: CultureKind::RBox { d: 2, r: 1.0 },
            seed: 0,
        };
        assert!(matches!(
            sample_election(&spec, 3, 5, SampleContext::None),
            Err(Error::MissingContext { .. })
        ));
    }

    #[test]
    fn conitzer_votes_are_single_peaked() {
        let axis = Ranking::identity(8);
        let spec = CultureSpec {
            kind: CultureKind::Conitzer { axis: axis.clone() },
            seed: 9,
        };
        let e = sample_election(&spec, 8, 300, SampleContext::None).unwrap();
        for (v, _) in e.votes() {
            assert!(is_single_peaked(v, &axis));
        }
        assert!(matches!(e.certificate(), Some(Certificate::SpAxis(_))));
    }

    #[test]
    fn walsh_and_ic_over_sp_share_support() {
        let axis = Ranking::identity(5);
        let dom = enumerate_sp(&axis).unwrap();
        let walsh = sample_election(
            &CultureSpec {
                kind: CultureKind::Walsh { axis: axis.clone() },
                seed: 4,
            },
            5,
            4000,
            SampleContext::None,
        )
        .unwrap();
        let ic = sample_election(
            &CultureSpec {
                kind: CultureKind::IcOverDomain,
                seed: 5,
            },
            5,
            4000,
            SampleContext::Domain(&dom),
        )
        .unwrap();
        let support = |e: &Election| -> BTreeSet<Ranking> {
            e.votes().iter().map(|(v, _)| v.clone()).collect()
        };
        assert_eq!(support(&walsh), support(&ic));
        assert_eq!(support(&walsh).len(), 16);
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let spec = CultureSpec {
            kind: CultureKind::IcFull,
            seed: 42,
        };
        let a = sample_election(&spec, 6, 50, SampleContext::None).unwrap();
        let b = sample_election(&spec, 6, 50, SampleContext::None).unwrap();
        assert_eq!(a, b);
        let c = sample_election(
            &CultureSpec {
                kind: CultureKind::IcFull,
                seed: 43,
            },
            6,
            50,
            SampleContext::None,
        )
        .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rbox_votes_carry_embedding_certificate_and_fit_domain() {
        let emb = Embedding::sample_general_position(2, 6, 8).unwrap();
        let dom = enumerate_euclidean(&emb).unwrap();
        let spec = CultureSpec {
            kind: CultureKind::RBox { d: 2, r: 1.0 },
            seed: 11,
        };
        let e = sample_election(&spec, 6, 200, SampleContext::Embedding(&emb)).unwrap();
        for (v, _) in e.votes() {
            assert!(dom.contains(v), "sampled vote outside the domain: {v:?}");
        }
        assert!(matches!(e.certificate(), Some(Certificate::Embedding(_))));
    }

    #[test]
    fn sc_gaps_blocks_and_weights() {
        // 16 candidates, gap 12: blocks 1+2+4+8+16 fit, the next does not
        assert_eq!(sc_gaps_block_count(16, 12), 5);
        let dom = sc_gaps_domain(16, 12, 3).unwrap();
        assert_eq!(dom.len(), 31);
        let w = dom.weights().unwrap();
        assert_eq!(w[0], 1.0);
        assert_eq!(w[1], 0.5);
        assert_eq!(w[2], 0.5);
        assert_eq!(w[3], 0.25);
        assert_eq!(w[30], 1.0 / 16.0);
        // gap 0: blocks 1+2+4+8 fit in the 29-vote chain, the 16-block does
        // not, so it is dropped like any other partial block
        let no_gaps = sc_gaps_domain(8, 0, 1).unwrap();
        assert_eq!(no_gaps.len(), 15);
        let w = no_gaps.weights().unwrap();
        assert_eq!(w[14], 0.125);
    }

    #[test]
    fn sc_gaps_sampling_prefers_heavy_blocks() {
        let spec = CultureSpec {
            kind: CultureKind::ScGaps { gap: 12 },
            seed: 21,
        };
        let e = sample_election(&spec, 16, 4000, SampleContext::None).unwrap();
        assert!(matches!(e.certificate(), Some(Certificate::ScOrder(_))));
        // the first block (weight 1) should be sampled more often than any
        // single vote of the last block (weight 1/16)
        let dom = sc_gaps_domain(16, 12, derive_seed(21, SC_GAPS_CHAIN_TAG)).unwrap();
        let first = &dom.votes()[0];
        let last = &dom.votes()[30];
        let count = |r: &Ranking| e.votes().iter().filter(|(v, _)| v == r).count();
        assert!(count(first) > count(last));
    }
}
