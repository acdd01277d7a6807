//! Diversity analysis: normalized k-Kemeny vectors, dominance ranking,
//! polarization, distance histograms, distinct-vote counting for
//! box-sampled Euclidean elections, and heuristic-vs-exact evaluation
//! grids.

use crate::domains::{
    cells_in_box, double_fork_edges, enumerate_euclidean, enumerate_full, enumerate_gs,
    enumerate_sp, enumerate_sp_tree, enumerate_spoc, generate_sc_chain, Domain, Embedding, GsTree,
};
use crate::elections::{swap_distance, Election, Ranking};
use crate::error::Error;
use crate::rng::derive_seed;
use crate::sampling::{sample_election, sc_gaps_domain, CultureKind, CultureSpec, SampleContext};
use crate::solvers::{solve, KemenyResult, SolverBudgets, SolverConfig};
use crate::Result;
use rayon::prelude::*;

/// The named domain suite used throughout the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    Sp,
    GsBalanced,
    GsCaterpillar,
    SpDoubleFork,
    Spoc,
    Sc,
    Euclid1d,
    Euclid2d,
    Euclid3d,
    Full,
}

impl DomainKind {
    pub const ALL: [DomainKind; 10] = [
        DomainKind::Sp,
        DomainKind::GsBalanced,
        DomainKind::GsCaterpillar,
        DomainKind::SpDoubleFork,
        DomainKind::Spoc,
        DomainKind::Sc,
        DomainKind::Euclid1d,
        DomainKind::Euclid2d,
        DomainKind::Euclid3d,
        DomainKind::Full,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            DomainKind::Sp => "SP",
            DomainKind::GsBalanced => "GS/bal",
            DomainKind::GsCaterpillar => "GS/cat",
            DomainKind::SpDoubleFork => "SP/DF",
            DomainKind::Spoc => "SPOC",
            DomainKind::Sc => "SC",
            DomainKind::Euclid1d => "1D-Interval",
            DomainKind::Euclid2d => "2D-Square",
            DomainKind::Euclid3d => "3D-Cube",
            DomainKind::Full => "full",
        }
    }

    /// True when the domain depends on randomness (a random chain or a
    /// random embedding) rather than being unique up to renaming.
    pub fn is_randomized(&self) -> bool {
        matches!(
            self,
            DomainKind::Sc | DomainKind::Euclid1d | DomainKind::Euclid2d | DomainKind::Euclid3d
        )
    }

    /// Build the domain over candidates `0..m` (identity axis/cycle/tree,
    /// seeded chain or embedding for the randomized kinds).
    pub fn build(&self, m: usize, seed: u64) -> Result<Domain> {
        let axis = Ranking::identity(m);
        match self {
            DomainKind::Sp => enumerate_sp(&axis),
            DomainKind::GsBalanced => enumerate_gs(&GsTree::balanced(&axis)),
            DomainKind::GsCaterpillar => enumerate_gs(&GsTree::caterpillar(&axis)),
            DomainKind::SpDoubleFork => enumerate_sp_tree(m, &double_fork_edges(m)?),
            DomainKind::Spoc => enumerate_spoc(&axis),
            DomainKind::Sc => generate_sc_chain(m, seed),
            DomainKind::Euclid1d => {
                enumerate_euclidean(&Embedding::sample_general_position(1, m, seed)?)
            }
            DomainKind::Euclid2d => {
                enumerate_euclidean(&Embedding::sample_general_position(2, m, seed)?)
            }
            DomainKind::Euclid3d => {
                enumerate_euclidean(&Embedding::sample_general_position(3, m, seed)?)
            }
            DomainKind::Full => enumerate_full(m),
        }
    }
}

/// Where an experiment cell's elections come from.
#[derive(Debug, Clone, PartialEq)]
pub enum ElectionSource {
    /// The domain viewed as an election with one copy of each vote.
    DomainAsElection(DomainKind),
    /// Impartial culture over all rankings.
    Ic,
    Walsh,
    Conitzer,
    CvcRandom,
    /// Voters uniform in `[-r, r]^d` against a fresh `[-1, 1]^d` embedding.
    RBox { d: usize, r: f64 },
    /// Weighted sampling from an SC-gaps domain.
    ScGapsWeighted { gap: usize },
    /// Uniform sampling from the same SC-gaps domain.
    ScGapsUniform { gap: usize },
}

impl ElectionSource {
    pub fn label(&self) -> String {
        match self {
            ElectionSource::DomainAsElection(k) => k.label().to_string(),
            ElectionSource::Ic => "IC".into(),
            ElectionSource::Walsh => "SP/Wal".into(),
            ElectionSource::Conitzer => "SP/Con".into(),
            ElectionSource::CvcRandom => "GS/cat-CVC".into(),
            ElectionSource::RBox { d, r } => format!("{d}D {r}-Box"),
            ElectionSource::ScGapsWeighted { gap } => format!("SC-gaps({gap}) weighted"),
            ElectionSource::ScGapsUniform { gap } => format!("SC-gaps({gap}) uniform"),
        }
    }

    /// Materialize an election (and the domain backing its search space,
    /// when one exists). `n` is ignored for domains-as-elections.
    pub fn realize(&self, m: usize, n: usize, seed: u64) -> Result<(Election, Option<Domain>)> {
        let axis = Ranking::identity(m);
        match self {
            ElectionSource::DomainAsElection(kind) => {
                let d = kind.build(m, derive_seed(seed, 0))?;
                let e = d.to_election()?;
                Ok((e, Some(d)))
            }
            ElectionSource::Ic => {
                let spec = CultureSpec {
                    kind: CultureKind::IcFull,
                    seed: derive_seed(seed, 1),
                };
                Ok((sample_election(&spec, m, n, SampleContext::None)?, None))
            }
            ElectionSource::Walsh => {
                let spec = CultureSpec {
                    kind: CultureKind::Walsh { axis: axis.clone() },
                    seed: derive_seed(seed, 1),
                };
                let e = sample_election(&spec, m, n, SampleContext::None)?;
                Ok((e, Some(enumerate_sp(&axis)?)))
            }
            ElectionSource::Conitzer => {
                let spec = CultureSpec {
                    kind: CultureKind::Conitzer { axis: axis.clone() },
                    seed: derive_seed(seed, 1),
                };
                let e = sample_election(&spec, m, n, SampleContext::None)?;
                Ok((e, Some(enumerate_sp(&axis)?)))
            }
            ElectionSource::CvcRandom => {
                let spec = CultureSpec {
                    kind: CultureKind::CvcRandom { axis: axis.clone() },
                    seed: derive_seed(seed, 1),
                };
                let e = sample_election(&spec, m, n, SampleContext::None)?;
                Ok((e, Some(enumerate_gs(&GsTree::caterpillar(&axis))?)))
            }
            ElectionSource::RBox { d, r } => {
                let emb = Embedding::sample_general_position(*d, m, derive_seed(seed, 0))?;
                let spec = CultureSpec {
                    kind: CultureKind::RBox { d: *d, r: *r },
                    seed: derive_seed(seed, 1),
                };
                let e = sample_election(&spec, m, n, SampleContext::Embedding(&emb))?;
                Ok((e, Some(enumerate_euclidean(&emb)?)))
            }
            ElectionSource::ScGapsWeighted { gap } => {
                let dom = sc_gaps_domain(m, *gap, derive_seed(seed, 0))?;
                let spec = CultureSpec {
                    kind: CultureKind::ScGaps { gap: *gap },
                    seed: derive_seed(seed, 1),
                };
                let e = sample_election(&spec, m, n, SampleContext::Domain(&dom))?;
                Ok((e, Some(dom)))
            }
            ElectionSource::ScGapsUniform { gap } => {
                let dom = sc_gaps_domain(m, *gap, derive_seed(seed, 0))?;
                let spec = CultureSpec {
                    kind: CultureKind::IcOverDomain,
                    seed: derive_seed(seed, 1),
                };
                let e = sample_election(&spec, m, n, SampleContext::Domain(&dom))?;
                Ok((e, Some(dom)))
            }
        }
    }
}

/// Normalized k-Kemeny scores for k = 1..m.
#[derive(Debug, Clone, PartialEq)]
pub struct DiversityVector {
    pub m: usize,
    /// `score(k) / n` for k = 1..m; nonincreasing.
    pub values: Vec<f64>,
    pub method: String,
}

/// Compute the diversity vector of an election, running the configured
/// solver for each k. Heuristic runs can violate monotonicity across
/// independent k's, so a running minimum is applied (a larger k can always
/// reuse a smaller k's solution); exact runs never need the repair.
pub fn diversity_vector(
    e: &Election,
    cfg: &SolverConfig,
    seed: u64,
    budgets: &SolverBudgets,
    domain: Option<&Domain>,
) -> Result<DiversityVector> {
    let n = e.num_voters() as f64;
    let mut values = Vec::with_capacity(e.m());
    let mut running = f64::INFINITY;
    for k in 1..=e.m() {
        let res = solve(e, k, cfg, derive_seed(seed, k as u64), budgets, domain)?;
        running = running.min(res.score as f64 / n);
        values.push(running);
    }
    Ok(DiversityVector {
        m: e.m(),
        values,
        method: match cfg {
            SolverConfig::Exact => "exact".into(),
            SolverConfig::Heuristic { restarts, .. } => format!("local-search x{restarts}"),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Equal,
    AOverB,
    BOverA,
    Incomparable,
}

/// Coordinatewise comparison with a per-coordinate tolerance.
pub fn dominance_coords(a: &[f64], b: &[f64], tol: &[f64]) -> Result<Dominance> {
    if a.len() != b.len() || tol.len() != a.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len().max(tol.len()),
        });
    }
    let mut a_above = false;
    let mut b_above = false;
    for i in 0..a.len() {
        if a[i] > b[i] + tol[i] {
            a_above = true;
        }
        if b[i] > a[i] + tol[i] {
            b_above = true;
        }
    }
    Ok(match (a_above, b_above) {
        (false, false) => Dominance::Equal,
        (true, false) => Dominance::AOverB,
        (false, true) => Dominance::BOverA,
        (true, true) => Dominance::Incomparable,
    })
}

/// Dominance between diversity vectors with a uniform tolerance
/// (1e-9 is appropriate for exact values; pass a statistical tolerance for
/// heuristic means).
pub fn dominance(a: &DiversityVector, b: &DiversityVector, tol: f64) -> Result<Dominance> {
    dominance_coords(&a.values, &b.values, &vec![tol; a.values.len()])
}

/// Polarization: the drop from the 1-Kemeny to the 2-Kemeny normalized
/// score.
pub fn polarization(v: &DiversityVector) -> Result<f64> {
    if v.values.len() < 2 {
        return Err(Error::InvalidInput(
            "polarization needs at least two candidates".into(),
        ));
    }
    Ok(v.values[0] - v.values[1])
}

/// Histogram of the distances between votes and their nearest center;
/// bins 0..=C(m,2), multiplicity-weighted counts.
pub fn distance_histogram(e: &Election, result: &KemenyResult) -> Result<Vec<u64>> {
    let bins = e.m() * (e.m() - 1) / 2 + 1;
    let mut hist = vec![0u64; bins];
    for (i, (v, w)) in e.votes().iter().enumerate() {
        let c = &result.centers[result.assignment[i]];
        let d = swap_distance(v, c)? as usize;
        hist[d] += w;
    }
    debug_assert_eq!(hist.iter().sum::<u64>(), e.num_voters());
    Ok(hist)
}

/// Per-radius results of the box-sampling experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct RBoxCell {
    pub r: f64,
    pub mean_distinct_sampled: f64,
    pub mean_max_in_box: f64,
    pub mean_domain_size: f64,
}

/// For each box radius: how many distinct votes an r-Box sample produces,
/// how many are achievable at all within the box, and the full domain size.
/// Each repetition draws a fresh embedding shared across all radii; the
/// sample size defaults to 10x the domain size. Exact box counts for
/// d <= 2; for d = 3 the box maximum is a sampled lower bound.
pub fn rbox_distinct_grid(
    d: usize,
    m: usize,
    rs: &[f64],
    reps: usize,
    samples_per_rep: Option<usize>,
    seed: u64,
) -> Result<Vec<RBoxCell>> {
    if reps == 0 || rs.is_empty() {
        return Err(Error::InvalidInput(
            "need at least one repetition and radius".into(),
        ));
    }
    let per_rep: Vec<Vec<(usize, usize, usize)>> = (0..reps)
        .into_par_iter()
        .map(|rep| -> Result<Vec<(usize, usize, usize)>> {
            let rep_seed = derive_seed(seed, rep as u64);
            let emb = Embedding::sample_general_position(d, m, derive_seed(rep_seed, 0))?;
            let domain = enumerate_euclidean(&emb)?;
            let n = samples_per_rep.unwrap_or(10 * domain.len());
            let mut row = Vec::with_capacity(rs.len());
            for (ri, &r) in rs.iter().enumerate() {
                let spec = CultureSpec {
                    kind: CultureKind::RBox { d, r },
                    seed: derive_seed(rep_seed, 1 + ri as u64),
                };
                let e = sample_election(&spec, m, n, SampleContext::Embedding(&emb))?;
                let mut distinct: Vec<&Ranking> = e.votes().iter().map(|(v, _)| v).collect();
                distinct.sort();
                distinct.dedup();
                let distinct = distinct.len();
                let max_in_box = if d <= 2 {
                    cells_in_box(&emb, r)?.len()
                } else {
                    // lower bound: everything the sample saw
                    distinct
                };
                assert!(distinct <= max_in_box);
                if d <= 2 {
                    assert!(max_in_box <= domain.len());
                }
                row.push((distinct, max_in_box, domain.len()));
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(rs
        .iter()
        .enumerate()
        .map(|(ri, &r)| {
            let mean = |pick: fn(&(usize, usize, usize)) -> usize| {
                per_rep.iter().map(|row| pick(&row[ri]) as f64).sum::<f64>() / reps as f64
            };
            RBoxCell {
                r,
                mean_distinct_sampled: mean(|c| c.0),
                mean_max_in_box: mean(|c| c.1),
                mean_domain_size: mean(|c| c.2),
            }
        })
        .collect())
}

/// One cell of a heuristic-vs-exact comparison grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub source: ElectionSource,
    pub m: usize,
    /// Voters per sampled election (ignored for domains-as-elections).
    pub n: usize,
    pub k: usize,
    pub reps: usize,
}

/// Mean and sample standard deviation of a cell's ratio distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub mean: f64,
    pub std: f64,
    pub reps: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct ExperimentGrid {
    pub seed: u64,
    pub cells: Vec<GridCell>,
}

/// For every cell, the mean heuristic/exact score ratio over its
/// repetitions (0/0 counts as 1). Ratios are always >= 1 since the exact
/// solver is optimal.
pub fn evaluate_heuristic(
    grid: &ExperimentGrid,
    restarts: usize,
    extra_ic: usize,
    budgets: &SolverBudgets,
) -> Result<Vec<CellResult>> {
    let jobs: Vec<(usize, usize)> = grid
        .cells
        .iter()
        .enumerate()
        .flat_map(|(ci, cell)| (0..cell.reps).map(move |rep| (ci, rep)))
        .collect();
    let ratios: Vec<(usize, f64)> = jobs
        .par_iter()
        .map(|&(ci, rep)| -> Result<(usize, f64)> {
            let cell = &grid.cells[ci];
            let rep_seed = derive_seed(grid.seed, (ci as u64) * 100_003 + rep as u64);
            let (e, domain) = cell.source.realize(cell.m, cell.n, rep_seed)?;
            let exact = solve(
                &e,
                cell.k,
                &SolverConfig::Exact,
                derive_seed(rep_seed, 2),
                budgets,
                domain.as_ref(),
            )?;
            let heur = solve(
                &e,
                cell.k,
                &SolverConfig::Heuristic { restarts, extra_ic },
                derive_seed(rep_seed, 3),
                budgets,
                domain.as_ref(),
            )?;
            assert!(
                heur.score >= exact.score,
                "heuristic beat the exact optimum"
            );
            let ratio = if exact.score == 0 {
                1.0
            } else {
                heur.score as f64 / exact.score as f64
            };
            Ok((ci, ratio))
        })
        .collect::<Result<_>>()?;
    let mut per_cell: Vec<Vec<f64>> = vec![Vec::new(); grid.cells.len()];
    for (ci, ratio) in ratios {
        per_cell[ci].push(ratio);
    }
    Ok(per_cell
        .into_iter()
        .map(|rs| {
            let n = rs.len();
            let mean = rs.iter().sum::<f64>() / n as f64;
            let var = if n > 1 {
                rs.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / (n - 1) as f64
            } else {
                0.0
            };
            CellResult {
                mean,
                std: var.sqrt(),
                reps: n,
                seed: grid.seed,
            }
        })
        .collect())
}

/// Pairwise dominance among named diversity vectors, plus a layering into
/// tie classes: each vector's level is the length of the longest chain of
/// strict dominators above it.
#[derive(Debug, Clone)]
pub struct DomainRanking {
    pub labels: Vec<String>,
    pub pairwise: Vec<Vec<Dominance>>,
    pub levels: Vec<Vec<String>>,
}

pub fn domain_ranking(entries: &[(String, DiversityVector)], tol: f64) -> Result<DomainRanking> {
    let n = entries.len();
    let mut pairwise = vec![vec![Dominance::Equal; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pairwise[i][j] = dominance(&entries[i].1, &entries[j].1, tol)?;
            }
        }
    }
    // longest chain of strict dominators (the relation is cycle-free: two
    // vectors cannot strictly dominate each other)
    let mut level = vec![usize::MAX; n];
    fn depth(
        i: usize,
        pairwise: &[Vec<Dominance>],
        level: &mut [usize],
        visiting: &mut [bool],
    ) -> usize {
        if level[i] != usize::MAX {
            return level[i];
        }
        if visiting[i] {
            return 0;
        }
        visiting[i] = true;
        let mut d = 0;
        for j in 0..pairwise.len() {
            if j != i && pairwise[j][i] == Dominance::AOverB {
                d = d.max(1 + depth(j, pairwise, level, visiting));
            }
        }
        visiting[i] = false;
        level[i] = d;
        d
    }
    let mut visiting = vec![false; n];
    for i in 0..n {
        depth(i, &pairwise, &mut level, &mut visiting);
    }
    let max_level = level.iter().copied().max().unwrap_or(0);
    let levels = (0..=max_level)
        .map(|l| {
            entries
                .iter()
                .zip(&level)
                .filter(|(_, &lv)| lv == l)
                .map(|((name, _), _)| name.clone())
                .collect()
        })
        .collect();
    Ok(DomainRanking {
        labels: entries.iter().map(|(n, _)| n.clone()).collect(),
        pairwise,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elections::test_util::ranking;

    fn budgets() -> SolverBudgets {
        SolverBudgets::default()
    }

    #[test]
    fn identical_votes_give_zero_vector() {
        let e = Election::new(4, vec![(Ranking::identity(4), 6)]).unwrap();
        let v = diversity_vector(&e, &SolverConfig::Exact, 0, &budgets(), None).unwrap();
        assert_eq!(v.values, vec![0.0; 4]);
    }

    #[test]
    fn full_domain_k1_is_half_the_pairs() {
        // every ranking is at the same total distance by symmetry
        for m in 3..=6 {
            let dom = enumerate_full(m).unwrap();
            let e = dom.to_election().unwrap();
            let res = solve(&e, 1, &SolverConfig::Exact, 0, &budgets(), None).unwrap();
            let expected = (m * (m - 1) / 2) as f64 / 2.0;
            assert_eq!(res.score as f64 / e.num_voters() as f64, expected, "m={m}");
        }
    }

    #[test]
    fn sc_chain_diversity_starts_at_weighted_median_cost() {
        let dom = DomainKind::Sc.build(8, 3).unwrap();
        let e = dom.to_election().unwrap();
        let v = diversity_vector(&e, &SolverConfig::Exact, 0, &budgets(), Some(&dom)).unwrap();
        assert!((v.values[0] - 210.0 / 29.0).abs() < 1e-12);
        // nonincreasing
        for w in v.values.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn dominance_cases() {
        let a = DiversityVector {
            m: 3,
            values: vec![3.0, 2.0, 0.0],
            method: "t".into(),
        };
        let b = a.clone();
        assert_eq!(dominance(&a, &b, 1e-9).unwrap(), Dominance::Equal);
        let zero = DiversityVector {
            m: 3,
            values: vec![0.0; 3],
            method: "t".into(),
        };
        assert_eq!(dominance(&a, &zero, 1e-9).unwrap(), Dominance::AOverB);
        assert_eq!(dominance(&zero, &a, 1e-9).unwrap(), Dominance::BOverA);
        let c = DiversityVector {
            m: 3,
            values: vec![4.0, 1.0, 0.0],
            method: "t".into(),
        };
        assert_eq!(dominance(&a, &c, 1e-9).unwrap(), Dominance::Incomparable);
    }

    #[test]
    fn polarization_two_camps() {
        // two equal camps of mutual reverses: kappa(1) = C(m,2)/2, kappa(2) = 0
        let v = Ranking::identity(8);
        let e = Election::new(8, vec![(v.clone(), 6), (v.reverse(), 6)]).unwrap();
        let dv = diversity_vector(&e, &SolverConfig::Exact, 0, &budgets(), None).unwrap();
        assert_eq!(dv.values[0], 14.0);
        assert_eq!(dv.values[1], 0.0);
        assert_eq!(polarization(&dv).unwrap(), 14.0);
    }

    #[test]
    fn histogram_masses_and_mean() {
        let e = Election::new(
            3,
            vec![(ranking(&[0, 1, 2]), 2), (ranking(&[2, 1, 0]), 1)],
        )
        .unwrap();
        let res = solve(&e, 1, &SolverConfig::Exact, 0, &budgets(), None).unwrap();
        let hist = distance_histogram(&e, &res).unwrap();
        assert_eq!(hist.iter().sum::<u64>(), 3);
        let weighted: u64 = hist.iter().enumerate().map(|(d, c)| d as u64 * c).sum();
        assert_eq!(weighted, res.score);
        // centers covering all votes put all mass at zero
        let res = solve(&e, 2, &SolverConfig::Exact, 0, &budgets(), None).unwrap();
        let hist = distance_histogram(&e, &res).unwrap();
        assert_eq!(hist[0], 3);
    }

    #[test]
    fn rbox_grid_invariants() {
        let cells = rbox_distinct_grid(2, 5, &[0.5, 1.0, 4.0], 3, Some(200), 9).unwrap();
        assert_eq!(cells.len(), 3);
        for c in &cells {
            assert!(c.mean_distinct_sampled <= c.mean_max_in_box + 1e-9);
            assert!(c.mean_max_in_box <= c.mean_domain_size + 1e-9);
            assert_eq!(c.mean_domain_size, 46.0);
        }
        // the box maximum grows with the radius
        assert!(cells[0].mean_max_in_box <= cells[1].mean_max_in_box);
        assert!(cells[1].mean_max_in_box <= cells[2].mean_max_in_box);
    }

    #[test]
    fn heuristic_grid_condorcet_rows_are_exact() {
        let grid = ExperimentGrid {
            seed: 5,
            cells: vec![
                GridCell {
                    source: ElectionSource::DomainAsElection(DomainKind::Sp),
                    m: 6,
                    n: 0,
                    k: 1,
                    reps: 3,
                },
                GridCell {
                    source: ElectionSource::DomainAsElection(DomainKind::Sc),
                    m: 6,
                    n: 0,
                    k: 2,
                    reps: 3,
                },
            ],
        };
        let results = evaluate_heuristic(&grid, 10, 512, &budgets()).unwrap();
        for r in &results {
            assert_eq!(r.mean, 1.0);
            assert_eq!(r.std, 0.0);
        }
    }

    #[test]
    fn ranking_levels_reflect_dominance() {
        let mk = |vals: Vec<f64>| DiversityVector {
            m: 3,
            values: vals,
            method: "t".into(),
        };
        let entries = vec![
            ("top".to_string(), mk(vec![5.0, 3.0, 1.0])),
            ("mid-a".to_string(), mk(vec![4.0, 2.0, 0.5])),
            ("mid-b".to_string(), mk(vec![3.5, 2.5, 0.4])),
            ("low".to_string(), mk(vec![1.0, 0.5, 0.1])),
        ];
        let ranking = domain_ranking(&entries, 1e-9).unwrap();
        assert_eq!(ranking.levels[0], vec!["top"]);
        assert!(ranking.levels[1].contains(&"mid-a".to_string()));
        assert!(ranking.levels[1].contains(&"mid-b".to_string()));
        assert_eq!(ranking.levels[2], vec!["low"]);
    }
}
