//! d-Euclidean domains: rankings induced by distances from voter points to
//! fixed candidate points.
//!
//! Enumeration works on the arrangement of pairwise bisectors. For d = 1 we
//! sweep the bisector points on the line; for d = 2 we place representative
//! points around every intersection of bisector lines (offset into each
//! local sector) and on a far circle between consecutive line directions,
//! then assert the cell count against the closed form. For d = 3 the domain
//! is sampled (vertices and edges of the bisector arrangement plus seeded
//! random batches) and certified only as a convergent lower bound.

use super::sizes::{domain_size_formula, SizeFormulaKind};
use super::{Domain, DomainDescriptor};
use crate::elections::Ranking;
use crate::error::Error;
use crate::rng::{derive_seed, rng_from_seed};
use crate::Result;
use rand::Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Factor applied to the coordinate spread for far-cell representatives;
/// beyond every bisector intersection the cell structure is radial.
const FAR_RADIUS_FACTOR: f64 = 1e3;

/// Fixed internal seed for the d = 3 sampling batches, so enumeration is a
/// deterministic function of the embedding.
const D3_SAMPLING_SEED: u64 = 0xE3D0_5EED;

/// Candidate positions in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    d: usize,
    points: Vec<Vec<f64>>,
    general_position: bool,
}

impl Embedding {
    /// Record the embedding; the general-position flag is set after checking
    /// that candidate points and their pairwise bisectors are distinct.
    pub fn new(d: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("embedding dimension must be >= 1".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidInput("embedding needs at least one candidate".into()));
        }
        for p in &points {
            if p.len() != d {
                return Err(Error::LengthMismatch {
                    expected: d,
                    got: p.len(),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput("embedding coordinates must be finite".into()));
            }
        }
        let general_position = check_general_position(d, &points);
        Ok(Embedding {
            d,
            points,
            general_position,
        })
    }

    /// Sample candidate points uniformly from `[-1, 1]^d`.
    pub fn sample_unit_box(d: usize, m: usize, seed: u64) -> Result<Self> {
        let mut rng = rng_from_seed(seed);
        let points = (0..m)
            .map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        Embedding::new(d, points)
    }

    /// Sample from `[-1, 1]^d`, retrying until the general-position check
    /// passes (derived seeds per attempt).
    pub fn sample_general_position(d: usize, m: usize, seed: u64) -> Result<Self> {
        for attempt in 0..64 {
            let e = Embedding::sample_unit_box(d, m, derive_seed(seed, attempt))?;
            if e.general_position {
                return Ok(e);
            }
        }
        Err(Error::DegenerateEmbedding(
            "could not sample a general-position embedding in 64 attempts".into(),
        ))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn is_general_position(&self) -> bool {
        self.general_position
    }

    /// Maximum coordinate range over all dimensions.
    pub fn spread(&self) -> f64 {
        let mut spread = 0.0f64;
        for dim in 0..self.d {
            let lo = self.points.iter().map(|p| p[dim]).fold(f64::INFINITY, f64::min);
            let hi = self.points.iter().map(|p| p[dim]).fold(f64::NEG_INFINITY, f64::max);
            spread = spread.max(hi - lo);
        }
        spread.max(1e-9)
    }

    /// Rank candidates by distance from `point`; `None` when two candidates
    /// are (numerically) equidistant.
    pub fn rank_from(&self, point: &[f64]) -> Option<Ranking> {
        debug_assert_eq!(point.len(), self.d);
        let mut keyed: Vec<(f64, u16)> = self
            .points
            .iter()
            .enumerate()
            .map(|(c, x)| {
                let d2: f64 = x.iter().zip(point).map(|(a, b)| (a - b) * (a - b)).sum();
                (d2, c as u16)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let scale = keyed.last().map(|k| k.0).unwrap_or(1.0).max(1e-30);
        for w in keyed.windows(2) {
            if (w[1].0 - w[0].0) / scale < 1e-13 {
                return None;
            }
        }
        Ranking::new(keyed.into_iter().map(|(_, c)| c).collect()).ok()
    }
}

fn check_general_position(d: usize, points: &[Vec<f64>]) -> bool {
    let m = points.len();
    let spread = {
        let mut s = 0.0f64;
        for dim in 0..d {
            let lo = points.iter().map(|p| p[dim]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[dim]).fold(f64::NEG_INFINITY, f64::max);
            s = f64::max(s, hi - lo);
        }
        s
    };
    if m >= 2 && spread < 1e-12 {
        return false;
    }
    let tol = spread.max(1e-9) * 1e-9;
    // distinct candidate points
    for i in 0..m {
        for j in (i + 1)..m {
            let dist2: f64 = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            if dist2.sqrt() < tol {
                return false;
            }
        }
    }
    // pairwise-distinct bisector hyperplanes
    let mut planes: Vec<(Vec<f64>, f64)> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if let Some(pl) = bisector(&points[i], &points[j]) {
                planes.push(pl);
            } else {
                return false;
            }
        }
    }
    for i in 0..planes.len() {
        for j in (i + 1)..planes.len() {
            let dot: f64 = planes[i].0.iter().zip(&planes[j].0).map(|(a, b)| a * b).sum();
            if 1.0 - dot.abs() < 1e-12 {
                // parallel normals; same plane when offsets agree too
                let same = if dot > 0.0 {
                    (planes[i].1 - planes[j].1).abs() < tol
                } else {
                    (planes[i].1 + planes[j].1).abs() < tol
                };
                if same {
                    return false;
                }
            }
        }
    }
    true
}

/// Unit-normal bisector hyperplane `{p : n.p = c}` between `a` and `b`.
fn bisector(a: &[f64], b: &[f64]) -> Option<(Vec<f64>, f64)> {
    let mut n: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let len = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    if len < 1e-15 {
        return None;
    }
    for x in &mut n {
        *x /= len;
    }
    let b2: f64 = b.iter().map(|x| x * x).sum();
    let a2: f64 = a.iter().map(|x| x * x).sum();
    let c = (b2 - a2) / (2.0 * len);
    Some((n, c))
}

/// Enumerate the domain of an embedding, keeping a realizing witness point
/// for every vote. Exact for d <= 2; a convergent lower bound for d = 3.
pub fn enumerate_with_witnesses(emb: &Embedding) -> Result<Vec<(Ranking, Vec<f64>)>> {
    if !emb.general_position {
        return Err(Error::DegenerateEmbedding(
            "embedding failed the pairwise-distinct-bisector check".into(),
        ));
    }
    match emb.d {
        1 => enumerate_1d(emb),
        2 => enumerate_2d(emb),
        3 => Ok(enumerate_3d(emb)),
        d => Err(Error::InvalidInput(format!(
            "Euclidean enumeration supports d in 1..=3, got {d}"
        ))),
    }
}

/// Enumerate the domain induced by `emb` as a [`Domain`]. Votes are in sweep
/// order for d = 1 (which is a single-crossing order) and sorted
/// lexicographically otherwise.
pub fn enumerate_euclidean(emb: &Embedding) -> Result<Domain> {
    let pairs = enumerate_with_witnesses(emb)?;
    let votes: Vec<Ranking> = pairs.into_iter().map(|(r, _)| r).collect();
    Ok(Domain::new(
        emb.m(),
        votes,
        DomainDescriptor::Euclidean {
            embedding: emb.clone(),
            lower_bound: emb.d == 3,
        },
    ))
}

fn enumerate_1d(emb: &Embedding) -> Result<Vec<(Ranking, Vec<f64>)>> {
    let m = emb.m();
    let xs: Vec<f64> = emb.points.iter().map(|p| p[0]).collect();
    let mut mids: Vec<f64> = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            mids.push((xs[i] + xs[j]) / 2.0);
        }
    }
    mids.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let spread = emb.spread();
    for w in mids.windows(2) {
        if (w[1] - w[0]).abs() < spread * 1e-12 {
            return Err(Error::DegenerateEmbedding(
                "coincident bisector points on the line".into(),
            ));
        }
    }
    let mut reps: Vec<f64> = Vec::with_capacity(mids.len() + 1);
    if mids.is_empty() {
        reps.push(0.0);
    } else {
        reps.push(mids[0] - spread);
        for w in mids.windows(2) {
            reps.push((w[0] + w[1]) / 2.0);
        }
        reps.push(mids[mids.len() - 1] + spread);
    }
    let mut out = Vec::with_capacity(reps.len());
    for p in reps {
        let r = emb.rank_from(&[p]).ok_or_else(|| {
            Error::DegenerateEmbedding("tie while ranking a 1D cell representative".into())
        })?;
        out.push((r, vec![p]));
    }
    // sweep order; all cells are distinct by construction
    let mut seen: Vec<&Ranking> = out.iter().map(|(r, _)| r).collect();
    seen.dedup();
    if seen.len() != out.len() {
        return Err(Error::DegenerateEmbedding(
            "duplicate cells in the 1D sweep".into(),
        ));
    }
    Ok(out)
}

struct Line2 {
    n: [f64; 2],
    c: f64,
}

impl Line2 {
    fn dist(&self, p: [f64; 2]) -> f64 {
        (self.n[0] * p[0] + self.n[1] * p[1] - self.c).abs()
    }

    fn direction(&self) -> [f64; 2] {
        [-self.n[1], self.n[0]]
    }
}

fn lines_2d(emb: &Embedding) -> Vec<Line2> {
    let m = emb.m();
    let mut lines = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            let (n, c) = bisector(&emb.points[i], &emb.points[j]).expect("distinct points");
            lines.push(Line2 { n: [n[0], n[1]], c });
        }
    }
    lines
}

fn enumerate_2d(emb: &Embedding) -> Result<Vec<(Ranking, Vec<f64>)>> {
    let m = emb.m();
    let reps = representatives_2d(emb);
    let mut cells: BTreeMap<Ranking, Vec<f64>> = BTreeMap::new();
    for p in reps {
        if let Some(r) = emb.rank_from(&p) {
            cells.entry(r).or_insert(p);
        }
    }
    let expected = if m >= 2 {
        domain_size_formula(SizeFormulaKind::Euclid2d, m)?
    } else {
        1
    };
    if cells.len() as u64 != expected {
        return Err(Error::DegenerateEmbedding(format!(
            "2D cell count {} does not match the closed form {}",
            cells.len(),
            expected
        )));
    }
    Ok(cells.into_iter().collect())
}

/// Representative points covering every cell of the 2D bisector
/// arrangement: sector offsets around each pairwise line intersection plus
/// far-circle points between consecutive line directions.
fn representatives_2d(emb: &Embedding) -> Vec<Vec<f64>> {
    let lines = lines_2d(emb);
    let spread = emb.spread();
    let mut reps: Vec<Vec<f64>> = vec![vec![0.0, 0.0]];
    let mut max_extent = spread;

    let mut intersections: Vec<[f64; 2]> = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (a, b) = (&lines[i], &lines[j]);
            let det = a.n[0] * b.n[1] - a.n[1] * b.n[0];
            if det.abs() < 1e-12 {
                continue;
            }
            let x = (a.c * b.n[1] - b.c * a.n[1]) / det;
            let y = (a.n[0] * b.c - b.n[0] * a.c) / det;
            intersections.push([x, y]);
        }
    }
    for p in &intersections {
        max_extent = max_extent.max(p[0].abs()).max(p[1].abs());
    }

    for p in &intersections {
        let through_tol = spread * 1e-9;
        let mut through: Vec<usize> = Vec::new();
        let mut min_other = f64::INFINITY;
        for (idx, l) in lines.iter().enumerate() {
            let d = l.dist(*p);
            if d < through_tol {
                through.push(idx);
            } else {
                min_other = min_other.min(d);
            }
        }
        let eps = 0.5 * min_other.min(spread * 0.01);
        if !(eps > 0.0) || !eps.is_finite() {
            continue;
        }
        for a in 0..through.len() {
            for b in (a + 1)..through.len() {
                let u = lines[through[a]].direction();
                let v = lines[through[b]].direction();
                for dir in [
                    [u[0] + v[0], u[1] + v[1]],
                    [u[0] - v[0], u[1] - v[1]],
                    [-u[0] - v[0], -u[1] - v[1]],
                    [-u[0] + v[0], -u[1] + v[1]],
                ] {
                    let len = (dir[0] * dir[0] + dir[1] * dir[1]).sqrt();
                    if len < 1e-12 {
                        continue;
                    }
                    reps.push(vec![p[0] + eps * dir[0] / len, p[1] + eps * dir[1] / len]);
                }
            }
        }
    }

    // far circle: one representative per gap between consecutive line
    // directions (each line contributes two antipodal directions)
    let radius = (FAR_RADIUS_FACTOR * spread).max(2.0 * max_extent + spread);
    let mut angles: Vec<f64> = Vec::with_capacity(2 * lines.len());
    for l in &lines {
        let u = l.direction();
        let th = u[1].atan2(u[0]);
        angles.push(th);
        angles.push(th + std::f64::consts::PI);
    }
    let tau = 2.0 * std::f64::consts::PI;
    for a in &mut angles {
        *a = a.rem_euclid(tau);
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if angles.is_empty() {
        return reps;
    }
    for i in 0..angles.len() {
        let a = angles[i];
        let b = if i + 1 < angles.len() {
            angles[i + 1]
        } else {
            angles[0] + tau
        };
        let mid = (a + b) / 2.0;
        reps.push(vec![radius * mid.cos(), radius * mid.sin()]);
    }
    reps
}

/// Cells of the bisector arrangement that intersect the box `[-r, r]^d`,
/// with a witness point inside the box for each. Exact for d <= 2.
pub(crate) fn cells_in_box(emb: &Embedding, r: f64) -> Result<Vec<(Ranking, Vec<f64>)>> {
    if !emb.general_position {
        return Err(Error::DegenerateEmbedding(
            "embedding failed the pairwise-distinct-bisector check".into(),
        ));
    }
    if !(r > 0.0) {
        return Err(Error::InvalidInput("box radius must be positive".into()));
    }
    match emb.d {
        1 => {
            let m = emb.m();
            let xs: Vec<f64> = emb.points.iter().map(|p| p[0]).collect();
            let mut cuts: Vec<f64> = vec![-r, r];
            for i in 0..m {
                for j in (i + 1)..m {
                    let mid = (xs[i] + xs[j]) / 2.0;
                    if mid > -r && mid < r {
                        cuts.push(mid);
                    }
                }
            }
            cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut out: BTreeMap<Ranking, Vec<f64>> = BTreeMap::new();
            for w in cuts.windows(2) {
                let p = (w[0] + w[1]) / 2.0;
                if let Some(rank) = emb.rank_from(&[p]) {
                    out.entry(rank).or_insert(vec![p]);
                }
            }
            Ok(out.into_iter().collect())
        }
        2 => {
            let reps = box_representatives_2d(emb, r);
            let mut out: BTreeMap<Ranking, Vec<f64>> = BTreeMap::new();
            for p in reps {
                if p[0].abs() <= r && p[1].abs() <= r {
                    if let Some(rank) = emb.rank_from(&p) {
                        out.entry(rank).or_insert(p);
                    }
                }
            }
            Ok(out.into_iter().collect())
        }
        d => Err(Error::InvalidInput(format!(
            "box-restricted cell enumeration supports d in 1..=2, got {d}"
        ))),
    }
}

fn box_representatives_2d(emb: &Embedding, r: f64) -> Vec<Vec<f64>> {
    let lines = lines_2d(emb);
    let spread = emb.spread();
    let mut reps: Vec<Vec<f64>> = vec![vec![0.0, 0.0]];

    // interior arrangement vertices with sector offsets (reused and filtered
    // to the box by the caller)
    for p in representatives_2d(emb) {
        if p[0].abs() < r && p[1].abs() < r {
            reps.push(p);
        }
    }

    let min_line_dist = |p: [f64; 2]| -> f64 {
        lines
            .iter()
            .map(|l| l.dist(p))
            .fold(f64::INFINITY, f64::min)
    };

    // box edges subdivided by line crossings; a cell crossing the boundary
    // owns a full sub-segment, so its midpoint nudged inward stays inside
    // the cell
    let corners = [[-r, -r], [r, -r], [r, r], [-r, r]];
    for e in 0..4 {
        let a = corners[e];
        let b = corners[(e + 1) % 4];
        let inward = [-(b[1] - a[1]) / (2.0 * r), (b[0] - a[0]) / (2.0 * r)];
        let mut ts: Vec<f64> = vec![0.0, 1.0];
        for l in &lines {
            // solve n.(a + t(b-a)) = c
            let na = l.n[0] * a[0] + l.n[1] * a[1];
            let nb = l.n[0] * b[0] + l.n[1] * b[1];
            if (nb - na).abs() < 1e-15 {
                continue;
            }
            let t = (l.c - na) / (nb - na);
            if t > 0.0 && t < 1.0 {
                ts.push(t);
            }
        }
        ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for w in ts.windows(2) {
            let t = (w[0] + w[1]) / 2.0;
            let p = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
            let eps = 0.5 * min_line_dist(p).min(r * 0.01).min(spread * 0.01);
            if eps > 0.0 && eps.is_finite() {
                reps.push(vec![p[0] + eps * inward[0], p[1] + eps * inward[1]]);
            }
        }
    }
    // corners nudged diagonally inward
    for c in corners {
        let p = [c[0], c[1]];
        let eps = 0.5 * min_line_dist(p).min(r * 0.01).min(spread * 0.01);
        if eps > 0.0 && eps.is_finite() {
            let dir = [-c[0].signum(), -c[1].signum()];
            let s = std::f64::consts::FRAC_1_SQRT_2;
            reps.push(vec![p[0] + eps * dir[0] * s, p[1] + eps * dir[1] * s]);
        }
    }
    reps
}

/// Knobs for the d = 3 sampled enumeration.
#[derive(Debug, Clone)]
pub struct SamplingOptions {
    pub batch_size: usize,
    /// Stop after this many consecutive batches discover nothing new.
    pub stable_batches: usize,
    pub max_batches: usize,
    pub seed: u64,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions {
            batch_size: 10_000,
            stable_batches: 50,
            max_batches: 2_000,
            seed: D3_SAMPLING_SEED,
        }
    }
}

fn enumerate_3d(emb: &Embedding) -> Vec<(Ranking, Vec<f64>)> {
    enumerate_3d_with(emb, &SamplingOptions::default())
}

pub(crate) fn enumerate_3d_with(
    emb: &Embedding,
    opts: &SamplingOptions,
) -> Vec<(Ranking, Vec<f64>)> {
    let m = emb.m();
    let spread = emb.spread();
    let mut cells: BTreeMap<Ranking, Vec<f64>> = BTreeMap::new();
    let mut try_point = |cells: &mut BTreeMap<Ranking, Vec<f64>>, p: &[f64; 3]| -> bool {
        if let Some(r) = emb.rank_from(p) {
            if !cells.contains_key(&r) {
                cells.insert(r, p.to_vec());
                return true;
            }
        }
        false
    };

    // planes indexed by candidate pair
    let mut planes: Vec<([f64; 3], f64)> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if let Some((n, c)) = bisector(&emb.points[i], &emb.points[j]) {
                planes.push(([n[0], n[1], n[2]], c));
            }
        }
    }

    let mut vertices: Vec<[f64; 3]> = Vec::new();
    // equidistant point of each candidate quadruple: the intersection of
    // three of its bisector planes
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                for d in (c + 1)..m {
                    let rows: Vec<([f64; 3], f64)> = [(a, b), (a, c), (a, d)]
                        .iter()
                        .filter_map(|&(i, j)| {
                            bisector(&emb.points[i], &emb.points[j])
                                .map(|(n, off)| ([n[0], n[1], n[2]], off))
                        })
                        .collect();
                    if rows.len() == 3 {
                        if let Some(p) = solve3(&rows) {
                            vertices.push(p);
                        }
                    }
                }
            }
        }
    }
    let mut max_extent = spread;
    for v in &vertices {
        for x in v {
            max_extent = max_extent.max(x.abs());
        }
    }

    let sphere_dirs = fibonacci_sphere(192);
    for v in &vertices {
        let mut min_other = f64::INFINITY;
        for (n, c) in &planes {
            let d = (n[0] * v[0] + n[1] * v[1] + n[2] * v[2] - c).abs();
            if d > spread * 1e-9 {
                min_other = min_other.min(d);
            }
        }
        for scale in [0.3, 0.6, 0.9] {
            let eps = (min_other * scale).min(spread * 0.05);
            if !(eps > 0.0) || !eps.is_finite() {
                continue;
            }
            for dir in &sphere_dirs {
                let p = [v[0] + eps * dir[0], v[1] + eps * dir[1], v[2] + eps * dir[2]];
                try_point(&mut cells, &p);
            }
        }
    }

    // equidistant line of each candidate triple, sampled along its length
    // with perpendicular offsets
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                let p1 = bisector(&emb.points[a], &emb.points[b]);
                let p2 = bisector(&emb.points[a], &emb.points[c]);
                let (Some((n1, c1)), Some((n2, c2))) = (p1, p2) else { continue };
                let w = cross3(&n1, &n2);
                let wlen = norm3(&w);
                if wlen < 1e-12 {
                    continue;
                }
                let w = [w[0] / wlen, w[1] / wlen, w[2] / wlen];
                let Some(base) = line_base_point(&n1, c1, &n2, c2) else { continue };
                let u = [n1[0], n1[1], n1[2]];
                let v = cross3(&[w[0], w[1], w[2]], &u);
                for t in [-6.0, -3.0, -1.5, -0.7, -0.3, 0.0, 0.3, 0.7, 1.5, 3.0, 6.0] {
                    let q = [
                        base[0] + t * spread * w[0],
                        base[1] + t * spread * w[1],
                        base[2] + t * spread * w[2],
                    ];
                    let mut min_other = f64::INFINITY;
                    for (n, off) in &planes {
                        let d = (n[0] * q[0] + n[1] * q[1] + n[2] * q[2] - off).abs();
                        if d > spread * 1e-9 {
                            min_other = min_other.min(d);
                        }
                    }
                    let eps = (0.45 * min_other).min(spread * 0.05);
                    if !(eps > 0.0) || !eps.is_finite() {
                        continue;
                    }
                    for (su, sv) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0),
                                     (0.7, 0.7), (0.7, -0.7), (-0.7, 0.7), (-0.7, -0.7)]
                    {
                        let p = [
                            q[0] + eps * (su * u[0] + sv * v[0]),
                            q[1] + eps * (su * u[1] + sv * v[1]),
                            q[2] + eps * (su * u[2] + sv * v[2]),
                        ];
                        try_point(&mut cells, &p);
                    }
                }
            }
        }
    }

    // far sphere for unbounded cells
    let radius = (FAR_RADIUS_FACTOR * spread).max(2.0 * max_extent + spread);
    for dir in fibonacci_sphere(32_768) {
        let p = [radius * dir[0], radius * dir[1], radius * dir[2]];
        try_point(&mut cells, &p);
    }

    // seeded random batches until the count is stable
    let mut stable = 0usize;
    let mut batch_idx = 0u64;
    let chunk = rayon::current_num_threads().max(4);
    while stable < opts.stable_batches && (batch_idx as usize) < opts.max_batches {
        let batches: Vec<Vec<[f64; 3]>> = (0..chunk as u64)
            .into_par_iter()
            .map(|k| {
                sample_batch_3d(
                    emb,
                    &vertices,
                    max_extent,
                    opts.batch_size,
                    derive_seed(opts.seed, batch_idx + k),
                )
            })
            .collect();
        for batch in batches {
            batch_idx += 1;
            let mut found_new = false;
            for p in batch {
                if try_point(&mut cells, &p) {
                    found_new = true;
                }
            }
            if found_new {
                stable = 0;
            } else {
                stable += 1;
            }
            if stable >= opts.stable_batches || batch_idx as usize >= opts.max_batches {
                break;
            }
        }
    }

    cells.into_iter().collect()
}

fn sample_batch_3d(
    emb: &Embedding,
    vertices: &[[f64; 3]],
    extent: f64,
    size: usize,
    seed: u64,
) -> Vec<[f64; 3]> {
    let mut rng = rng_from_seed(seed);
    let spread = emb.spread();
    let mut out = Vec::with_capacity(size);
    for i in 0..size {
        let p = match i % 3 {
            0 => {
                let b = 1.5 * extent;
                [
                    rng.gen_range(-b..b),
                    rng.gen_range(-b..b),
                    rng.gen_range(-b..b),
                ]
            }
            1 if !vertices.is_empty() => {
                let v = vertices[rng.gen_range(0..vertices.len())];
                let sigma = spread * 10f64.powf(rng.gen_range(-3.0..0.0));
                [
                    v[0] + sigma * (rng.gen_range(-1.0..1.0f64) + rng.gen_range(-1.0..1.0)),
                    v[1] + sigma * (rng.gen_range(-1.0..1.0f64) + rng.gen_range(-1.0..1.0)),
                    v[2] + sigma * (rng.gen_range(-1.0..1.0f64) + rng.gen_range(-1.0..1.0)),
                ]
            }
            _ => {
                // log-uniform radius along a random ray, reaching thin
                // wedges far outside the vertex region
                let radius = extent * 10f64.powf(rng.gen_range(-1.0..3.5));
                let z: f64 = rng.gen_range(-1.0..1.0);
                let th: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
                let rxy = (1.0 - z * z).max(0.0).sqrt();
                [
                    radius * rxy * th.cos(),
                    radius * rxy * th.sin(),
                    radius * z,
                ]
            }
        };
        out.push(p);
    }
    out
}

fn cross3(a: &[f64], b: &[f64]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm3(a: &[f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Minimum-norm point on the intersection line of two planes.
fn line_base_point(n1: &[f64], c1: f64, n2: &[f64], c2: f64) -> Option<[f64; 3]> {
    // p = alpha*n1 + beta*n2 with n1.p = c1, n2.p = c2
    let a11 = 1.0f64;
    let a12: f64 = n1.iter().zip(n2).map(|(x, y)| x * y).sum();
    let a22 = 1.0f64;
    let det = a11 * a22 - a12 * a12;
    if det.abs() < 1e-12 {
        return None;
    }
    let alpha = (c1 * a22 - c2 * a12) / det;
    let beta = (a11 * c2 - a12 * c1) / det;
    Some([
        alpha * n1[0] + beta * n2[0],
        alpha * n1[1] + beta * n2[1],
        alpha * n1[2] + beta * n2[2],
    ])
}

fn solve3(rows: &[([f64; 3], f64)]) -> Option<[f64; 3]> {
    let mut a = [
        [rows[0].0[0], rows[0].0[1], rows[0].0[2], rows[0].1],
        [rows[1].0[0], rows[1].0[1], rows[1].0[2], rows[1].1],
        [rows[2].0[0], rows[2].0[1], rows[2].0[2], rows[2].1],
    ];
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
        })?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        for row in 0..3 {
            if row != col {
                let f = a[row][col] / a[col][col];
                for k in col..4 {
                    a[row][k] -= f * a[col][k];
                }
            }
        }
    }
    Some([a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]])
}

fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    (0..n)
        .map(|i| {
            let y = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - y * y).sqrt();
            let th = golden * i as f64;
            [r * th.cos(), y, r * th.sin()]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::validate_sc_order;

    #[test]
    fn one_dimensional_sweep_counts() {
        for m in 2..=8 {
            let emb = Embedding::sample_general_position(1, m, 7 + m as u64).unwrap();
            let dom = enumerate_euclidean(&emb).unwrap();
            assert_eq!(dom.len() as u64, (m * (m - 1) / 2 + 1) as u64, "m={m}");
        }
        let emb = Embedding::sample_general_position(1, 8, 3).unwrap();
        assert_eq!(enumerate_euclidean(&emb).unwrap().len(), 29);
    }

    #[test]
    fn one_dimensional_sweep_is_single_crossing() {
        for seed in 0..8 {
            let emb = Embedding::sample_general_position(1, 8, seed).unwrap();
            let dom = enumerate_euclidean(&emb).unwrap();
            let refs: Vec<&Ranking> = dom.votes().iter().collect();
            assert!(validate_sc_order(&refs, 8).is_ok(), "seed={seed}");
        }
    }

    #[test]
    fn two_dimensional_counts_match_stirling_form() {
        // 100 random general-position embeddings across m <= 8
        let mut checked = 0;
        for m in 2..=8 {
            for seed in 0..15 {
                let emb = Embedding::sample_general_position(2, m, seed * 31 + m as u64).unwrap();
                let dom = enumerate_euclidean(&emb).unwrap();
                let expected = domain_size_formula(SizeFormulaKind::Euclid2d, m).unwrap();
                assert_eq!(dom.len() as u64, expected, "m={m} seed={seed}");
                checked += 1;
            }
        }
        assert!(checked >= 100);
    }

    #[test]
    fn two_dimensional_m3_is_full_domain() {
        let emb = Embedding::sample_general_position(2, 3, 5).unwrap();
        let dom = enumerate_euclidean(&emb).unwrap();
        assert_eq!(dom.len(), 6);
    }

    #[test]
    fn witnesses_realize_their_votes() {
        let emb = Embedding::sample_general_position(2, 6, 11).unwrap();
        for (vote, witness) in enumerate_with_witnesses(&emb).unwrap() {
            assert_eq!(emb.rank_from(&witness), Some(vote));
        }
    }

    #[test]
    fn degenerate_embeddings_are_rejected() {
        let emb = Embedding::new(2, vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert!(!emb.is_general_position());
        assert!(matches!(
            enumerate_euclidean(&emb),
            Err(Error::DegenerateEmbedding(_))
        ));
        // collinear equally spaced points give coincident bisectors
        let emb = Embedding::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0], vec![3.0, 0.0]],
        )
        .unwrap();
        assert!(!emb.is_general_position());
    }

    #[test]
    fn box_cells_grow_with_radius_and_match_domain_in_the_limit() {
        let emb = Embedding::sample_general_position(2, 6, 21).unwrap();
        let total = enumerate_euclidean(&emb).unwrap().len();
        let mut prev = 0usize;
        for r in [0.25, 0.5, 1.0, 2.0, 4.0, 10_000.0] {
            let cells = cells_in_box(&emb, r).unwrap();
            assert!(cells.len() >= prev, "r={r}");
            for (vote, w) in &cells {
                assert!(w.iter().all(|x| x.abs() <= r));
                assert_eq!(emb.rank_from(w).as_ref(), Some(vote));
            }
            prev = cells.len();
        }
        assert_eq!(prev, total, "a huge box must cover every cell");
    }

    #[test]
    fn box_cells_match_dense_sampling() {
        // dense random sampling inside the box never discovers a cell the
        // representative construction missed
        for seed in 0..5 {
            let emb = Embedding::sample_general_position(2, 5, 100 + seed).unwrap();
            let r = 1.0;
            let computed: std::collections::BTreeSet<Ranking> = cells_in_box(&emb, r)
                .unwrap()
                .into_iter()
                .map(|(v, _)| v)
                .collect();
            let mut rng = rng_from_seed(seed);
            for _ in 0..20_000 {
                let p = [rng.gen_range(-r..r), rng.gen_range(-r..r)];
                if let Some(v) = emb.rank_from(&p) {
                    assert!(computed.contains(&v), "missed cell {v:?} at {p:?}");
                }
            }
        }
    }

    #[test]
    fn three_dimensional_lower_bound_contains_small_domains() {
        // for m = 3 with d = 3 every ranking is realizable
        let emb = Embedding::sample_general_position(3, 3, 2).unwrap();
        let dom = enumerate_euclidean(&emb).unwrap();
        assert_eq!(dom.len(), 6);
        match dom.descriptor() {
            DomainDescriptor::Euclidean { lower_bound, .. } => assert!(lower_bound),
            other => panic!("unexpected descriptor {other:?}"),
        }
    }
}
