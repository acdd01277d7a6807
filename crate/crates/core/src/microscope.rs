//! Microscopes: 2D stress-minimizing embeddings of vote sets under swap
//! distance, with votes colored by their nearest k-Kemeny center, emitted
//! as SVG and CSV.

use crate::domains::Domain;
use crate::elections::{swap_distance, Election, Ranking};
use crate::error::Error;
use crate::rng::{derive_seed, rng_from_seed};
use crate::sampling::{sample_election, CultureKind, CultureSpec, SampleContext};
use crate::solvers::{solve, SolverBudgets, SolverConfig};
use crate::Result;
use rand::Rng;
use rayon::prelude::*;

/// SMACOF iteration caps: stop on a relative stress change below the
/// tolerance or after the iteration limit.
pub const MDS_MAX_ITERATIONS: usize = 300;
pub const MDS_RELATIVE_TOLERANCE: f64 = 1e-6;

/// Fixed drawing theme so outputs diff cleanly.
mod theme {
    pub const WIDTH: f64 = 600.0;
    pub const MARGIN: f64 = 30.0;
    pub const DOT_RADIUS: f64 = 4.0;
    pub const IC_DOT_RADIUS: f64 = 2.5;
    pub const STAR_RADIUS: f64 = 9.0;
    pub const IC_COLOR: &str = "#c8c8c8";
    pub const STAR_COLOR: &str = "#1a1a1a";
    pub const PALETTE: [&str; 8] = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#e377c2", "#8c564b",
    ];
}

/// Multidimensional scaling by SMACOF stress majorization.
///
/// `dist` must be symmetric with a zero diagonal. Starts from a seeded
/// random layout; the raw stress is nonincreasing across iterations (checked
/// every step). Returns the coordinates and the normalized final stress
/// `sqrt(sum (delta - d)^2 / sum delta^2)`.
pub fn embed_mds(dist: &[Vec<f64>], seed: u64) -> Result<(Vec<[f64; 2]>, f64)> {
    let n = dist.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty distance matrix".into()));
    }
    for (i, row) in dist.iter().enumerate() {
        if row.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: row.len(),
            });
        }
        if dist[i][i].abs() > 1e-12 {
            return Err(Error::InvalidInput("distance matrix diagonal must be zero".into()));
        }
        for j in 0..n {
            if (dist[i][j] - dist[j][i]).abs() > 1e-9 {
                return Err(Error::InvalidInput("distance matrix must be symmetric".into()));
            }
            if dist[i][j] < 0.0 || !dist[i][j].is_finite() {
                return Err(Error::InvalidInput("distances must be finite and nonnegative".into()));
            }
        }
    }
    if n == 1 {
        return Ok((vec![[0.0, 0.0]], 0.0));
    }

    let scale: f64 = {
        let mut s = 0.0;
        let mut c = 0usize;
        for i in 0..n {
            for j in (i + 1)..n {
                s += dist[i][j];
                c += 1;
            }
        }
        (s / c as f64).max(1e-9)
    };
    let mut rng = rng_from_seed(seed);
    let mut x: Vec<[f64; 2]> = (0..n)
        .map(|_| {
            [
                rng.gen_range(-scale..scale),
                rng.gen_range(-scale..scale),
            ]
        })
        .collect();

    let raw_stress = |x: &[[f64; 2]]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = dist2(&x[i], &x[j]);
                let diff = dist[i][j] - d;
                s += diff * diff;
            }
        }
        s
    };

    let mut stress = raw_stress(&x);
    for _ in 0..MDS_MAX_ITERATIONS {
        // Guttman transform with unit weights
        let mut next = vec![[0.0f64; 2]; n];
        for i in 0..n {
            let mut acc = [0.0f64; 2];
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = dist2(&x[i], &x[j]);
                let b = if d > 1e-12 { dist[i][j] / d } else { 0.0 };
                acc[0] += x[j][0] + b * (x[i][0] - x[j][0]);
                acc[1] += x[j][1] + b * (x[i][1] - x[j][1]);
            }
            next[i] = [acc[0] / n as f64, acc[1] / n as f64];
        }
        x = next;
        let new_stress = raw_stress(&x);
        assert!(
            new_stress <= stress * (1.0 + 1e-9) + 1e-9,
            "majorization must not increase stress"
        );
        let rel = (stress - new_stress) / stress.max(1e-30);
        stress = new_stress;
        if rel < MDS_RELATIVE_TOLERANCE {
            break;
        }
    }
    let denom: f64 = {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += dist[i][j] * dist[i][j];
            }
        }
        s
    };
    let normalized = if denom > 0.0 {
        (stress / denom).sqrt()
    } else {
        0.0
    };
    Ok((x, normalized))
}

fn dist2(a: &[f64; 2], b: &[f64; 2]) -> f64 {
    ((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1])).sqrt()
}

/// One plotted vote.
#[derive(Debug, Clone)]
pub struct PlotPoint {
    pub vote: Ranking,
    pub x: f64,
    pub y: f64,
    /// Palette index of the nearest center; IC filler votes have none.
    pub color: Option<usize>,
    pub is_center: bool,
    pub is_ic: bool,
}

#[derive(Debug, Clone)]
pub struct MicroscopePlot {
    pub points: Vec<PlotPoint>,
    pub stress: f64,
    pub k: usize,
    pub score: u64,
}

/// Embed an election's votes (optionally diluted with IC filler votes),
/// solve k-Kemeny on the election itself, color votes by nearest center,
/// and star the centers.
pub fn render_microscope(
    e: &Election,
    k: usize,
    with_ic: usize,
    cfg: &SolverConfig,
    budgets: &SolverBudgets,
    domain: Option<&Domain>,
    seed: u64,
) -> Result<MicroscopePlot> {
    let result = solve(e, k, cfg, derive_seed(seed, 1), budgets, domain)?;

    let mut votes: Vec<(Ranking, bool)> = e
        .votes()
        .iter()
        .map(|(v, _)| (v.clone(), false))
        .collect();
    if with_ic > 0 {
        let spec = CultureSpec {
            kind: CultureKind::IcFull,
            seed: derive_seed(seed, 2),
        };
        let ic = sample_election(&spec, e.m(), with_ic, SampleContext::None)?;
        votes.extend(ic.votes().iter().map(|(v, _)| (v.clone(), true)));
    }
    // centers not present among the plotted votes are embedded as extra
    // points so their stars have coordinates
    let mut center_idx: Vec<usize> = Vec::with_capacity(result.centers.len());
    for c in &result.centers {
        match votes.iter().position(|(v, ic)| !ic && v == c) {
            Some(i) => center_idx.push(i),
            None => {
                votes.push((c.clone(), false));
                center_idx.push(votes.len() - 1);
            }
        }
    }

    let n = votes.len();
    let dist: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| swap_distance(&votes[i].0, &votes[j].0).unwrap() as f64)
                .collect()
        })
        .collect();
    let (coords, stress) = embed_mds(&dist, derive_seed(seed, 3))?;

    let points: Vec<PlotPoint> = votes
        .iter()
        .enumerate()
        .map(|(i, (v, is_ic))| {
            let color = if *is_ic {
                None
            } else {
                let (best, _) = result
                    .centers
                    .iter()
                    .enumerate()
                    .map(|(ci, c)| (ci, swap_distance(v, c).unwrap()))
                    .min_by_key(|&(ci, d)| (d, ci))
                    .unwrap();
                Some(best)
            };
            PlotPoint {
                vote: v.clone(),
                x: coords[i][0],
                y: coords[i][1],
                color,
                is_center: center_idx.contains(&i),
                is_ic: *is_ic,
            }
        })
        .collect();
    Ok(MicroscopePlot {
        points,
        stress,
        k,
        score: result.score,
    })
}

impl MicroscopePlot {
    /// CSV with one row per point: `vote_id,x,y,color,is_center,is_ic`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("vote_id,x,y,color,is_center,is_ic\n");
        for (i, p) in self.points.iter().enumerate() {
            let color = p.color.map(|c| c.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{i},{:.6},{:.6},{color},{},{}\n",
                p.x, p.y, p.is_center as u8, p.is_ic as u8
            ));
        }
        out
    }

    /// SVG 1.1 scatter: gray IC dots under colored domain votes, centers
    /// drawn as stars.
    pub fn to_svg(&self) -> String {
        use theme::*;
        let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &self.points {
            min_x = min_x.min(p.x);
            max_x = max_x.max(p.x);
            min_y = min_y.min(p.y);
            max_y = max_y.max(p.y);
        }
        let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
        let scale = (WIDTH - 2.0 * MARGIN) / span;
        let sx = |x: f64| MARGIN + (x - min_x) * scale;
        let sy = |y: f64| MARGIN + (y - min_y) * scale;

        let mut svg = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{W}\" height=\"{W}\" viewBox=\"0 0 {W} {W}\">\n",
            W = WIDTH
        );
        svg.push_str(&format!(
            "<rect width=\"{W}\" height=\"{W}\" fill=\"white\"/>\n",
            W = WIDTH
        ));
        // IC filler first, then colored votes, then stars on top
        for p in self.points.iter().filter(|p| p.is_ic) {
            svg.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{IC_DOT_RADIUS}\" fill=\"{IC_COLOR}\"/>\n",
                sx(p.x),
                sy(p.y)
            ));
        }
        for p in self.points.iter().filter(|p| !p.is_ic) {
            let color = PALETTE[p.color.unwrap_or(0) % PALETTE.len()];
            svg.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{DOT_RADIUS}\" fill=\"{color}\"/>\n",
                sx(p.x),
                sy(p.y)
            ));
        }
        for p in self.points.iter().filter(|p| p.is_center) {
            svg.push_str(&star_path(sx(p.x), sy(p.y), STAR_RADIUS, STAR_COLOR));
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn star_path(cx: f64, cy: f64, r: f64, color: &str) -> String {
    // five-pointed star polygon
    let mut pts = String::new();
    for i in 0..10 {
        let angle = std::f64::consts::PI * (i as f64 / 5.0) - std::f64::consts::FRAC_PI_2;
        let radius = if i % 2 == 0 { r } else { r * 0.45 };
        let x = cx + radius * angle.cos();
        let y = cy + radius * angle.sin();
        if i > 0 {
            pts.push(' ');
        }
        pts.push_str(&format!("{x:.2},{y:.2}"));
    }
    format!("<polygon points=\"{pts}\" fill=\"{color}\"/>\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DomainKind;

    #[test]
    fn two_points_embed_exactly() {
        let d = vec![vec![0.0, 3.0], vec![3.0, 0.0]];
        let (coords, stress) = embed_mds(&d, 1).unwrap();
        let got = dist2(&coords[0], &coords[1]);
        assert!((got - 3.0).abs() < 1e-6);
        assert!(stress < 1e-6);
    }

    #[test]
    fn metric_triangle_embeds_with_negligible_stress() {
        let d = vec![
            vec![0.0, 2.0, 3.0],
            vec![2.0, 0.0, 2.5],
            vec![3.0, 2.5, 0.0],
        ];
        let (_, stress) = embed_mds(&d, 7).unwrap();
        assert!(stress < 1e-6, "stress {stress}");
    }

    #[test]
    fn rejects_asymmetric_input() {
        let d = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(embed_mds(&d, 0).is_err());
    }

    #[test]
    fn embedding_is_seed_deterministic() {
        let d = vec![
            vec![0.0, 2.0, 4.0],
            vec![2.0, 0.0, 2.0],
            vec![4.0, 2.0, 0.0],
        ];
        let (a, _) = embed_mds(&d, 5).unwrap();
        let (b, _) = embed_mds(&d, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn microscope_colors_match_nearest_centers() {
        let dom = DomainKind::Sp.build(5, 0).unwrap();
        let e = dom.to_election().unwrap();
        let plot = render_microscope(
            &e,
            3,
            32,
            &SolverConfig::Heuristic {
                restarts: 4,
                extra_ic: 0,
            },
            &SolverBudgets::default(),
            Some(&dom),
            11,
        )
        .unwrap();
        let centers: Vec<&Ranking> = plot
            .points
            .iter()
            .filter(|p| p.is_center)
            .map(|p| &p.vote)
            .collect();
        assert!(!centers.is_empty() && centers.len() <= 3);
        for p in plot.points.iter().filter(|p| !p.is_ic) {
            let d_own = swap_distance(&p.vote, centers[p.color.unwrap()]).unwrap();
            for c in &centers {
                assert!(swap_distance(&p.vote, c).unwrap() >= d_own);
            }
        }
        // IC fillers are gray and never colored
        assert!(plot.points.iter().filter(|p| p.is_ic).all(|p| p.color.is_none()));
        let csv = plot.to_csv();
        assert!(csv.starts_with("vote_id,x,y,color,is_center,is_ic\n"));
        assert_eq!(csv.lines().count(), plot.points.len() + 1);
        let svg = plot.to_svg();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polygon"));
    }

    #[test]
    fn csv_output_is_byte_stable() {
        let dom = DomainKind::GsCaterpillar.build(4, 0).unwrap();
        let e = dom.to_election().unwrap();
        let cfg = SolverConfig::Heuristic {
            restarts: 2,
            extra_ic: 0,
        };
        let b = SolverBudgets::default();
        let a = render_microscope(&e, 2, 16, &cfg, &b, Some(&dom), 3).unwrap();
        let c = render_microscope(&e, 2, 16, &cfg, &b, Some(&dom), 3).unwrap();
        assert_eq!(a.to_csv(), c.to_csv());
        assert_eq!(a.to_svg(), c.to_svg());
    }
}
