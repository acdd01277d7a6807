//! Enumeration of structured preference domains, exact and heuristic
//! k-Kemeny solvers, election sampling, and diversity analysis.
//!
//! The library is organized around a handful of building blocks:
//!
//! - [`elections`] — rankings, elections, swap distance, and the
//!   pairwise-majority machinery (weighted tournaments, Condorcet rankings).
//! - [`domains`] — exact enumerators for the single-peaked, group-separable,
//!   single-peaked-on-a-circle/tree, single-crossing, and d-Euclidean
//!   domains, plus closed-form size formulas and reverse-symmetric
//!   extensions.
//! - [`sampling`] — seeded statistical cultures (impartial culture, Walsh,
//!   Conitzer, caterpillar construction, r-Box, weighted chains).
//! - [`solvers`] — a 1-Kemeny bitmask DP, an O*(3^n) partition DP for
//!   clustering votes, an exact polynomial algorithm for single-crossing
//!   elections, a brute-force solver over enumerable Euclidean domains, and
//!   a restarted local-search heuristic.
//! - [`reductions`] — the Hypercube 2-Segmentation problem and instance
//!   generators that translate it into 2-Kemeny instances on structured
//!   domains, used as solver cross-checks.
//! - [`analysis`] — diversity vectors, dominance ranking, polarization,
//!   distance histograms, distinct-vote counting for box-sampled Euclidean
//!   elections, and heuristic-vs-exact evaluation grids.
//! - [`microscope`] — 2D stress-minimizing embeddings of vote sets under
//!   swap distance, with k-Kemeny coloring, rendered to SVG/CSV.
//!
//! All randomized components take explicit 64-bit seeds and use a fixed,
//! portable generator (ChaCha12), so every result is reproducible
//! bit-for-bit across platforms and thread counts.

pub mod analysis;
pub mod domains;
pub mod elections;
pub mod error;
pub mod microscope;
pub mod reductions;
pub mod rng;
pub mod sampling;
pub mod solvers;

pub use elections::{Election, Ranking, WeightedTournament};
pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
