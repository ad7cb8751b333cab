//! Exact-arithmetic classification of special birational transformations
//! `P^r --> Z` whose base locus is a smooth curve, surface or threefold.
//!
//! The pipeline runs bottom-up:
//!
//! * [`numerology`] enumerates the admissible types `(n, r, a, b, i, m)`;
//! * [`chern`] turns invariants of the base locus into Segre classes and evaluates
//!   the fundamental expressions for `z`, `bz`, `b^2 z - e`;
//! * [`multisecant`] and [`fano`] supply the secant-line counts and the degree
//!   lists of the target;
//! * [`solver`] searches the bounded integer tuples and emits the maximal lists
//!   with a trace per row and per rejection;
//! * [`knowledge`] joins those lists with the curated verdicts and the stated
//!   ideal-sheaf resolutions;
//! * [`cli`] renders reports as markdown, JSON or CSV.

pub mod chern;
pub mod cli;
pub mod exact;
pub mod fano;
pub mod knowledge;
pub mod multisecant;
pub mod numerology;
pub mod solver;

pub use exact::Rat;
