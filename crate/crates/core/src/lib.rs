//! Range closest-pair queries over planar point sets.
//!
//! Builds an O(n log n)-size index over n points such that for any
//! axis-parallel query rectangle R, the closest pair of points inside R is
//! returned in O(log n + f log f) time, where f is the aspect ratio of R.
//! The crate also ships the building blocks (closest pair, range trees with
//! fractional cascading, range-minimum queries, anchored-square structures,
//! Yao graphs) and a desk-scale experiment kit for the candidate-pair
//! bounds, each cross-checked against brute-force oracles.

pub mod analysis;
pub mod anchored;
pub mod closest_pair;
pub mod datasets;
pub mod geom;
pub mod index;
pub mod rmq;
pub mod tree;
pub mod yao;

pub use closest_pair::{closest_pair_brute, closest_pair_fast, PairResult};
pub use geom::{
    compute_regions, packing_threshold, validate_general_position, InputError, Point, Quadrant,
    Rect, RegionSet,
};

