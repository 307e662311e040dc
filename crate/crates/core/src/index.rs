//! The assembled range closest-pair index and its query algorithm.
//!
//! The index holds a report/count range tree over the points, the
//! four-orientation anchored-square structure (c = 5), and four min-weight
//! range trees over the Yao weighted sets S_1..S_4. A query runs in five
//! steps: (1) if the rectangle holds at most 4*ceil(4f) points, report them
//! and run the plain closest-pair algorithm; otherwise (2) query the four
//! anchored squares at the rectangle corners and clamp the smallest side to
//! delta <= l/2, (3) take the minimum Yao edge weight below delta over each
//! shrunken rectangle B_k, (4) brute-force the at most c points in each
//! corner square C_k, and (5) return the best witness pair found.

use crate::anchored::{AnchoredSquares, CornerOrientation};
use crate::closest_pair::{closest_pair_brute, closest_pair_fast, PairResult};
use crate::geom::{
    compute_regions, normalize_pair, packing_threshold, pair_cmp, validate_general_position,
    InputError, Point, Rect,
};
use crate::rmq::RmqKind;
use crate::tree::{RangeTree, TreeConfig};
use crate::yao::{SkEntry, YaoGraph};

/// Build configuration of the index.
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Anchored-square occupancy constant. Must be at least 5: the packing
    /// argument that bounds the closest-pair distance by the smallest
    /// anchored square side needs five points in a square.
    pub c: usize,
    /// Fractional cascading on canonical arrays (default); the fallback
    /// searches each canonical node separately.
    pub cascading: bool,
    pub rmq: RmqKind,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            c: 5,
            cascading: true,
            rmq: RmqKind::FischerHeun,
        }
    }
}

/// Which query step produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryPath {
    /// Step 1: few points, reported and solved directly.
    SmallCount,
    /// Step 3: minimum Yao edge weight over B_k, for this k.
    MinWeight { k: usize },
    /// Step 4: brute force over corner square C_k, for this k.
    CornerPair { k: usize },
}

impl QueryPath {
    /// Short label for CLI output.
    pub fn label(self) -> &'static str {
        match self {
            QueryPath::SmallCount => "S1",
            QueryPath::MinWeight { .. } => "S3",
            QueryPath::CornerPair { .. } => "S4",
        }
    }
}

/// Outcome of a range closest-pair query, with diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct QueryOutcome {
    /// The closest pair in R ∩ S, lexicographically normalized; absent
    /// when the rectangle holds fewer than two points.
    pub pair: Option<(Point, Point)>,
    /// Its distance, +inf when `pair` is absent.
    pub dist: f64,
    pub path: QueryPath,
    /// The delta of Step 2; absent on the Step-1 path.
    pub delta: Option<f64>,
    /// |R ∩ S| from Step 1.
    pub count: usize,
}

impl QueryOutcome {
    pub fn as_pair_result(&self) -> PairResult {
        PairResult {
            pair: self.pair,
            dist: self.dist,
        }
    }
}

/// Step 1-2 internals, exposed for property tests and benchmarks.
#[derive(Clone, Copy, Debug)]
pub struct DeltaDiagnostics {
    pub count: usize,
    /// Smallest of the four anchored square sides; absent on the Step-1
    /// path.
    pub ell_prime: Option<f64>,
    /// min(ell_prime, l/2); absent on the Step-1 path.
    pub delta: Option<f64>,
}

struct MwLane {
    tree: RangeTree,
    sk: Vec<SkEntry>,
}

/// The range closest-pair index. Immutable after build; queries are
/// read-only and safe to issue concurrently.
pub struct RcpIndex {
    points: Vec<Point>,
    report: RangeTree,
    anchors: AnchoredSquares,
    mw: [MwLane; 4],
    opts: BuildOptions,
}

impl RcpIndex {
    pub fn build(points: &[Point]) -> Result<RcpIndex, InputError> {
        Self::build_with(points, BuildOptions::default())
    }

    pub fn build_with(points: &[Point], opts: BuildOptions) -> Result<RcpIndex, InputError> {
        assert!(opts.c >= 5, "the query algorithm requires c >= 5");
        validate_general_position(points)?;
        let cfg = TreeConfig {
            cascading: opts.cascading,
            ..Default::default()
        };
        let report = RangeTree::build(points, cfg)?;
        let anchors = AnchoredSquares::build(points, opts.c, cfg)?;
        let yao = YaoGraph::build(points)?;
        let sets = yao.weighted_sets();
        let mut lanes = Vec::with_capacity(4);
        for sk in sets {
            let pts: Vec<Point> = sk.iter().map(|e| e.source).collect();
            let weights: Vec<f64> = sk.iter().map(|e| e.weight).collect();
            let tree = RangeTree::build_weighted(&pts, &weights, opts.rmq, cfg)?;
            lanes.push(MwLane { tree, sk });
        }
        let mw: [MwLane; 4] = match lanes.try_into() {
            Ok(a) => a,
            Err(_) => unreachable!(),
        };
        Ok(RcpIndex {
            points: points.to_vec(),
            report,
            anchors,
            mw,
            opts,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn options(&self) -> &BuildOptions {
        &self.opts
    }

    /// Anchored-square sides at the four rectangle corners, growing inward.
    fn corner_sides(&self, r: &Rect) -> [f64; 4] {
        let [bl, br, tr, tl] = r.corners();
        [
            self.anchors.query(bl, CornerOrientation::NE).side,
            self.anchors.query(br, CornerOrientation::NW).side,
            self.anchors.query(tr, CornerOrientation::SW).side,
            self.anchors.query(tl, CornerOrientation::SE).side,
        ]
    }

    /// Steps 1-2 only: the count, the smallest anchored square side, and
    /// the clamped delta.
    pub fn query_delta(&self, r: &Rect) -> DeltaDiagnostics {
        let count = self.report.count(r);
        if count as u64 <= packing_threshold(r.aspect_ratio()) {
            return DeltaDiagnostics {
                count,
                ell_prime: None,
                delta: None,
            };
        }
        let ell_prime = self
            .corner_sides(r)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let half = r.shortest_side() / 2.0;
        let delta = if ell_prime > half { half } else { ell_prime };
        DeltaDiagnostics {
            count,
            ell_prime: Some(ell_prime),
            delta: Some(delta),
        }
    }

    /// The closest pair in R ∩ S with the lexicographic tie rule.
    pub fn query(&self, r: &Rect) -> QueryOutcome {
        // Step 1: count, and solve directly when the rectangle is sparse.
        let count = self.report.count(r);
        if count as u64 <= packing_threshold(r.aspect_ratio()) {
            let pts = self.report.report(r);
            debug_assert_eq!(pts.len(), count);
            let pr = closest_pair_fast(&pts);
            return QueryOutcome {
                pair: pr.pair,
                dist: pr.dist,
                path: QueryPath::SmallCount,
                delta: None,
                count,
            };
        }

        // Step 2: anchored squares at the corners fix delta <= l/2.
        let ell_prime = self
            .corner_sides(r)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let half = r.shortest_side() / 2.0;
        let delta = if ell_prime > half { half } else { ell_prime };
        let regions = compute_regions(r, delta).expect("step-2 delta is in range");

        // Step 3: minimum Yao edge weight below delta over each B_k.
        let mut best: Option<(f64, (Point, Point), QueryPath)> = None;
        let mut offer = |dist: f64, a: Point, b: Point, path: QueryPath| {
            let pair = normalize_pair(a, b);
            let better = match &best {
                None => true,
                Some((bd, bp, _)) => {
                    dist < *bd || (dist == *bd && pair_cmp(pair, *bp) == std::cmp::Ordering::Less)
                }
            };
            if better {
                best = Some((dist, pair, path));
            }
        };
        for k in 1..=4usize {
            let lane = &self.mw[k - 1];
            if let Some(mw) = lane.tree.min_weight(regions.b_rect(k)) {
                if mw.weight < delta {
                    let entry = &lane.sk[mw.input_index];
                    debug_assert_eq!(entry.source, mw.point);
                    debug_assert!(r.contains(entry.source) && r.contains(entry.target));
                    offer(
                        mw.weight,
                        entry.source,
                        entry.target,
                        QueryPath::MinWeight { k },
                    );
                }
            }
        }

        // Step 4: brute force inside each corner square (at most c points
        // each; more would contradict the minimality of the anchored
        // squares).
        for k in 1..=4usize {
            let pts = self.report.report(regions.c_square(k));
            assert!(
                pts.len() <= self.opts.c,
                "corner square C_{k} holds {} points, expected at most {}",
                pts.len(),
                self.opts.c
            );
            let pr = closest_pair_brute(&pts);
            if let Some((a, b)) = pr.pair {
                offer(pr.dist, a, b, QueryPath::CornerPair { k });
            }
        }

        // Step 5: the best witness is the answer.
        let (dist, pair, path) =
            best.expect("a rectangle beyond the packing threshold has a close pair");
        debug_assert!(r.contains(pair.0) && r.contains(pair.1));
        QueryOutcome {
            pair: Some(pair),
            dist,
            path,
            delta: Some(delta),
            count,
        }
    }

    /// Total stored elements across all sub-structures.
    pub fn stored_words(&self) -> usize {
        self.report.stored_words()
            + self.anchors.stored_words()
            + self
                .mw
                .iter()
                .map(|lane| lane.tree.stored_words() + lane.sk.len() * 6)
                .sum::<usize>()
    }
}

/// Brute-force oracle: linear filter plus quadratic closest pair. The
/// deterministic reference for every query the index answers.
pub fn query_brute(points: &[Point], r: &Rect) -> PairResult {
    let inside: Vec<Point> = points.iter().copied().filter(|&p| r.contains(p)).collect();
    closest_pair_brute(&inside)
}
