//! Candidate-pair experiments: the quadratic lower-bound instance for fat
//! rectangles, an exact order-k L-infinity Delaunay edge test, and a
//! sampling survey of closest pairs over square queries.
//!
//! A pair (p, q) is a candidate pair for a family of regions if it is the
//! closest pair of R ∩ S for some region R in the family. Two points near
//! opposite ends of a circle diameter form a candidate pair for mildly fat
//! rectangles, which yields (n/2)^2 candidate pairs from two clusters of
//! n/2 points. For squares, every candidate pair is an edge of the order-2
//! L-infinity Delaunay graph and the count is linear; the survey checks the
//! containment exactly and the count as a report-only slope fit.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{normalize_pair, Point, Rect};
use crate::index::query_brute;

#[derive(Clone, Debug, PartialEq)]
pub enum AnalysisError {
    BadParams(String),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::BadParams(msg) => write!(f, "bad parameters: {msg}"),
        }
    }
}

impl std::error::Error for AnalysisError {}

/// A verified candidate pair: the corner rectangle of (p, q) has aspect
/// ratio at most f and (p, q) is the closest pair inside it.
#[derive(Clone, Debug)]
pub struct CandidatePairWitness {
    pub pair: (Point, Point),
    pub rect: Rect,
    pub f: f64,
}

/// Two clusters of n/2 points each on the unit circle, within `arc`
/// radians of (√2/2, √2/2) and its antipode. The first n/2 output points
/// are the cluster near the positive diagonal. Every cross pair is a
/// candidate pair for aspect ratios as small as 1 + O(arc).
pub fn gen_lower_bound_instance(
    n: usize,
    arc: f64,
    seed: u64,
) -> Result<Vec<Point>, AnalysisError> {
    if n < 4 || n % 2 != 0 {
        return Err(AnalysisError::BadParams(format!(
            "n must be an even integer >= 4, got {n}"
        )));
    }
    if !(arc > 0.0 && arc <= 1e-2) {
        return Err(AnalysisError::BadParams(format!(
            "arc must satisfy 0 < arc <= 1e-2, got {arc}"
        )));
    }
    let half = n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = |i: usize, scale: f64| -> f64 {
        (-arc + 2.0 * arc * (i as f64 + 0.5) / half as f64) * scale
    };
    let mut offsets_a: Vec<f64> = (0..half).map(|i| spread(i, 1.0)).collect();
    // The second cluster uses a slightly compressed spread so the two
    // clusters never produce mirrored coordinate collisions.
    let mut offsets_b: Vec<f64> = (0..half).map(|i| spread(i, 0.875)).collect();
    let base_a = std::f64::consts::FRAC_PI_4;
    let base_b = base_a + std::f64::consts::PI;
    for _ in 0..100 {
        let points: Vec<Point> = offsets_a
            .iter()
            .map(|&t| Point::new((base_a + t).cos(), (base_a + t).sin()))
            .chain(
                offsets_b
                    .iter()
                    .map(|&t| Point::new((base_b + t).cos(), (base_b + t).sin())),
            )
            .collect();
        match crate::geom::validate_general_position(&points) {
            Ok(()) => return Ok(points),
            Err(_) => {
                // deterministic re-jitter of every angle from the seed
                for t in offsets_a.iter_mut().chain(offsets_b.iter_mut()) {
                    *t *= 1.0 - rng.gen::<f64>() * 1e-3;
                }
            }
        }
    }
    Err(AnalysisError::BadParams(
        "could not reach distinct coordinates after re-jittering".into(),
    ))
}

/// Checks whether (p, q) is a candidate pair witnessed by its own corner
/// rectangle: the rectangle spanned by p and q has aspect ratio at most f
/// and (p, q) is the closest pair of the points inside it. Returns the
/// witness, or None (also when the axis offsets are degenerate and no
/// corner rectangle exists).
pub fn is_candidate_witness(
    p: Point,
    q: Point,
    points: &[Point],
    f: f64,
) -> Option<CandidatePairWitness> {
    let rect = Rect::new(
        p.x.min(q.x),
        p.x.max(q.x),
        p.y.min(q.y),
        p.y.max(q.y),
    )
    .ok()?;
    if rect.aspect_ratio() > f {
        return None;
    }
    let pr = query_brute(points, &rect);
    if pr.pair == Some(normalize_pair(p, q)) {
        Some(CandidatePairWitness {
            pair: normalize_pair(p, q),
            rect,
            f,
        })
    } else {
        None
    }
}

// --- exact order-k L-infinity Delaunay edge test ---------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

const SIDES: [Side; 4] = [Side::Left, Side::Right, Side::Bottom, Side::Top];

/// An affine function c + m*t of the free parameter.
#[derive(Clone, Copy)]
struct Affine {
    c: f64,
    m: f64,
}

impl Affine {
    fn konst(c: f64) -> Affine {
        Affine { c, m: 0.0 }
    }

    #[inline]
    fn at(self, t: f64) -> f64 {
        self.c + self.m * t
    }

    /// Solutions of self(t) = v.
    fn solve(self, v: f64) -> Option<f64> {
        if self.m == 0.0 {
            None
        } else {
            Some((v - self.c) / self.m)
        }
    }
}

/// The square family of one side assignment: X(t), Y(t), s(t).
struct Family {
    x: Affine,
    y: Affine,
    s: Affine,
}

/// True iff some square of the family, evaluated over the critical values
/// of `t` plus midpoints, has p and q on their assigned sides and at most
/// k points of S strictly inside.
fn family_admits_witness(
    fam: &Family,
    p: Point,
    sp: Side,
    q: Point,
    sq: Side,
    points: &[Point],
    k: usize,
) -> bool {
    // Critical t values: any point of S ∪ {p, q} crossing any square side,
    // plus the degeneracy s = 0.
    let mut crit: Vec<f64> = Vec::new();
    let x_plus_s = Affine {
        c: fam.x.c + fam.s.c,
        m: fam.x.m + fam.s.m,
    };
    let y_plus_s = Affine {
        c: fam.y.c + fam.s.c,
        m: fam.y.m + fam.s.m,
    };
    let mut push = |v: Option<f64>| {
        if let Some(t) = v {
            if t.is_finite() {
                crit.push(t);
            }
        }
    };
    for r in points.iter().chain([p, q].iter()) {
        push(fam.x.solve(r.x));
        push(x_plus_s.solve(r.x));
        push(fam.y.solve(r.y));
        push(y_plus_s.solve(r.y));
    }
    push(fam.s.solve(0.0));
    crit.sort_by(f64::total_cmp);
    crit.dedup();

    let mut candidates: Vec<f64> = Vec::with_capacity(2 * crit.len() + 2);
    if crit.is_empty() {
        candidates.push(0.0);
        candidates.push(1.0);
    } else {
        candidates.push(crit[0] - 1.0);
        for w in crit.windows(2) {
            candidates.push(w[0]);
            candidates.push((w[0] + w[1]) / 2.0);
        }
        candidates.push(*crit.last().unwrap());
        candidates.push(crit.last().unwrap() + 1.0);
    }

    candidates
        .iter()
        .any(|&t| square_admits(fam, t, p, sp, q, sq, points, k))
}

/// Evaluates the family at `t` and checks the witness predicate: valid
/// square, p and q on their assigned sides, at most k points strictly
/// inside. The assigned-side coordinate holds by construction, so only the
/// cross axis of each point is checked.
fn square_admits(
    fam: &Family,
    t: f64,
    p: Point,
    sp: Side,
    q: Point,
    sq: Side,
    points: &[Point],
    k: usize,
) -> bool {
    let (x, y, s) = (fam.x.at(t), fam.y.at(t), fam.s.at(t));
    if !(s > 0.0 && s.is_finite() && x.is_finite() && y.is_finite()) {
        return false;
    }
    let on_cross_axis = |pt: Point, side: Side| -> bool {
        match side {
            Side::Left | Side::Right => y <= pt.y && pt.y <= y + s,
            Side::Bottom | Side::Top => x <= pt.x && pt.x <= x + s,
        }
    };
    if !on_cross_axis(p, sp) || !on_cross_axis(q, sq) {
        return false;
    }
    let interior = points
        .iter()
        .filter(|&&r| r != p && r != q && x < r.x && r.x < x + s && y < r.y && r.y < y + s)
        .count();
    interior <= k
}

/// The square family of a non-same-side assignment, or None when the
/// assignment is infeasible (s would be nonpositive) or degenerate (same
/// side; handled separately).
fn one_param_family(p: Point, sp: Side, q: Point, sq: Side) -> Option<Family> {
    let free_s = |x: Affine, y: Affine| Family {
        x,
        y,
        s: Affine { c: 0.0, m: 1.0 },
    };
    let pinned = |v: f64, minus_s: bool| Affine {
        c: v,
        m: if minus_s { -1.0 } else { 0.0 },
    };
    let fam = match (sp, sq) {
        // one X-type and one Y-type constraint: s is free
        (Side::Left, Side::Bottom) => free_s(pinned(p.x, false), pinned(q.y, false)),
        (Side::Left, Side::Top) => free_s(pinned(p.x, false), pinned(q.y, true)),
        (Side::Right, Side::Bottom) => free_s(pinned(p.x, true), pinned(q.y, false)),
        (Side::Right, Side::Top) => free_s(pinned(p.x, true), pinned(q.y, true)),
        (Side::Bottom, Side::Left) => free_s(pinned(q.x, false), pinned(p.y, false)),
        (Side::Bottom, Side::Right) => free_s(pinned(q.x, true), pinned(p.y, false)),
        (Side::Top, Side::Left) => free_s(pinned(q.x, false), pinned(p.y, true)),
        (Side::Top, Side::Right) => free_s(pinned(q.x, true), pinned(p.y, true)),
        // opposite sides of the same axis: s is determined, the other
        // coordinate is free
        (Side::Left, Side::Right) | (Side::Right, Side::Left) => {
            let (x, s) = if sp == Side::Left {
                (p.x, q.x - p.x)
            } else {
                (q.x, p.x - q.x)
            };
            if !(s > 0.0) {
                return None;
            }
            Family {
                x: Affine::konst(x),
                y: Affine { c: 0.0, m: 1.0 },
                s: Affine::konst(s),
            }
        }
        (Side::Bottom, Side::Top) | (Side::Top, Side::Bottom) => {
            let (y, s) = if sp == Side::Bottom {
                (p.y, q.y - p.y)
            } else {
                (q.y, p.y - q.y)
            };
            if !(s > 0.0) {
                return None;
            }
            Family {
                x: Affine { c: 0.0, m: 1.0 },
                y: Affine::konst(y),
                s: Affine::konst(s),
            }
        }
        _ => return None,
    };
    Some(fam)
}

/// Exact membership of (p, q) in the order-k L-infinity Delaunay graph:
/// some axis-parallel square has p and q on its boundary and at most k
/// points of S strictly inside. Decided by enumerating the 16 side
/// assignments for p and q; each leaves one free parameter, swept over its
/// critical values. Same-side assignments (which require a shared
/// coordinate) fall back to a nested sweep.
pub fn del_square_edge(p: Point, q: Point, points: &[Point], k: usize) -> bool {
    if p == q {
        return false;
    }
    for sp in SIDES {
        for sq in SIDES {
            let found = match (sp, sq) {
                // same side: only possible with a shared coordinate
                (Side::Left, Side::Left) => same_side_x(p, sp, q, points, k, false),
                (Side::Right, Side::Right) => same_side_x(p, sp, q, points, k, true),
                (Side::Bottom, Side::Bottom) => same_side_y(p, sp, q, points, k, false),
                (Side::Top, Side::Top) => same_side_y(p, sp, q, points, k, true),
                _ => match one_param_family(p, sp, q, sq) {
                    Some(fam) => family_admits_witness(&fam, p, sp, q, sq, points, k),
                    None => false,
                },
            };
            if found {
                return true;
            }
        }
    }
    false
}

/// Both on the left (or right) side: requires p.x == q.x. The family has
/// two free parameters; sweep s over the pairwise y differences and their
/// midpoints, then sweep Y within each.
fn same_side_x(p: Point, sp: Side, q: Point, points: &[Point], k: usize, right: bool) -> bool {
    if p.x != q.x {
        return false;
    }
    for s in two_param_sides(points, p, q, |r| r.y) {
        let x = if right { p.x - s } else { p.x };
        let fam = Family {
            x: Affine::konst(x),
            y: Affine { c: 0.0, m: 1.0 },
            s: Affine::konst(s),
        };
        if family_admits_witness(&fam, p, sp, q, sp, points, k) {
            return true;
        }
    }
    false
}

fn same_side_y(p: Point, sp: Side, q: Point, points: &[Point], k: usize, top: bool) -> bool {
    if p.y != q.y {
        return false;
    }
    for s in two_param_sides(points, p, q, |r| r.x) {
        let y = if top { p.y - s } else { p.y };
        let fam = Family {
            x: Affine { c: 0.0, m: 1.0 },
            y: Affine::konst(y),
            s: Affine::konst(s),
        };
        if family_admits_witness(&fam, p, sp, q, sp, points, k) {
            return true;
        }
    }
    false
}

fn two_param_sides(points: &[Point], p: Point, q: Point, coord: impl Fn(&Point) -> f64) -> Vec<f64> {
    let mut vals: Vec<f64> = points.iter().chain([p, q].iter()).map(&coord).collect();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    let mut sides = Vec::new();
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            sides.push(vals[j] - vals[i]);
        }
    }
    sides.sort_by(f64::total_cmp);
    sides.dedup();
    let mut out = Vec::with_capacity(2 * sides.len());
    for w in sides.windows(2) {
        out.push(w[0]);
        out.push((w[0] + w[1]) / 2.0);
    }
    if let Some(&last) = sides.last() {
        out.push(last);
        out.push(last + 1.0);
    }
    out.retain(|&s| s > 0.0);
    out
}

// --- square-query candidate survey -----------------------------------------

/// Outcome of a square-candidate survey.
#[derive(Clone, Debug)]
pub struct SurveyResult {
    /// Distinct closest pairs discovered, lexicographically normalized and
    /// sorted.
    pub pairs: Vec<(Point, Point)>,
    /// Number of square queries issued.
    pub squares: usize,
}

fn pair_key(p: Point, q: Point) -> (u64, u64, u64, u64) {
    (p.x.to_bits(), p.y.to_bits(), q.x.to_bits(), q.y.to_bits())
}

/// Samples closest pairs over a family of axis-parallel squares: for each
/// point, tight squares spanned with each of its six nearest neighbors
/// (anchored low, high, and centered), plus `trials` random squares with
/// log-uniform side lengths. A sampler, not an enumerator: it discovers
/// candidate pairs, it cannot prove their absence.
pub fn square_candidate_survey(points: &[Point], trials: usize, seed: u64) -> SurveyResult {
    let mut found: BTreeSet<(u64, u64, u64, u64)> = BTreeSet::new();
    let mut pairs: Vec<(Point, Point)> = Vec::new();
    let mut squares = 0usize;
    let mut try_square = |rect: &Rect, pairs: &mut Vec<(Point, Point)>| {
        squares += 1;
        if let Some((a, b)) = query_brute(points, rect).pair {
            let key = pair_key(a, b);
            if found.insert(key) {
                pairs.push((a, b));
            }
        }
    };

    // structured family over near pairs
    let neighbors = 6.min(points.len().saturating_sub(1));
    for (i, &u) in points.iter().enumerate() {
        let mut near: Vec<(f64, usize)> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(j, &v)| (u.dist_sq(v), j))
            .collect();
        near.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(_, j) in near.iter().take(neighbors) {
            let v = points[j];
            let s = (u.x - v.x).abs().max((u.y - v.y).abs());
            if s == 0.0 {
                continue;
            }
            let (lox, loy) = (u.x.min(v.x), u.y.min(v.y));
            let (hix, hiy) = (u.x.max(v.x), u.y.max(v.y));
            let cands = [
                Rect::new(lox, lox + s, loy, loy + s),
                Rect::new(hix - s, hix, hiy - s, hiy),
                Rect::new(
                    (lox + hix - s) / 2.0,
                    (lox + hix + s) / 2.0,
                    (loy + hiy - s) / 2.0,
                    (loy + hiy + s) / 2.0,
                ),
            ];
            for rect in cands.into_iter().flatten() {
                try_square(&rect, &mut pairs);
            }
        }
    }

    // random squares
    if !points.is_empty() && trials > 0 {
        let (mut xlo, mut xhi, mut ylo, mut yhi) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for p in points {
            xlo = xlo.min(p.x);
            xhi = xhi.max(p.x);
            ylo = ylo.min(p.y);
            yhi = yhi.max(p.y);
        }
        let span = (xhi - xlo).max(yhi - ylo).max(1e-9);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let s = span * 10f64.powf(-2.5 * rng.gen::<f64>());
            let cx = xlo + rng.gen::<f64>() * (xhi - xlo).max(1e-9);
            let cy = ylo + rng.gen::<f64>() * (yhi - ylo).max(1e-9);
            if let Ok(rect) = Rect::new(cx - s / 2.0, cx + s / 2.0, cy - s / 2.0, cy + s / 2.0) {
                try_square(&rect, &mut pairs);
            }
        }
    }

    pairs.sort_by(|a, b| {
        a.0.lex_cmp(b.0)
            .then_with(|| a.1.lex_cmp(b.1))
    });
    SurveyResult { pairs, squares }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lower_bound_instance_shape() {
        let pts = gen_lower_bound_instance(4, 1e-3, 0).unwrap();
        assert_eq!(pts.len(), 4);
        for p in &pts {
            let r = (p.x * p.x + p.y * p.y).sqrt();
            assert!((r - 1.0).abs() < 1e-12, "off circle: {r}");
        }
        // two near the positive diagonal, two near the antipode
        assert!(pts[0].x > 0.5 && pts[1].x > 0.5);
        assert!(pts[2].x < -0.5 && pts[3].x < -0.5);
        assert!(gen_lower_bound_instance(2, 1e-3, 0).is_err());
        assert!(gen_lower_bound_instance(5, 1e-3, 0).is_err());
        assert!(gen_lower_bound_instance(8, 0.5, 0).is_err());
    }

    #[test]
    fn all_cross_pairs_are_candidates() {
        let n = 64;
        let pts = gen_lower_bound_instance(n, 1e-3, 0).unwrap();
        let mut verified = 0;
        for i in 0..n / 2 {
            for j in n / 2..n {
                let w = is_candidate_witness(pts[i], pts[j], &pts, 1.1);
                assert!(w.is_some(), "cross pair ({i},{j}) not a candidate");
                verified += 1;
            }
        }
        assert_eq!(verified, (n / 2) * (n / 2));
    }

    #[test]
    fn witness_basics() {
        let p = Point::new(0.0, 0.0);
        let q = Point::new(1.0, 1.05);
        assert!(is_candidate_witness(p, q, &[p, q], 1.1).is_some());
        // an interior point closer to both kills the witness
        let mid = Point::new(0.5, 0.5);
        assert!(is_candidate_witness(p, Point::new(1.0, 1.0), &[p, Point::new(1.0, 1.0), mid], 1.1).is_none());
        // degenerate: shared coordinate, no corner rectangle
        assert!(is_candidate_witness(p, Point::new(0.0, 1.0), &[p], 2.0).is_none());
    }

    #[test]
    fn del_edge_two_points() {
        let p = Point::new(0.0, 0.0);
        let q = Point::new(2.0, 1.0);
        assert!(del_square_edge(p, q, &[p, q], 0));
    }

    #[test]
    fn del_edge_diagonal_blocker() {
        let p = Point::new(0.0, 0.0);
        let q = Point::new(2.0, 2.0);
        let r = Point::new(1.0, 1.0);
        let s = [p, q, r];
        // every square with p and q on its boundary has r strictly inside
        assert!(!del_square_edge(p, q, &s, 0));
        assert!(del_square_edge(p, q, &s, 1));
    }

    #[test]
    fn del_edge_shared_coordinate_cases() {
        let p = Point::new(0.0, 0.0);
        let q = Point::new(0.0, 1.0);
        let s = [p, q];
        assert!(del_square_edge(p, q, &s, 0));
        let blockers = [
            p,
            q,
            Point::new(0.5, 0.25),
            Point::new(0.5, 0.75),
            Point::new(-0.5, 0.25),
            Point::new(-0.5, 0.75),
        ];
        // both sides of the segment are walled off by two points each
        assert!(!del_square_edge(p, q, &blockers, 1));
        assert!(del_square_edge(p, q, &blockers, 2));
    }

    /// Dense-sweep oracle: the same side assignments and square families as
    /// the exact test, but the free parameter runs over a fine uniform grid
    /// instead of the critical values.
    fn del_square_edge_sweep(p: Point, q: Point, points: &[Point], k: usize, steps: usize) -> bool {
        let mut coords: Vec<f64> = points
            .iter()
            .chain([p, q].iter())
            .flat_map(|r| [r.x, r.y])
            .collect();
        coords.sort_by(f64::total_cmp);
        let span = (coords.last().unwrap() - coords.first().unwrap()).max(1.0);
        let lo = coords.first().unwrap() - span;
        let hi = coords.last().unwrap() + span;
        for sp in SIDES {
            for sq in SIDES {
                let fam = match one_param_family(p, sp, q, sq) {
                    Some(fam) => fam,
                    None => continue,
                };
                for i in 0..=steps {
                    let t = lo + (hi - lo) * i as f64 / steps as f64;
                    if square_admits(&fam, t, p, sp, q, sq, points, k) {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn del_edge_agrees_with_dense_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for round in 0..4 {
            let pts: Vec<Point> = (0..20)
                .map(|_| Point::new(rng.gen::<f64>() * 10.0, rng.gen::<f64>() * 10.0))
                .collect();
            for k in [0usize, 1, 2] {
                for i in 0..pts.len() {
                    for j in i + 1..pts.len() {
                        let exact = del_square_edge(pts[i], pts[j], &pts, k);
                        let sweep = del_square_edge_sweep(pts[i], pts[j], &pts, k, 2000);
                        assert_eq!(
                            exact, sweep,
                            "round {round} k {k} pair ({i},{j}): exact {exact} sweep {sweep}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn survey_two_points() {
        let pts = [Point::new(0.0, 0.0), Point::new(3.0, 1.0)];
        let sr = square_candidate_survey(&pts, 16, 0);
        assert_eq!(sr.pairs.len(), 1);
    }

    #[test]
    fn survey_pairs_are_del2_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<Point> = (0..128)
            .map(|_| Point::new(rng.gen::<f64>() * 100.0, rng.gen::<f64>() * 100.0))
            .collect();
        let sr = square_candidate_survey(&pts, 200, 7);
        assert!(!sr.pairs.is_empty());
        for &(a, b) in &sr.pairs {
            assert!(del_square_edge(a, b, &pts, 2), "pair {a} {b} not a Del2 edge");
        }
    }
}
