//! Exact closest-pair computation: an O(m log m) divide-and-conquer and a
//! quadratic brute-force oracle with identical tie-breaking.

use crate::geom::{normalize_pair, pair_cmp, Point};

/// Result of a closest-pair computation. `dist` is +inf exactly when the
/// input holds at most one point; ties are resolved toward the
/// lexicographically smallest normalized pair.
#[derive(Clone, Copy, Debug)]
pub struct PairResult {
    pub pair: Option<(Point, Point)>,
    pub dist: f64,
}

impl PairResult {
    pub fn none() -> Self {
        PairResult {
            pair: None,
            dist: f64::INFINITY,
        }
    }

    pub fn is_some(&self) -> bool {
        self.pair.is_some()
    }
}

impl PartialEq for PairResult {
    fn eq(&self, other: &Self) -> bool {
        self.dist.to_bits() == other.dist.to_bits() && self.pair == other.pair
    }
}

/// Running best pair, compared by (squared distance, normalized pair).
#[derive(Clone, Copy)]
struct Best {
    d2: f64,
    pair: Option<(Point, Point)>,
}

impl Best {
    fn new() -> Self {
        Best {
            d2: f64::INFINITY,
            pair: None,
        }
    }

    #[inline]
    fn offer(&mut self, a: Point, b: Point) {
        let d2 = a.dist_sq(b);
        if d2 > self.d2 {
            return;
        }
        let cand = normalize_pair(a, b);
        if d2 < self.d2
            || self
                .pair
                .map_or(true, |cur| pair_cmp(cand, cur) == std::cmp::Ordering::Less)
        {
            self.d2 = d2;
            self.pair = Some(cand);
        }
    }

    fn into_result(self) -> PairResult {
        match self.pair {
            Some(pair) => PairResult {
                pair: Some(pair),
                dist: self.d2.sqrt(),
            },
            None => PairResult::none(),
        }
    }
}

/// All-pairs scan. Exact, order-independent, used as the oracle for the
/// divide-and-conquer variant and for the tiny point sets of the query
/// algorithm's corner step.
pub fn closest_pair_brute(points: &[Point]) -> PairResult {
    let mut best = Best::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best.offer(points[i], points[j]);
        }
    }
    best.into_result()
}

const BRUTE_CUTOFF: usize = 16;

/// Divide-and-conquer closest pair in O(m log m): pre-sort by x, recurse on
/// halves, then scan the strip around the dividing line in y order. The
/// strip comparisons are non-strict so pairs that tie with the current best
/// distance are still examined and resolved by the lexicographic rule.
pub fn closest_pair_fast(points: &[Point]) -> PairResult {
    let n = points.len();
    if n < 2 {
        return PairResult::none();
    }
    if n <= BRUTE_CUTOFF {
        return closest_pair_brute(points);
    }

    let mut by_x: Vec<u32> = (0..n as u32).collect();
    by_x.sort_by(|&i, &j| points[i as usize].lex_cmp(points[j as usize]));
    let mut by_y: Vec<u32> = by_x.clone();
    by_y.sort_by(|&i, &j| {
        let (p, q) = (points[i as usize], points[j as usize]);
        p.y.total_cmp(&q.y).then_with(|| p.x.total_cmp(&q.x))
    });

    let mut best = Best::new();
    let mut in_left = vec![false; n];
    let mut scratch: Vec<u32> = Vec::with_capacity(n);
    rec(points, &by_x, &mut by_y, &mut in_left, &mut scratch, &mut best);
    best.into_result()
}

fn rec(
    pts: &[Point],
    by_x: &[u32],
    by_y: &mut [u32],
    in_left: &mut [bool],
    scratch: &mut Vec<u32>,
    best: &mut Best,
) {
    let n = by_x.len();
    if n <= BRUTE_CUTOFF {
        for i in 0..n {
            for j in i + 1..n {
                best.offer(pts[by_x[i] as usize], pts[by_x[j] as usize]);
            }
        }
        return;
    }
    let mid = n / 2;
    let xmid = pts[by_x[mid] as usize].x;

    // Stable-partition the y-ordered ids to match the x split.
    for &id in &by_x[..mid] {
        in_left[id as usize] = true;
    }
    scratch.clear();
    let mut w = 0;
    for r in 0..n {
        let id = by_y[r];
        if in_left[id as usize] {
            by_y[w] = id;
            w += 1;
        } else {
            scratch.push(id);
        }
    }
    by_y[mid..].copy_from_slice(scratch);
    for &id in &by_x[..mid] {
        in_left[id as usize] = false;
    }

    let (yl, yr) = by_y.split_at_mut(mid);
    rec(pts, &by_x[..mid], yl, in_left, scratch, best);
    rec(pts, &by_x[mid..], yr, in_left, scratch, best);

    // Merge halves back into y order for the strip scan and the caller.
    scratch.clear();
    scratch.extend_from_slice(by_y);
    let (a, b) = scratch.split_at(mid);
    let (mut i, mut j, mut w) = (0, 0, 0);
    let ycmp = |p: Point, q: Point| p.y.total_cmp(&q.y).then_with(|| p.x.total_cmp(&q.x));
    while i < a.len() && j < b.len() {
        if ycmp(pts[a[i] as usize], pts[b[j] as usize]) != std::cmp::Ordering::Greater {
            by_y[w] = a[i];
            i += 1;
        } else {
            by_y[w] = b[j];
            j += 1;
        }
        w += 1;
    }
    by_y[w..w + a.len() - i].copy_from_slice(&a[i..]);
    w += a.len() - i;
    by_y[w..w + b.len() - j].copy_from_slice(&b[j..]);

    // Strip scan: candidates within the current best distance of the
    // dividing line, in y order.
    let strip_start = scratch.len();
    for &id in by_y.iter() {
        let dx = pts[id as usize].x - xmid;
        if dx * dx <= best.d2 {
            scratch.push(id);
        }
    }
    let strip = &scratch[strip_start..];
    for i in 0..strip.len() {
        let p = pts[strip[i] as usize];
        for &jd in &strip[i + 1..] {
            let q = pts[jd as usize];
            let dy = q.y - p.y;
            if dy * dy > best.d2 {
                break;
            }
            best.offer(p, q);
        }
    }
    scratch.truncate(strip_start);
    scratch.clear();
}
