//! Two-level range tree: a balanced tree over x with per-node canonical
//! arrays sorted by a secondary key.
//!
//! A rectangle query decomposes into O(log n) canonical subarrays that
//! partition the points inside the rectangle. With fractional cascading
//! (the default) the subarray boundaries are located with a single binary
//! search at the root; bridge arrays carry the positions down. A build flag
//! switches to a per-node binary search fallback for comparison.
//!
//! The secondary key is a configurable linear form a*x + b*y, so the same
//! machinery serves the plain report/count tree (key y), the min-weight
//! trees (key y, RMQ over weights), and the cone trees of the anchored
//! square structure (key y - x, suffix c-minima over a coordinate weight).

use crate::geom::{validate_general_position, InputError, Point, Rect};
use crate::rmq::{RmqIndex, RmqKind};

/// Secondary sort key a*x + b*y.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearForm {
    pub a: f64,
    pub b: f64,
}

impl LinearForm {
    pub const Y: LinearForm = LinearForm { a: 0.0, b: 1.0 };
    pub const Y_MINUS_X: LinearForm = LinearForm { a: -1.0, b: 1.0 };

    #[inline]
    pub fn eval(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y
    }
}

/// Build-time configuration shared by all tree variants.
#[derive(Clone, Copy, Debug)]
pub struct TreeConfig {
    pub key: LinearForm,
    pub cascading: bool,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            key: LinearForm::Y,
            cascading: true,
        }
    }
}

/// A query range in (x, key) space. x bounds are closed; the key lower
/// bound is closed unless `strict_klo` is set; the key upper bound is
/// closed. Infinite bounds express half-open ranges.
#[derive(Clone, Copy, Debug)]
pub struct AxisQuery {
    pub xlo: f64,
    pub xhi: f64,
    pub klo: f64,
    pub khi: f64,
    pub strict_klo: bool,
}

impl AxisQuery {
    /// Rectangle query for trees with the default key (y).
    pub fn from_rect(r: &Rect) -> AxisQuery {
        AxisQuery {
            xlo: r.ax(),
            xhi: r.bx(),
            klo: r.ay(),
            khi: r.by(),
            strict_klo: false,
        }
    }
}

/// One canonical subarray of a query decomposition: positions
/// `alpha..=beta` of node `node`'s array.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalRange {
    pub node: u32,
    pub alpha: u32,
    pub beta: u32,
}

/// Minimum-weight answer of a rectangle query.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinWeight {
    pub weight: f64,
    pub point: Point,
    /// Index into the point slice the tree was built from.
    pub input_index: usize,
}

const NONE: u32 = u32::MAX;

struct Node {
    left: u32,
    right: u32,
    /// Maximum x coordinate in the left subtree; unused for leaves.
    xmax_left: f64,
    /// Point ids (x-rank order) sorted by (key, id).
    ids: Vec<u32>,
    /// Cascading bridges: `left_counts[i]` = how many of the first `i`
    /// entries belong to the left child. Internal nodes only.
    left_counts: Vec<u32>,
    /// Range-minimum structure over weights in array order (len >= 2).
    rmq: Option<RmqIndex>,
    /// Suffix c-minima: for each position j, the ids of the (up to) c
    /// smallest weights among entries j..end, ascending, stride c.
    suffix: Vec<u32>,
}

impl Node {
    fn is_leaf(&self) -> bool {
        self.left == NONE
    }
}

enum Augment<'a> {
    Plain,
    MinWeight { weights: &'a [f64], kind: RmqKind },
    SuffixMinima { weights: &'a [f64], c: usize },
}

/// The range tree. Immutable after build; queries never mutate.
pub struct RangeTree {
    cfg: TreeConfig,
    /// Points in x-rank order.
    pts: Vec<Point>,
    /// Secondary key per point, x-rank order.
    keys: Vec<f64>,
    /// Weight per point in x-rank order (weighted builds only).
    weights: Vec<f64>,
    /// x-rank -> index into the original build slice.
    input_idx: Vec<u32>,
    nodes: Vec<Node>,
    root: u32,
    suffix_c: usize,
}

impl RangeTree {
    /// Plain report/count tree.
    pub fn build(points: &[Point], cfg: TreeConfig) -> Result<RangeTree, InputError> {
        Self::build_inner(points, cfg, Augment::Plain)
    }

    /// Weight-augmented tree answering minimum-weight rectangle queries.
    /// `weights[i]` belongs to `points[i]`.
    pub fn build_weighted(
        points: &[Point],
        weights: &[f64],
        kind: RmqKind,
        cfg: TreeConfig,
    ) -> Result<RangeTree, InputError> {
        assert_eq!(points.len(), weights.len());
        Self::build_inner(points, cfg, Augment::MinWeight { weights, kind })
    }

    /// Cone tree: canonical arrays carry suffix c-minima lists over
    /// `weights`, answering "c smallest weights in a quadrant-like range".
    pub fn build_cone(
        points: &[Point],
        weights: &[f64],
        c: usize,
        cfg: TreeConfig,
    ) -> Result<RangeTree, InputError> {
        assert_eq!(points.len(), weights.len());
        assert!(c >= 1);
        Self::build_inner(points, cfg, Augment::SuffixMinima { weights, c })
    }

    fn build_inner(
        points: &[Point],
        cfg: TreeConfig,
        augment: Augment<'_>,
    ) -> Result<RangeTree, InputError> {
        validate_general_position(points)?;
        let n = points.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by(|&i, &j| points[i as usize].x.total_cmp(&points[j as usize].x));
        let pts: Vec<Point> = order.iter().map(|&i| points[i as usize]).collect();
        let keys: Vec<f64> = pts.iter().map(|&p| cfg.key.eval(p)).collect();
        let weights: Vec<f64> = match &augment {
            Augment::Plain => Vec::new(),
            Augment::MinWeight { weights, .. } | Augment::SuffixMinima { weights, .. } => {
                order.iter().map(|&i| weights[i as usize]).collect()
            }
        };
        let suffix_c = match &augment {
            Augment::SuffixMinima { c, .. } => *c,
            _ => 0,
        };

        let mut tree = RangeTree {
            cfg,
            pts,
            keys,
            weights,
            input_idx: order,
            nodes: Vec::with_capacity(2 * n.saturating_sub(1).max(1)),
            root: NONE,
            suffix_c,
        };
        if n > 0 {
            tree.root = tree.build_rec(0, n as u32, &augment);
        }
        Ok(tree)
    }

    fn build_rec(&mut self, lo: u32, hi: u32, augment: &Augment<'_>) -> u32 {
        if hi - lo == 1 {
            let id = self.nodes.len() as u32;
            self.nodes.push(Node {
                left: NONE,
                right: NONE,
                xmax_left: 0.0,
                ids: vec![lo],
                left_counts: Vec::new(),
                rmq: None,
                suffix: Vec::new(),
            });
            return id;
        }
        let mid = lo + (hi - lo) / 2;
        let left = self.build_rec(lo, mid, augment);
        let right = self.build_rec(mid, hi, augment);

        // Merge the children's arrays by (key, id).
        let (la, ra) = (&self.nodes[left as usize].ids, &self.nodes[right as usize].ids);
        let len = la.len() + ra.len();
        let mut ids = Vec::with_capacity(len);
        let mut left_counts = if self.cfg.cascading {
            Vec::with_capacity(len + 1)
        } else {
            Vec::new()
        };
        let (mut i, mut j) = (0usize, 0usize);
        loop {
            if self.cfg.cascading {
                left_counts.push(i as u32);
            }
            if ids.len() == len {
                break;
            }
            let take_left = if i == la.len() {
                false
            } else if j == ra.len() {
                true
            } else {
                let (a, b) = (la[i], ra[j]);
                (self.keys[a as usize], a) <= (self.keys[b as usize], b)
            };
            if take_left {
                ids.push(la[i]);
                i += 1;
            } else {
                ids.push(ra[j]);
                j += 1;
            }
        }

        let rmq = match augment {
            Augment::MinWeight { kind, .. } => {
                let w: Vec<f64> = ids.iter().map(|&id| self.weights[id as usize]).collect();
                Some(RmqIndex::build_with(w, *kind))
            }
            _ => None,
        };
        let suffix = match augment {
            Augment::SuffixMinima { c, .. } => self.build_suffix(&ids, *c),
            _ => Vec::new(),
        };

        let id = self.nodes.len() as u32;
        self.nodes.push(Node {
            left,
            right,
            xmax_left: self.pts[mid as usize - 1].x,
            ids,
            left_counts,
            rmq,
            suffix,
        });
        id
    }

    fn build_suffix(&self, ids: &[u32], c: usize) -> Vec<u32> {
        let len = ids.len();
        let mut suffix = vec![0u32; len * c];
        // Reverse traversal keeping the c smallest (weight, id) seen so far.
        let mut buf: Vec<(f64, u32)> = Vec::with_capacity(c + 1);
        for j in (0..len).rev() {
            let id = ids[j];
            let entry = (self.weights[id as usize], id);
            let pos = buf.partition_point(|&e| e < entry);
            if pos < c {
                buf.insert(pos, entry);
                buf.truncate(c);
            }
            for (t, &(_, eid)) in buf.iter().enumerate() {
                suffix[j * c + t] = eid;
            }
        }
        suffix
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    /// Points in x order.
    pub fn points(&self) -> &[Point] {
        &self.pts
    }

    #[inline]
    fn key_of(&self, id: u32) -> f64 {
        self.keys[id as usize]
    }

    /// First array position whose key satisfies the lower bound.
    fn lower_pos(&self, ids: &[u32], q: &AxisQuery) -> usize {
        if q.strict_klo {
            ids.partition_point(|&id| self.key_of(id) <= q.klo)
        } else {
            ids.partition_point(|&id| self.key_of(id) < q.klo)
        }
    }

    /// One past the last array position whose key satisfies the upper bound.
    fn upper_pos(&self, ids: &[u32], q: &AxisQuery) -> usize {
        ids.partition_point(|&id| self.key_of(id) <= q.khi)
    }

    #[inline]
    fn key_in_range(&self, id: u32, q: &AxisQuery) -> bool {
        let k = self.key_of(id);
        let lo_ok = if q.strict_klo { k > q.klo } else { k >= q.klo };
        lo_ok && k <= q.khi
    }

    #[inline]
    fn bridge(&self, node: &Node, pos: usize, to_left: bool) -> usize {
        let lc = node.left_counts[pos] as usize;
        if to_left {
            lc
        } else {
            pos - lc
        }
    }

    /// Canonical decomposition of the query: O(log n) disjoint subarrays
    /// that together hold exactly the points in range.
    pub fn canonical_ranges(&self, q: &AxisQuery) -> Vec<CanonicalRange> {
        let mut out = Vec::new();
        self.visit_canonical(q, |cr| out.push(cr));
        out
    }

    fn emit<'f>(
        &self,
        node_id: u32,
        lo_pos: usize,
        hi_pos: usize,
        q: &AxisQuery,
        f: &mut impl FnMut(CanonicalRange),
    ) {
        let node = &self.nodes[node_id as usize];
        let (lo_pos, hi_pos) = if self.cfg.cascading {
            (lo_pos, hi_pos)
        } else {
            (self.lower_pos(&node.ids, q), self.upper_pos(&node.ids, q))
        };
        if hi_pos > lo_pos {
            f(CanonicalRange {
                node: node_id,
                alpha: lo_pos as u32,
                beta: (hi_pos - 1) as u32,
            });
        }
    }

    fn emit_leaf(&self, node_id: u32, q: &AxisQuery, f: &mut impl FnMut(CanonicalRange)) {
        let id = self.nodes[node_id as usize].ids[0];
        let x = self.pts[id as usize].x;
        if x >= q.xlo && x <= q.xhi && self.key_in_range(id, q) {
            f(CanonicalRange {
                node: node_id,
                alpha: 0,
                beta: 0,
            });
        }
    }

    fn visit_canonical(&self, q: &AxisQuery, mut f: impl FnMut(CanonicalRange)) {
        if self.root == NONE || q.xlo > q.xhi || q.klo > q.khi {
            return;
        }
        let casc = self.cfg.cascading;
        let mut node_id = self.root;
        let (mut lo_pos, mut hi_pos) = if casc {
            let ids = &self.nodes[node_id as usize].ids;
            (self.lower_pos(ids, q), self.upper_pos(ids, q))
        } else {
            (0, 0)
        };

        // Descend to the split node, where the x range straddles the cut.
        loop {
            let node = &self.nodes[node_id as usize];
            if node.is_leaf() {
                self.emit_leaf(node_id, q, &mut f);
                return;
            }
            let go_left = q.xhi <= node.xmax_left;
            let go_right = q.xlo > node.xmax_left;
            if !go_left && !go_right {
                break;
            }
            if casc {
                lo_pos = self.bridge(node, lo_pos, go_left);
                hi_pos = self.bridge(node, hi_pos, go_left);
            }
            node_id = if go_left { node.left } else { node.right };
        }

        // Left walk: follow xlo, emitting right children of the path.
        let split = &self.nodes[node_id as usize];
        {
            let mut v = split.left;
            let (mut lp, mut hp) = if casc {
                (
                    self.bridge(split, lo_pos, true),
                    self.bridge(split, hi_pos, true),
                )
            } else {
                (0, 0)
            };
            loop {
                let node = &self.nodes[v as usize];
                if node.is_leaf() {
                    self.emit_leaf(v, q, &mut f);
                    break;
                }
                let (llp, lhp, rlp, rhp) = if casc {
                    (
                        self.bridge(node, lp, true),
                        self.bridge(node, hp, true),
                        self.bridge(node, lp, false),
                        self.bridge(node, hp, false),
                    )
                } else {
                    (0, 0, 0, 0)
                };
                if q.xlo <= node.xmax_left {
                    self.emit(node.right, rlp, rhp, q, &mut f);
                    v = node.left;
                    lp = llp;
                    hp = lhp;
                } else {
                    v = node.right;
                    lp = rlp;
                    hp = rhp;
                }
            }
        }

        // Right walk: follow xhi, emitting left children of the path.
        {
            let mut v = split.right;
            let (mut lp, mut hp) = if casc {
                (
                    self.bridge(split, lo_pos, false),
                    self.bridge(split, hi_pos, false),
                )
            } else {
                (0, 0)
            };
            loop {
                let node = &self.nodes[v as usize];
                if node.is_leaf() {
                    self.emit_leaf(v, q, &mut f);
                    break;
                }
                let (llp, lhp, rlp, rhp) = if casc {
                    (
                        self.bridge(node, lp, true),
                        self.bridge(node, hp, true),
                        self.bridge(node, lp, false),
                        self.bridge(node, hp, false),
                    )
                } else {
                    (0, 0, 0, 0)
                };
                if q.xhi > node.xmax_left {
                    self.emit(node.left, llp, lhp, q, &mut f);
                    v = node.right;
                    lp = rlp;
                    hp = rhp;
                } else {
                    v = node.left;
                    lp = llp;
                    hp = lhp;
                }
            }
        }
    }

    /// Input indices of the members of one canonical range.
    pub fn canonical_members(&self, cr: &CanonicalRange) -> impl Iterator<Item = usize> + '_ {
        let node = &self.nodes[cr.node as usize];
        node.ids[cr.alpha as usize..=cr.beta as usize]
            .iter()
            .map(move |&id| self.input_idx[id as usize] as usize)
    }

    /// Exactly the points inside `r`, each reported once.
    pub fn report(&self, r: &Rect) -> Vec<Point> {
        debug_assert_eq!(self.cfg.key, LinearForm::Y);
        let q = AxisQuery::from_rect(r);
        let mut out = Vec::new();
        self.visit_canonical(&q, |cr| {
            let node = &self.nodes[cr.node as usize];
            for &id in &node.ids[cr.alpha as usize..=cr.beta as usize] {
                out.push(self.pts[id as usize]);
            }
        });
        out
    }

    /// |r ∩ S| as the sum of canonical subarray lengths.
    pub fn count(&self, r: &Rect) -> usize {
        debug_assert_eq!(self.cfg.key, LinearForm::Y);
        let q = AxisQuery::from_rect(r);
        let mut total = 0usize;
        self.visit_canonical(&q, |cr| total += (cr.beta - cr.alpha + 1) as usize);
        total
    }

    /// Minimum weight over the points inside `r`, with its witness point.
    /// Requires a weighted build. Ties resolve to the lexicographically
    /// smallest witness point.
    pub fn min_weight(&self, r: &Rect) -> Option<MinWeight> {
        assert!(
            self.weights.len() == self.pts.len(),
            "min_weight requires a tree built with weights"
        );
        debug_assert_eq!(self.cfg.key, LinearForm::Y);
        let q = AxisQuery::from_rect(r);
        let mut best: Option<(f64, u32)> = None;
        self.visit_canonical(&q, |cr| {
            let node = &self.nodes[cr.node as usize];
            let (a, b) = (cr.alpha as usize, cr.beta as usize);
            let (w, id) = if a == b {
                let id = node.ids[a];
                (self.weights[id as usize], id)
            } else {
                let rmq = node.rmq.as_ref().expect("internal weighted node has rmq");
                let pos = rmq.query(a, b).expect("canonical range is in bounds");
                (rmq.values()[pos], node.ids[pos])
            };
            let better = match best {
                None => true,
                Some((bw, bid)) => {
                    w < bw
                        || (w == bw
                            && self.pts[id as usize].lex_cmp(self.pts[bid as usize])
                                == std::cmp::Ordering::Less)
                }
            };
            if better {
                best = Some((w, id));
            }
        });
        best.map(|(weight, id)| MinWeight {
            weight,
            point: self.pts[id as usize],
            input_index: self.input_idx[id as usize] as usize,
        })
    }

    /// The (up to) c smallest weights in the query range, merged from the
    /// canonical suffix lists. Requires a cone build and a query whose key
    /// upper bound is +inf. Returns (weight, input index) ascending.
    pub fn cone_candidates(&self, q: &AxisQuery) -> Vec<(f64, usize)> {
        assert!(self.suffix_c > 0, "cone_candidates requires a cone build");
        debug_assert_eq!(q.khi, f64::INFINITY);
        let c = self.suffix_c;
        let mut cand: Vec<(f64, u32)> = Vec::new();
        self.visit_canonical(&q, |cr| {
            let node = &self.nodes[cr.node as usize];
            debug_assert_eq!(cr.beta as usize, node.ids.len() - 1);
            let a = cr.alpha as usize;
            if node.is_leaf() {
                let id = node.ids[0];
                cand.push((self.weights[id as usize], id));
            } else {
                let take = c.min(node.ids.len() - a);
                for t in 0..take {
                    let id = node.suffix[a * c + t];
                    cand.push((self.weights[id as usize], id));
                }
            }
        });
        cand.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        cand.truncate(c);
        cand.into_iter()
            .map(|(w, id)| (w, self.input_idx[id as usize] as usize))
            .collect()
    }

    /// Total stored elements across canonical arrays, bridges, suffix
    /// lists, and per-node RMQ tables.
    pub fn stored_words(&self) -> usize {
        let mut total = 0usize;
        for node in &self.nodes {
            total += 4; // child links, split key, bookkeeping
            total += node.ids.len();
            total += node.left_counts.len();
            total += node.suffix.len();
            if let Some(rmq) = &node.rmq {
                total += rmq.memory_words();
            }
        }
        total + self.pts.len() * 4 + self.weights.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
        // distinct coordinates with probability 1
        (0..n)
            .map(|_| Point::new(rng.gen::<f64>() * 1000.0, rng.gen::<f64>() * 1000.0))
            .collect()
    }

    fn random_rect(rng: &mut ChaCha8Rng, span: f64) -> Rect {
        loop {
            let ax = rng.gen::<f64>() * span;
            let ay = rng.gen::<f64>() * span;
            let w = rng.gen::<f64>() * span * 0.5;
            let h = rng.gen::<f64>() * span * 0.5;
            if let Ok(r) = Rect::new(ax, ax + w, ay, ay + h) {
                return r;
            }
        }
    }

    #[test]
    fn four_point_structure() {
        let pts = [
            Point::new(1.0, 4.0),
            Point::new(2.0, 2.0),
            Point::new(3.0, 3.0),
            Point::new(4.0, 1.0),
        ];
        let t = RangeTree::build(&pts, TreeConfig::default()).unwrap();
        let all = Rect::new(0.0, 5.0, 0.0, 5.0).unwrap();
        assert_eq!(t.count(&all), 4);
        assert_eq!(t.report(&all).len(), 4);
        // root array is key-sorted (y-sorted)
        let root = &t.nodes[t.root as usize];
        let ys: Vec<f64> = root.ids.iter().map(|&id| t.pts[id as usize].y).collect();
        assert!(ys.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn duplicate_x_rejected_with_pair() {
        let pts = [
            Point::new(1.0, 5.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 3.0),
        ];
        match RangeTree::build(&pts, TreeConfig::default()) {
            Err(InputError::DuplicateX { first, second, .. }) => {
                assert_eq!((first, second), (0, 2))
            }
            other => panic!("expected duplicate-x error, got {:?}", other.map(|_| ())),
        }
    }

    fn scan_filter(pts: &[Point], r: &Rect) -> Vec<Point> {
        pts.iter().copied().filter(|&p| r.contains(p)).collect()
    }

    fn multiset_eq(mut a: Vec<Point>, mut b: Vec<Point>) -> bool {
        a.sort_by(|p, q| p.lex_cmp(*q));
        b.sort_by(|p, q| p.lex_cmp(*q));
        a == b
    }

    #[test]
    fn report_count_match_scan_both_modes() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let pts = random_points(&mut rng, 1024);
        for cascading in [true, false] {
            let cfg = TreeConfig {
                cascading,
                ..Default::default()
            };
            let t = RangeTree::build(&pts, cfg).unwrap();
            for _ in 0..100 {
                let r = random_rect(&mut rng, 1000.0);
                let expected = scan_filter(&pts, &r);
                let got = t.report(&r);
                assert_eq!(t.count(&r), expected.len());
                assert!(multiset_eq(got, expected), "cascading={cascading} r={r}");
            }
        }
    }

    #[test]
    fn canonical_ranges_partition_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let pts = random_points(&mut rng, 512);
        let t = RangeTree::build(&pts, TreeConfig::default()).unwrap();
        for _ in 0..100 {
            let r = random_rect(&mut rng, 1000.0);
            let q = AxisQuery::from_rect(&r);
            let ranges = t.canonical_ranges(&q);
            let mut seen = vec![false; pts.len()];
            for cr in &ranges {
                for idx in t.canonical_members(cr) {
                    assert!(!seen[idx], "point reported twice");
                    seen[idx] = true;
                }
            }
            for (idx, p) in pts.iter().enumerate() {
                assert_eq!(seen[idx], r.contains(*p), "partition misses {p}");
            }
        }
    }

    #[test]
    fn min_weight_matches_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let pts = random_points(&mut rng, 2048);
        let weights: Vec<f64> = (0..pts.len()).map(|_| rng.gen::<f64>() * 100.0).collect();
        for kind in [RmqKind::FischerHeun, RmqKind::SparseTable] {
            let t =
                RangeTree::build_weighted(&pts, &weights, kind, TreeConfig::default()).unwrap();
            for _ in 0..200 {
                let r = random_rect(&mut rng, 1000.0);
                let expected = pts
                    .iter()
                    .zip(&weights)
                    .filter(|(p, _)| r.contains(**p))
                    .map(|(_, &w)| w)
                    .fold(None, |acc: Option<f64>, w| {
                        Some(acc.map_or(w, |b| b.min(w)))
                    });
                let got = t.min_weight(&r);
                match (got, expected) {
                    (None, None) => {}
                    (Some(mw), Some(w)) => {
                        assert_eq!(mw.weight, w);
                        assert!(r.contains(mw.point));
                        assert_eq!(weights[mw.input_index], mw.weight);
                    }
                    other => panic!("mismatch: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn min_weight_trivial_cases() {
        let pts = [
            Point::new(1.0, 1.0),
            Point::new(2.0, 3.0),
            Point::new(4.0, 0.5),
        ];
        let weights = [5.0, 2.0, 7.0];
        let t = RangeTree::build_weighted(
            &pts,
            &weights,
            RmqKind::FischerHeun,
            TreeConfig::default(),
        )
        .unwrap();
        let r = Rect::new(0.0, 3.0, 0.0, 4.0).unwrap();
        let mw = t.min_weight(&r).unwrap();
        assert_eq!(mw.weight, 2.0);
        assert_eq!(mw.point, Point::new(2.0, 3.0));
        let far = Rect::new(100.0, 200.0, 100.0, 200.0).unwrap();
        assert!(t.min_weight(&far).is_none());
    }

    #[test]
    fn empty_and_singleton_trees() {
        let t = RangeTree::build(&[], TreeConfig::default()).unwrap();
        let r = Rect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(t.count(&r), 0);
        assert!(t.report(&r).is_empty());

        let t = RangeTree::build(&[Point::new(0.5, 0.5)], TreeConfig::default()).unwrap();
        assert_eq!(t.count(&r), 1);
        let miss = Rect::new(2.0, 3.0, 2.0, 3.0).unwrap();
        assert_eq!(t.count(&miss), 0);
    }

    #[test]
    fn unbounded_queries_cover_halfplanes() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let pts = random_points(&mut rng, 256);
        let t = RangeTree::build(&pts, TreeConfig::default()).unwrap();
        for _ in 0..50 {
            let x0 = rng.gen::<f64>() * 1000.0;
            let y0 = rng.gen::<f64>() * 1000.0;
            let q = AxisQuery {
                xlo: x0,
                xhi: f64::INFINITY,
                klo: y0,
                khi: f64::INFINITY,
                strict_klo: false,
            };
            let mut got = 0;
            t.visit_canonical(&q, |cr| got += (cr.beta - cr.alpha + 1) as usize);
            let want = pts.iter().filter(|p| p.x >= x0 && p.y >= y0).count();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn suffix_lists_match_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let pts = random_points(&mut rng, 300);
        let weights: Vec<f64> = pts.iter().map(|p| p.y).collect();
        let c = 5;
        let cfg = TreeConfig {
            key: LinearForm::Y_MINUS_X,
            cascading: true,
        };
        let t = RangeTree::build_cone(&pts, &weights, c, cfg).unwrap();
        for node in &t.nodes {
            if node.is_leaf() {
                continue;
            }
            let len = node.ids.len();
            for j in 0..len {
                let mut expect: Vec<(f64, u32)> = node.ids[j..]
                    .iter()
                    .map(|&id| (t.weights[id as usize], id))
                    .collect();
                expect.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                expect.truncate(c);
                let got: Vec<u32> = (0..c.min(len - j)).map(|k| node.suffix[j * c + k]).collect();
                let expect_ids: Vec<u32> = expect.iter().map(|e| e.1).collect();
                assert_eq!(got, expect_ids);
            }
        }
    }

    #[test]
    fn cone_candidates_match_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let pts = random_points(&mut rng, 400);
        let weights: Vec<f64> = pts.iter().map(|p| p.y).collect();
        let c = 5;
        let cfg = TreeConfig {
            key: LinearForm::Y_MINUS_X,
            cascading: true,
        };
        let t = RangeTree::build_cone(&pts, &weights, c, cfg).unwrap();
        for _ in 0..200 {
            let q = Point::new(rng.gen::<f64>() * 1000.0, rng.gen::<f64>() * 1000.0);
            let query = AxisQuery {
                xlo: q.x,
                xhi: f64::INFINITY,
                klo: q.y - q.x,
                khi: f64::INFINITY,
                strict_klo: false,
            };
            let got = t.cone_candidates(&query);
            // oracle: the c lowest points of the VD cone of q
            let mut expect: Vec<(f64, usize)> = pts
                .iter()
                .enumerate()
                .filter(|(_, p)| p.x >= q.x && (p.y - p.x) >= (q.y - q.x))
                .map(|(i, p)| (p.y, i))
                .collect();
            expect.sort_by(|a, b| a.0.total_cmp(&b.0));
            expect.truncate(c);
            assert_eq!(got, expect);
        }
    }
}
