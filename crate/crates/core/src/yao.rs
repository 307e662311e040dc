//! Quadrant Yao graph: each point gets a directed edge to its nearest
//! neighbor inside each of its four closed quadrants.
//!
//! The default construction queries a kd-tree once per point per quadrant
//! with quadrant-constrained pruning; near-linearithmic in practice (the
//! O(n log n) worst-case construction needs machinery beyond this crate,
//! see the crate docs). An O(n^2) brute-force construction is kept as the
//! exactness reference. Residual floating-point distance ties break toward
//! the lexicographically smallest target, identically in both builds.

use std::io::{self, Write};

use crate::geom::{InputError, Point, Quadrant};

/// Outgoing Yao edge of a point in one quadrant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YaoEdge {
    /// Index of the target point in the build slice.
    pub target: usize,
    pub length: f64,
}

/// Entry of a weighted set S_k: a point with out-degree one in Yao_k,
/// weighted by its outgoing edge length; the target is kept so closest
/// pairs can be reported, not just their distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkEntry {
    pub source: Point,
    pub weight: f64,
    pub target: Point,
    /// Index of the source in the build slice.
    pub source_index: usize,
}

/// The four directed out-degree-<=1 edge sets Yao_k(S), keyed by quadrant.
pub struct YaoGraph {
    points: Vec<Point>,
    edges: [Vec<Option<YaoEdge>>; 4],
}

impl YaoGraph {
    /// kd-tree construction.
    pub fn build(points: &[Point]) -> Result<YaoGraph, InputError> {
        reject_duplicate_points(points)?;
        let n = points.len();
        let mut edges: [Vec<Option<YaoEdge>>; 4] = Default::default();
        if n == 0 {
            return Ok(YaoGraph {
                points: Vec::new(),
                edges,
            });
        }
        let kd = KdTree::build(points);
        for q in Quadrant::ALL {
            let mut lane = Vec::with_capacity(n);
            for (i, &p) in points.iter().enumerate() {
                lane.push(
                    kd.nearest_in_quadrant(points, p, i, q)
                        .map(|(_, target)| YaoEdge {
                            target,
                            length: points[i].dist(points[target]),
                        }),
                );
            }
            edges[q.idx()] = lane;
        }
        Ok(YaoGraph {
            points: points.to_vec(),
            edges,
        })
    }

    /// All-pairs construction; the ground truth for tests.
    pub fn build_brute(points: &[Point]) -> Result<YaoGraph, InputError> {
        reject_duplicate_points(points)?;
        let n = points.len();
        let mut edges: [Vec<Option<YaoEdge>>; 4] = Default::default();
        for q in Quadrant::ALL {
            let mut lane = Vec::with_capacity(n);
            for i in 0..n {
                let p = points[i];
                let mut best: Option<(f64, usize)> = None;
                for (j, &t) in points.iter().enumerate() {
                    if j == i || !q.contains(p, t) {
                        continue;
                    }
                    let d2 = p.dist_sq(t);
                    let better = match best {
                        None => true,
                        Some((bd2, bj)) => {
                            d2 < bd2
                                || (d2 == bd2 && t.lex_cmp(points[bj]) == std::cmp::Ordering::Less)
                        }
                    };
                    if better {
                        best = Some((d2, j));
                    }
                }
                lane.push(best.map(|(_, target)| YaoEdge {
                    target,
                    length: p.dist(points[target]),
                }));
            }
            edges[q.idx()] = lane;
        }
        Ok(YaoGraph {
            points: points.to_vec(),
            edges,
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

    /// The outgoing edge of point `source` in Yao_k.
    pub fn edge(&self, q: Quadrant, source: usize) -> Option<&YaoEdge> {
        self.edges[q.idx()][source].as_ref()
    }

    /// The weighted sets S_1..S_4: points with out-degree one per quadrant,
    /// each with its edge length and target.
    pub fn weighted_sets(&self) -> [Vec<SkEntry>; 4] {
        let mut out: [Vec<SkEntry>; 4] = Default::default();
        for q in Quadrant::ALL {
            out[q.idx()] = self.edges[q.idx()]
                .iter()
                .enumerate()
                .filter_map(|(i, e)| {
                    e.map(|e| SkEntry {
                        source: self.points[i],
                        weight: e.length,
                        target: self.points[e.target],
                        source_index: i,
                    })
                })
                .collect();
        }
        out
    }

    /// Text edge dump for debugging: `k px py qx qy length` per line.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> io::Result<()> {
        for q in Quadrant::ALL {
            for (i, e) in self.edges[q.idx()].iter().enumerate() {
                if let Some(e) = e {
                    let p = self.points[i];
                    let t = self.points[e.target];
                    writeln!(w, "{} {} {} {} {} {}", q.k(), p.x, p.y, t.x, t.y, e.length)?;
                }
            }
        }
        Ok(())
    }
}

fn reject_duplicate_points(points: &[Point]) -> Result<(), InputError> {
    for (i, p) in points.iter().enumerate() {
        if !p.is_finite() {
            return Err(InputError::NonFinite {
                index: i,
                point: *p,
            });
        }
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].lex_cmp(points[j]));
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(InputError::DuplicatePoint {
                first,
                second,
                p: points[first],
            });
        }
    }
    Ok(())
}

const NONE: u32 = u32::MAX;

struct KdNode {
    point_id: u32,
    left: u32,
    right: u32,
    /// 0 = split on x, 1 = split on y.
    axis: u8,
}

/// Static kd-tree used only for nearest-in-quadrant queries.
struct KdTree {
    nodes: Vec<KdNode>,
    root: u32,
}

#[derive(Clone, Copy)]
struct Box2 {
    xlo: f64,
    xhi: f64,
    ylo: f64,
    yhi: f64,
}

impl Box2 {
    fn everything() -> Box2 {
        Box2 {
            xlo: f64::NEG_INFINITY,
            xhi: f64::INFINITY,
            ylo: f64::NEG_INFINITY,
            yhi: f64::INFINITY,
        }
    }

    #[inline]
    fn min_dist_sq(&self, p: Point) -> f64 {
        let dx = if p.x < self.xlo {
            self.xlo - p.x
        } else if p.x > self.xhi {
            p.x - self.xhi
        } else {
            0.0
        };
        let dy = if p.y < self.ylo {
            self.ylo - p.y
        } else if p.y > self.yhi {
            p.y - self.yhi
        } else {
            0.0
        };
        dx * dx + dy * dy
    }

    /// Closed-box / closed-quadrant intersection test.
    #[inline]
    fn meets_quadrant(&self, p: Point, q: Quadrant) -> bool {
        match q {
            Quadrant::Q1 => self.xhi >= p.x && self.yhi >= p.y,
            Quadrant::Q2 => self.xlo <= p.x && self.yhi >= p.y,
            Quadrant::Q3 => self.xlo <= p.x && self.ylo <= p.y,
            Quadrant::Q4 => self.xhi >= p.x && self.ylo <= p.y,
        }
    }
}

impl KdTree {
    fn build(points: &[Point]) -> KdTree {
        let mut ids: Vec<u32> = (0..points.len() as u32).collect();
        let mut tree = KdTree {
            nodes: Vec::with_capacity(points.len()),
            root: NONE,
        };
        tree.root = tree.build_rec(points, &mut ids, 0);
        tree
    }

    fn build_rec(&mut self, pts: &[Point], ids: &mut [u32], depth: u8) -> u32 {
        if ids.is_empty() {
            return NONE;
        }
        let axis = depth & 1;
        let mid = ids.len() / 2;
        ids.select_nth_unstable_by(mid, |&a, &b| {
            let (pa, pb) = (pts[a as usize], pts[b as usize]);
            if axis == 0 {
                pa.x.total_cmp(&pb.x).then_with(|| pa.y.total_cmp(&pb.y))
            } else {
                pa.y.total_cmp(&pb.y).then_with(|| pa.x.total_cmp(&pb.x))
            }
        });
        let point_id = ids[mid];
        let node_id = self.nodes.len() as u32;
        self.nodes.push(KdNode {
            point_id,
            left: NONE,
            right: NONE,
            axis,
        });
        let (lo, rest) = ids.split_at_mut(mid);
        let hi = &mut rest[1..];
        let left = self.build_rec(pts, lo, depth ^ 1);
        let right = self.build_rec(pts, hi, depth ^ 1);
        self.nodes[node_id as usize].left = left;
        self.nodes[node_id as usize].right = right;
        node_id
    }

    /// Nearest point to `p` within the closed quadrant `q` of `p`,
    /// excluding point `exclude`. Ties break toward the lexicographically
    /// smaller point, so the result matches the brute-force scan exactly.
    fn nearest_in_quadrant(
        &self,
        pts: &[Point],
        p: Point,
        exclude: usize,
        q: Quadrant,
    ) -> Option<(f64, usize)> {
        let mut best: Option<(f64, usize)> = None;
        self.search(pts, p, exclude, q, self.root, Box2::everything(), &mut best);
        best
    }

    fn search(
        &self,
        pts: &[Point],
        p: Point,
        exclude: usize,
        q: Quadrant,
        node_id: u32,
        bounds: Box2,
        best: &mut Option<(f64, usize)>,
    ) {
        if node_id == NONE || !bounds.meets_quadrant(p, q) {
            return;
        }
        // Prune only strictly worse boxes; an equal lower bound may still
        // hide a lexicographically smaller tie.
        if let Some((bd2, _)) = *best {
            if bounds.min_dist_sq(p) > bd2 {
                return;
            }
        }
        let node = &self.nodes[node_id as usize];
        let t = pts[node.point_id as usize];
        if node.point_id as usize != exclude && q.contains(p, t) {
            let d2 = p.dist_sq(t);
            let better = match *best {
                None => true,
                Some((bd2, bj)) => {
                    d2 < bd2 || (d2 == bd2 && t.lex_cmp(pts[bj]) == std::cmp::Ordering::Less)
                }
            };
            if better {
                *best = Some((d2, node.point_id as usize));
            }
        }
        let (mut lo_box, mut hi_box) = (bounds, bounds);
        let towards_left;
        if node.axis == 0 {
            lo_box.xhi = t.x;
            hi_box.xlo = t.x;
            towards_left = p.x < t.x;
        } else {
            lo_box.yhi = t.y;
            hi_box.ylo = t.y;
            towards_left = p.y < t.y;
        }
        let (first, first_box, second, second_box) = if towards_left {
            (node.left, lo_box, node.right, hi_box)
        } else {
            (node.right, hi_box, node.left, lo_box)
        };
        self.search(pts, p, exclude, q, first, first_box, best);
        self.search(pts, p, exclude, q, second, second_box, best);
    }
}
