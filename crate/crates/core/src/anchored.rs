//! Smallest anchored square queries: given a query point q and a corner
//! orientation, the side length of the smallest axis-parallel square with
//! that corner at q containing at least c points.
//!
//! A quadrant splits at the diagonal through q into two 45-degree cones.
//! Within the cone above the diagonal (VD) the anchored L-infinity offset
//! of a point is its vertical offset, below the diagonal (DH) its
//! horizontal offset. Each cone is served by a range tree whose canonical
//! arrays are sorted by y - x and carry suffix c-minima lists, so a query
//! collects the c lowest points of VD and the c leftmost points of DH and
//! takes the c-th smallest offset among them. One generic structure is
//! instantiated for all four orientations via coordinate reflections.

use crate::geom::{InputError, Point, Quadrant};
use crate::tree::{AxisQuery, LinearForm, RangeTree, TreeConfig};

/// The corner of the square that sits at the query point, named by the
/// direction the square grows into. NE = bottom-left corner at q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CornerOrientation {
    NE,
    NW,
    SW,
    SE,
}

impl CornerOrientation {
    pub const ALL: [CornerOrientation; 4] = [
        CornerOrientation::NE,
        CornerOrientation::NW,
        CornerOrientation::SW,
        CornerOrientation::SE,
    ];

    /// The quadrant of q the square grows into.
    pub fn quadrant(self) -> Quadrant {
        match self {
            CornerOrientation::NE => Quadrant::Q1,
            CornerOrientation::NW => Quadrant::Q2,
            CornerOrientation::SW => Quadrant::Q3,
            CornerOrientation::SE => Quadrant::Q4,
        }
    }

    /// Reflection taking this orientation to NE.
    #[inline]
    pub fn reflect(self, p: Point) -> Point {
        match self {
            CornerOrientation::NE => p,
            CornerOrientation::NW => Point::new(-p.x, p.y),
            CornerOrientation::SW => Point::new(-p.x, -p.y),
            CornerOrientation::SE => Point::new(p.x, -p.y),
        }
    }

    pub fn idx(self) -> usize {
        match self {
            CornerOrientation::NE => 0,
            CornerOrientation::NW => 1,
            CornerOrientation::SW => 2,
            CornerOrientation::SE => 3,
        }
    }
}

/// Result of an anchored-square query: the side length (infinite when the
/// quadrant holds fewer than c points) and the at most 2c candidate points
/// that were examined.
#[derive(Clone, Debug)]
pub struct AnchoredSquareResult {
    pub side: f64,
    pub support: Vec<Point>,
}

struct CornerStructure {
    /// Cone above the diagonal, in the reflected frame: points right of the
    /// vertical line with y - x >= that of q; weight = y.
    vd: RangeTree,
    /// Cone strictly below the diagonal, stored with coordinates swapped so
    /// the same tree layout applies; weight = x (leftmost-first).
    dh: RangeTree,
}

/// Four-orientation anchored-square structure over a point set.
pub struct AnchoredSquares {
    corners: [CornerStructure; 4],
    points: Vec<Point>,
    c: usize,
}

impl AnchoredSquares {
    pub fn build(points: &[Point], c: usize, cfg: TreeConfig) -> Result<Self, InputError> {
        assert!(c >= 1);
        let cone_cfg = TreeConfig {
            key: LinearForm::Y_MINUS_X,
            cascading: cfg.cascading,
        };
        let mut corners = Vec::with_capacity(4);
        for o in CornerOrientation::ALL {
            let reflected: Vec<Point> = points.iter().map(|&p| o.reflect(p)).collect();
            let vd_weights: Vec<f64> = reflected.iter().map(|p| p.y).collect();
            let vd = RangeTree::build_cone(&reflected, &vd_weights, c, cone_cfg)?;
            let swapped: Vec<Point> = reflected.iter().map(|p| Point::new(p.y, p.x)).collect();
            let dh_weights: Vec<f64> = swapped.iter().map(|p| p.y).collect();
            let dh = RangeTree::build_cone(&swapped, &dh_weights, c, cone_cfg)?;
            corners.push(CornerStructure { vd, dh });
        }
        let corners: [CornerStructure; 4] = match corners.try_into() {
            Ok(a) => a,
            Err(_) => unreachable!(),
        };
        Ok(AnchoredSquares {
            corners,
            points: points.to_vec(),
            c,
        })
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Side of the smallest square with the `o` corner at `q` containing at
    /// least c points of the set, +inf if no such square exists.
    pub fn query(&self, q: Point, o: CornerOrientation) -> AnchoredSquareResult {
        let cs = &self.corners[o.idx()];
        let qr = o.reflect(q);

        // c lowest points of the VD cone: x >= q.x, y - x >= q.y - q.x.
        let vd_query = AxisQuery {
            xlo: qr.x,
            xhi: f64::INFINITY,
            klo: qr.y - qr.x,
            khi: f64::INFINITY,
            strict_klo: false,
        };
        // c leftmost points of the DH cone, in swapped coordinates:
        // y >= q.y, x - y > q.x - q.y (strict, so the diagonal stays VD's).
        let dh_query = AxisQuery {
            xlo: qr.y,
            xhi: f64::INFINITY,
            klo: qr.x - qr.y,
            khi: f64::INFINITY,
            strict_klo: true,
        };

        let mut offsets: Vec<(f64, usize)> = Vec::with_capacity(2 * self.c);
        for (w, idx) in cs.vd.cone_candidates(&vd_query) {
            offsets.push((w - qr.y, idx));
        }
        for (w, idx) in cs.dh.cone_candidates(&dh_query) {
            offsets.push((w - qr.x, idx));
        }
        offsets.sort_by(|a, b| a.0.total_cmp(&b.0));
        let side = if offsets.len() >= self.c {
            offsets[self.c - 1].0
        } else {
            f64::INFINITY
        };
        AnchoredSquareResult {
            side,
            support: offsets.iter().map(|&(_, idx)| self.points[idx]).collect(),
        }
    }

    pub fn stored_words(&self) -> usize {
        self.corners
            .iter()
            .map(|cs| cs.vd.stored_words() + cs.dh.stored_words())
            .sum()
    }
}

/// Scan oracle: the c-th smallest anchored L-infinity offset over the
/// closed quadrant, +inf if the quadrant holds fewer than c points.
pub fn anchored_side_brute(points: &[Point], q: Point, o: CornerOrientation, c: usize) -> f64 {
    let quad = o.quadrant();
    let mut offsets: Vec<f64> = points
        .iter()
        .filter(|&&p| quad.contains(q, p))
        .map(|&p| (p.x - q.x).abs().max((p.y - q.y).abs()))
        .collect();
    if offsets.len() < c {
        return f64::INFINITY;
    }
    offsets.sort_by(f64::total_cmp);
    offsets[c - 1]
}
