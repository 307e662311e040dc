//! Geometric primitives: points, axis-parallel rectangles, quadrants, and
//! the corner/shrunken-rectangle partition used by the query algorithm.

use std::fmt;

/// A point in the plane. Coordinates are expected to be finite; inputs are
/// validated at the library boundaries (file parsing, index build).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Squared Euclidean distance. Every distance comparison in this crate
    /// goes through this single formula so that equal pairs always produce
    /// bitwise-equal values.
    #[inline]
    pub fn dist_sq(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    /// Euclidean distance |pq|.
    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    /// Total order by (x, y). Only meaningful for finite coordinates.
    #[inline]
    pub fn lex_cmp(self, other: Point) -> std::cmp::Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }

    #[inline]
    pub fn lex_le(self, other: Point) -> bool {
        self.lex_cmp(other) != std::cmp::Ordering::Greater
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Orders an unordered pair so the lexicographically smaller point comes
/// first. This is the deterministic tie rule used everywhere a closest pair
/// is reported.
#[inline]
pub fn normalize_pair(a: Point, b: Point) -> (Point, Point) {
    if a.lex_le(b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Compares two normalized pairs lexicographically.
#[inline]
pub fn pair_cmp(a: (Point, Point), b: (Point, Point)) -> std::cmp::Ordering {
    a.0.lex_cmp(b.0).then_with(|| a.1.lex_cmp(b.1))
}

/// The four closed quadrants of a point: Q1 = up-right, Q2 = up-left,
/// Q3 = down-left, Q4 = down-right. Boundaries belong to both adjacent
/// quadrants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quadrant {
    Q1,
    Q2,
    Q3,
    Q4,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::Q1, Quadrant::Q2, Quadrant::Q3, Quadrant::Q4];

    /// 1-based index, matching the usual Q_1..Q_4 naming.
    pub fn k(self) -> usize {
        match self {
            Quadrant::Q1 => 1,
            Quadrant::Q2 => 2,
            Quadrant::Q3 => 3,
            Quadrant::Q4 => 4,
        }
    }

    /// 0-based index for array storage.
    #[inline]
    pub fn idx(self) -> usize {
        self.k() - 1
    }

    pub fn from_k(k: usize) -> Option<Quadrant> {
        match k {
            1 => Some(Quadrant::Q1),
            2 => Some(Quadrant::Q2),
            3 => Some(Quadrant::Q3),
            4 => Some(Quadrant::Q4),
            _ => None,
        }
    }

    /// The quadrant containing the reversed edge: q in Q_k(p) iff p in
    /// opposite(Q_k)(q).
    pub fn opposite(self) -> Quadrant {
        match self {
            Quadrant::Q1 => Quadrant::Q3,
            Quadrant::Q2 => Quadrant::Q4,
            Quadrant::Q3 => Quadrant::Q1,
            Quadrant::Q4 => Quadrant::Q2,
        }
    }

    /// True iff `q` lies in the closed quadrant of `p`.
    #[inline]
    pub fn contains(self, p: Point, q: Point) -> bool {
        match self {
            Quadrant::Q1 => q.x >= p.x && q.y >= p.y,
            Quadrant::Q2 => q.x <= p.x && q.y >= p.y,
            Quadrant::Q3 => q.x <= p.x && q.y <= p.y,
            Quadrant::Q4 => q.x >= p.x && q.y <= p.y,
        }
    }
}

/// Errors raised when constructing a rectangle.
#[derive(Clone, Debug, PartialEq)]
pub enum RectError {
    NonFinite,
    /// Requires ax < bx and ay < by.
    Degenerate {
        ax: f64,
        bx: f64,
        ay: f64,
        by: f64,
    },
}

impl fmt::Display for RectError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RectError::NonFinite => write!(f, "rectangle coordinates must be finite"),
            RectError::Degenerate { ax, bx, ay, by } => write!(
                f,
                "degenerate rectangle [{ax},{bx}]x[{ay},{by}]: requires ax < bx and ay < by"
            ),
        }
    }
}

impl std::error::Error for RectError {}

/// A closed axis-parallel rectangle [ax,bx] x [ay,by] with ax < bx, ay < by.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    ax: f64,
    bx: f64,
    ay: f64,
    by: f64,
}

impl Rect {
    pub fn new(ax: f64, bx: f64, ay: f64, by: f64) -> Result<Rect, RectError> {
        if !(ax.is_finite() && bx.is_finite() && ay.is_finite() && by.is_finite()) {
            return Err(RectError::NonFinite);
        }
        if !(ax < bx && ay < by) {
            return Err(RectError::Degenerate { ax, bx, ay, by });
        }
        Ok(Rect { ax, bx, ay, by })
    }

    pub fn ax(&self) -> f64 {
        self.ax
    }
    pub fn bx(&self) -> f64 {
        self.bx
    }
    pub fn ay(&self) -> f64 {
        self.ay
    }
    pub fn by(&self) -> f64 {
        self.by
    }

    pub fn width(&self) -> f64 {
        self.bx - self.ax
    }

    pub fn height(&self) -> f64 {
        self.by - self.ay
    }

    /// The shortest side length, written l in the query analysis.
    pub fn shortest_side(&self) -> f64 {
        self.width().min(self.height())
    }

    pub fn longest_side(&self) -> f64 {
        self.width().max(self.height())
    }

    /// Aspect ratio (fatness) f = longest side / shortest side, always >= 1.
    pub fn aspect_ratio(&self) -> f64 {
        self.longest_side() / self.shortest_side()
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        self.ax <= p.x && p.x <= self.bx && self.ay <= p.y && p.y <= self.by
    }

    /// True iff `other` is contained in `self` (closed containment).
    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.ax <= other.ax && other.bx <= self.bx && self.ay <= other.ay && other.by <= self.by
    }

    /// Corner points in the order bottom-left, bottom-right, top-right,
    /// top-left.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.ax, self.ay),
            Point::new(self.bx, self.ay),
            Point::new(self.bx, self.by),
            Point::new(self.ax, self.by),
        ]
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.ax, self.bx, self.ay, self.by)
    }
}

/// Point-count threshold of the packing argument: a rectangle of aspect
/// ratio `f` holding more than `4 * ceil(4f)` points has closest-pair
/// distance below half its shortest side.
pub fn packing_threshold(f: f64) -> u64 {
    debug_assert!(f >= 1.0);
    4 * (4.0 * f).ceil() as u64
}

#[derive(Clone, Debug, PartialEq)]
pub enum RegionError {
    /// `delta` must satisfy 0 < delta <= shortest_side / 2.
    DeltaOutOfRange { delta: f64, max: f64 },
}

impl fmt::Display for RegionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionError::DeltaOutOfRange { delta, max } => {
                write!(f, "delta {delta} out of range (need 0 < delta <= {max})")
            }
        }
    }
}

impl std::error::Error for RegionError {}

/// The partition of a query rectangle into four corner squares C1..C4 of
/// side `delta` and four shrunken rectangles B1..B4.
///
/// C1 is the top-right corner square, C2 top-left, C3 bottom-left,
/// C4 bottom-right. Each B_k is R minus two adjacent boundary strips of
/// width `delta`:
///
///   B1 = [ax, bx-d] x [ay, by-d]        (drop right and top strips)
///   B2 = [ax+d, bx] x [ay, by-d]        (drop left and top strips)
///   B3 = [ax+d, bx] x [ay+d, by]        (drop left and bottom strips)
///   B4 = [ax, bx-d] x [ay+d, by]        (drop right and bottom strips)
#[derive(Clone, Debug)]
pub struct RegionSet {
    pub delta: f64,
    /// Corner squares, index 0..3 = C1..C4.
    pub c: [Rect; 4],
    /// Shrunken rectangles, index 0..3 = B1..B4.
    pub b: [Rect; 4],
}

impl RegionSet {
    /// C_k for k in 1..=4.
    pub fn c_square(&self, k: usize) -> &Rect {
        &self.c[k - 1]
    }

    /// B_k for k in 1..=4.
    pub fn b_rect(&self, k: usize) -> &Rect {
        &self.b[k - 1]
    }
}

/// Computes the C/B region partition of `r` for anchor size `delta`.
/// Requires 0 < delta <= shortest_side(r) / 2.
pub fn compute_regions(r: &Rect, delta: f64) -> Result<RegionSet, RegionError> {
    let max = r.shortest_side() / 2.0;
    if !(delta > 0.0 && delta <= max) {
        return Err(RegionError::DeltaOutOfRange { delta, max });
    }
    let (ax, bx, ay, by) = (r.ax, r.bx, r.ay, r.by);
    let rect = |a, b, c, d| Rect::new(a, b, c, d).expect("regions of a valid rect are valid");
    let c = [
        rect(bx - delta, bx, by - delta, by), // C1 top-right
        rect(ax, ax + delta, by - delta, by), // C2 top-left
        rect(ax, ax + delta, ay, ay + delta), // C3 bottom-left
        rect(bx - delta, bx, ay, ay + delta), // C4 bottom-right
    ];
    let b = [
        rect(ax, bx - delta, ay, by - delta),
        rect(ax + delta, bx, ay, by - delta),
        rect(ax + delta, bx, ay + delta, by),
        rect(ax, bx - delta, ay + delta, by),
    ];
    Ok(RegionSet { delta, c, b })
}

/// Input validation failures for point sets that feed the index structures.
#[derive(Clone, Debug, PartialEq)]
pub enum InputError {
    NonFinite {
        index: usize,
        point: Point,
    },
    /// Two points share an x coordinate (indices refer to the input order).
    DuplicateX {
        first: usize,
        second: usize,
        a: Point,
        b: Point,
    },
    /// Two points share a y coordinate.
    DuplicateY {
        first: usize,
        second: usize,
        a: Point,
        b: Point,
    },
    /// Two identical points.
    DuplicatePoint {
        first: usize,
        second: usize,
        p: Point,
    },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::NonFinite { index, point } => {
                write!(f, "point #{index} {point} has a non-finite coordinate")
            }
            InputError::DuplicateX {
                first,
                second,
                a,
                b,
            } => write!(
                f,
                "points #{first} {a} and #{second} {b} share an x coordinate"
            ),
            InputError::DuplicateY {
                first,
                second,
                a,
                b,
            } => write!(
                f,
                "points #{first} {a} and #{second} {b} share a y coordinate"
            ),
            InputError::DuplicatePoint { first, second, p } => {
                write!(f, "points #{first} and #{second} are both {p}")
            }
        }
    }
}

impl std::error::Error for InputError {}

/// Checks the general-position assumption: finite coordinates, all x
/// distinct, all y distinct. Reports the offending pair on failure.
pub fn validate_general_position(points: &[Point]) -> Result<(), InputError> {
    for (i, p) in points.iter().enumerate() {
        if !p.is_finite() {
            return Err(InputError::NonFinite {
                index: i,
                point: *p,
            });
        }
    }
    let mut by_x: Vec<usize> = (0..points.len()).collect();
    by_x.sort_by(|&i, &j| points[i].x.total_cmp(&points[j].x));
    for w in by_x.windows(2) {
        let (i, j) = (w[0], w[1]);
        if points[i].x == points[j].x {
            let (first, second) = (i.min(j), i.max(j));
            return Err(InputError::DuplicateX {
                first,
                second,
                a: points[first],
                b: points[second],
            });
        }
    }
    let mut by_y: Vec<usize> = (0..points.len()).collect();
    by_y.sort_by(|&i, &j| points[i].y.total_cmp(&points[j].y));
    for w in by_y.windows(2) {
        let (i, j) = (w[0], w[1]);
        if points[i].y == points[j].y {
            let (first, second) = (i.min(j), i.max(j));
            return Err(InputError::DuplicateY {
                first,
                second,
                a: points[first],
                b: points[second],
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        assert_eq!(Point::new(0.0, 0.0).dist(Point::new(3.0, 4.0)), 5.0);
        assert_eq!(Point::new(1.0, 1.0).dist(Point::new(1.0, 1.0)), 0.0);
        let d = Point::new(0.0, 0.0).dist(Point::new(1.0, 2.0));
        assert!((d - 5.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn quadrant_examples() {
        let p = Point::new(0.0, 0.0);
        assert!(Quadrant::Q1.contains(p, Point::new(1.0, 2.0)));
        // boundaries are closed
        assert!(Quadrant::Q1.contains(p, Point::new(0.0, 5.0)));
        assert!(!Quadrant::Q3.contains(p, Point::new(1.0, 2.0)));
        assert!(Quadrant::Q2.contains(p, Point::new(0.0, 5.0)));
    }

    #[test]
    fn packing_threshold_examples() {
        assert_eq!(packing_threshold(1.0), 16);
        assert_eq!(packing_threshold(1.5), 24);
        assert_eq!(packing_threshold(2.25), 36);
    }

    #[test]
    fn rect_rejects_degenerate() {
        assert!(Rect::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(Rect::new(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(Rect::new(0.0, f64::NAN, 0.0, 1.0).is_err());
        let r = Rect::new(0.0, 10.0, 0.0, 4.0).unwrap();
        assert_eq!(r.shortest_side(), 4.0);
        assert_eq!(r.aspect_ratio(), 2.5);
    }

    #[test]
    fn regions_worked_example() {
        let r = Rect::new(0.0, 10.0, 0.0, 4.0).unwrap();
        let rs = compute_regions(&r, 2.0).unwrap();
        let rect = |a, b, c, d| Rect::new(a, b, c, d).unwrap();
        assert_eq!(*rs.c_square(1), rect(8.0, 10.0, 2.0, 4.0));
        assert_eq!(*rs.c_square(2), rect(0.0, 2.0, 2.0, 4.0));
        assert_eq!(*rs.c_square(3), rect(0.0, 2.0, 0.0, 2.0));
        assert_eq!(*rs.c_square(4), rect(8.0, 10.0, 0.0, 2.0));
        assert_eq!(*rs.b_rect(1), rect(0.0, 8.0, 0.0, 2.0));
        assert_eq!(*rs.b_rect(2), rect(2.0, 10.0, 0.0, 2.0));
        assert_eq!(*rs.b_rect(3), rect(2.0, 10.0, 2.0, 4.0));
        assert_eq!(*rs.b_rect(4), rect(0.0, 8.0, 2.0, 4.0));
        for k in 1..=4 {
            assert!(r.contains_rect(rs.c_square(k)));
            assert!(r.contains_rect(rs.b_rect(k)));
        }
    }

    #[test]
    fn regions_boundary_delta() {
        // delta = l/2 on a square: corner squares tile R, B1 = C3.
        let r = Rect::new(0.0, 4.0, 0.0, 4.0).unwrap();
        let rs = compute_regions(&r, 2.0).unwrap();
        assert_eq!(rs.b_rect(1), rs.c_square(3));
        let area: f64 = rs.c.iter().map(|c| c.width() * c.height()).sum();
        assert_eq!(area, 16.0);
    }

    #[test]
    fn regions_delta_out_of_range() {
        let r = Rect::new(0.0, 10.0, 0.0, 4.0).unwrap();
        assert!(compute_regions(&r, 5.0).is_err());
        assert!(compute_regions(&r, 0.0).is_err());
        assert!(compute_regions(&r, -1.0).is_err());
    }

    /// Rasterization check of the closed forms: each B_k must equal the
    /// union of the corner square and middle strips named by the region
    /// identities, i.e. R minus two adjacent boundary strips.
    #[test]
    fn regions_match_rasterized_unions() {
        let r = Rect::new(0.0, 10.0, 0.0, 4.0).unwrap();
        let delta = 1.25;
        let rs = compute_regions(&r, delta).unwrap();
        let (ax, bx, ay, by) = (r.ax(), r.bx(), r.ay(), r.by());
        let n = 160;
        for i in 0..n {
            for j in 0..n {
                let p = Point::new(
                    ax + (bx - ax) * (i as f64 + 0.5) / n as f64,
                    ay + (by - ay) * (j as f64 + 0.5) / n as f64,
                );
                let right = p.x > bx - delta;
                let left = p.x < ax + delta;
                let top = p.y > by - delta;
                let bottom = p.y < ay + delta;
                assert_eq!(rs.b_rect(1).contains(p), !right && !top);
                assert_eq!(rs.b_rect(2).contains(p), !left && !top);
                assert_eq!(rs.b_rect(3).contains(p), !left && !bottom);
                assert_eq!(rs.b_rect(4).contains(p), !right && !bottom);
                assert_eq!(rs.c_square(1).contains(p), p.x >= bx - delta && p.y >= by - delta);
                assert_eq!(rs.c_square(2).contains(p), p.x <= ax + delta && p.y >= by - delta);
                assert_eq!(rs.c_square(3).contains(p), p.x <= ax + delta && p.y <= ay + delta);
                assert_eq!(rs.c_square(4).contains(p), p.x >= bx - delta && p.y <= ay + delta);
            }
        }
    }

    #[test]
    fn validation_reports_offending_pair() {
        let pts = [
            Point::new(1.0, 5.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 3.0),
        ];
        match validate_general_position(&pts) {
            Err(InputError::DuplicateX { first, second, .. }) => {
                assert_eq!((first, second), (0, 2));
            }
            other => panic!("expected DuplicateX, got {other:?}"),
        }
        let pts = [Point::new(1.0, 5.0), Point::new(2.0, 5.0)];
        assert!(matches!(
            validate_general_position(&pts),
            Err(InputError::DuplicateY { .. })
        ));
        assert!(validate_general_position(&[]).is_ok());
    }
}
