//! Planar lattice geometry: points, segments and convex lattice polygons.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::arith::{gcd_i64, i128_rat, Rational};
use crate::error::{Error, Result};

/// Largest absolute coordinate accepted by polygon constructors. Keeps all
/// determinants and twice-areas comfortably inside `i128`.
pub const COORD_LIMIT: i64 = 1 << 31;

/// A point of `Z^2`, also used as an integer vector.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Self) -> i128 {
        self.x as i128 * o.x as i128 + self.y as i128 * o.y as i128
    }

    /// Rational dot product with a rational vector.
    pub fn dot_rational(self, v: &[Rational; 2]) -> Rational {
        &v[0] * i128_rat(self.x as i128) + &v[1] * i128_rat(self.y as i128)
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Divides out the gcd of the coordinates. The zero vector stays zero.
    pub fn primitive(self) -> Self {
        let g = gcd_i64(self.x, self.y);
        if g == 0 {
            self
        } else {
            Self::new(self.x / g, self.y / g)
        }
    }

    /// Rotation by +90 degrees.
    pub fn rot90(self) -> Self {
        Self::new(-self.y, self.x)
    }
}

impl Add for LatticePoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticePoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticePoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl Mul<i64> for LatticePoint {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// `det(u, v) = u.x v.y - u.y v.x`.
pub fn det(u: LatticePoint, v: LatticePoint) -> i128 {
    u.x as i128 * v.y as i128 - u.y as i128 * v.x as i128
}

/// Orientation of `c` relative to the directed line `a -> b`; positive on the left.
pub fn orient(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i128 {
    det(b - a, c - a)
}

/// Closed segment between two distinct lattice points.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Segment {
    a: LatticePoint,
    b: LatticePoint,
}

impl Segment {
    pub fn new(a: LatticePoint, b: LatticePoint) -> Result<Self> {
        if a == b {
            return Err(Error::DegenerateSegment(a));
        }
        Ok(Self { a, b })
    }

    /// Same segment with endpoints in lexicographic order.
    pub fn normalized(self) -> Self {
        if self.a <= self.b {
            self
        } else {
            Self { a: self.b, b: self.a }
        }
    }

    pub fn start(&self) -> LatticePoint {
        self.a
    }

    pub fn end(&self) -> LatticePoint {
        self.b
    }

    pub fn vector(&self) -> LatticePoint {
        self.b - self.a
    }

    pub fn lattice_length(&self) -> u64 {
        lattice_length(self)
    }

    pub fn primitive_direction(&self) -> LatticePoint {
        self.vector().primitive()
    }

    /// Lattice points on the segment, from `start` to `end`.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let n = self.lattice_length() as i64;
        let d = self.primitive_direction();
        (0..=n).map(|k| self.a + d * k).collect()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        if orient(self.a, self.b, p) != 0 {
            return false;
        }
        let t = (p - self.a).dot(self.vector());
        t >= 0 && t <= self.vector().dot(self.vector())
    }
}

/// Number of primitive steps on the segment: `gcd(|dx|, |dy|)`.
pub fn lattice_length(s: &Segment) -> u64 {
    let v = s.vector();
    gcd_i64(v.x, v.y).unsigned_abs()
}

/// Convex lattice polygon with a non-empty interior.
///
/// Vertices are stored counterclockwise starting from the lexicographically
/// least one, with no three consecutive vertices collinear, so two polygons
/// are equal exactly when they are the same set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

fn check_coord(p: LatticePoint) -> Result<()> {
    for c in [p.x, p.y] {
        if c.abs() > COORD_LIMIT {
            return Err(Error::CoordinateOutOfRange(c));
        }
    }
    Ok(())
}

/// Convex hull of a point set, counterclockwise, collinear points dropped.
/// Returns fewer than three points when the set is degenerate.
pub fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl LatticePolygon {
    /// Builds a polygon from its vertex cycle, given in either orientation.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon("fewer than three vertices".to_string()));
        }
        for &p in &vertices {
            check_coord(p)?;
        }
        let n = vertices.len();
        let mut sign = 0i128;
        for i in 0..n {
            let o = orient(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if o == 0 {
                return Err(Error::InvalidPolygon(alloc::format!(
                    "vertices {} {} {} are collinear or repeated",
                    vertices[i],
                    vertices[(i + 1) % n],
                    vertices[(i + 2) % n]
                )));
            }
            if sign == 0 {
                sign = o.signum();
            } else if o.signum() != sign {
                return Err(Error::InvalidPolygon("vertex cycle is not convex".to_string()));
            }
        }
        let mut v = vertices;
        if sign < 0 {
            v.reverse();
        }
        let start = (0..v.len()).min_by_key(|&i| v[i]).unwrap_or(0);
        v.rotate_left(start);
        // A convex cycle winds exactly once, so it must coincide with its hull.
        if convex_hull(&v) != v {
            return Err(Error::InvalidPolygon("vertex cycle is self-intersecting".to_string()));
        }
        Ok(Self { vertices: v })
    }

    /// Convex hull of arbitrary lattice points; errors if the hull is not two-dimensional.
    pub fn from_points(points: &[LatticePoint]) -> Result<Self> {
        let hull = convex_hull(points);
        if hull.len() < 3 {
            return Err(Error::InvalidPolygon("points do not span a two-dimensional hull".to_string()));
        }
        Self::new(hull)
    }

    /// `k` times the standard simplex `conv{(0,0),(1,0),(0,1)}`.
    pub fn standard_triangle(k: i64) -> Self {
        Self::new(alloc::vec![
            LatticePoint::new(0, 0),
            LatticePoint::new(k, 0),
            LatticePoint::new(0, k)
        ])
        .expect("k >= 1")
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Counterclockwise boundary edges.
    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment { a: self.vertices[i], b: self.vertices[(i + 1) % n] })
    }

    /// Shoelace formula.
    pub fn twice_area(&self) -> u128 {
        let n = self.vertices.len();
        let mut s = 0i128;
        for i in 0..n {
            s += det(self.vertices[i], self.vertices[(i + 1) % n]);
        }
        s.unsigned_abs()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.edges().all(|e| orient(e.a, e.b, p) >= 0)
    }

    pub fn contains_strictly(&self, p: LatticePoint) -> bool {
        self.edges().all(|e| orient(e.a, e.b, p) > 0)
    }

    pub fn on_boundary(&self, p: LatticePoint) -> bool {
        self.contains(p) && !self.contains_strictly(p)
    }

    /// True when both points lie on one common boundary edge.
    pub fn share_boundary_edge(&self, p: LatticePoint, q: LatticePoint) -> bool {
        self.edges().any(|e| e.contains(p) && e.contains(q))
    }

    /// All lattice points of the polygon, sorted lexicographically.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let (xmin, xmax) = minmax(self.vertices.iter().map(|p| p.x));
        let (ymin, ymax) = minmax(self.vertices.iter().map(|p| p.y));
        let mut out = Vec::new();
        for x in xmin..=xmax {
            for y in ymin..=ymax {
                let p = LatticePoint::new(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn boundary_points(&self) -> Vec<LatticePoint> {
        self.lattice_points().into_iter().filter(|&p| self.on_boundary(p)).collect()
    }

    pub fn interior_points(&self) -> Vec<LatticePoint> {
        self.lattice_points().into_iter().filter(|&p| self.contains_strictly(p)).collect()
    }

    /// Boundary lattice count from edge lengths, without enumeration.
    pub fn boundary_count(&self) -> u64 {
        self.edges().map(|e| e.lattice_length()).sum()
    }

    pub fn is_triangle(&self) -> bool {
        self.vertices.len() == 3
    }

    /// Quadrilateral with equal opposite edge vectors.
    pub fn is_parallelogram(&self) -> bool {
        self.vertices.len() == 4 && self.vertices[0] + self.vertices[2] == self.vertices[1] + self.vertices[3]
    }

    /// Vertex average; used to order faces bottom-to-top.
    pub fn vertex_centroid(&self) -> [Rational; 2] {
        let n = self.vertices.len() as i128;
        let sx: i128 = self.vertices.iter().map(|p| p.x as i128).sum();
        let sy: i128 = self.vertices.iter().map(|p| p.y as i128).sum();
        [i128_rat(sx) / i128_rat(n), i128_rat(sy) / i128_rat(n)]
    }

    pub fn translate(&self, t: LatticePoint) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&p| p + t).collect())
    }

    /// Minkowski sum `self + other`.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for &p in &self.vertices {
            for &q in &other.vertices {
                pts.push(p + q);
            }
        }
        Self::from_points(&pts)
    }

    /// Vertices of `self` that are also vertices of `other`.
    pub fn common_vertices(&self, other: &Self) -> BTreeSet<LatticePoint> {
        let a: BTreeSet<_> = self.vertices.iter().copied().collect();
        other.vertices.iter().copied().filter(|p| a.contains(p)).collect()
    }
}

fn minmax(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Compares two rational plane points by `(y, x)`.
pub fn cmp_yx(a: &[Rational; 2], b: &[Rational; 2]) -> Ordering {
    a[1].cmp(&b[1]).then_with(|| a[0].cmp(&b[0]))
}

/// Barycentric coordinates of `p` with respect to the triangle `(a, b, c)`.
/// The triangle must be non-degenerate.
pub fn barycentric(a: LatticePoint, b: LatticePoint, c: LatticePoint, p: LatticePoint) -> [Rational; 3] {
    let d = orient(a, b, c);
    debug_assert!(d != 0);
    let la = orient(p, b, c);
    let lb = orient(a, p, c);
    let lc = orient(a, b, p);
    let d = i128_rat(d);
    [i128_rat(la) / &d, i128_rat(lb) / &d, i128_rat(lc) / &d]
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn lattice_length_examples() {
        assert_eq!(Segment::new(p(0, 1), p(2, 1)).unwrap().lattice_length(), 2);
        assert_eq!(Segment::new(p(0, 0), p(1, 0)).unwrap().lattice_length(), 1);
        assert_eq!(Segment::new(p(0, 0), p(6, 4)).unwrap().lattice_length(), 2);
        assert_eq!(Segment::new(p(3, 3), p(3, 3)), Err(Error::DegenerateSegment(p(3, 3))));
    }

    #[test]
    fn lattice_length_matches_point_count() {
        // Oracle: count lattice points on the segment directly.
        let s = Segment::new(p(0, 0), p(6, 4)).unwrap();
        let count = (0..=6)
            .flat_map(|x| (0..=4).map(move |y| p(x, y)))
            .filter(|&q| s.contains(q))
            .count() as u64;
        assert_eq!(count - 1, s.lattice_length());
    }

    #[test]
    fn twice_area_examples() {
        assert_eq!(LatticePolygon::standard_triangle(1).twice_area(), 1);
        let t = LatticePolygon::new(vec![p(0, 0), p(0, 4), p(2, 2)]).unwrap();
        assert_eq!(t.twice_area(), 8);
        let d = LatticePolygon::new(vec![p(0, 0), p(0, 2), p(2, 1)]).unwrap();
        assert_eq!(d.twice_area(), 4);
    }

    #[test]
    fn normalization_is_structural() {
        let a = LatticePolygon::new(vec![p(2, 1), p(0, 2), p(0, 0)]).unwrap();
        let b = LatticePolygon::new(vec![p(0, 0), p(2, 1), p(0, 2)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices()[0], p(0, 0));
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(LatticePolygon::new(vec![p(0, 0), p(1, 0), p(2, 0)]).is_err());
        assert!(LatticePolygon::new(vec![p(0, 0), p(2, 0), p(0, 2), p(2, 2)]).is_err());
        assert!(LatticePolygon::new(vec![p(0, 0), p(1, 0), p(2, 0), p(0, 1)]).is_err());
        // pentagram: every turn has the same sign but the cycle winds twice
        let star = vec![p(0, 0), p(4, 2), p(-1, 3), p(3, 5), p(2, -1)];
        assert!(LatticePolygon::new(star).is_err());
    }

    #[test]
    fn point_classification() {
        let t = LatticePolygon::standard_triangle(3);
        assert_eq!(t.lattice_points().len(), 10);
        assert_eq!(t.boundary_points().len(), 9);
        assert_eq!(t.interior_points(), vec![p(1, 1)]);
        assert_eq!(t.boundary_count(), 9);
    }

    #[test]
    fn parallelogram_detection() {
        let sq = LatticePolygon::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        assert!(sq.is_parallelogram());
        let trap = LatticePolygon::new(vec![p(1, 0), p(2, 0), p(0, 2), p(0, 1)]).unwrap();
        assert!(!trap.is_parallelogram());
    }

    #[test]
    fn minkowski_sum_of_triangles() {
        let s = LatticePolygon::standard_triangle(1).minkowski_sum(&LatticePolygon::standard_triangle(2)).unwrap();
        assert_eq!(s, LatticePolygon::standard_triangle(3));
    }
}
