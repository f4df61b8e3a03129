//! Plane tropical curves dual to regular subdivisions (max-plus convention).

use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{format_rational, i128_rat, Rational};
use crate::error::Result;
use crate::lattice::{LatticePoint, LatticePolygon, Segment};
use crate::subdivision::{concave_hull, ConcaveHullResult, WeightFunction};

/// A point of `R^2` with rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PlanePoint {
    pub x: Rational,
    pub y: Rational,
}

impl PlanePoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_lattice(p: LatticePoint) -> Self {
        Self::new(i128_rat(p.x as i128), i128_rat(p.y as i128))
    }

    pub fn as_array(&self) -> [Rational; 2] {
        [self.x.clone(), self.y.clone()]
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add_scaled(&self, d: LatticePoint, t: &Rational) -> Self {
        Self::new(&self.x + t * i128_rat(d.x as i128), &self.y + t * i128_rat(d.y as i128))
    }

    /// `(x, y) · d`
    pub fn dot(&self, d: LatticePoint) -> Rational {
        &self.x * i128_rat(d.x as i128) + &self.y * i128_rat(d.y as i128)
    }

    /// `det((x, y), d)`
    pub fn cross(&self, d: LatticePoint) -> Rational {
        &self.x * i128_rat(d.y as i128) - &self.y * i128_rat(d.x as i128)
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

/// Bounded edge between two curve vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CurveEdge {
    pub from: usize,
    pub to: usize,
    /// Primitive direction pointing from `from` to `to`.
    pub direction: LatticePoint,
    pub weight: u64,
    /// Dual edge of the subdivision, when known.
    pub dual: Option<Segment>,
}

/// Unbounded ray leaving a curve vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CurveRay {
    pub vertex: usize,
    /// Primitive direction.
    pub direction: LatticePoint,
    pub weight: u64,
    pub dual: Option<Segment>,
}

/// Weighted rational graph in the plane with bounded edges and rays.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TropicalCurve {
    pub vertices: Vec<PlanePoint>,
    pub edges: Vec<CurveEdge>,
    pub rays: Vec<CurveRay>,
}

impl TropicalCurve {
    /// Dual of a concave hull: vertex `i` belongs to face `i`.
    pub fn from_hull(hull: &ConcaveHullResult) -> Self {
        let s = &hull.subdivision;
        // a·α + cc(a) is constant on a face exactly when α = -∇cc
        let vertices: Vec<PlanePoint> = hull
            .face_functions
            .iter()
            .map(|f| PlanePoint::new(-&f.gradient[0], -&f.gradient[1]))
            .collect();
        let mut edges = Vec::new();
        let mut rays = Vec::new();
        for e in s.edges() {
            let v = e.segment.vector();
            // normal pointing to the right of start -> end
            let right_normal = LatticePoint::new(v.y, -v.x).primitive();
            let weight = e.segment.lattice_length();
            match (e.left, e.right) {
                (Some(l), Some(r)) => {
                    let diff = vertices[r].sub(&vertices[l]);
                    let direction = if diff.dot(right_normal).is_positive() { right_normal } else { -right_normal };
                    edges.push(CurveEdge { from: l, to: r, direction, weight, dual: Some(e.segment) });
                }
                (Some(l), None) => {
                    rays.push(CurveRay { vertex: l, direction: right_normal, weight, dual: Some(e.segment) })
                }
                (None, Some(r)) => {
                    rays.push(CurveRay { vertex: r, direction: -right_normal, weight, dual: Some(e.segment) })
                }
                (None, None) => unreachable!("edge without faces"),
            }
        }
        Self { vertices, edges, rays }
    }

    /// `Σ weight · direction` over edges and rays leaving each vertex.
    pub fn imbalance(&self) -> Vec<LatticePoint> {
        let mut sums = alloc::vec![LatticePoint::default(); self.vertices.len()];
        for e in &self.edges {
            sums[e.from] = sums[e.from] + e.direction * e.weight as i64;
            sums[e.to] = sums[e.to] - e.direction * e.weight as i64;
        }
        for r in &self.rays {
            sums[r.vertex] = sums[r.vertex] + r.direction * r.weight as i64;
        }
        sums
    }

    /// True when the bounded edges point along their endpoint differences.
    pub fn edges_consistent(&self) -> bool {
        self.edges.iter().all(|e| {
            let d = self.vertices[e.to].sub(&self.vertices[e.from]);
            d.cross(e.direction).is_zero() && d.dot(e.direction).is_positive()
        })
    }

    /// Whether `q` lies on an edge or ray.
    pub fn contains_point(&self, q: &PlanePoint) -> bool {
        let on_edges = self.edges.iter().any(|e| {
            let (a, b) = (&self.vertices[e.from], &self.vertices[e.to]);
            let d = q.sub(a);
            let t = d.dot(e.direction);
            d.cross(e.direction).is_zero() && !t.is_negative() && t <= b.sub(a).dot(e.direction)
        });
        on_edges
            || self.rays.iter().any(|r| {
                let d = q.sub(&self.vertices[r.vertex]);
                d.cross(r.direction).is_zero() && !d.dot(r.direction).is_negative()
            })
    }

    /// Sum of the weights of rays in direction `d`, for degree comparisons.
    pub fn ray_weight(&self, d: LatticePoint) -> u64 {
        self.rays.iter().filter(|r| r.direction == d).map(|r| r.weight).sum()
    }
}

/// The tropical curve `τ_ω` of `ω` on `Δ`.
pub fn dualize(polygon: &LatticePolygon, omega: &WeightFunction) -> Result<TropicalCurve> {
    Ok(TropicalCurve::from_hull(&concave_hull(polygon, omega)?))
}

/// Whether the maximum of `a·q + ω(a)` over the lattice points is attained twice.
pub fn passes_through(polygon: &LatticePolygon, omega: &WeightFunction, q: &PlanePoint) -> Result<bool> {
    omega.check_domain(polygon)?;
    let qa = q.as_array();
    let mut best: Option<Rational> = None;
    let mut count = 0;
    for (a, w) in omega.iter() {
        let v = a.dot_rational(&qa) + w;
        match &best {
            Some(b) if v < *b => {}
            Some(b) if v == *b => count += 1,
            _ => {
                best = Some(v);
                count = 1;
            }
        }
    }
    Ok(count >= 2)
}

/// Whether every vertex is balanced.
pub fn check_balancing(c: &TropicalCurve) -> bool {
    c.imbalance().iter().all(|v| v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int_rat;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn pp(x: i64, y: i64) -> PlanePoint {
        PlanePoint::from_lattice(p(x, y))
    }

    fn rays(c: &TropicalCurve) -> Vec<(LatticePoint, u64)> {
        let mut r: Vec<_> = c.rays.iter().map(|r| (r.direction, r.weight)).collect();
        r.sort();
        r
    }

    #[test]
    fn square_of_a_line() {
        let d = LatticePolygon::standard_triangle(2);
        let c = dualize(&d, &WeightFunction::zero(&d)).unwrap();
        assert_eq!(c.vertices, [pp(0, 0)]);
        assert_eq!(rays(&c), [(p(-1, 0), 2), (p(0, -1), 2), (p(1, 1), 2)]);
        assert!(check_balancing(&c));
    }

    #[test]
    fn line() {
        let d = LatticePolygon::standard_triangle(1);
        let c = dualize(&d, &WeightFunction::zero(&d)).unwrap();
        assert_eq!(rays(&c), [(p(-1, 0), 1), (p(0, -1), 1), (p(1, 1), 1)]);
    }

    #[test]
    fn product_curve() {
        let d = LatticePolygon::standard_triangle(2);
        let w = WeightFunction::from_fn(&d, |a| if a == p(0, 0) { int_rat(0) } else { int_rat(1) });
        let c = dualize(&d, &w).unwrap();
        let mut v = c.vertices.clone();
        v.sort();
        assert_eq!(v, [pp(-1, -1), pp(0, 0)]);
        assert_eq!(c.edges.len(), 1);
        assert_eq!(c.edges[0].dual, Some(Segment::new(p(0, 1), p(1, 0)).unwrap()));
        assert!(check_balancing(&c) && c.edges_consistent());
        assert!(passes_through(&d, &w, &pp(-1, -1)).unwrap());
    }

    #[test]
    fn incidence() {
        let d = LatticePolygon::standard_triangle(1);
        let w = WeightFunction::zero(&d);
        assert!(passes_through(&d, &w, &pp(-3, 0)).unwrap());
        assert!(!passes_through(&d, &w, &pp(-3, -7)).unwrap());
        let c = dualize(&d, &w).unwrap();
        assert!(c.contains_point(&pp(-3, 0)));
        assert!(!c.contains_point(&pp(-3, -7)));
    }

    #[test]
    fn perturbed_weight_unbalances() {
        let d = LatticePolygon::standard_triangle(2);
        let mut c = dualize(&d, &WeightFunction::zero(&d)).unwrap();
        c.rays[0].weight = 3;
        assert!(!check_balancing(&c));
    }
}
