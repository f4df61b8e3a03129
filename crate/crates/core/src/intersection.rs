//! Stable intersection of plane tropical curves, lattice indices of
//! complementary rational subspaces, and mixed areas of lattice polygons.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::arith::{i128_rat, Int, Rational};
use crate::dual_curve::{PlanePoint, TropicalCurve};
use crate::error::{Error, Result};
use crate::lattice::{det, LatticePoint, LatticePolygon};
use crate::matrix::IntegerMatrix;

/// A point of a stable intersection with its multiplicity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntersectionPoint {
    pub location: PlanePoint,
    pub multiplicity: u64,
}

/// `start + t·direction` for `t` in `[0, end]`, or `[0, ∞)` for rays.
#[derive(Clone, Debug)]
struct Piece {
    start: PlanePoint,
    direction: LatticePoint,
    end: Option<Rational>,
    weight: u64,
}

fn pieces(c: &TropicalCurve) -> Vec<Piece> {
    let mut out = Vec::new();
    for e in &c.edges {
        let a = &c.vertices[e.from];
        let len = c.vertices[e.to].sub(a).dot(e.direction) / i128_rat(e.direction.dot(e.direction));
        out.push(Piece { start: a.clone(), direction: e.direction, end: Some(len), weight: e.weight });
    }
    for r in &c.rays {
        out.push(Piece { start: c.vertices[r.vertex].clone(), direction: r.direction, end: None, weight: r.weight });
    }
    out
}

/// Parameters of the crossing of the lines through two pieces, the second
/// shifted by `eps·v`, as affine functions `p0 + eps·p1` of `eps`.
struct Crossing {
    s: (Rational, Rational),
    t: (Rational, Rational),
}

fn crossing(a: &Piece, b: &Piece, v: LatticePoint) -> Option<Crossing> {
    let d = det(a.direction, b.direction);
    if d == 0 {
        return None;
    }
    let d = i128_rat(d);
    let w = b.start.sub(&a.start);
    // a.start + s·da = b.start + eps·v + t·db
    let s0 = w.cross(b.direction) / &d;
    let t0 = w.cross(a.direction) / &d;
    let s1 = i128_rat(det(v, b.direction)) / &d;
    let t1 = i128_rat(det(v, a.direction)) / &d;
    Some(Crossing { s: (s0, s1), t: (t0, t1) })
}

fn eval(f: &(Rational, Rational), eps: &Rational) -> Rational {
    &f.0 + &f.1 * eps
}

fn strictly_inside(x: &Rational, end: &Option<Rational>) -> bool {
    x.is_positive() && end.as_ref().is_none_or(|e| x < e)
}

/// Stable intersection using a default displacement direction.
pub fn stable_intersect(c1: &TropicalCurve, c2: &TropicalCurve) -> Vec<IntersectionPoint> {
    let dirs: Vec<LatticePoint> = pieces(c1).iter().chain(pieces(c2).iter()).map(|p| p.direction).collect();
    let v = (1i64..)
        .map(|k| LatticePoint::new(k + 1, k * k + 2 * k + 3))
        .find(|v| dirs.iter().all(|&d| det(*v, d) != 0))
        .expect("finitely many directions");
    stable_intersect_along(c1, c2, v).expect("generic displacement")
}

/// Stable intersection computed by displacing `c2` by `eps·v` for every
/// sufficiently small `eps > 0`. Errors if `v` is parallel to an edge.
///
/// The crossing pattern only changes at finitely many values of `eps`,
/// which are computed exactly; any smaller positive `eps` yields the limit.
pub fn stable_intersect_along(c1: &TropicalCurve, c2: &TropicalCurve, v: LatticePoint) -> Result<Vec<IntersectionPoint>> {
    let (p1, p2) = (pieces(c1), pieces(c2));
    if p1.iter().chain(&p2).any(|p| det(v, p.direction) == 0) {
        return Err(Error::Internal("displacement is parallel to an edge".into()));
    }
    let mut crossings = Vec::new();
    let mut critical: Vec<Rational> = Vec::new();
    for (i, a) in p1.iter().enumerate() {
        for (j, b) in p2.iter().enumerate() {
            let Some(c) = crossing(a, b, v) else { continue };
            for (f, end) in [(&c.s, &a.end), (&c.t, &b.end)] {
                for bound in core::iter::once(Rational::zero()).chain(end.clone()) {
                    if !f.1.is_zero() {
                        let e = (&bound - &f.0) / &f.1;
                        if e.is_positive() {
                            critical.push(e);
                        }
                    }
                }
            }
            crossings.push((i, j, c));
        }
    }
    let eps = critical.into_iter().min().map_or_else(|| Rational::from_integer(1.into()), |m| m / Rational::from_integer(2.into()));
    let mut grouped: BTreeMap<PlanePoint, u64> = BTreeMap::new();
    for (i, j, c) in crossings {
        let (a, b) = (&p1[i], &p2[j]);
        if strictly_inside(&eval(&c.s, &eps), &a.end) && strictly_inside(&eval(&c.t, &eps), &b.end) {
            let location = a.start.add_scaled(a.direction, &c.s.0);
            let m = a.weight * b.weight * det(a.direction, b.direction).unsigned_abs() as u64;
            *grouped.entry(location).or_insert(0) += m;
        }
    }
    Ok(grouped.into_iter().map(|(location, multiplicity)| IntersectionPoint { location, multiplicity }).collect())
}

/// Sum of all multiplicities.
pub fn total_multiplicity(points: &[IntersectionPoint]) -> u64 {
    points.iter().map(|p| p.multiplicity).sum()
}

/// The curve translated by `t`.
pub fn translate(c: &TropicalCurve, t: &PlanePoint) -> TropicalCurve {
    let mut out = c.clone();
    for v in out.vertices.iter_mut() {
        *v = PlanePoint::new(&v.x + &t.x, &v.y + &t.y);
    }
    out
}

/// A rational linear subspace of `Q^n`, stored by a basis of its integer points.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalLinearSpace {
    ambient: usize,
    basis: Vec<Vec<Int>>,
}

impl RationalLinearSpace {
    /// The span of `generators` in `Q^ambient`, with a saturated lattice basis.
    pub fn span(ambient: usize, generators: &[Vec<Int>]) -> Result<Self> {
        if generators.iter().any(|g| g.len() != ambient) {
            return Err(Error::Parse("generator has the wrong length".into()));
        }
        if generators.is_empty() {
            return Ok(Self { ambient, basis: Vec::new() });
        }
        let m = IntegerMatrix::from_rows(generators);
        let snf = m.smith_normal_form();
        // rows of right^{-1} form a basis of Z^n; the first `rank` span the saturation
        let inv = snf.right.integral_inverse().expect("unimodular");
        let basis = (0..snf.rank()).map(|i| inv.row(i).to_vec()).collect();
        Ok(Self { ambient, basis })
    }

    pub fn from_i64(ambient: usize, generators: &[&[i64]]) -> Result<Self> {
        let g: Vec<Vec<Int>> = generators.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        Self::span(ambient, &g)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }
}

/// Index of `(L1 ∩ Z^n) ⊕ (L2 ∩ Z^n)` in `Z^n`.
pub fn lattice_index(l1: &RationalLinearSpace, l2: &RationalLinearSpace) -> Result<Int> {
    let n = l1.ambient;
    if l2.ambient != n || l1.dim() + l2.dim() != n {
        return Err(Error::NotComplementary);
    }
    let rows: Vec<Vec<Int>> = l1.basis.iter().chain(&l2.basis).cloned().collect();
    let d = IntegerMatrix::try_from_rows(rows, n).expect("rows of length n").determinant();
    if d.is_zero() {
        return Err(Error::NotComplementary);
    }
    Ok(d.abs())
}

/// Mixed area, normalized so that two generic lines meet once.
pub fn mixed_volume(p: &LatticePolygon, q: &LatticePolygon) -> Result<u128> {
    let sum = p.minkowski_sum(q)?;
    Ok((sum.twice_area() - p.twice_area() - q.twice_area()) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int_rat;
    use crate::dual_curve::dualize;
    use crate::subdivision::WeightFunction;

    fn zero_curve(k: i64) -> TropicalCurve {
        let d = LatticePolygon::standard_triangle(k);
        dualize(&d, &WeightFunction::zero(&d)).unwrap()
    }

    #[test]
    fn two_lines() {
        let l = zero_curve(1);
        let m = translate(&l, &PlanePoint::new(int_rat(1), int_rat(2)));
        let pts = stable_intersect(&l, &m);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].multiplicity, 1);
        assert_eq!(pts[0].location, PlanePoint::new(int_rat(1), int_rat(1)));
    }

    #[test]
    fn conic_squares() {
        let c = zero_curve(2);
        let m = translate(&c, &PlanePoint::new(int_rat(3), int_rat(-5)));
        assert_eq!(total_multiplicity(&stable_intersect(&c, &m)), 4);
    }

    #[test]
    fn identical_lines() {
        let l = zero_curve(1);
        let a = stable_intersect_along(&l, &l, LatticePoint::new(2, 5)).unwrap();
        let b = stable_intersect_along(&l, &l, LatticePoint::new(-3, 1)).unwrap();
        assert_eq!(total_multiplicity(&a), 1);
        assert_eq!(total_multiplicity(&b), 1);
        assert_eq!(a[0].location, PlanePoint::new(int_rat(0), int_rat(0)));
        assert!(stable_intersect_along(&l, &l, LatticePoint::new(1, 1)).is_err());
    }

    #[test]
    fn lattice_indices() {
        let x = RationalLinearSpace::from_i64(2, &[&[1, 0]]).unwrap();
        let y = RationalLinearSpace::from_i64(2, &[&[0, 3]]).unwrap();
        assert_eq!(lattice_index(&x, &y).unwrap(), Int::from(1));
        let a = RationalLinearSpace::from_i64(2, &[&[1, 1]]).unwrap();
        let b = RationalLinearSpace::from_i64(2, &[&[1, -1]]).unwrap();
        assert_eq!(lattice_index(&a, &b).unwrap(), Int::from(2));
        assert_eq!(lattice_index(&b, &a).unwrap(), Int::from(2));
        let p = RationalLinearSpace::from_i64(3, &[&[1, 2, 0], &[0, 0, 1]]).unwrap();
        let q = RationalLinearSpace::from_i64(3, &[&[0, 1, 0]]).unwrap();
        assert_eq!(lattice_index(&p, &q).unwrap(), Int::from(1));
        assert_eq!(lattice_index(&a, &a), Err(Error::NotComplementary));
        assert_eq!(lattice_index(&p, &p), Err(Error::NotComplementary));
    }

    #[test]
    fn mixed_volumes() {
        let t = LatticePolygon::standard_triangle;
        assert_eq!(mixed_volume(&t(1), &t(1)).unwrap(), 1);
        assert_eq!(mixed_volume(&t(2), &t(2)).unwrap(), 4);
        assert_eq!(mixed_volume(&t(1), &t(2)).unwrap(), 2);
    }
}
