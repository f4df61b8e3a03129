//! The inner-edge exponent matrix of a nodal subdivision, its Smith normal
//! form, special points of parallelograms, and membership of a polynomial in
//! the boundary-binomial family.

use alloc::vec::Vec;

use crate::arith::{binomial, GaussRational, Int, Rational};
use crate::error::{Error, Result};
use crate::initial_forms::ComplexPoly;
use crate::lattice::{det, LatticePoint, LatticePolygon, Segment};
use crate::matrix::{IntegerMatrix, SmithForm};
use crate::subdivision::Subdivision;

/// Lattice points of a parallelogram outside the affine lattice spanned at a
/// corner by the primitive side vectors.
pub fn special_points(p: &LatticePolygon) -> Result<Vec<LatticePoint>> {
    let frame = ParallelogramFrame::new(p)?;
    Ok(p.lattice_points().into_iter().filter(|&a| frame.coordinates(a).is_none()).collect())
}

/// Corner, primitive sides and side lengths of a parallelogram.
struct ParallelogramFrame {
    corner: LatticePoint,
    u: LatticePoint,
    w: LatticePoint,
    len_u: u64,
    len_w: u64,
}

impl ParallelogramFrame {
    fn new(p: &LatticePolygon) -> Result<Self> {
        if !p.is_parallelogram() {
            return Err(Error::NotParallelogram);
        }
        let v = p.vertices();
        let su = Segment::new(v[0], v[1])?;
        let sw = Segment::new(v[0], v[3])?;
        Ok(Self {
            corner: v[0],
            u: su.primitive_direction(),
            w: sw.primitive_direction(),
            len_u: su.lattice_length(),
            len_w: sw.lattice_length(),
        })
    }

    /// Integer `(i, j)` with `a = corner + i u + j w`, if any.
    fn coordinates(&self, a: LatticePoint) -> Option<(i64, i64)> {
        let d = a - self.corner;
        let n = det(self.u, self.w);
        let i = det(d, self.w);
        let j = det(self.u, d);
        (i % n == 0 && j % n == 0).then(|| ((i / n) as i64, (j / n) as i64))
    }
}

/// Exponent matrix of the boundary-binomial system and its invariants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupPresentation {
    /// One row per interior edge, two columns `(α_i, β_i)` per face.
    pub matrix: IntegerMatrix,
    /// Face pair `(i, j)`, `i < j`, of each row.
    pub row_faces: Vec<(usize, usize)>,
    pub smith: SmithForm,
    /// Product of the non-zero invariant factors.
    pub l_v: Int,
    pub dim_g: usize,
    /// Special points of each parallelogram face that has any.
    pub special_points: Vec<(usize, Vec<LatticePoint>)>,
    /// Lattice points of the polygon that are not special.
    pub support_set: Vec<LatticePoint>,
}

impl GroupPresentation {
    pub fn snf_diagonal(&self) -> &[Int] {
        &self.smith.diagonal
    }

    /// True when some parallelogram face has special points.
    pub fn has_non_primitive_parallelogram(&self) -> bool {
        !self.special_points.is_empty()
    }
}

/// Primitive edge direction with positive `y`, or positive `x` on horizontal edges.
pub fn row_direction(e: &Segment) -> LatticePoint {
    let v = e.primitive_direction();
    if v.y > 0 || (v.y == 0 && v.x > 0) {
        v
    } else {
        -v
    }
}

/// Builds the inner-edge matrix of a nodal subdivision.
///
/// Rows are ordered by face pair; each row carries `+v` in the columns of
/// the lower-indexed face and `-v` in those of the other.
pub fn build_matrix(s: &Subdivision) -> Result<GroupPresentation> {
    if !s.flags().nodal {
        return Err(Error::NotNodal);
    }
    let n_faces = s.faces().len();
    let mut rows: Vec<((usize, usize), LatticePoint)> = s
        .interior_edges()
        .map(|e| {
            let f = e.faces();
            ((f[0], f[1]), row_direction(&e.segment))
        })
        .collect();
    rows.sort();
    let mut matrix = IntegerMatrix::zeros(rows.len(), 2 * n_faces);
    for (r, ((i, j), v)) in rows.iter().enumerate() {
        matrix[(r, 2 * i)] = Int::from(v.x);
        matrix[(r, 2 * i + 1)] = Int::from(v.y);
        matrix[(r, 2 * j)] = Int::from(-v.x);
        matrix[(r, 2 * j + 1)] = Int::from(-v.y);
    }
    let smith = matrix.smith_normal_form();
    let l_v = smith.torsion_product();
    let dim_g = 2 * n_faces - smith.rank();
    let mut special = Vec::new();
    for i in s.parallelograms() {
        let pts = special_points(&s.faces()[i])?;
        if !pts.is_empty() {
            special.push((i, pts));
        }
    }
    let support_set = s
        .polygon()
        .lattice_points()
        .into_iter()
        .filter(|a| !special.iter().any(|(_, pts)| pts.contains(a)))
        .collect();
    Ok(GroupPresentation {
        matrix,
        row_faces: rows.iter().map(|(f, _)| *f).collect(),
        smith,
        l_v,
        dim_g,
        special_points: special,
        support_set,
    })
}

/// Whether `f` restricts to the boundary-binomial form on every face:
/// triangles have each edge restriction a pure power of a binomial of the
/// edge's lattice length, and parallelograms carry a product of two such
/// powers along their sides and vanish at special points.
pub fn is_in_v_boundary(f: &ComplexPoly, s: &Subdivision) -> Result<bool> {
    if let Some(a) = f.support().into_iter().find(|&a| !s.polygon().contains(a)) {
        return Err(Error::SupportMismatch(a));
    }
    for face in s.faces() {
        let ok = if face.is_parallelogram() {
            parallelogram_form(f, face)?
        } else if face.is_triangle() {
            face.edges().all(|e| is_binomial_power(&edge_coefficients(f, &e)))
        } else {
            return Err(Error::NotNodal);
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn edge_coefficients(f: &ComplexPoly, e: &Segment) -> Vec<GaussRational> {
    e.lattice_points().into_iter().map(|a| f.coefficient(a)).collect()
}

/// `c_k = c_0 C(s, k) ρ^k` with `c_0, ρ` non-zero, where `s = len - 1`.
fn is_binomial_power(c: &[GaussRational]) -> bool {
    let s = c.len() as u64 - 1;
    let Some(rho) = binomial_ratio(c, s) else { return false };
    c.iter().enumerate().all(|(k, ck)| *ck == binomial_term(&c[0], s, k as u64, &rho))
}

fn binomial_ratio(c: &[GaussRational], s: u64) -> Option<GaussRational> {
    if c[0].is_zero() || c[1].is_zero() {
        return None;
    }
    let scaled = c[0].scale(&Rational::from_integer(Int::from(s)));
    c[1].checked_div(&scaled)
}

fn binomial_term(c0: &GaussRational, s: u64, k: u64, rho: &GaussRational) -> GaussRational {
    (c0 * &rho.pow(k)).scale(&Rational::from_integer(binomial(s, k)))
}

fn parallelogram_form(f: &ComplexPoly, face: &LatticePolygon) -> Result<bool> {
    let frame = ParallelogramFrame::new(face)?;
    let c0 = f.coefficient(frame.corner);
    let along = |d: LatticePoint, len: u64| -> Vec<GaussRational> {
        (0..=len as i64).map(|k| f.coefficient(frame.corner + d * k)).collect()
    };
    let (cu, cw) = (along(frame.u, frame.len_u), along(frame.w, frame.len_w));
    let (Some(rho), Some(sigma)) = (binomial_ratio(&cu, frame.len_u), binomial_ratio(&cw, frame.len_w)) else {
        return Ok(false);
    };
    for a in face.lattice_points() {
        let expected = match frame.coordinates(a) {
            None => GaussRational::zero(),
            Some((i, j)) => {
                let x = binomial_term(&c0, frame.len_u, i as u64, &rho);
                let y = binomial_term(&GaussRational::one(), frame.len_w, j as u64, &sigma);
                &x * &y
            }
        };
        if f.coefficient(a) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `2 |Triangles| + 2 |Parallelograms| - |IEdges|`.
pub fn expected_dimension(s: &Subdivision) -> usize {
    let faces = s.faces().len();
    2 * faces - s.interior_edges().count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::arith::int_rat;
    use crate::subdivision::{concave_hull, WeightFunction};

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn poly(v: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::new(v.iter().map(|&(x, y)| p(x, y)).collect()).unwrap()
    }

    fn cpoly(terms: &[((i64, i64), i64)]) -> ComplexPoly {
        ComplexPoly::new(terms.iter().map(|&((x, y), k)| (p(x, y), GaussRational::from_int(k))))
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn special_point_examples() {
        assert!(special_points(&poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap().is_empty());
        assert_eq!(special_points(&poly(&[(0, 0), (1, 0), (2, 2), (1, 2)])).unwrap(), [p(1, 1)]);
        assert_eq!(special_points(&poly(&[(0, 0), (1, 1), (0, 2), (-1, 1)])).unwrap(), [p(0, 1)]);
        assert_eq!(special_points(&LatticePolygon::standard_triangle(1)), Err(Error::NotParallelogram));
    }

    #[test]
    fn three_face_matrix() {
        let d = poly(&[(0, 0), (0, 4), (2, 2)]);
        let faces =
            vec![poly(&[(0, 0), (2, 2), (1, 2)]), poly(&[(0, 0), (1, 2), (0, 4)]), poly(&[(1, 2), (2, 2), (0, 4)])];
        let s = Subdivision::from_faces(d, faces).unwrap();
        let g = build_matrix(&s).unwrap();
        let expected = IntegerMatrix::from_rows(&[
            vec![1i64, 2, -1, -2, 0, 0],
            vec![1, 0, 0, 0, -1, 0],
            vec![0, 0, -1, 2, 1, -2],
        ]);
        assert_eq!(g.matrix, expected);
        assert_eq!(g.snf_diagonal(), &ints(&[1, 1, 2])[..]);
        assert_eq!(g.l_v, Int::from(2));
        assert_eq!(g.dim_g, 3);
    }

    #[test]
    fn single_triangle_and_discriminant() {
        let g = build_matrix(&Subdivision::trivial(LatticePolygon::standard_triangle(1))).unwrap();
        assert_eq!((g.matrix.rows(), g.l_v.clone(), g.dim_g), (0, Int::from(1), 2));
        let d = poly(&[(0, 0), (0, 2), (2, 1)]);
        let w = WeightFunction::from_fn(&d, |a| if a == p(0, 0) { int_rat(-1) } else { int_rat(0) });
        let s = concave_hull(&d, &w).unwrap().subdivision;
        let g = build_matrix(&s).unwrap();
        assert_eq!(g.matrix, IntegerMatrix::from_rows(&[vec![1i64, 0, -1, 0]]));
        assert_eq!((g.l_v.clone(), g.dim_g), (Int::from(1), 3));
    }

    #[test]
    fn not_nodal() {
        let d = LatticePolygon::standard_triangle(2);
        let s = Subdivision::from_faces(d, vec![poly(&[(0, 0), (1, 0), (0, 1)]), poly(&[(1, 0), (2, 0), (0, 2), (0, 1)])])
            .unwrap();
        assert_eq!(build_matrix(&s), Err(Error::NotNodal));
    }

    #[test]
    fn membership() {
        let line = cpoly(&[((0, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        let t2 = Subdivision::trivial(LatticePolygon::standard_triangle(2));
        assert!(is_in_v_boundary(&line.pow(2), &t2).unwrap());
        let bad = cpoly(&[((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((2, 0), 1)]);
        assert!(!is_in_v_boundary(&bad, &t2).unwrap());

        let sq = Subdivision::trivial(poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]));
        let f = cpoly(&[((0, 0), 1), ((1, 0), 1)]).mul(&cpoly(&[((0, 0), 1), ((0, 1), 1)]));
        assert!(is_in_v_boundary(&f, &sq).unwrap());
        assert!(!is_in_v_boundary(&cpoly(&[((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 2)]), &sq).unwrap());

        let t1 = Subdivision::trivial(LatticePolygon::standard_triangle(1));
        assert!(is_in_v_boundary(&cpoly(&[((0, 0), 1), ((1, 0), 1), ((0, 1), 2)]), &t1).unwrap());
        assert_eq!(is_in_v_boundary(&cpoly(&[((5, 5), 1)]), &t1), Err(Error::SupportMismatch(p(5, 5))));
    }

    #[test]
    fn non_primitive_parallelogram_membership() {
        // (1 + x)(1 + x y^2): the special point (1,1) has coefficient zero
        let face = poly(&[(0, 0), (1, 0), (2, 2), (1, 2)]);
        let s = Subdivision::trivial(face);
        let f = cpoly(&[((0, 0), 1), ((1, 0), 1)]).mul(&cpoly(&[((0, 0), 1), ((1, 2), 1)]));
        assert!(is_in_v_boundary(&f, &s).unwrap());
        let g = ComplexPoly::new(f.terms().map(|(a, c)| (a, c.clone())).chain([(p(1, 1), GaussRational::one())]));
        assert!(!is_in_v_boundary(&g, &s).unwrap());
    }
}
