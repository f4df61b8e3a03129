//! Regular subdivisions of lattice polygons.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{i128_rat, Rational};
use crate::error::{Error, Result};
use crate::lattice::{barycentric, cmp_yx, convex_hull, orient, LatticePoint, LatticePolygon, Segment};
use crate::lp::{rational_lp_feasible, LinearSystem};

/// Rational values on the lattice points of a polygon.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WeightFunction {
    values: BTreeMap<LatticePoint, Rational>,
}

impl WeightFunction {
    pub fn new(values: BTreeMap<LatticePoint, Rational>) -> Self {
        Self { values }
    }

    pub fn from_fn(polygon: &LatticePolygon, mut f: impl FnMut(LatticePoint) -> Rational) -> Self {
        Self { values: polygon.lattice_points().into_iter().map(|p| (p, f(p))).collect() }
    }

    pub fn zero(polygon: &LatticePolygon) -> Self {
        Self::from_fn(polygon, |_| Rational::zero())
    }

    pub fn get(&self, p: LatticePoint) -> Option<&Rational> {
        self.values.get(&p)
    }

    pub fn value(&self, p: LatticePoint) -> Result<&Rational> {
        self.values.get(&p).ok_or(Error::MissingWeight(p))
    }

    pub fn set(&mut self, p: LatticePoint, v: Rational) {
        self.values.insert(p, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (LatticePoint, &Rational)> + '_ {
        self.values.iter().map(|(p, v)| (*p, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Errors unless the domain is exactly the lattice points of `polygon`.
    pub fn check_domain(&self, polygon: &LatticePolygon) -> Result<()> {
        let pts = polygon.lattice_points();
        for &p in &pts {
            self.value(p)?;
        }
        if let Some((&p, _)) = self.values.iter().find(|(p, _)| !polygon.contains(**p)) {
            return Err(Error::SupportMismatch(p));
        }
        Ok(())
    }

    /// `ω + c + g·a`
    pub fn add_affine(&self, f: &AffineFunction) -> Self {
        Self { values: self.values.iter().map(|(p, v)| (*p, v + f.eval(*p))).collect() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { values: self.values.iter().map(|(p, v)| (*p, v * k)).collect() }
    }

    /// True when every value is an integer.
    pub fn is_integral(&self) -> bool {
        self.values.values().all(|v| v.is_integer())
    }
}

/// `a ↦ c + gx·a.x + gy·a.y`
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineFunction {
    pub constant: Rational,
    pub gradient: [Rational; 2],
}

impl AffineFunction {
    pub fn new(constant: Rational, gx: Rational, gy: Rational) -> Self {
        Self { constant, gradient: [gx, gy] }
    }

    pub fn eval(&self, a: LatticePoint) -> Rational {
        &self.constant + a.dot_rational(&self.gradient)
    }

    /// The affine function taking the prescribed values at three
    /// non-collinear points.
    pub fn through(pts: [(LatticePoint, &Rational); 3]) -> Self {
        let [(a, fa), (b, fb), (c, fc)] = pts;
        let (u, v) = (b - a, c - a);
        let d = i128_rat(crate::lattice::det(u, v));
        assert!(!d.is_zero(), "interpolation points are collinear");
        let du = fb - fa;
        let dv = fc - fa;
        let gx = (&du * i128_rat(v.y as i128) - &dv * i128_rat(u.y as i128)) / &d;
        let gy = (&dv * i128_rat(u.x as i128) - &du * i128_rat(v.x as i128)) / &d;
        let gradient = [gx, gy];
        let constant = fa - a.dot_rational(&gradient);
        Self { constant, gradient }
    }
}

/// Classification flags of a subdivision.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Flags {
    pub triangular: bool,
    pub nodal: bool,
    pub simple: bool,
}

/// An edge of a subdivision with its incident faces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubdivisionEdge {
    /// Endpoints in lexicographic order.
    pub segment: Segment,
    /// Face to the left of `segment.start() -> segment.end()`.
    pub left: Option<usize>,
    /// Face to the right.
    pub right: Option<usize>,
}

impl SubdivisionEdge {
    pub fn is_interior(&self) -> bool {
        self.left.is_some() && self.right.is_some()
    }

    /// Incident face indices in increasing order.
    pub fn faces(&self) -> Vec<usize> {
        let mut f: Vec<usize> = self.left.into_iter().chain(self.right).collect();
        f.sort_unstable();
        f
    }
}

/// A polyhedral subdivision of a lattice polygon into lattice polygons.
///
/// Faces are ordered by the `(y, x)` order of their vertex centroids and
/// edges lexicographically, so equal subdivisions compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subdivision {
    polygon: LatticePolygon,
    faces: Vec<LatticePolygon>,
    edges: Vec<SubdivisionEdge>,
    vertices: Vec<LatticePoint>,
    flags: Flags,
}

impl Subdivision {
    /// Validates and canonicalizes a face list.
    pub fn from_faces(polygon: LatticePolygon, mut faces: Vec<LatticePolygon>) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::InvalidSubdivision("no faces".to_string()));
        }
        for f in &faces {
            if let Some(&v) = f.vertices().iter().find(|&&v| !polygon.contains(v)) {
                return Err(Error::InvalidSubdivision(format!("face vertex {v} lies outside the polygon")));
            }
        }
        let total: u128 = faces.iter().map(LatticePolygon::twice_area).sum();
        if total != polygon.twice_area() {
            return Err(Error::InvalidSubdivision(format!(
                "face areas sum to {total}/2, polygon area is {}/2",
                polygon.twice_area()
            )));
        }
        faces.sort_by(|a, b| cmp_yx(&a.vertex_centroid(), &b.vertex_centroid()).then_with(|| a.cmp(b)));
        if faces.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubdivision("repeated face".to_string()));
        }

        let mut edge_map: BTreeMap<Segment, SubdivisionEdge> = BTreeMap::new();
        for (i, f) in faces.iter().enumerate() {
            for e in f.edges() {
                let seg = e.normalized();
                // the face is on the left of its own counterclockwise edge
                let face_left = seg == e;
                let entry = edge_map.entry(seg).or_insert(SubdivisionEdge { segment: seg, left: None, right: None });
                let slot = if face_left { &mut entry.left } else { &mut entry.right };
                if slot.is_some() {
                    return Err(Error::InvalidSubdivision(format!(
                        "faces overlap along edge {}-{}",
                        seg.start(),
                        seg.end()
                    )));
                }
                *slot = Some(i);
            }
        }
        for e in edge_map.values() {
            let on_boundary = polygon.share_boundary_edge(e.segment.start(), e.segment.end());
            if e.is_interior() == on_boundary {
                return Err(Error::InvalidSubdivision(format!(
                    "edge {}-{} does not match the polygon boundary",
                    e.segment.start(),
                    e.segment.end()
                )));
            }
        }
        let edges: Vec<SubdivisionEdge> = edge_map.into_values().collect();
        let vertices: Vec<LatticePoint> =
            faces.iter().flat_map(|f| f.vertices().iter().copied()).collect::<BTreeSet<_>>().into_iter().collect();
        let mut s = Self { polygon, faces, edges, vertices, flags: Flags::default() };
        if s.vertices.len() + s.faces.len() != s.edges.len() + 1 {
            return Err(Error::InvalidSubdivision("Euler characteristic is not 1".to_string()));
        }
        s.flags = s.classify();
        Ok(s)
    }

    /// The subdivision with the single face `polygon`.
    pub fn trivial(polygon: LatticePolygon) -> Self {
        let face = polygon.clone();
        Self::from_faces(polygon, vec![face]).expect("a polygon subdivides itself")
    }

    pub fn polygon(&self) -> &LatticePolygon {
        &self.polygon
    }

    pub fn faces(&self) -> &[LatticePolygon] {
        &self.faces
    }

    pub fn edges(&self) -> &[SubdivisionEdge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = &SubdivisionEdge> + '_ {
        self.edges.iter().filter(|e| e.is_interior())
    }

    pub fn triangles(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].is_triangle()).collect()
    }

    pub fn parallelograms(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].is_parallelogram()).collect()
    }

    pub fn edge_index(&self, a: LatticePoint, b: LatticePoint) -> Option<usize> {
        let seg = Segment::new(a, b).ok()?.normalized();
        self.edges.binary_search_by(|e| e.segment.cmp(&seg)).ok()
    }

    /// Index of a face containing `p`.
    pub fn face_containing(&self, p: LatticePoint) -> Option<usize> {
        self.faces.iter().position(|f| f.contains(p))
    }

    pub fn classify(&self) -> Flags {
        let triangular = self.faces.iter().all(LatticePolygon::is_triangle);
        let nodal = self.faces.iter().all(|f| f.is_triangle() || f.is_parallelogram());
        let simple = self.polygon.boundary_points().iter().all(|p| self.vertices.binary_search(p).is_ok());
        Flags { triangular, nodal, simple }
    }

    /// Affine relations among vertex values forced by faces with more than
    /// three vertices, one row per extra vertex, indexed like `vertices()`.
    pub(crate) fn affine_relations(&self) -> Vec<Vec<Rational>> {
        let mut rows = Vec::new();
        for f in &self.faces {
            let v = f.vertices();
            for &w in &v[3..] {
                let bary = barycentric(v[0], v[1], v[2], w);
                let mut row = vec![Rational::zero(); self.vertices.len()];
                row[self.vertex_index(w)] = Rational::one();
                for (k, b) in bary.iter().enumerate() {
                    row[self.vertex_index(v[k])] -= b;
                }
                rows.push(row);
            }
        }
        rows
    }

    pub(crate) fn vertex_index(&self, p: LatticePoint) -> usize {
        self.vertices.binary_search(&p).expect("vertex of the subdivision")
    }

    /// Dimension of the space of functions that are affine on every face,
    /// modulo constants.
    pub fn affine_dimension(&self) -> usize {
        let relations = crate::matrix::rational_rank(&self.affine_relations());
        self.vertices.len() - relations - 1
    }

    /// Rank of a regular subdivision; `NonRegular` otherwise.
    pub fn rank(&self) -> Result<usize> {
        if self.is_regular().is_none() {
            return Err(Error::NonRegular);
        }
        Ok(self.affine_dimension())
    }

    /// `|Vertices| - 1 - |Parallelograms|`, defined for nodal subdivisions.
    pub fn rank_nodal_formula(&self) -> Result<usize> {
        if !self.flags.nodal {
            return Err(Error::NotNodal);
        }
        Ok(self.vertices.len() - 1 - self.parallelograms().len())
    }

    /// A weight function whose concave hull induces exactly this subdivision,
    /// or `None` when the subdivision is not regular.
    pub fn is_regular(&self) -> Option<WeightFunction> {
        let mut system = LinearSystem::new(self.vertices.len());
        for row in self.affine_relations() {
            system.add_eq(row, Rational::zero());
        }
        for row in self.concavity_rows() {
            system.add_gt(row, Rational::zero());
        }
        let x = rational_lp_feasible(&system)?;
        Some(self.extend_vertex_values(&x))
    }

    /// One row per interior edge, indexed like `vertices()`; vertex values
    /// induce this subdivision exactly when every row pairs positively with
    /// them and the affine relations hold.
    pub(crate) fn concavity_rows(&self) -> Vec<Vec<Rational>> {
        let n = self.vertices.len();
        let mut rows = Vec::new();
        for e in self.interior_edges() {
            let (u, w) = (e.segment.start(), e.segment.end());
            let (Some(l), Some(r)) = (e.left, e.right) else { continue };
            let c1 = apex(&self.faces[l], u, w);
            let c2 = apex(&self.faces[r], u, w);
            // the left face's affine extension must exceed the value at c2
            let bary = barycentric(u, w, c1, c2);
            let mut row = vec![Rational::zero(); n];
            row[self.vertex_index(u)] += &bary[0];
            row[self.vertex_index(w)] += &bary[1];
            row[self.vertex_index(c1)] += &bary[2];
            row[self.vertex_index(c2)] -= Rational::one();
            rows.push(row);
        }
        rows
    }

    /// Extends values on `vertices()` to all lattice points, affinely on each face.
    pub fn extend_vertex_values(&self, x: &[Rational]) -> WeightFunction {
        let planes: Vec<AffineFunction> = self
            .faces
            .iter()
            .map(|f| {
                let v = f.vertices();
                AffineFunction::through([
                    (v[0], &x[self.vertex_index(v[0])]),
                    (v[1], &x[self.vertex_index(v[1])]),
                    (v[2], &x[self.vertex_index(v[2])]),
                ])
            })
            .collect();
        WeightFunction::from_fn(&self.polygon, |p| {
            let i = self.face_containing(p).expect("lattice point of the polygon");
            planes[i].eval(p)
        })
    }

    /// Orients the dual graph by a generic direction.
    pub fn orient_adjacency(&self) -> OrientedAdjacencyGraph {
        let zeta = (1i64..)
            .map(|k| LatticePoint::new(k, k * k + 1))
            .find(|z| self.edges.iter().all(|e| e.segment.vector().dot(*z) != 0))
            .expect("finitely many edges");
        let mut arcs = Vec::new();
        let mut rays = Vec::new();
        for (idx, e) in self.edges.iter().enumerate() {
            let forward = e.segment.vector().dot(zeta) > 0;
            let (l, r) = if forward { (e.left, e.right) } else { (e.right, e.left) };
            match (r, l) {
                (Some(from), Some(to)) => arcs.push(DualArc { from, to, edge: idx }),
                (Some(face), None) => rays.push(DualRay { face, outgoing: true, edge: idx }),
                (None, Some(face)) => rays.push(DualRay { face, outgoing: false, edge: idx }),
                (None, None) => unreachable!("edge without faces"),
            }
        }
        OrientedAdjacencyGraph { num_nodes: self.faces.len(), zeta, arcs, rays }
    }
}

/// A vertex of `face` off the line through `u` and `w`.
fn apex(face: &LatticePolygon, u: LatticePoint, w: LatticePoint) -> LatticePoint {
    *face.vertices().iter().find(|&&c| orient(u, w, c) != 0).expect("two-dimensional face")
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DualArc {
    pub from: usize,
    pub to: usize,
    /// Index of the dual interior edge.
    pub edge: usize,
}

/// Half-edge of the dual graph through a boundary edge.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DualRay {
    pub face: usize,
    pub outgoing: bool,
    pub edge: usize,
}

/// Dual graph of a subdivision oriented by a generic direction `zeta`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrientedAdjacencyGraph {
    pub num_nodes: usize,
    pub zeta: LatticePoint,
    pub arcs: Vec<DualArc>,
    pub rays: Vec<DualRay>,
}

impl OrientedAdjacencyGraph {
    pub fn has_cycle(&self) -> bool {
        let mut indeg = vec![0usize; self.num_nodes];
        for a in &self.arcs {
            indeg[a.to] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.num_nodes).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.arcs.iter().filter(|a| a.from == v) {
                indeg[a.to] -= 1;
                if indeg[a.to] == 0 {
                    queue.push_back(a.to);
                }
            }
        }
        seen != self.num_nodes
    }

    /// Nodes with at least one incident arc or ray, all of them incoming.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.num_nodes)
            .filter(|&v| {
                let out = self.arcs.iter().any(|a| a.from == v) || self.rays.iter().any(|r| r.face == v && r.outgoing);
                let any = self.arcs.iter().any(|a| a.to == v) || self.rays.iter().any(|r| r.face == v);
                any && !out
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        !self.has_cycle() && self.sinks().is_empty()
    }
}

/// Output of [`concave_hull`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConcaveHullResult {
    /// Values of the concave hull at every lattice point.
    pub hull_values: WeightFunction,
    pub subdivision: Subdivision,
    /// Lattice points where the hull equals the input, sorted.
    pub tight_points: Vec<LatticePoint>,
    /// Affine function of each face, indexed like `subdivision.faces()`.
    pub face_functions: Vec<AffineFunction>,
}

/// Upper hull of the lifted points `(a, ψ(a))` and the induced subdivision.
pub fn concave_hull(polygon: &LatticePolygon, psi: &WeightFunction) -> Result<ConcaveHullResult> {
    psi.check_domain(polygon)?;
    let points = polygon.lattice_points();
    let value = |p: LatticePoint| psi.get(p).expect("checked domain");

    // first hull edge: the upper hull of the boundary edge v0 -> v1
    let v0 = polygon.vertices()[0];
    let v1 = polygon.vertices()[1];
    let edge = Segment::new(v0, v1)?;
    let mut first: Option<(LatticePoint, Rational)> = None;
    for (k, q) in edge.lattice_points().into_iter().enumerate().skip(1) {
        let slope = (value(q) - value(v0)) / Rational::from_integer((k as i64).into());
        if first.as_ref().is_none_or(|(_, s)| slope >= *s) {
            first = Some((q, slope));
        }
    }
    let (q0, _) = first.expect("edge has two lattice points");

    let mut faces: BTreeMap<Vec<LatticePoint>, AffineFunction> = BTreeMap::new();
    let mut queue: VecDeque<(LatticePoint, LatticePoint)> = VecDeque::new();
    queue.push_back((v0, q0));
    let mut done: BTreeSet<(LatticePoint, LatticePoint)> = BTreeSet::new();
    while let Some((p, q)) = queue.pop_front() {
        if !done.insert((p, q)) {
            continue;
        }
        let Some((verts, plane)) = face_left_of(&points, &value, p, q) else { continue };
        if faces.contains_key(&verts) {
            continue;
        }
        let n = verts.len();
        for i in 0..n {
            let (a, b) = (verts[i], verts[(i + 1) % n]);
            // the neighbour across a -> b lies left of b -> a
            if !polygon.share_boundary_edge(a, b) {
                queue.push_back((b, a));
            }
        }
        faces.insert(verts, plane);
    }

    let face_list: Vec<(LatticePolygon, AffineFunction)> = faces
        .into_iter()
        .map(|(v, plane)| LatticePolygon::new(v).map(|poly| (poly, plane)))
        .collect::<Result<_>>()?;
    let subdivision = Subdivision::from_faces(polygon.clone(), face_list.iter().map(|(f, _)| f.clone()).collect())?;
    let face_functions: Vec<AffineFunction> = subdivision
        .faces()
        .iter()
        .map(|f| face_list.iter().find(|(g, _)| g == f).expect("same faces").1.clone())
        .collect();
    let hull_values = WeightFunction::from_fn(polygon, |p| {
        face_functions.iter().map(|h| h.eval(p)).min().expect("at least one face")
    });
    let tight_points = points.iter().copied().filter(|&p| hull_values.get(p) == psi.get(p)).collect();
    Ok(ConcaveHullResult { hull_values, subdivision, tight_points, face_functions })
}

/// The upper-hull face to the left of the hull edge `p -> q`, as its
/// counterclockwise vertex cycle and supporting affine function.
fn face_left_of<'a>(
    points: &[LatticePoint],
    value: &impl Fn(LatticePoint) -> &'a Rational,
    p: LatticePoint,
    q: LatticePoint,
) -> Option<(Vec<LatticePoint>, AffineFunction)> {
    let e = q - p;
    let d = |a: LatticePoint| orient(p, q, a);
    let norm = i128_rat(e.dot(e));
    let k = (value(q) - value(p)) / norm;
    // ℓ(a) = ψ(p) + k (a - p)·e
    let ell = AffineFunction::new(
        value(p) - &k * i128_rat(p.dot(e)),
        &k * i128_rat(e.x as i128),
        &k * i128_rat(e.y as i128),
    );
    let mut t: Option<Rational> = None;
    for &r in points {
        let dr = d(r);
        if dr <= 0 {
            continue;
        }
        let cand = (value(r) - ell.eval(r)) / i128_rat(dr);
        if t.as_ref().is_none_or(|t| cand > *t) {
            t = Some(cand);
        }
    }
    let t = t?;
    // plane = ℓ + t·d, with d(a) = e.x (a.y - p.y) - e.y (a.x - p.x)
    let plane = AffineFunction::new(
        &ell.constant + &t * i128_rat(e.y as i128 * p.x as i128 - e.x as i128 * p.y as i128),
        &ell.gradient[0] - &t * i128_rat(e.y as i128),
        &ell.gradient[1] + &t * i128_rat(e.x as i128),
    );
    let tight: Vec<LatticePoint> =
        points.iter().copied().filter(|&a| d(a) >= 0 && plane.eval(a) == *value(a)).collect();
    let hull = convex_hull(&tight);
    debug_assert!(hull.len() >= 3);
    let poly = LatticePolygon::new(hull).ok()?;
    Some((poly.vertices().to_vec(), plane))
}
