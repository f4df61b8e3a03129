//! Severi degrees by counting tropical curves through points.
//!
//! Two independent strategies are provided. `SubdivisionSolve` enumerates
//! the simple nodal subdivisions of maximal rank, assigns the points to
//! edges and solves the resulting linear systems exactly. `PathCount` sums
//! Mikhalkin's multiplicities of increasing lattice paths.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int_rat, Int, Rational};
use crate::dual_curve::{passes_through, PlanePoint};
use crate::error::{Error, Result};
use crate::lattice::{orient, LatticePoint, LatticePolygon, Segment};
use crate::lp::{rational_lp_feasible, LinearSystem};
use crate::matrix::{solve_linear, LinearSolution};
use crate::severi::{mikhalkin_multiplicity, SeveriSpec};
use crate::subdivision::{concave_hull, Subdivision, WeightFunction};

/// Points the curves are required to pass through.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointConfiguration {
    pub points: Vec<PlanePoint>,
    pub seed: u64,
    pub stretched: bool,
}

impl PointConfiguration {
    /// Errors if two points coincide.
    pub fn new(points: Vec<PlanePoint>, seed: u64) -> Result<Self> {
        let distinct: BTreeSet<&PlanePoint> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::ConfigDegenerate("repeated point".to_string()));
        }
        Ok(Self { points, seed, stretched: false })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// For collinear points: a primitive integer direction `d` of the line
    /// and the point indices sorted by increasing position along `d`.
    fn line(&self) -> Option<(LatticePoint, Vec<usize>)> {
        let q0 = self.points.first()?;
        let far = self.points.iter().max_by(|a, b| {
            let (da, db) = (a.sub(q0), b.sub(q0));
            (da.x.abs() + da.y.abs()).cmp(&(db.x.abs() + db.y.abs()))
        })?;
        let v = far.sub(q0);
        if v.x.is_zero() && v.y.is_zero() {
            return None;
        }
        let den = v.x.denom().lcm(v.y.denom());
        let (mut a, mut b) = ((&v.x * Rational::from_integer(den.clone())).to_integer(), (&v.y * Rational::from_integer(den)).to_integer());
        let g = a.gcd(&b);
        a /= &g;
        b /= &g;
        let d = LatticePoint::new(a.to_i64()?, b.to_i64()?);
        if d.x.abs() > 1 << 31 || d.y.abs() > 1 << 31 {
            return None;
        }
        if self.points.iter().any(|p| !p.sub(q0).cross(d).is_zero()) {
            return None;
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.points[i].sub(q0).dot(d));
        Some((d, order))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `r` points `p0 + s·M^i·(1, D)` on a line of steep slope, with the
/// offset `p0`, the scale `s`, the ratio `M` and the slope `D` drawn from
/// `seed`. The x coordinates increase and the y coordinates are
/// super-increasing.
pub fn stretched_config(r: usize, seed: u64) -> PointConfiguration {
    let h = splitmix64(seed);
    let slope = (1i64 << 20) + (h % 1024) as i64;
    let ratio = Int::from(16 + (h >> 10) % 16);
    let scale = Int::from(1 + (h >> 14) % 7);
    let offset = |bits: u64, den: i64| Rational::new(Int::from((bits % 1001) as i64 - 500), Int::from(den));
    let (ox, oy) = (offset(h >> 20, 997), offset(h >> 32, 991));
    let mut step = scale;
    let points = (0..r)
        .map(|_| {
            let t = Rational::from_integer(step.clone());
            step = &step * &ratio;
            PlanePoint::new(&ox + &t, &oy + t * int_rat(slope))
        })
        .collect();
    PointConfiguration { points, seed, stretched: true }
}

/// Whether the maximum of `ω(a) + q·a` is attained at least twice.
///
/// Computed from the two largest values, independently of
/// [`passes_through`].
pub fn hyperplane_trop_contains(q: &PlanePoint, omega: &WeightFunction) -> bool {
    let mut values: Vec<Rational> = omega.iter().map(|(a, w)| w + &q.x * int_rat(a.x) + &q.y * int_rat(a.y)).collect();
    values.sort_unstable_by(|a, b| b.cmp(a));
    values.len() >= 2 && values[0] == values[1]
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Strategy {
    SubdivisionSolve,
    PathCount,
    /// Runs both and fails unless they agree.
    Both,
}

/// A tropical curve through the configuration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountedSolution {
    /// Normalized to vanish at the first vertex.
    pub omega: WeightFunction,
    pub subdivision: Subdivision,
    /// Subdivision edge dual to the curve edge through each point.
    pub assignment: Vec<Segment>,
    pub mu: Int,
}

/// An increasing lattice path with its two multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CountedPath {
    pub path: Vec<LatticePoint>,
    pub mu_plus: Int,
    pub mu_minus: Int,
}

impl CountedPath {
    pub fn mu(&self) -> Int {
        &self.mu_plus * &self.mu_minus
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeveriDegreeReport {
    pub spec: SeveriSpec,
    pub configuration: PointConfiguration,
    pub strategy: Strategy,
    pub degree: Int,
    /// Empty unless the subdivision strategy ran.
    pub solutions: Vec<CountedSolution>,
    /// Empty unless the path strategy ran.
    pub paths: Vec<CountedPath>,
}

/// Number of `δ`-nodal curves of degree `Δ` through the configuration.
pub fn count_through_points(spec: &SeveriSpec, config: &PointConfiguration, strategy: Strategy) -> Result<SeveriDegreeReport> {
    check_size(spec, config)?;
    let mut solutions = Vec::new();
    if strategy != Strategy::PathCount {
        for s in candidate_subdivisions(spec) {
            solutions.extend(solve_candidate(spec, config, &s)?);
        }
    }
    let paths = if strategy == Strategy::SubdivisionSolve { Vec::new() } else { lattice_paths(spec) };
    assemble_report(spec, config, strategy, solutions, paths)
}

fn check_size(spec: &SeveriSpec, config: &PointConfiguration) -> Result<()> {
    let expected = spec.dimension();
    if config.len() != expected {
        return Err(Error::ConfigSize { expected, got: config.len() });
    }
    Ok(())
}

/// Sums the multiplicities of precomputed solutions and paths, checking
/// that both strategies agree when both ran.
pub fn assemble_report(
    spec: &SeveriSpec,
    config: &PointConfiguration,
    strategy: Strategy,
    solutions: Vec<CountedSolution>,
    paths: Vec<CountedPath>,
) -> Result<SeveriDegreeReport> {
    check_size(spec, config)?;
    let by_curves: Int = solutions.iter().map(|s| &s.mu).sum();
    let by_paths: Int = paths.iter().map(CountedPath::mu).sum();
    let degree = match strategy {
        Strategy::SubdivisionSolve => by_curves,
        Strategy::PathCount => by_paths,
        Strategy::Both => {
            if by_curves != by_paths {
                return Err(Error::Internal(format!("curve count {by_curves} differs from path count {by_paths}")));
            }
            by_curves
        }
    };
    Ok(SeveriDegreeReport { spec: spec.clone(), configuration: config.clone(), strategy, degree, solutions, paths })
}

/// Degrees agree for every seed's stretched configuration.
pub fn independence_check(spec: &SeveriSpec, seeds: &[u64], strategy: Strategy) -> Result<bool> {
    if seeds.len() < 2 {
        return Err(Error::ConfigSize { expected: 2, got: seeds.len() });
    }
    let mut degrees = BTreeSet::new();
    for &seed in seeds {
        let config = stretched_config(spec.dimension(), seed);
        degrees.insert(count_through_points(spec, &config, strategy)?.degree);
    }
    Ok(degrees.len() == 1)
}

// ---------------------------------------------------------------------------
// candidate subdivisions

type Triangle = [LatticePoint; 3];

fn triangle(mut t: Triangle) -> Triangle {
    t.sort();
    t
}

/// Simple nodal subdivisions of rank `dim Sev` whose faces are lattice
/// triangles and parallelograms, in a canonical order. Regularity is not
/// checked here; every counted solution certifies it.
///
/// Every boundary point is a vertex. With `W` the interior vertices, the
/// rank is `|V| - 1 - #parallelograms`, so exactly
/// `δ - |interior| + |W|` parallelograms are needed. Splitting each
/// parallelogram along a diagonal gives a triangulation of `V`, so these
/// are found by merging adjacent triangle pairs in all triangulations.
pub fn candidate_subdivisions(spec: &SeveriSpec) -> Vec<Subdivision> {
    let polygon = spec.polygon();
    let boundary = polygon.boundary_points();
    let interior = polygon.interior_points();
    let mut found: BTreeSet<Vec<LatticePolygon>> = BTreeSet::new();
    for mask in 0u64..(1 << interior.len()) {
        let chosen: Vec<LatticePoint> =
            interior.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let Some(merges) = (spec.delta() + chosen.len()).checked_sub(interior.len()) else { continue };
        let mut v: Vec<LatticePoint> = boundary.iter().chain(&chosen).copied().collect();
        v.sort();
        for t in triangulations(polygon, &v) {
            merge_parallelograms(&t, merges, &mut found);
        }
    }
    found
        .into_iter()
        .map(|faces| Subdivision::from_faces(polygon.clone(), faces).expect("faces tile the polygon"))
        .collect()
}

/// Every triangulation of `polygon` with vertex set `v`, by flips from one
/// obtained by a perturbed concave lift.
fn triangulations(polygon: &LatticePolygon, v: &[LatticePoint]) -> Vec<Vec<Triangle>> {
    let Some(start) = lifted_triangulation(polygon, v) else { return Vec::new() };
    let mut seen: BTreeSet<Vec<Triangle>> = BTreeSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(t) = queue.pop_front() {
        for next in flips(&t) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn lifted_triangulation(polygon: &LatticePolygon, v: &[LatticePoint]) -> Option<Vec<Triangle>> {
    // Distinct lattice points differ by at least 1 in squared distance, so a
    // paraboloid scaled by `big` keeps every point of `v` a vertex under
    // perturbations smaller than `big / 2`.
    let big = 1i64 << 20;
    let floor = -big * polygon.lattice_points().iter().map(|p| p.x * p.x + p.y * p.y).max().unwrap_or(0) - big;
    for attempt in 0..64u64 {
        let w = WeightFunction::from_fn(polygon, |p| {
            if v.binary_search(&p).is_err() {
                return int_rat(floor);
            }
            let key = (p.x as u64).wrapping_mul(0x1_0000_0001) ^ (p.y as u64).rotate_left(32) ^ attempt.wrapping_mul(0x5bd1_e995);
            int_rat(-big * (p.x * p.x + p.y * p.y) + (splitmix64(key) % 1024) as i64)
        });
        let s = concave_hull(polygon, &w).ok()?.subdivision;
        if s.flags().triangular && s.vertices() == v {
            let mut t: Vec<Triangle> = s
                .faces()
                .iter()
                .map(|f| triangle([f.vertices()[0], f.vertices()[1], f.vertices()[2]]))
                .collect();
            t.sort();
            return Some(t);
        }
    }
    None
}

/// Interior edges of a triangulation with the apexes of the two triangles
/// on either side, as `(u, w, t1, c1, t2, c2)` with triangle indices.
fn inner_edges(t: &[Triangle]) -> Vec<(LatticePoint, LatticePoint, usize, LatticePoint, usize, LatticePoint)> {
    let mut sides: BTreeMap<(LatticePoint, LatticePoint), Vec<(usize, LatticePoint)>> = BTreeMap::new();
    for (i, tri) in t.iter().enumerate() {
        for k in 0..3 {
            let (a, b, c) = (tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]);
            sides.entry((a.min(b), a.max(b))).or_default().push((i, c));
        }
    }
    sides
        .into_iter()
        .filter(|(_, s)| s.len() == 2)
        .map(|((u, w), s)| (u, w, s[0].0, s[0].1, s[1].0, s[1].1))
        .collect()
}

fn flips(t: &[Triangle]) -> Vec<Vec<Triangle>> {
    let mut out = Vec::new();
    for (u, w, i, c1, j, c2) in inner_edges(t) {
        // the quadrilateral is strictly convex iff the diagonals cross
        if orient(c1, c2, u).signum() * orient(c1, c2, w).signum() >= 0 {
            continue;
        }
        let mut next: Vec<Triangle> =
            t.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, tri)| *tri).collect();
        next.push(triangle([c1, c2, u]));
        next.push(triangle([c1, c2, w]));
        next.sort();
        out.push(next);
    }
    out
}

/// Adds every face list obtained by merging `merges` disjoint pairs of
/// triangles that form parallelograms.
fn merge_parallelograms(t: &[Triangle], merges: usize, found: &mut BTreeSet<Vec<LatticePolygon>>) {
    let pairs: Vec<(usize, usize, [LatticePoint; 4])> = inner_edges(t)
        .into_iter()
        .filter(|&(u, w, _, c1, _, c2)| c1 + c2 == u + w)
        .map(|(u, w, i, c1, j, c2)| (i, j, [u, c1, w, c2]))
        .collect();
    let mut chosen = Vec::new();
    pick(t, &pairs, 0, merges, &mut chosen, found);

    fn pick(
        t: &[Triangle],
        pairs: &[(usize, usize, [LatticePoint; 4])],
        from: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        found: &mut BTreeSet<Vec<LatticePolygon>>,
    ) {
        if left == 0 {
            let used: BTreeSet<usize> = chosen.iter().flat_map(|&k| [pairs[k].0, pairs[k].1]).collect();
            let mut faces: Vec<LatticePolygon> = chosen
                .iter()
                .map(|&k| LatticePolygon::from_points(&pairs[k].2).expect("parallelogram"))
                .chain(
                    t.iter()
                        .enumerate()
                        .filter(|(i, _)| !used.contains(i))
                        .map(|(_, tri)| LatticePolygon::from_points(tri).expect("triangle")),
                )
                .collect();
            faces.sort();
            found.insert(faces);
            return;
        }
        for k in from..pairs.len() {
            let (i, j, _) = pairs[k];
            if chosen.iter().any(|&c| [pairs[c].0, pairs[c].1].iter().any(|x| *x == i || *x == j)) {
                continue;
            }
            chosen.push(k);
            pick(t, pairs, k + 1, left - 1, chosen, found);
            chosen.pop();
        }
    }
}

// ---------------------------------------------------------------------------
// solving for curves of a given type

/// Linear data shared by all point assignments on one subdivision.
struct TypeSystem<'a> {
    s: &'a Subdivision,
    points: Vec<[Rational; 2]>,
    equalities: Vec<Vec<Rational>>,
    concavity: Vec<Vec<Rational>>,
}

enum Outcome {
    Curve(CountedSolution),
    Rejected,
    Degenerate(&'static str),
}

impl<'a> TypeSystem<'a> {
    fn new(s: &'a Subdivision, config: &PointConfiguration) -> Self {
        let n = s.vertices().len();
        let mut equalities = s.affine_relations();
        let mut pin = vec![Rational::zero(); n];
        pin[0] = Rational::one();
        equalities.push(pin);
        Self {
            s,
            points: config.points.iter().map(PlanePoint::as_array).collect(),
            equalities,
            concavity: s.concavity_rows(),
        }
    }

    fn n(&self) -> usize {
        self.s.vertices().len()
    }

    /// `ω(a) - ω(a') = (a' - a)·q` for the edge `a a'` through point `q`.
    fn incidence_row(&self, point: usize, edge: usize) -> (Vec<Rational>, Rational) {
        let seg = self.s.edges()[edge].segment;
        let (a, b) = (seg.start(), seg.end());
        let mut row = vec![Rational::zero(); self.n()];
        row[self.s.vertex_index(a)] = Rational::one();
        row[self.s.vertex_index(b)] = -Rational::one();
        (row, (b - a).dot_rational(&self.points[point]))
    }

    /// Rows `r` with `r·ω > 0` saying that the maximum of `a·q + ω(a)`
    /// over vertices is attained only on the edge.
    fn separation_rows(&self, point: usize, edge: usize) -> Vec<(Vec<Rational>, Rational)> {
        let seg = self.s.edges()[edge].segment;
        let a = seg.start();
        let q = &self.points[point];
        let ia = self.s.vertex_index(a);
        self.s
            .vertices()
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != seg.start() && b != seg.end())
            .map(|(ib, &b)| {
                // a·q + ω(a) > b·q + ω(b)
                let mut row = vec![Rational::zero(); self.n()];
                row[ia] += Rational::one();
                row[ib] -= Rational::one();
                (row, (b - a).dot_rational(q))
            })
            .collect()
    }

    /// LP with the equalities, the incidences of `assignment` and all strict
    /// inequalities.
    fn open_cone_feasible(&self, assignment: &[(usize, usize)]) -> bool {
        let mut sys = LinearSystem::new(self.n());
        for row in &self.equalities {
            sys.add_eq(row.clone(), Rational::zero());
        }
        for row in &self.concavity {
            sys.add_gt(row.clone(), Rational::zero());
        }
        for &(p, e) in assignment {
            let (row, rhs) = self.incidence_row(p, e);
            sys.add_eq(row, rhs);
            for (row, rhs) in self.separation_rows(p, e) {
                sys.add_gt(row, rhs);
            }
        }
        rational_lp_feasible(&sys).is_some()
    }

    /// Solves for the curve with the given complete assignment of points
    /// to edges.
    fn solve(&self, assignment: &[(usize, usize)], polygon: &LatticePolygon) -> Result<Outcome> {
        let mut rows = self.equalities.clone();
        let mut rhs = vec![Rational::zero(); rows.len()];
        for &(p, e) in assignment {
            let (row, b) = self.incidence_row(p, e);
            rows.push(row);
            rhs.push(b);
        }
        let x = match solve_linear(&rows, &rhs, self.n()) {
            LinearSolution::Inconsistent => return Ok(Outcome::Rejected),
            LinearSolution::Underdetermined(_) => {
                return Ok(if self.open_cone_feasible(assignment) {
                    Outcome::Degenerate("a family of curves passes through the points")
                } else {
                    Outcome::Rejected
                });
            }
            LinearSolution::Unique(x) => x,
        };
        let dot = |row: &[Rational]| row.iter().zip(&x).map(|(a, b)| a * b).sum::<Rational>();
        let mut tie = false;
        for row in &self.concavity {
            let v = dot(row);
            if v.is_negative() {
                return Ok(Outcome::Rejected);
            }
            tie |= v.is_zero();
        }
        for &(p, e) in assignment {
            for (row, bound) in self.separation_rows(p, e) {
                let v = dot(&row);
                if v < bound {
                    return Ok(Outcome::Rejected);
                }
                tie |= v == bound;
            }
        }
        if tie {
            return Ok(Outcome::Degenerate("a point lies on a curve vertex or the curve type degenerates"));
        }
        let omega = self.s.extend_vertex_values(&x);
        let hull = concave_hull(polygon, &omega)?;
        if hull.subdivision != *self.s {
            return Err(Error::Internal("solution does not induce its subdivision".to_string()));
        }
        for &(p, _) in assignment {
            let q = PlanePoint::new(self.points[p][0].clone(), self.points[p][1].clone());
            if !passes_through(polygon, &omega, &q)? {
                return Err(Error::Internal("solution misses a point".to_string()));
            }
        }
        let mut sorted = assignment.to_vec();
        sorted.sort();
        Ok(Outcome::Curve(CountedSolution {
            omega,
            subdivision: self.s.clone(),
            assignment: sorted.iter().map(|&(_, e)| self.s.edges()[e].segment).collect(),
            mu: mikhalkin_multiplicity(self.s),
        }))
    }
}

/// All curves through the configuration whose dual subdivision is `s`.
///
/// Raises `ConfigDegenerate` when some assignment has a degenerate
/// solution, so that the caller can reseed.
pub fn solve_candidate(spec: &SeveriSpec, config: &PointConfiguration, s: &Subdivision) -> Result<Vec<CountedSolution>> {
    check_size(spec, config)?;
    let sys = TypeSystem::new(s, config);
    let mut assignments = Vec::new();
    match config.line() {
        Some((d, order)) => line_assignments(s, d, &order, &mut assignments),
        None => {
            let mut used = vec![false; s.edges().len()];
            let mut current = Vec::new();
            cone_assignments(&sys, &mut used, &mut current, &mut assignments);
        }
    }
    let mut out = Vec::new();
    for a in assignments {
        match sys.solve(&a, spec.polygon())? {
            Outcome::Curve(c) => out.push(c),
            Outcome::Rejected => {}
            Outcome::Degenerate(why) => return Err(Error::ConfigDegenerate(why.to_string())),
        }
    }
    Ok(out)
}

/// Assignments for points on a line with direction `d`, visited in the
/// given order.
///
/// Along the line `q(t) = q0 + t·d` the maximizers of `a·q(t) + ω(a)` have
/// nondecreasing `a·d`, so the edges through consecutive points occupy
/// consecutive, overlap-free ranges of `a·d`.
fn line_assignments(s: &Subdivision, d: LatticePoint, order: &[usize], out: &mut Vec<Vec<(usize, usize)>>) {
    let ranges: Vec<(i128, i128)> = s
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (e.segment.start().dot(d), e.segment.end().dot(d));
            (a.min(b), a.max(b))
        })
        .collect();
    let mut chain = Vec::new();
    extend(&ranges, order, i128::MIN, &mut chain, out);

    fn extend(ranges: &[(i128, i128)], order: &[usize], low: i128, chain: &mut Vec<usize>, out: &mut Vec<Vec<(usize, usize)>>) {
        let k = chain.len();
        if k == order.len() {
            out.push(order.iter().copied().zip(chain.iter().copied()).collect());
            return;
        }
        for (e, &(lo, hi)) in ranges.iter().enumerate() {
            if lo >= low && !chain.contains(&e) {
                chain.push(e);
                extend(ranges, order, hi, chain, out);
                chain.pop();
            }
        }
    }
}

/// Assignments for arbitrary configurations, pruned by feasibility of the
/// open cone after each choice.
fn cone_assignments(sys: &TypeSystem<'_>, used: &mut [bool], current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    let p = current.len();
    if p == sys.points.len() {
        out.push(current.clone());
        return;
    }
    for e in 0..used.len() {
        if used[e] {
            continue;
        }
        current.push((p, e));
        // the last level is decided exactly by the linear solve
        if p + 1 == sys.points.len() || sys.open_cone_feasible(current) {
            used[e] = true;
            cone_assignments(sys, used, current, out);
            used[e] = false;
        }
        current.pop();
    }
}

// ---------------------------------------------------------------------------
// lattice paths

/// `λ(a) = a_x + D·a_y` with `D` exceeding the width, injective on the
/// lattice points.
fn path_functional(polygon: &LatticePolygon) -> impl Fn(LatticePoint) -> i128 {
    let xs = polygon.vertices().iter().map(|v| v.x);
    let width = (xs.clone().max().unwrap_or(0) - xs.min().unwrap_or(0)) as i128;
    move |a: LatticePoint| a.x as i128 + (width + 1) * a.y as i128
}

/// Increasing lattice paths with `dim Sev` steps and nonzero multiplicity.
pub fn lattice_paths(spec: &SeveriSpec) -> Vec<CountedPath> {
    let polygon = spec.polygon();
    let lambda = path_functional(polygon);
    let mut pts = polygon.lattice_points();
    pts.sort_by_key(|&a| lambda(a));
    let (p, q) = (pts[0], pts[pts.len() - 1]);
    let r = spec.dimension();

    let mut cycle: Vec<LatticePoint> = Vec::new();
    for e in polygon.edges() {
        let pts = e.lattice_points();
        cycle.extend_from_slice(&pts[..pts.len() - 1]);
    }
    let start = cycle.iter().position(|&x| x == p).expect("extreme point on the boundary");
    cycle.rotate_left(start);
    let end = cycle.iter().position(|&x| x == q).expect("extreme point on the boundary");
    let counterclockwise: Vec<LatticePoint> = cycle[..=end].to_vec();
    let mut clockwise: Vec<LatticePoint> = cycle[end..].to_vec();
    clockwise.push(p);
    clockwise.reverse();

    let mut plus = PathMultiplicity { polygon, sign: 1, target: clockwise, memo: BTreeMap::new() };
    let mut minus = PathMultiplicity { polygon, sign: -1, target: counterclockwise, memo: BTreeMap::new() };
    let mut out = Vec::new();
    let inner = &pts[1..pts.len() - 1];
    for mask in subsets(inner.len(), r - 1) {
        let mut path = vec![p];
        path.extend(mask.iter().map(|&i| inner[i]));
        path.push(q);
        let mu_plus = plus.get(&path);
        if mu_plus.is_zero() {
            continue;
        }
        let mu_minus = minus.get(&path);
        if !mu_minus.is_zero() {
            out.push(CountedPath { path, mu_plus, mu_minus });
        }
    }
    out
}

/// Increasing index lists of length `k` from `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

/// Mikhalkin's recursive path multiplicity. With `sign = 1` it cuts the
/// first left turn and ends on the clockwise boundary path; `sign = -1`
/// mirrors both.
struct PathMultiplicity<'a> {
    polygon: &'a LatticePolygon,
    sign: i128,
    target: Vec<LatticePoint>,
    memo: BTreeMap<Vec<LatticePoint>, Int>,
}

impl PathMultiplicity<'_> {
    fn get(&mut self, path: &[LatticePoint]) -> Int {
        if path == self.target.as_slice() {
            return Int::one();
        }
        if let Some(m) = self.memo.get(path) {
            return m.clone();
        }
        let turn = (1..path.len().saturating_sub(1))
            .map(|j| (j, orient(path[j - 1], path[j], path[j + 1])))
            .find(|&(_, o)| o * self.sign > 0);
        let m = match turn {
            None => Int::zero(),
            Some((j, o)) => {
                let (a, b, c) = (path[j - 1], path[j], path[j + 1]);
                let mut cut = path.to_vec();
                cut.remove(j);
                let mut m = Int::from(o.unsigned_abs()) * self.get(&cut);
                let reflected = a + c - b;
                if self.polygon.contains(reflected) {
                    let mut other = path.to_vec();
                    other[j] = reflected;
                    m += self.get(&other);
                }
                m
            }
        };
        self.memo.insert(path.to_vec(), m.clone());
        m
    }
}
