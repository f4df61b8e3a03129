//! JSON input and output formats.
//!
//! Rationals are strings `"p/q"` (or `"p"`), lattice points are `[x, y]`
//! arrays and integers are numbers when they fit in an `i64`. No floats.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use tropsev_core::arith::{format_rational, parse_rational};
use tropsev_core::dual_curve::{PlanePoint, TropicalCurve};
use tropsev_core::enumeration::{CountedPath, CountedSolution, SeveriDegreeReport, Strategy};
use tropsev_core::intersection::IntersectionPoint;
use tropsev_core::lattice::Segment;
use tropsev_core::severi::CVectorReport;
use tropsev_core::subdivision::ConcaveHullResult;
use tropsev_core::torus_group::GroupPresentation;
use tropsev_core::{Int, LatticePoint, LatticePolygon, Rational, Subdivision, WeightFunction};

use crate::CliError;

pub type Point = [i64; 2];

pub fn point(p: LatticePoint) -> Point {
    [p.x, p.y]
}

pub fn rational(r: &Rational) -> String {
    format_rational(r)
}

pub fn integer(n: &Int) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}

pub fn plane_point(p: &PlanePoint) -> [String; 2] {
    [rational(&p.x), rational(&p.y)]
}

fn segment(s: &Segment) -> [Point; 2] {
    [point(s.start()), point(s.end())]
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

pub fn parse_plane_point(p: &[String; 2]) -> Result<PlanePoint, CliError> {
    let coord = |s: &str| parse_rational(s).map_err(|e| CliError::Schema(e.to_string()));
    Ok(PlanePoint::new(coord(&p[0])?, coord(&p[1])?))
}

// ---------------------------------------------------------------------------
// inputs

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonFile {
    pub vertices: Vec<Point>,
}

impl PolygonFile {
    pub fn polygon(&self) -> Result<LatticePolygon, CliError> {
        let pts: Vec<LatticePoint> = self.vertices.iter().map(|&[x, y]| LatticePoint::new(x, y)).collect();
        Ok(LatticePolygon::from_points(&pts)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    pub point: Point,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    pub weights: Vec<WeightEntry>,
}

impl WeightsFile {
    pub fn weights(&self) -> Result<WeightFunction, CliError> {
        let mut values = BTreeMap::new();
        for e in &self.weights {
            let v = parse_rational(&e.value).map_err(|e| CliError::Schema(e.to_string()))?;
            if values.insert(LatticePoint::new(e.point[0], e.point[1]), v).is_some() {
                return Err(CliError::Schema(format!("weight given twice at [{}, {}]", e.point[0], e.point[1])));
            }
        }
        Ok(WeightFunction::new(values))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubdivisionFile {
    pub faces: Vec<Vec<Point>>,
}

impl SubdivisionFile {
    pub fn subdivision(&self, polygon: LatticePolygon) -> Result<Subdivision, CliError> {
        let faces = self
            .faces
            .iter()
            .map(|f| PolygonFile { vertices: f.clone() }.polygon())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subdivision::from_faces(polygon, faces)?)
    }
}

// ---------------------------------------------------------------------------
// outputs

#[derive(Clone, Debug, Serialize)]
pub struct FlagsJson {
    pub triangular: bool,
    pub nodal: bool,
    pub simple: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeJson {
    pub segment: [Point; 2],
    pub left: Option<usize>,
    pub right: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubdivisionJson {
    pub polygon: Vec<Point>,
    pub faces: Vec<Vec<Point>>,
    pub edges: Vec<EdgeJson>,
    pub vertices: Vec<Point>,
    pub flags: FlagsJson,
}

impl SubdivisionJson {
    pub fn new(s: &Subdivision) -> Self {
        let f = s.flags();
        Self {
            polygon: s.polygon().vertices().iter().copied().map(point).collect(),
            faces: s.faces().iter().map(|f| f.vertices().iter().copied().map(point).collect()).collect(),
            edges: s
                .edges()
                .iter()
                .map(|e| EdgeJson { segment: segment(&e.segment), left: e.left, right: e.right })
                .collect(),
            vertices: s.vertices().iter().copied().map(point).collect(),
            flags: FlagsJson { triangular: f.triangular, nodal: f.nodal, simple: f.simple },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightJson {
    pub point: Point,
    pub value: String,
}

pub fn weights_json(w: &WeightFunction) -> Vec<WeightJson> {
    w.iter().map(|(a, v)| WeightJson { point: point(a), value: rational(v) }).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SubdivideReport {
    pub subdivision: SubdivisionJson,
    pub rank: usize,
    pub tight_points: Vec<Point>,
    pub hull_values: Vec<WeightJson>,
}

impl SubdivideReport {
    pub fn new(h: &ConcaveHullResult) -> Self {
        Self {
            subdivision: SubdivisionJson::new(&h.subdivision),
            // concave hulls are regular, so the rank is the affine dimension
            rank: h.subdivision.affine_dimension(),
            tight_points: h.tight_points.iter().copied().map(point).collect(),
            hull_values: weights_json(&h.hull_values),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveEdgeJson {
    pub from: usize,
    pub to: usize,
    pub direction: Point,
    pub weight: u64,
    pub dual: Option<[Point; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveRayJson {
    pub vertex: usize,
    pub direction: Point,
    pub weight: u64,
    pub dual: Option<[Point; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveJson {
    pub vertices: Vec<[String; 2]>,
    pub edges: Vec<CurveEdgeJson>,
    pub rays: Vec<CurveRayJson>,
    pub balanced: bool,
}

impl CurveJson {
    pub fn new(c: &TropicalCurve) -> Self {
        Self {
            vertices: c.vertices.iter().map(plane_point).collect(),
            edges: c
                .edges
                .iter()
                .map(|e| CurveEdgeJson {
                    from: e.from,
                    to: e.to,
                    direction: point(e.direction),
                    weight: e.weight,
                    dual: e.dual.as_ref().map(segment),
                })
                .collect(),
            rays: c
                .rays
                .iter()
                .map(|r| CurveRayJson {
                    vertex: r.vertex,
                    direction: point(r.direction),
                    weight: r.weight,
                    dual: r.dual.as_ref().map(segment),
                })
                .collect(),
            balanced: tropsev_core::dual_curve::check_balancing(c),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightReport {
    pub subdivision: SubdivisionJson,
    pub rank: usize,
    pub dimension: usize,
    pub verdict: String,
    pub in_support: bool,
    #[serde(rename = "l_V")]
    pub l_v: Value,
    pub m_sev: Value,
    pub mu: Value,
    pub xi: String,
    pub edge_classes: Vec<Vec<usize>>,
    pub assumed_regular_point: bool,
}

impl WeightReport {
    pub fn new(r: &CVectorReport) -> Self {
        Self {
            subdivision: SubdivisionJson::new(&r.subdivision),
            rank: r.rank,
            dimension: r.dimension,
            verdict: format!("{:?}", r.verdict),
            in_support: r.in_support,
            l_v: integer(&r.l_v),
            m_sev: integer(&r.m_sev),
            mu: integer(&r.mu),
            xi: rational(&r.xi),
            edge_classes: r.edge_classes.clone(),
            assumed_regular_point: r.assumed_regular_point,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialPointsJson {
    pub face: usize,
    pub points: Vec<Point>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub faces: Vec<Vec<Point>>,
    pub row_faces: Vec<(usize, usize)>,
    pub matrix: Vec<Vec<Value>>,
    pub snf: Vec<Value>,
    #[serde(rename = "l_V")]
    pub l_v: Value,
    #[serde(rename = "dim_G")]
    pub dim_g: usize,
    pub special_points: Vec<SpecialPointsJson>,
}

impl GroupReport {
    pub fn new(s: &Subdivision, g: &GroupPresentation) -> Self {
        Self {
            faces: s.faces().iter().map(|f| f.vertices().iter().copied().map(point).collect()).collect(),
            row_faces: g.row_faces.clone(),
            matrix: g.matrix.to_rows().iter().map(|r| r.iter().map(integer).collect()).collect(),
            snf: g.snf_diagonal().iter().map(integer).collect(),
            l_v: integer(&g.l_v),
            dim_g: g.dim_g,
            special_points: g
                .special_points
                .iter()
                .map(|(face, pts)| SpecialPointsJson { face: *face, points: pts.iter().copied().map(point).collect() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionPointJson {
    pub location: [String; 2],
    pub multiplicity: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectReport {
    pub points: Vec<IntersectionPointJson>,
    pub total: u64,
    pub mixed_volume: Value,
}

impl IntersectReport {
    pub fn new(points: &[IntersectionPoint], mixed_volume: u128) -> Self {
        Self {
            points: points
                .iter()
                .map(|p| IntersectionPointJson { location: plane_point(&p.location), multiplicity: p.multiplicity })
                .collect(),
            total: points.iter().map(|p| p.multiplicity).sum(),
            mixed_volume: integer(&Int::from(mixed_volume)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionJson {
    pub faces: Vec<Vec<Point>>,
    pub assignment: Vec<[Point; 2]>,
    pub mu: Value,
    pub omega: Vec<WeightJson>,
}

impl SolutionJson {
    pub fn new(s: &CountedSolution) -> Self {
        Self {
            faces: s.subdivision.faces().iter().map(|f| f.vertices().iter().copied().map(point).collect()).collect(),
            assignment: s.assignment.iter().map(segment).collect(),
            mu: integer(&s.mu),
            // only vertex values determine the curve
            omega: s
                .subdivision
                .vertices()
                .iter()
                .map(|&v| WeightJson { point: point(v), value: rational(s.omega.get(v).expect("vertex value")) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PathJson {
    pub path: Vec<Point>,
    pub mu_plus: Value,
    pub mu_minus: Value,
}

impl PathJson {
    pub fn new(p: &CountedPath) -> Self {
        Self {
            path: p.path.iter().copied().map(point).collect(),
            mu_plus: integer(&p.mu_plus),
            mu_minus: integer(&p.mu_minus),
        }
    }
}

pub fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::SubdivisionSolve => "subdivision",
        Strategy::PathCount => "path",
        Strategy::Both => "both",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub polygon: Vec<Point>,
    pub delta: usize,
    pub dimension: usize,
    pub strategy: &'static str,
    pub seed: u64,
    pub points: Vec<[String; 2]>,
    pub degree: Value,
    pub solutions: Vec<SolutionJson>,
    pub paths: Vec<PathJson>,
}

impl CountReport {
    pub fn new(r: &SeveriDegreeReport) -> Self {
        Self {
            polygon: r.spec.polygon().vertices().iter().copied().map(point).collect(),
            delta: r.spec.delta(),
            dimension: r.spec.dimension(),
            strategy: strategy_name(r.strategy),
            seed: r.configuration.seed,
            points: r.configuration.points.iter().map(plane_point).collect(),
            degree: integer(&r.degree),
            solutions: r.solutions.iter().map(SolutionJson::new).collect(),
            paths: r.paths.iter().map(PathJson::new).collect(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
