//! Dimension, support test and weights of tropical Severi varieties.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use crate::arith::{Int, Rational};
use crate::error::{Error, Result};
use crate::lattice::LatticePolygon;
use crate::subdivision::{concave_hull, Subdivision, WeightFunction};
use crate::torus_group::build_matrix;

/// Curves of degree `polygon` with `delta` nodes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SeveriSpec {
    polygon: LatticePolygon,
    delta: usize,
}

impl SeveriSpec {
    pub fn new(polygon: LatticePolygon, delta: usize) -> Result<Self> {
        let interior = polygon.interior_points().len();
        if delta > interior {
            return Err(Error::DeltaTooLarge { delta, interior });
        }
        Ok(Self { polygon, delta })
    }

    /// Allows `δ` beyond the interior point count, where every curve is
    /// reducible. Counting through points still needs `dimension() ≥ 1`.
    pub fn allowing_reducible(polygon: LatticePolygon, delta: usize) -> Result<Self> {
        let points = polygon.lattice_points().len();
        if delta + 2 > points {
            return Err(Error::DeltaExceedsDimension { delta, points });
        }
        Ok(Self { polygon, delta })
    }

    pub fn polygon(&self) -> &LatticePolygon {
        &self.polygon
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// `|Δ ∩ Z²| - δ - 1`
    pub fn dimension(&self) -> usize {
        self.polygon.lattice_points().len() - self.delta - 1
    }
}

pub fn severi_dimension(spec: &SeveriSpec) -> usize {
    spec.dimension()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SupportVerdict {
    /// Rank exceeds the Severi dimension.
    Rejected,
    /// Rank equals the dimension and the subdivision is simple and nodal.
    MaxRankCandidate,
    /// Not decided here.
    LowRank,
}

/// Classifies a weight vector by the rank and type of its subdivision.
pub fn support_test(spec: &SeveriSpec, omega: &WeightFunction) -> Result<SupportVerdict> {
    let s = concave_hull(&spec.polygon, omega)?.subdivision;
    Ok(verdict(spec, &s))
}

fn verdict(spec: &SeveriSpec, s: &Subdivision) -> SupportVerdict {
    // a concave hull is regular, so the affine dimension is the rank
    let rank = s.affine_dimension();
    let dim = spec.dimension();
    let f = s.flags();
    if rank > dim {
        SupportVerdict::Rejected
    } else if rank == dim && f.simple && f.nodal {
        SupportVerdict::MaxRankCandidate
    } else {
        SupportVerdict::LowRank
    }
}

/// Partition of edge indices generated by identifying opposite sides of
/// every parallelogram. Classes are sorted by their smallest member.
pub fn edge_equivalence_classes(s: &Subdivision) -> Result<Vec<Vec<usize>>> {
    if !s.flags().nodal {
        return Err(Error::NotNodal);
    }
    let n = s.edges().len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in s.parallelograms() {
        let v = s.faces()[i].vertices();
        let idx = |a: usize, b: usize| s.edge_index(v[a], v[b]).expect("face edge");
        for (e, f) in [(idx(0, 1), idx(2, 3)), (idx(1, 2), idx(3, 0))] {
            let (a, b) = (find(&mut parent, e), find(&mut parent, f));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    Ok(classes.into_values().collect())
}

/// `∏ 2·area` over the triangles.
pub fn mikhalkin_multiplicity(s: &Subdivision) -> Int {
    s.triangles().iter().map(|&i| Int::from(s.faces()[i].twice_area())).fold(Int::one(), |a, b| a * b)
}

/// Weight data of a simple nodal subdivision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubdivisionWeight {
    pub l_v: Int,
    pub edge_classes: Vec<Vec<usize>>,
    pub m_sev: Int,
    pub mu: Int,
    pub xi: Rational,
    pub has_non_primitive_parallelogram: bool,
}

/// `m = l(V) · ∏ lengths of class representatives`, `μ`, and `ξ = μ / m`.
pub fn subdivision_weight(s: &Subdivision) -> Result<SubdivisionWeight> {
    let pres = build_matrix(s)?;
    let edge_classes = edge_equivalence_classes(s)?;
    let lengths = edge_classes
        .iter()
        .map(|c| Int::from(s.edges()[c[0]].segment.lattice_length()))
        .fold(Int::one(), |a, b| a * b);
    let m_sev = &pres.l_v * lengths;
    let mu = mikhalkin_multiplicity(s);
    let xi = Rational::new(mu.clone(), m_sev.clone());
    Ok(SubdivisionWeight {
        l_v: pres.l_v.clone(),
        edge_classes,
        m_sev,
        mu,
        xi,
        has_non_primitive_parallelogram: pres.has_non_primitive_parallelogram(),
    })
}

/// Everything computed about one candidate weight vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CVectorReport {
    pub omega: WeightFunction,
    pub subdivision: Subdivision,
    pub rank: usize,
    pub dimension: usize,
    pub verdict: SupportVerdict,
    pub in_support: bool,
    pub l_v: Int,
    pub m_sev: Int,
    pub mu: Int,
    pub xi: Rational,
    pub edge_classes: Vec<Vec<usize>>,
    /// Set when a non-primitive parallelogram made the weight depend on the
    /// caller's regular-point assertion.
    pub assumed_regular_point: bool,
}

/// Weight of the tropical Severi variety at a maximal-rank point.
pub fn severi_weight(spec: &SeveriSpec, omega: &WeightFunction, assume_regular_point: bool) -> Result<CVectorReport> {
    let s = concave_hull(&spec.polygon, omega)?.subdivision;
    let f = s.flags();
    if !(f.simple && f.nodal) {
        return Err(Error::NotSimpleNodal);
    }
    let rank = s.affine_dimension();
    let dimension = spec.dimension();
    if rank != dimension {
        return Err(Error::NotMaxRank { rank, dim: dimension });
    }
    let w = subdivision_weight(&s)?;
    if w.has_non_primitive_parallelogram && !assume_regular_point {
        return Err(Error::RegularPointHypothesisRequired);
    }
    debug_assert_eq!(&w.xi * Rational::from_integer(w.m_sev.clone()), Rational::from_integer(w.mu.clone()));
    Ok(CVectorReport {
        omega: omega.clone(),
        rank,
        dimension,
        verdict: SupportVerdict::MaxRankCandidate,
        in_support: true,
        l_v: w.l_v,
        m_sev: w.m_sev,
        mu: w.mu,
        xi: w.xi,
        edge_classes: w.edge_classes,
        assumed_regular_point: w.has_non_primitive_parallelogram,
        subdivision: s,
    })
}
