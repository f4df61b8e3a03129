//! Valuations of truncated Puiseux series and initial forms of Laurent
//! polynomials over them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{GaussRational, Rational};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::subdivision::{concave_hull, WeightFunction};

/// Finite sum `Σ c_τ t^τ` with rational exponents and Gaussian rational
/// coefficients. Terms are kept with strictly decreasing exponents and
/// non-zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PuiseuxScalar {
    terms: Vec<(Rational, GaussRational)>,
}

impl PuiseuxScalar {
    pub fn new(terms: impl IntoIterator<Item = (Rational, GaussRational)>) -> Self {
        let mut map: BTreeMap<Rational, GaussRational> = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_default();
            *slot = &*slot + &c;
        }
        Self { terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::new([(Rational::zero(), c)])
    }

    pub fn monomial(exponent: Rational, c: GaussRational) -> Self {
        Self::new([(exponent, c)])
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs, largest exponent first.
    pub fn terms(&self) -> &[(Rational, GaussRational)] {
        &self.terms
    }

    /// Largest exponent present.
    pub fn valuation(&self) -> Result<&Rational> {
        self.terms.first().map(|(e, _)| e).ok_or(Error::ZeroScalar)
    }

    /// Coefficient of the largest exponent.
    pub fn leading_coefficient(&self) -> Result<&GaussRational> {
        self.terms.first().map(|(_, c)| c).ok_or(Error::ZeroScalar)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.terms.iter().chain(&o.terms).cloned())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.terms
                .iter()
                .flat_map(|(e1, c1)| o.terms.iter().map(move |(e2, c2)| (e1 + e2, c1 * c2))),
        )
    }
}

/// Valuation of a non-zero scalar.
pub fn valuation(b: &PuiseuxScalar) -> Result<Rational> {
    b.valuation().cloned()
}

/// Laurent polynomial in `x, y` with Puiseux coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<LatticePoint, PuiseuxScalar>,
}

impl LaurentPoly {
    /// Repeated exponents are summed and zero coefficients dropped.
    pub fn new(terms: impl IntoIterator<Item = (LatticePoint, PuiseuxScalar)>) -> Self {
        let mut map: BTreeMap<LatticePoint, PuiseuxScalar> = BTreeMap::new();
        for (a, c) in terms {
            let slot = map.entry(a).or_default();
            *slot = slot.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    /// Polynomial with constant (exponent 0) coefficients.
    pub fn from_complex(p: &ComplexPoly) -> Self {
        Self::new(p.terms().map(|(a, c)| (a, PuiseuxScalar::constant(c.clone()))))
    }

    pub fn terms(&self) -> impl Iterator<Item = (LatticePoint, &PuiseuxScalar)> + '_ {
        self.terms.iter().map(|(a, c)| (*a, c))
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().copied().collect()
    }

    pub fn coefficient(&self, a: LatticePoint) -> Option<&PuiseuxScalar> {
        self.terms.get(&a)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.terms.iter().flat_map(|(a, c)| o.terms.iter().map(move |(b, d)| (*a + *b, c.mul(d)))))
    }

    /// Convex hull of the support; errors unless it is two-dimensional.
    pub fn newton_polygon(&self) -> Result<LatticePolygon> {
        LatticePolygon::from_points(&self.support())
    }

    /// The concave hull `ν_f` of `a ↦ Val(c_a)` on the Newton polygon.
    ///
    /// Lattice points outside the support get a value below every
    /// valuation, which leaves the hull unchanged.
    pub fn valuation_hull(&self) -> Result<(LatticePolygon, crate::subdivision::ConcaveHullResult)> {
        let newton = self.newton_polygon()?;
        let vals: BTreeMap<LatticePoint, Rational> =
            self.terms.iter().map(|(a, c)| Ok((*a, valuation(c)?))).collect::<Result<_>>()?;
        let floor = vals.values().min().cloned().unwrap_or_else(Rational::zero) - Rational::from_integer(1.into());
        let psi = WeightFunction::from_fn(&newton, |a| vals.get(&a).cloned().unwrap_or_else(|| floor.clone()));
        let hull = concave_hull(&newton, &psi)?;
        Ok((newton, hull))
    }

    /// Reduced coefficients `c°_a`: the leading coefficient where the hull
    /// is attained, omitted elsewhere.
    fn reduced_coefficients(&self, hull: &WeightFunction) -> Result<BTreeMap<LatticePoint, GaussRational>> {
        let mut out = BTreeMap::new();
        for (a, c) in &self.terms {
            if hull.get(*a) == Some(c.valuation()?) {
                out.insert(*a, c.leading_coefficient()?.clone());
            }
        }
        Ok(out)
    }
}

/// Laurent polynomial with Gaussian rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ComplexPoly {
    terms: BTreeMap<LatticePoint, GaussRational>,
}

impl ComplexPoly {
    /// Repeated exponents are summed and zero coefficients dropped.
    pub fn new(terms: impl IntoIterator<Item = (LatticePoint, GaussRational)>) -> Self {
        let mut map: BTreeMap<LatticePoint, GaussRational> = BTreeMap::new();
        for (a, c) in terms {
            let slot = map.entry(a).or_default();
            *slot = &*slot + &c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (LatticePoint, &GaussRational)> + '_ {
        self.terms.iter().map(|(a, c)| (*a, c))
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().copied().collect()
    }

    pub fn coefficient(&self, a: LatticePoint) -> GaussRational {
        self.terms.get(&a).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.terms.iter().flat_map(|(a, c)| o.terms.iter().map(move |(b, d)| (*a + *b, c * d))))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::new([(LatticePoint::new(0, 0), GaussRational::one())]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Terms whose exponents satisfy `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(LatticePoint) -> bool) -> Self {
        Self { terms: self.terms.iter().filter(|(a, _)| keep(**a)).map(|(a, c)| (*a, c.clone())).collect() }
    }
}

/// `in_ω f`: the reduced terms maximizing `a·ω + ν_f(a)`.
pub fn initial_form(f: &LaurentPoly, omega: &[Rational; 2]) -> Result<ComplexPoly> {
    if f.is_zero() {
        return Err(Error::ZeroScalar);
    }
    // one-dimensional supports have no two-dimensional Newton polygon; use the
    // support values directly, which is what the hull would give on a segment
    let hull_values: BTreeMap<LatticePoint, Rational> = match f.valuation_hull() {
        Ok((_, hull)) => hull.hull_values.iter().map(|(a, v)| (a, v.clone())).collect(),
        Err(_) => lower_dimensional_hull(f)?,
    };
    let hull = WeightFunction::new(hull_values);
    let reduced = f.reduced_coefficients(&hull)?;
    let best = hull.iter().map(|(a, v)| a.dot_rational(omega) + v).max().expect("non-empty");
    Ok(ComplexPoly::new(
        reduced
            .into_iter()
            .filter(|(a, _)| a.dot_rational(omega) + hull.get(*a).expect("hull point") == best),
    ))
}

/// Hull values for supports spanning at most a line: the one-dimensional
/// upper hull over the support points.
fn lower_dimensional_hull(f: &LaurentPoly) -> Result<BTreeMap<LatticePoint, Rational>> {
    let vals: Vec<(LatticePoint, Rational)> = f.terms().map(|(a, c)| Ok((a, valuation(c)?))).collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for (a, va) in &vals {
        // the hull at a is the best interpolation between support points around it
        let mut best = va.clone();
        for (p, vp) in &vals {
            for (q, vq) in &vals {
                let (d, e) = (*q - *p, *a - *p);
                if crate::lattice::det(d, e) != 0 || d.is_zero() {
                    continue;
                }
                let t = Rational::new(e.dot(d).into(), d.dot(d).into());
                if t > Rational::zero() && t < Rational::from_integer(1.into()) {
                    let v = vp + (vq - vp) * &t;
                    if v > best {
                        best = v;
                    }
                }
            }
        }
        out.insert(*a, best);
    }
    Ok(out)
}

/// For every face of the subdivision induced by `ν_f`, the reduced terms of
/// `f` on that face.
pub fn face_polynomials(f: &LaurentPoly) -> Result<Vec<(LatticePolygon, ComplexPoly)>> {
    let (_, hull) = f.valuation_hull()?;
    let reduced = f.reduced_coefficients(&hull.hull_values)?;
    Ok(hull
        .subdivision
        .faces()
        .iter()
        .map(|face| {
            let poly = ComplexPoly::new(reduced.iter().filter(|(a, _)| face.contains(**a)).map(|(a, c)| (*a, c.clone())));
            (face.clone(), poly)
        })
        .collect())
}
