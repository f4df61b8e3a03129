//! Invariant suites over seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use tropsev_core::arith::int_rat;
use tropsev_core::dual_curve::{check_balancing, dualize};
use tropsev_core::enumeration::Strategy;
use tropsev_core::intersection::{mixed_volume, stable_intersect, total_multiplicity, translate};
use tropsev_core::severi::{subdivision_weight, SeveriSpec};
use tropsev_core::subdivision::concave_hull;
use tropsev_core::torus_group::build_matrix;
use tropsev_core::{LatticePoint, LatticePolygon, Rational, Subdivision, WeightFunction};

use crate::parallel::count_reseeding;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self { name, ..Self::default() }
    }

    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub instances: usize,
    pub suites: Vec<SuiteResult>,
}

impl CheckReport {
    pub fn failures(&self) -> usize {
        self.suites.iter().map(|s| s.failed).sum()
    }
}

/// Convex hull of a few random points in `[0, side]²` with at most
/// `max_points` lattice points.
pub fn random_polygon(rng: &mut impl Rng, side: i64, max_points: usize) -> LatticePolygon {
    loop {
        let n = rng.gen_range(3..7);
        let pts: Vec<LatticePoint> =
            (0..n).map(|_| LatticePoint::new(rng.gen_range(0..=side), rng.gen_range(0..=side))).collect();
        if let Ok(p) = LatticePolygon::from_points(&pts) {
            if p.lattice_points().len() <= max_points {
                return p;
            }
        }
    }
}

const FOLDS: [(i64, i64); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];

/// Random noise and concave folds; crossing folds produce parallelograms.
pub fn random_weight(rng: &mut impl Rng, poly: &LatticePolygon) -> WeightFunction {
    let noise = rng.gen_bool(0.4);
    let folds: Vec<((i64, i64), i64, i64)> = (0..rng.gen_range(0..5))
        .map(|_| (*FOLDS.choose(rng).expect("nonempty"), rng.gen_range(0..10), rng.gen_range(1..4)))
        .collect();
    WeightFunction::from_fn(poly, |a| {
        let mut v = if noise { rng.gen_range(-4..=4) } else { 0 };
        for &((dx, dy), c, k) in &folds {
            v -= k * (2 * (dx * a.x + dy * a.y) - c + 2).abs();
        }
        int_rat(v)
    })
}

/// A sheared lattice box cut by folds parallel to its sides.
pub fn random_box_subdivision(rng: &mut impl Rng) -> Subdivision {
    let (a, b, shear) = (rng.gen_range(1..=4), rng.gen_range(1..=3), rng.gen_range(-2..=2));
    let map = |x: i64, y: i64| LatticePoint::new(x + shear * y, y);
    let poly = LatticePolygon::new(vec![map(0, 0), map(a, 0), map(a, b), map(0, b)]).expect("box");
    let folds: Vec<(bool, i64, i64)> =
        (0..rng.gen_range(1..5)).map(|_| (rng.gen_bool(0.5), rng.gen_range(1..8), rng.gen_range(1..4))).collect();
    let diagonal = rng.gen_bool(0.5).then(|| (rng.gen_bool(0.5), rng.gen_range(-4..6)));
    let w = WeightFunction::from_fn(&poly, |q| {
        let (x, y) = (q.x - shear * q.y, q.y);
        let mut v = 0;
        for &(horizontal, c, k) in &folds {
            v -= k * (2 * if horizontal { x } else { y } - c).abs();
        }
        if let Some((up, c)) = diagonal {
            v -= (2 * if up { x - y } else { x + y } - c).abs();
        }
        int_rat(v)
    });
    concave_hull(&poly, &w).expect("weights cover the polygon").subdivision
}

/// A regular nodal subdivision, alternating between the two generators.
pub fn random_nodal_subdivision(rng: &mut impl Rng) -> Subdivision {
    loop {
        let s = if rng.gen_bool(0.5) {
            let poly = random_polygon(rng, 4, 15);
            let w = random_weight(rng, &poly);
            concave_hull(&poly, &w).expect("weights cover the polygon").subdivision
        } else {
            random_box_subdivision(rng)
        };
        if s.flags().nodal {
            return s;
        }
    }
}

/// Runs every suite on `instances` random instances drawn from `seed`.
///
/// The last suite also checks every curve counted for lines, one-nodal
/// conics and one-nodal cubics.
pub fn run_suites(seed: u64, instances: usize) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick = SuiteResult::new("pick_euler_area");
    let mut rank = SuiteResult::new("nodal_rank_formula");
    let mut balancing = SuiteResult::new("balancing");
    let mut group = SuiteResult::new("group_dimension");
    let mut bernstein = SuiteResult::new("bernstein");
    let mut weights = SuiteResult::new("weight_identity");

    for _ in 0..instances {
        let poly = random_polygon(&mut rng, 4, 15);
        let w = random_weight(&mut rng, &poly);
        let s = concave_hull(&poly, &w).expect("weights cover the polygon").subdivision;
        let twice: u128 = s.faces().iter().map(LatticePolygon::twice_area).sum();
        let (i, b) = (poly.interior_points().len() as u128, poly.boundary_points().len() as u128);
        pick.record(
            poly.twice_area() + 2 == 2 * i + b
                && twice == poly.twice_area()
                && s.vertices().len() + s.faces().len() == s.edges().len() + 1,
        );
        balancing.record(dualize(&poly, &w).map(|c| check_balancing(&c) && c.edges_consistent()).unwrap_or(false));

        let n = random_nodal_subdivision(&mut rng);
        let expected = n.vertices().len() - 1 - n.parallelograms().len();
        rank.record(n.rank().ok() == Some(expected) && n.rank_nodal_formula().ok() == Some(expected));
        group.record(build_matrix(&n).map(|g| g.dim_g == expected).unwrap_or(false));
        weights.record(
            subdivision_weight(&n)
                .map(|w| &w.xi * Rational::from_integer(w.m_sev.clone()) == Rational::from_integer(w.mu))
                .unwrap_or(false),
        );

        let p = random_polygon(&mut rng, 3, 8);
        let q = random_polygon(&mut rng, 3, 8);
        let shift = tropsev_core::dual_curve::PlanePoint::new(
            Rational::new(rng.gen_range(-40..=40).into(), rng.gen_range(1..=7).into()),
            Rational::new(rng.gen_range(-40..=40).into(), rng.gen_range(1..=7).into()),
        );
        let ok = (|| {
            let c1 = dualize(&p, &WeightFunction::zero(&p)).ok()?;
            let c2 = translate(&dualize(&q, &WeightFunction::zero(&q)).ok()?, &shift);
            Some(total_multiplicity(&stable_intersect(&c1, &c2)) as u128 == mixed_volume(&p, &q).ok()?)
        })();
        bernstein.record(ok == Some(true));
    }

    for (k, delta) in [(1, 0), (2, 1), (3, 1)] {
        let spec = SeveriSpec::allowing_reducible(LatticePolygon::standard_triangle(k), delta).expect("valid spec");
        match count_reseeding(&spec, seed, Strategy::SubdivisionSolve, 8) {
            Ok(r) => {
                for sol in &r.solutions {
                    weights.record(
                        subdivision_weight(&sol.subdivision)
                            .map(|w| {
                                w.mu == sol.mu && &w.xi * Rational::from_integer(w.m_sev.clone()) == Rational::from_integer(w.mu)
                            })
                            .unwrap_or(false),
                    );
                }
            }
            Err(_) => weights.record(false),
        }
    }

    CheckReport { seed, instances, suites: vec![pick, rank, balancing, group, bernstein, weights] }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_repeat() {
        let a = run_suites(3, 20);
        assert_eq!(a.failures(), 0, "{a:?}");
        assert!(a.suites.iter().all(|s| s.passed >= 20));
        assert_eq!(a, run_suites(3, 20));
    }
}
