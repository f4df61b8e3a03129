//! Shared generators for the property suites.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, RngSeed};
use tropsev_core::arith::int_rat;
use tropsev_core::subdivision::concave_hull;
use tropsev_core::{LatticePoint, LatticePolygon, Subdivision, WeightFunction};

/// Fixed seed, `cases` instances, no regression files.
pub fn seeded(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    }
}

pub fn p(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new(x, y)
}

/// Convex lattice polygons spanned by random points of `[0, side]²` with at
/// most `max_points` lattice points.
pub fn polygon(side: i64, max_points: usize) -> impl Strategy<Value = LatticePolygon> {
    prop::collection::vec((0..=side, 0..=side), 3..7).prop_filter_map("degenerate or too large", move |pts| {
        let pts: Vec<LatticePoint> = pts.into_iter().map(|(x, y)| p(x, y)).collect();
        LatticePolygon::from_points(&pts).ok().filter(|q| q.lattice_points().len() <= max_points)
    })
}

/// Noise plus concave folds `-k·|ℓ·a - c|` along a few lattice directions.
/// Crossing folds produce parallelograms.
#[derive(Clone, Debug)]
pub struct WeightRecipe {
    pub noise: Vec<i64>,
    pub noise_on: bool,
    pub folds: Vec<(usize, i64, i64)>,
}

pub fn recipe() -> impl Strategy<Value = WeightRecipe> {
    (
        prop::collection::vec(-4i64..=4, 16),
        prop::bool::weighted(0.4),
        prop::collection::vec((0usize..4, 0i64..10, 1i64..4), 0..5),
    )
        .prop_map(|(noise, noise_on, folds)| WeightRecipe { noise, noise_on, folds })
}

const DIRECTIONS: [(i64, i64); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];

impl WeightRecipe {
    pub fn weight(&self, poly: &LatticePolygon) -> WeightFunction {
        let mut i = 0;
        WeightFunction::from_fn(poly, |a| {
            let mut v = if self.noise_on { self.noise[i % self.noise.len()] } else { 0 };
            i += 1;
            for &(d, c, k) in &self.folds {
                let (dx, dy) = DIRECTIONS[d];
                // offsets are doubled so folds may also sit between lattice lines
                v -= k * (2 * (dx * a.x + dy * a.y) - c + 2).abs();
            }
            int_rat(v)
        })
    }
}

pub fn polygon_and_weight(side: i64, max_points: usize) -> impl Strategy<Value = (LatticePolygon, WeightFunction)> {
    (polygon(side, max_points), recipe()).prop_map(|(poly, r)| {
        let w = r.weight(&poly);
        (poly, w)
    })
}

pub fn regular_subdivision(side: i64, max_points: usize) -> impl Strategy<Value = (WeightFunction, Subdivision)> {
    polygon_and_weight(side, max_points).prop_map(|(poly, w)| {
        let s = concave_hull(&poly, &w).expect("weights cover the polygon").subdivision;
        (w, s)
    })
}

/// Regular nodal subdivisions, which the fold recipes make frequent.
pub fn nodal_subdivision(side: i64, max_points: usize) -> impl Strategy<Value = (WeightFunction, Subdivision)> {
    regular_subdivision(side, max_points).prop_filter("not nodal", |(_, s)| s.flags().nodal)
}

/// Sheared boxes cut by folds parallel to their sides, plus an optional
/// diagonal fold: mostly parallelograms with some triangles.
pub fn parallelogram_rich() -> impl Strategy<Value = (WeightFunction, Subdivision)> {
    (
        1i64..=4,
        1i64..=3,
        -2i64..=2,
        prop::collection::vec((any::<bool>(), 1i64..8, 1i64..4), 1..5),
        prop::option::of((any::<bool>(), -4i64..6)),
    )
        .prop_map(|(a, b, shear, folds, diagonal)| {
            let map = |x: i64, y: i64| p(x + shear * y, y);
            let poly = LatticePolygon::new(vec![map(0, 0), map(a, 0), map(a, b), map(0, b)]).expect("box");
            let w = WeightFunction::from_fn(&poly, |q| {
                let (x, y) = (q.x - shear * q.y, q.y);
                let mut v = 0;
                for &(horizontal, c, k) in &folds {
                    let t = if horizontal { x } else { y };
                    v -= k * (2 * t - c).abs();
                }
                if let Some((up, c)) = diagonal {
                    let t = if up { x - y } else { x + y };
                    v -= (2 * t - c).abs();
                }
                int_rat(v)
            });
            let s = concave_hull(&poly, &w).expect("weights cover the polygon").subdivision;
            (w, s)
        })
}

/// Nodal subdivisions from both generators.
pub fn any_nodal() -> impl Strategy<Value = (WeightFunction, Subdivision)> {
    prop_oneof![nodal_subdivision(4, 15), parallelogram_rich().prop_filter("not nodal", |(_, s)| s.flags().nodal)]
}
