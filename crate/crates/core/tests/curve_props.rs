mod common;

use common::{any_nodal, polygon_and_weight, regular_subdivision, seeded};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use tropsev_core::arith::{int_rat, rat};
use tropsev_core::dual_curve::{check_balancing, dualize, passes_through, PlanePoint};
use tropsev_core::enumeration::hyperplane_trop_contains;
use tropsev_core::initial_forms::{initial_form, LaurentPoly, PuiseuxScalar};
use tropsev_core::matrix::IntegerMatrix;
use tropsev_core::severi::{edge_equivalence_classes, mikhalkin_multiplicity, subdivision_weight};
use tropsev_core::subdivision::concave_hull;
use tropsev_core::torus_group::build_matrix;
use tropsev_core::{GaussRational, Int, Rational};

fn plane_point() -> impl Strategy<Value = PlanePoint> {
    (-12i64..=12, 1i64..=3, -12i64..=12, 1i64..=3).prop_map(|(a, b, c, d)| PlanePoint::new(rat(a, b), rat(c, d)))
}

proptest! {
    #![proptest_config(seeded(120, 31))]

    #[test]
    fn dual_curves_are_balanced((poly, w) in polygon_and_weight(4, 15), q in plane_point()) {
        let hull = concave_hull(&poly, &w).unwrap();
        let c = dualize(&poly, &w).unwrap();
        prop_assert!(check_balancing(&c));
        prop_assert!(c.edges_consistent());
        prop_assert_eq!(c.vertices.len(), hull.subdivision.faces().len());
        prop_assert_eq!(c.edges.len() + c.rays.len(), hull.subdivision.edges().len());
        for r in &c.rays {
            prop_assert_eq!(r.direction, r.direction.primitive());
        }
        prop_assert_eq!(passes_through(&poly, &w, &q).unwrap(), c.contains_point(&q));
        // every vertex of the curve is a point of it
        for v in &c.vertices {
            prop_assert!(passes_through(&poly, &w, v).unwrap());
        }
    }

    #[test]
    fn initial_forms_are_homogeneous((poly, w) in polygon_and_weight(3, 12), dir in (-3i64..=3, -3i64..=3)) {
        // f = Σ t^{ω(a)} x^a has valuation function ω
        let f = LaurentPoly::new(w.iter().map(|(a, v)| (a, PuiseuxScalar::monomial(v.clone(), GaussRational::one()))));
        let omega = [int_rat(dir.0), int_rat(dir.1)];
        let g = initial_form(&f, &omega).unwrap();
        prop_assert!(!g.is_zero());
        let hull = concave_hull(&poly, &w).unwrap();
        let degree = |a: tropsev_core::LatticePoint| hull.hull_values.get(a).unwrap() + a.dot_rational(&omega);
        let support = g.support();
        let top = degree(support[0]);
        for a in &support {
            prop_assert_eq!(degree(*a), top.clone());
            prop_assert_eq!(w.get(*a), hull.hull_values.get(*a));
        }
        // and no lattice point of the polygon does better
        for a in poly.lattice_points() {
            prop_assert!(degree(a) <= top);
        }
    }

    #[test]
    fn trop_hyperplane_agrees_with_passes_through((poly, w) in polygon_and_weight(4, 15), qs in prop::collection::vec(plane_point(), 10)) {
        for q in &qs {
            prop_assert_eq!(hyperplane_trop_contains(q, &w), passes_through(&poly, &w, q).unwrap());
        }
        // points of the curve hit the tie exactly
        for v in &dualize(&poly, &w).unwrap().vertices {
            prop_assert!(hyperplane_trop_contains(v, &w));
        }
    }
}

proptest! {
    #![proptest_config(seeded(150, 32))]

    #[test]
    fn group_dimension_formula((_, s) in any_nodal()) {
        let g = build_matrix(&s).unwrap();
        let p = s.parallelograms().len();
        prop_assert_eq!(g.dim_g, s.vertices().len() - 1 - p);
        prop_assert_eq!(g.matrix.rank(), g.matrix.rows());
        prop_assert_eq!(&g.l_v, &g.smith.torsion_product());
        if s.flags().triangular {
            prop_assert_eq!(g.dim_g, s.vertices().len() - 1);
            prop_assert_eq!(g.dim_g, 2 * s.faces().len() - s.interior_edges().count());
        }
    }

    #[test]
    fn component_count_ignores_ordering((_, s) in any_nodal(), row_shift in 0usize..7, col_shift in 0usize..7, flips in any::<u8>()) {
        let g = build_matrix(&s).unwrap();
        let m = &g.matrix;
        prop_assume!(m.rows() > 0);
        // rotate rows, rotate face column pairs, negate some rows
        let faces = m.cols() / 2;
        let rows: Vec<Vec<Int>> = (0..m.rows())
            .map(|i| {
                let src = m.row((i + row_shift) % m.rows());
                let mut r: Vec<Int> = (0..m.cols()).map(|j| src[(j + 2 * col_shift) % (2 * faces)].clone()).collect();
                if flips >> (i % 8) & 1 == 1 {
                    r.iter_mut().for_each(|x| *x = -x.clone());
                }
                r
            })
            .collect();
        let permuted = IntegerMatrix::try_from_rows(rows, m.cols()).unwrap();
        prop_assert_eq!(permuted.smith_normal_form().torsion_product(), g.l_v);
    }

    #[test]
    fn severi_weight_identity((_, s) in any_nodal()) {
        let w = subdivision_weight(&s).unwrap();
        prop_assert_eq!(&w.xi * Rational::from_integer(w.m_sev.clone()), Rational::from_integer(w.mu.clone()));
        prop_assert_eq!(&w.mu, &mikhalkin_multiplicity(&s));
        prop_assert!(w.m_sev.is_positive() && w.xi.is_positive());
        let classes = edge_equivalence_classes(&s).unwrap();
        let total: usize = classes.iter().map(Vec::len).sum();
        prop_assert_eq!(total, s.edges().len());
        // opposite sides of a parallelogram are equally long
        for c in &classes {
            let l = s.edges()[c[0]].segment.lattice_length();
            prop_assert!(c.iter().all(|&e| s.edges()[e].segment.lattice_length() == l));
        }
        if s.flags().simple {
            for e in s.edges().iter().filter(|e| !e.is_interior()) {
                prop_assert_eq!(e.segment.lattice_length(), 1);
            }
        }
    }

    #[test]
    fn weights_depend_only_on_the_subdivision((w, s) in regular_subdivision(4, 15), k in 1i64..5, c in -3i64..3) {
        let scaled = w.scale(&int_rat(k)).add_affine(&tropsev_core::subdivision::AffineFunction::new(int_rat(c), Rational::zero(), int_rat(1)));
        let t = concave_hull(s.polygon(), &scaled).unwrap().subdivision;
        prop_assert_eq!(&t, &s);
        if s.flags().nodal {
            prop_assert_eq!(subdivision_weight(&t).unwrap(), subdivision_weight(&s).unwrap());
        }
    }
}
