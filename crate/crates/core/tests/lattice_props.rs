mod common;

use common::{p, polygon, seeded};
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use tropsev_core::matrix::IntegerMatrix;
use tropsev_core::{Int, LatticePolygon, Segment};

/// Points counted by scanning the bounding box with orientation tests.
fn scan_counts(poly: &LatticePolygon) -> (u64, u64) {
    let v = poly.vertices();
    let (mut inside, mut boundary) = (0, 0);
    let (x0, x1) = (v.iter().map(|q| q.x).min().unwrap(), v.iter().map(|q| q.x).max().unwrap());
    let (y0, y1) = (v.iter().map(|q| q.y).min().unwrap(), v.iter().map(|q| q.y).max().unwrap());
    for x in x0..=x1 {
        for y in y0..=y1 {
            let q = p(x, y);
            let o: Vec<i128> = (0..v.len()).map(|i| tropsev_core::lattice::orient(v[i], v[(i + 1) % v.len()], q)).collect();
            if o.iter().all(|&s| s > 0) {
                inside += 1;
            } else if o.iter().all(|&s| s >= 0) {
                boundary += 1;
            }
        }
    }
    (inside, boundary)
}

fn unimodular(ops: &[(usize, usize, i64, bool)], n: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(n);
    for &(a, b, k, neg) in ops {
        let (a, b) = (a % n, b % n);
        if a != b {
            m.add_row_multiple(a, b, &Int::from(k));
        }
        if neg {
            m.negate_row(a);
        }
        m.swap_rows(a, (a + 1) % n);
    }
    m
}

proptest! {
    #![proptest_config(seeded(200, 11))]

    #[test]
    fn pick_theorem(poly in polygon(6, 60)) {
        let (i, b) = scan_counts(&poly);
        prop_assert_eq!(poly.interior_points().len() as u64, i);
        prop_assert_eq!(poly.boundary_points().len() as u64, b);
        prop_assert_eq!(poly.twice_area() as u64 + 2, 2 * i + b);
        prop_assert_eq!(poly.lattice_points().len() as u64, i + b);
    }
}

proptest! {
    #![proptest_config(seeded(150, 12))]

    #[test]
    fn smith_form_is_a_unimodular_invariant(
        entries in prop::collection::vec(-6i64..=6, 12),
        rows in 1usize..=3,
        left in prop::collection::vec((0usize..3, 0usize..3, -3i64..=3, any::<bool>()), 0..6),
        right in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3, any::<bool>()), 0..6),
    ) {
        let cols = 4;
        let data: Vec<Vec<i64>> = (0..rows).map(|r| entries[r * cols..(r + 1) * cols].to_vec()).collect();
        let m = IntegerMatrix::from_rows(&data);
        let snf = m.smith_normal_form();
        prop_assert_eq!(snf.left.mul(&m).mul(&snf.right), snf.diagonal_matrix());
        let d = &snf.diagonal;
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        let (u, v) = (unimodular(&left, rows), unimodular(&right, cols).transpose());
        prop_assert!(u.determinant() == Int::one() || u.determinant() == -Int::one());
        let other = u.mul(&m).mul(&v).smith_normal_form();
        prop_assert_eq!(&other.diagonal, d);
        prop_assert_eq!(other.rank(), m.rank());
    }

    #[test]
    fn lattice_length_adds_up(x in -20i64..20, y in -20i64..20, dx in -5i64..=5, dy in -5i64..=5, k in 1i64..6, l in 1i64..6) {
        prop_assume!(dx != 0 || dy != 0);
        let a = p(x, y);
        let b = a + p(dx, dy) * k;
        let c = b + p(dx, dy) * l;
        let len = |u, v| Segment::new(u, v).unwrap().lattice_length();
        prop_assert_eq!(len(a, b) + len(b, c), len(a, c));
        prop_assert_eq!(len(a, c), dx.unsigned_abs().gcd(&dy.unsigned_abs()) * (k + l) as u64);
    }
}
