//! Exact combinatorics of tropical Severi varieties of toric surfaces.
//!
//! Everything here works over arbitrary-precision integers and rationals:
//! regular subdivisions of lattice polygons obtained from concave hulls,
//! their ranks, the dual tropical curves, the inner-edge exponent matrix
//! whose Smith normal form counts the components of the boundary-binomial
//! parameter space, the weights of the tropical Severi variety at maximal
//! rank points, stable intersections of plane tropical curves, and Severi
//! degrees obtained by counting tropical curves through points.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! parallel drivers live in the `tropsev` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod dual_curve;
pub mod enumeration;
mod error;
pub mod initial_forms;
pub mod intersection;
pub mod lattice;
pub mod lp;
pub mod matrix;
pub mod severi;
pub mod subdivision;
pub mod torus_group;

pub use arith::{GaussRational, Int, Rational};
pub use error::{Error, Result};
pub use lattice::{LatticePoint, LatticePolygon, Segment};
pub use matrix::IntegerMatrix;
pub use subdivision::{Subdivision, WeightFunction};
