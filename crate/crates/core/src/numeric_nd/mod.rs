//! Polarity in the plane: polar sets of finite point clouds, brute-force polar
//! of sampled grid functions, and radial lifts of functions on the ray.

mod grid;
mod polygon;
mod radial;

pub use grid::{polar_grid_2d, GridFunction2D, GridPolarOptions, QueryValue};
pub use polygon::{hausdorff_distance, polar_set_2d, Polygon2D};
pub use radial::{radial_lift, RadialLift};

pub type Point2 = [f64; 2];

pub(crate) fn dot(a: Point2, b: Point2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub(crate) fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}
