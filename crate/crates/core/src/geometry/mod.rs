//! Closed planar curves and their discrete intrinsic geometry.

mod angle;
mod curve;
mod discrete;
mod hausdorff;
pub mod io;
mod parabola;
mod point;
mod spline;

pub use angle::{angle_positions, entropy, median_curvature, to_angle_param, AngleProfile};
pub use curve::ClosedCurve;
pub use discrete::{closest_on_segment, compute_geometry, CurveGeometry};
pub use hausdorff::{hausdorff_distance, point_polygon_distance};
pub use parabola::{build_parabola_closure, build_parabola_closure_with_cap};
pub use point::{Point2, Vec2};
pub use spline::{resample_arclength, PeriodicSpline};
pub(crate) use spline::resample_points;
