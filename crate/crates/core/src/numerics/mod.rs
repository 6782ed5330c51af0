//! Grid kernels shared by the geometry modules: uniform grids and curves,
//! finite differences, quadrature, interpolation and Frenet frames.
//!
//! All reductions run in a fixed order, so results do not depend on how a
//! caller schedules node-wise work.

mod diff;
mod frenet;
mod grid;
mod quad;

pub use diff::{
    curve_derivative, derivative, fd_weights, interpolate_curve, interpolate_grid, partials, partials_with, Partial,
    DEFAULT_WIDTH,
};
pub use frenet::{frenet, frenet_with, FrenetData};
pub use grid::{combine, sup_and_l2, Axis, Grid2D, Sample, SampledCurve};
pub use quad::{cumulative_integral, cumulative_integral_with, simpson, Rule};
