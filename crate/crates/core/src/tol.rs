//! Default tolerances.
//!
//! Every threshold the library applies by default lives here so reports can
//! echo them. Callers override per call where an operation takes a tolerance.

/// Orthonormality of an input pair `{a, b}` (absolute, on Minkowski products).
pub const ORTHONORMAL: f64 = 1e-9;

/// Relative test `|<v,v>| <= LIGHTLIKE * |v|^2` used to call a vector lightlike.
pub const LIGHTLIKE: f64 = 1e-9;

/// `|L0|` below this is treated as zero when projecting to the sphere.
pub const TIME_COMPONENT: f64 = 1e-12;

/// Distance of a sphere-curve node from `S^2`.
pub const SPHERE: f64 = 1e-9;

/// Curvature below which a Frenet node is degenerate.
pub const KAPPA: f64 = 1e-7;

/// Curve speed below which a curve is not regular.
pub const REGULAR: f64 = 1e-9;

/// Minimum separation between `T1(u)` and `+-T2(v)` on the sample product.
pub const DISJOINT_MARGIN: f64 = 1e-6;

/// Chebyshev test: `|E - 1|`, `|G - 1|`.
pub const CHEBYSHEV: f64 = 1e-6;

/// Chebyshev test: `|F| <= 1 - CHEBYSHEV_MARGIN`.
pub const CHEBYSHEV_MARGIN: f64 = 1e-6;

/// `sin(theta)` (or `sin^2(theta/2)`) below this marks a node degenerate.
pub const ANGLE: f64 = 1e-6;

/// `EG - F^2` below this is a degenerate first fundamental form.
pub const METRIC: f64 = 1e-12;

/// Minimality: `sup |H_f|` at the default stencil on smooth data.
pub const MINIMALITY: f64 = 1e-5;

/// Lightlike checks for Bjorling data built from sampled curves.
pub const DATA: f64 = 1e-6;

/// Necessary condition `c' = c0'(d0 + n0)`.
pub const NECESSARY: f64 = 1e-6;

/// Compatibility: `sup |dn3/du|`.
pub const COMPATIBILITY: f64 = 1e-5;

/// Match of an extension with the curve data at `v = 0`.
pub const SEED: f64 = 1e-6;

/// "Identically zero" in the special-case classifier.
pub const CLASSIFY: f64 = 1e-5;

/// Interpolation of the solution along `v = 0` against the data curve.
pub const CURVE_MATCH: f64 = 1e-6;

/// Normal-bundle match (projector difference) along `v = 0`.
pub const NORMAL_BUNDLE: f64 = 1e-5;

/// Closest approach to `+-n0` allowed for the default second generator.
pub const EXTENSION_MARGIN: f64 = 1e-2;
