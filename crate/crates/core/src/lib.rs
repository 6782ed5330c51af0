//! Chebyshev nets in Euclidean 3-space, their timelike lifts to Minkowski
//! space R^4_1, and the Bjorling (Cauchy) problem for lightlike curves.
//!
//! * [`minkowski`]: Lorentzian vector algebra and the adapted frame of a
//!   spacelike plane.
//! * [`numerics`]: uniform grids, finite differences, quadrature, Frenet frames.
//! * [`chebnet`]: Chebyshev nets, coordinate changes, Euclidean shape, gallery.
//! * [`lift`]: lifts to R^4_1, mean and Gaussian curvature, minimal surfaces
//!   as sums of two lightlike curves.
//! * [`bjorling`]: the Cauchy problem for a lightlike curve with prescribed
//!   normal bundle.
//! * [`cli`]: spec documents, reports and exports behind the `chebylift` binary.

pub mod bjorling;
pub mod chebnet;
pub mod cli;
pub mod error;
pub mod lift;
pub mod minkowski;
pub mod numerics;
pub mod tol;

pub use error::{Error, Result};
pub use minkowski::Vec4;
