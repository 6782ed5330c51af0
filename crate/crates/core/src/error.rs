use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library.
///
/// Variants carry enough numbers to reproduce the verdict (the offending
/// node, the residual that was too large) so reports can echo them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector is not lightlike: <L,L> = {inner:e}")]
    NotLightlike { inner: f64 },

    #[error("time component {value:e} is too close to zero")]
    ZeroTimeComponent { value: f64 },

    #[error("bad input: {0}")]
    BadInput(String),

    #[error("bad grid: {0}")]
    BadGrid(String),

    #[error("curve is not regular at t = {t} (|alpha'| = {speed:e})")]
    NotRegular { t: f64, speed: f64 },

    #[error("sphere curve leaves S^2 at node {index} (deviation {deviation:e})")]
    BadSphereCurve { index: usize, deviation: f64 },

    #[error("generators meet (T1 = +-T2) near (u, v) = ({u}, {v}), separation {separation:e}")]
    DisjointnessViolated { u: f64, v: f64, separation: f64 },

    #[error("coordinate change leaves no usable rectangle")]
    EmptyOverlap,

    #[error("first fundamental form degenerates at (u, v) = ({u}, {v})")]
    DegenerateMetric { u: f64, v: f64 },

    #[error("not a Chebyshev net: sup|E-1| = {e_dev:e}, sup|G-1| = {g_dev:e}, sup|F| = {f_sup}")]
    NotChebyshev { e_dev: f64, g_dev: f64, f_sup: f64 },

    #[error("net angle degenerates at {count} node(s)")]
    DegenerateAngle { count: usize },

    #[error("curvature route needs the source net, which this lift does not carry")]
    MissingSource,

    #[error("surface is not minimal: sup|H| = {sup_h:e}")]
    NotMinimal { sup_h: f64 },

    #[error("bad Bjorling data: {0}")]
    BadData(String),

    #[error("Frenet frame degenerates (kappa ~ 0) at {count} node(s)")]
    DegenerateFrenet { count: usize },

    #[error("division by a vanishing {what} at {count} node(s)")]
    DivisionDegenerate { what: &'static str, count: usize },

    #[error("seed n3(0) disagrees with the data by {deviation:e}")]
    InconsistentSeed { deviation: f64 },

    #[error("necessary condition c' = c0'(d0 + n0) fails: residual {residual:e}")]
    NecessaryConditionFailed { residual: f64 },

    #[error("data is incompatible: sup|dn3/du| = {drift:e}")]
    IncompatibleData { drift: f64 },

    #[error("extension does not match the curve data at v = 0 (deviation {deviation:e})")]
    ExtensionMismatch { deviation: f64 },

    #[error("operation requires the {expected} case, data classifies as {found}")]
    WrongCase { expected: &'static str, found: String },

    #[error("unknown format: {0}")]
    UnknownFormat(String),
}
