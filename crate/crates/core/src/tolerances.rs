//! Tolerances used across the crate. Every threshold that an operation
//! checks or that a report compares against is defined here.

/// Relative merge distance for support points: two points closer than
/// `MERGE_REL * max(1, span)` are treated as one.
pub const MERGE_REL: f64 = 1e-12;

/// Allowed total-mass error of a constructed [`FiniteDist`](crate::FiniteDist).
pub const MASS_TOL: f64 = 1e-12;

/// Mass error accepted from external input before renormalization.
pub const INPUT_MASS_TOL: f64 = 1e-9;

/// Gate for "mean zero" preconditions.
pub const CENTER_TOL: f64 = 1e-9;

/// Gate for "variance one" preconditions (reduction to three-point laws).
pub const STANDARD_TOL: f64 = 1e-9;

/// Relative tolerance of the real-gcd lattice detection.
pub const LATTICE_REL: f64 = 1e-9;

/// Iteration cap of the real-gcd Euclidean algorithm.
pub const LATTICE_MAX_ITER: usize = 64;

/// Absolute accuracy target of the outer u-quadrature in A(G).
pub const A_QUAD_TOL: f64 = 1e-10;

/// Bisection stopping width for CDF crossings against the normal.
pub const CROSSING_TOL: f64 = 1e-13;

/// Slack allowed on "≤ 1" style bounds (B(G), ratios, Zolotarev).
pub const BOUND_SLACK: f64 = 1e-9;

/// Slack for the coupling inequalities of three-point mixtures.
pub const COUPLING_SLACK: f64 = 1e-12;

/// Agreement required between the two evaluations of the QP gap,
/// relative to `max(1, |x|, |y|, |z|)`.
pub const QP_ROUTE_TOL: f64 = 1e-10;

/// Mixture components lighter than this are dropped.
pub const MIN_COMPONENT_WEIGHT: f64 = 1e-14;

/// Recursion cap of the three-point reduction.
pub const MAX_REDUCTION_DEPTH: usize = 64;

/// Default guard on convolution support size.
pub const MAX_SUPPORT: usize = 1_000_000;

/// Reference value of ψ(1/2) = ‖G_{1/2} − Φ‖₁ (six decimals).
pub const PSI_HALF: f64 = 0.535377;

/// Every tolerance with a display name, for `--tol-report`.
pub fn all() -> Vec<(&'static str, f64)> {
    vec![
        ("merge_rel", MERGE_REL),
        ("mass_tol", MASS_TOL),
        ("input_mass_tol", INPUT_MASS_TOL),
        ("center_tol", CENTER_TOL),
        ("standard_tol", STANDARD_TOL),
        ("lattice_rel", LATTICE_REL),
        ("lattice_max_iter", LATTICE_MAX_ITER as f64),
        ("a_quad_tol", A_QUAD_TOL),
        ("crossing_tol", CROSSING_TOL),
        ("bound_slack", BOUND_SLACK),
        ("coupling_slack", COUPLING_SLACK),
        ("qp_route_tol", QP_ROUTE_TOL),
        ("min_component_weight", MIN_COMPONENT_WEIGHT),
        ("max_reduction_depth", MAX_REDUCTION_DEPTH as f64),
        ("max_support", MAX_SUPPORT as f64),
    ]
}
