//! Zero-bias transforms, exact L¹ distances between distribution functions
//! and the Stein functionals that control the L¹ Berry–Esseen constant.
//!
//! Every law is finitely supported, so zero-bias laws are piecewise uniform
//! and every distance to the normal has a closed form.

pub mod dist;
pub mod error;
pub mod functionals;
pub mod generators;
pub mod harness;
pub mod mixtures;
pub mod normal;
pub mod quadrature;
pub mod tolerances;
pub mod wasserstein;
pub mod zerobias;

pub use dist::{
    center, convolution_power, convolve, convolve_guarded, iid_normalized_sum, lattice_span,
    moments, normalized_sum, normalized_sum_guarded, scale, standardize, FiniteDist, LatticeInfo,
    MomentSummary,
};
pub use error::{Error, Result};
pub use functionals::{
    a_functional, a_report, b_functional, bernoulli_report, functional_report, psi_lower_bound,
    zolotarev_ratio, AReport, FunctionalReport,
};
pub use harness::{
    asymptotic_sweep, lower_bound_sweep, search_d3, verify_bound, verify_iid, BoundReport,
    D3GridSpec, GridRange, LowerBoundTable, SearchResult,
};
pub use mixtures::{
    coupling_bound_check, qp_inequality_gap, reduce_to_d3, three_point_split, two_point_mixture,
    CouplingBound, MixtureDecomposition, QpGap, ThreePointSplit,
};
pub use wasserstein::{
    inverse_cdf, w1_by_coupling, w1_pwl_normal, w1_pwl_pwl, w1_step_normal, w1_step_pwl,
    w1_step_step, Quantiles,
};
pub use zerobias::{zero_bias, zero_bias_mixture, ZeroBiasDist};
