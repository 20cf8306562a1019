//! Heisenberg-group and hyperbolic-plane computational kit: the twisted
//! group law, the gauge metric and its factorization through the
//! hyperbolic plane, non-unimodular convolution inequalities, and
//! desk-scale verification of the two group-level theorems.

mod group;
mod hyperbolic;
mod theorems;

pub use group::{
    dilate, group_inv, group_mul, haar_jacobian, koranyi_gauge, koranyi_metric,
    triangle_ratio_max, HeisenbergPoint,
};
pub use hyperbolic::{
    hyp_inv, hyp_mul, metric_factorization, modular, modular_triangle_check,
    modular_young_check, poincare_distance, psi_lambda_hyperbolic_kernel, HyperbolicGrid,
    HyperbolicPoint, MetricFactorization,
};
pub use theorems::{
    j_reduction_check, thm8_lhs, thm8_verify, thm9_direct_lhs, thm9_verify, GroupSampling,
};
