//! Adaptive evaluation of the singular and unbounded-domain integrals used
//! throughout the bench: the `D_{p,beta}` family, sphere-slice kernels,
//! oscillatory Pitt/bilinear constants, and the complex-ball boundary
//! kernel, all with explicit error estimates and divergence flags.

mod adaptive;
mod complex_sphere;
mod dpbeta;
mod oscillatory;
mod sphere;

pub use adaptive::{
    integrate_adaptive, integrate_adaptive_budget, Interval, QuadratureResult, DEFAULT_PANEL_BUDGET,
    DEFAULT_TOL,
};
pub use complex_sphere::psi_lambda_rho;
pub use dpbeta::{
    d_pbeta_direct, d_pbeta_mellin, sw_constant, RadialKernelSpec, SingularPoint,
};
pub use oscillatory::{
    cosine_kernel_quadrature, delta_kernel_constant, periodic_radial_integral, pitt_numerator,
};
pub use sphere::{
    psi_kernel, psi_kernel_tol, sphere_slice_integral, sphere_slice_one_minus,
    sphere_slice_weight_form,
};
