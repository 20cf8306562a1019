//! Grid-sampled fields: periodic sampling boxes, discrete Fourier
//! calculus, reference function families, norms, difference seminorms,
//! two-function forms, and field storage.

mod besov;
mod bilinear;
mod family;
pub(crate) mod grid;
mod io;
mod norms;

pub use besov::{besov_seminorm, besov_spectral, hausdorff_young_form};
pub use bilinear::{
    autocorrelation, bilinear_thm4, bilinear_thm5, bilinear_thm6, product_form_thm7,
    thm6_triple_sum,
};
pub use family::{sample, TestFamily};
pub use grid::{
    fourier, frac_laplacian, gradient, inverse_fourier, riesz_potential, shifted, GridFunction,
    SpectralFunction,
};
pub use io::{read_field, write_field, FieldMetadata};
pub use norms::{lp_norm, weighted_lp, weighted_lp_refinement_error};
