//! Symmetric decreasing rearrangement on grids, two-point symmetrization
//! across reflection planes, random polarization schedules, and the
//! pair-kernel reduction bounds.

mod lemmas;
mod polarize;
#[allow(clippy::module_inception)]
mod rearrange;
mod schedule;

pub use lemmas::{
    pair_energy, reduction_lemma_check, spherical_lp_reduction, triangle_lemma_check,
    RadialProfile,
};
pub use polarize::{polarize, real_field, two_point_energy_check, Gauge, Hyperplane};
pub use rearrange::{decreasing_rearrangement, symmetrization_inequality_check};
pub use schedule::{polarization_schedule, PolarizationTrace, TraceStep};
