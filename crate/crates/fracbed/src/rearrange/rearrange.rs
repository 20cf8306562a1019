//! Equimeasurable radial decreasing rearrangement on the grid and the
//! seminorm comparison it induces.

use crate::error::{Error, Result};
use crate::fields::besov_seminorm;
use crate::fields::grid::{unravel, GridFunction};
use crate::quadrature::QuadratureResult;
use num_complex::Complex64;

/// Cells ordered by center distance from the origin, ties broken
/// lexicographically by multi-index. Cached per shape by recomputation
/// (cheap relative to any use).
fn cell_order(f: &GridFunction) -> Vec<usize> {
    let mut order: Vec<usize> = (0..f.len()).collect();
    let key = |idx: usize| -> (f64, [usize; 3]) {
        let x = f.point(idx);
        let r2: f64 = x[..f.dim].iter().map(|t| t * t).sum();
        (r2, unravel(idx, f.size, f.dim))
    };
    order.sort_by(|&a, &b| {
        let (ra, ka) = key(a);
        let (rb, kb) = key(b);
        ra.total_cmp(&rb).then(ka.cmp(&kb))
    });
    order
}

/// `f*`: the multiset `{|f(x_k)|}` reassigned in decreasing order to
/// cells sorted by center distance from the origin.
pub fn decreasing_rearrangement(f: &GridFunction) -> Result<GridFunction> {
    if f.values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Precondition("field has non-finite samples".into()));
    }
    let mut mags: Vec<f64> = f.values.iter().map(|v| v.norm()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    let order = cell_order(f);
    let mut values = vec![Complex64::new(0.0, 0.0); f.len()];
    for (rank, &cell) in order.iter().enumerate() {
        values[cell] = Complex64::new(mags[rank], 0.0);
    }
    GridFunction::new(f.dim, f.size, f.half_width, values)
}

/// Seminorm comparison under rearrangement:
/// `(seminorm of f, seminorm of f*)`; the left dominates the right.
pub fn symmetrization_inequality_check(
    f: &GridFunction,
    p: f64,
    beta: f64,
    angular_nodes: usize,
    radial_tol: f64,
) -> Result<(QuadratureResult, QuadratureResult)> {
    let lhs = besov_seminorm(f, p, beta, angular_nodes, radial_tol)?;
    let fs = decreasing_rearrangement(f)?;
    let rhs = besov_seminorm(&fs, p, beta, angular_nodes, radial_tol)?;
    Ok((lhs, rhs))
}
