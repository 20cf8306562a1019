//! Discrete L^p and power-weighted L^p norms with analytic handling of the
//! origin-cell weight singularity.

use super::grid::{unravel, GridFunction};
use crate::error::{Error, Result};
use crate::specfun::{log_gamma, sphere_area};

/// `(h^n sum |f_k|^p)^{1/p}`.
pub fn lp_norm(f: &GridFunction, p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Admissibility(format!("p must lie in [1, inf), got {p}")));
    }
    let hn = f.spacing().powi(f.dim as i32);
    let s: f64 = f.values.iter().map(|v| v.norm().powf(p)).sum();
    Ok((hn * s).powf(1.0 / p))
}

/// Exact `int_{lo}^{hi} |x|^{-gamma} dx` over one 1-D cell (`gamma != 1`;
/// a cell containing 0 additionally requires `gamma < 1`).
pub(crate) fn cell_weight_interval(lo: f64, hi: f64, gamma: f64) -> f64 {
    let e = 1.0 - gamma;
    if lo >= 0.0 {
        (hi.powf(e) - lo.powf(e)) / e
    } else if hi <= 0.0 {
        ((-lo).powf(e) - (-hi).powf(e)) / e
    } else {
        ((-lo).powf(e) + hi.powf(e)) / e
    }
}

/// `int |x|^{-gamma} |f|^p dx` by cell sums: exact per-cell weights in one
/// dimension, midpoint weights plus an equal-volume-ball origin-cell
/// correction in higher dimensions. Requires `gamma < n`.
pub fn weighted_lp(f: &GridFunction, p: f64, gamma: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Admissibility(format!("p must lie in [1, inf), got {p}")));
    }
    if !(gamma < f.dim as f64) {
        return Err(Error::Divergent(format!(
            "weight exponent {gamma} >= n = {} makes the origin cell divergent",
            f.dim
        )));
    }
    let n = f.dim;
    let h = f.spacing();
    let hn = h.powi(n as i32);
    let origin = {
        // x = 0 sits at k_a = N/2 on every axis
        let mut idx = 0usize;
        for _ in 0..n {
            idx = idx * f.size + f.size / 2;
        }
        idx
    };
    let mut total = 0.0f64;
    for (idx, v) in f.values.iter().enumerate() {
        let fp = v.norm().powf(p);
        if fp == 0.0 {
            continue;
        }
        let w = if n == 1 {
            let x = f.point(idx)[0];
            cell_weight_interval(x - 0.5 * h, x + 0.5 * h, gamma)
        } else if idx == origin {
            // ball of the cell's volume: sigma r^{n-gamma}/(n-gamma),
            // r = h (Gamma(n/2+1)/pi^{n/2})^{1/n}
            let nf = n as f64;
            let log_r = (log_gamma(nf / 2.0 + 1.0).expect("positive argument")
                - nf / 2.0 * std::f64::consts::PI.ln())
                / nf
                + h.ln();
            let r = log_r.exp();
            sphere_area(n).expect("n >= 1") * r.powf(nf - gamma) / (nf - gamma)
        } else {
            let x = f.point(idx);
            let r2: f64 = x[..n].iter().map(|t| t * t).sum();
            r2.sqrt().powf(-gamma) * hn
        };
        total += fp * w;
    }
    Ok(total)
}

/// The same weighted sum on the even-index subsample (N/2 points, spacing
/// 2h); the difference against the full grid is a refinement error
/// estimate.
pub fn weighted_lp_refinement_error(f: &GridFunction, p: f64, gamma: f64) -> Result<f64> {
    let half = decimate(f)?;
    let fine = weighted_lp(f, p, gamma)?;
    let coarse = weighted_lp(&half, p, gamma)?;
    Ok((fine - coarse).abs())
}

fn decimate(f: &GridFunction) -> Result<GridFunction> {
    if f.size < 16 {
        return Err(Error::Precondition("grid too small to decimate".into()));
    }
    let m = f.size / 2;
    let len = m.pow(f.dim as u32);
    let mut values = Vec::with_capacity(len);
    for idx in 0..len {
        let k = unravel(idx, m, f.dim);
        let mut src = 0usize;
        for a in 0..f.dim {
            src = src * f.size + 2 * k[a];
        }
        values.push(f.values[src]);
    }
    GridFunction::new(f.dim, m, f.half_width, values)
}
