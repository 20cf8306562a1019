//! The `D_{p,beta}` constant through two independent representations, and
//! its generalization to arbitrary homogeneous symmetric kernels.

use super::adaptive::{integrate_adaptive_budget, Interval, QuadratureResult};
use super::sphere::{psi_kernel_tol, sphere_slice_one_minus};
use crate::error::{Error, Result};
use crate::params::Params;
use std::cell::Cell;

/// Location classes where a radial kernel may be singular or slowly decaying.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularPoint {
    Zero,
    One,
    Infinity,
}

/// Declared shape of a radial kernel: dimension, homogeneity exponent, and
/// the explicit singularity set the quadrature must respect.
#[derive(Debug, Clone)]
pub struct RadialKernelSpec {
    pub n: usize,
    pub exponent: f64,
    pub singular_points: Vec<SingularPoint>,
}

impl RadialKernelSpec {
    pub fn new(n: usize, exponent: f64, singular_points: Vec<SingularPoint>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("kernel dimension must be >= 1".into()));
        }
        if singular_points.contains(&SingularPoint::Infinity) && !(exponent < -(n as f64)) {
            return Err(Error::Admissibility(format!(
                "exponent {exponent} must be < -n = {} for integrability at infinity",
                -(n as f64)
            )));
        }
        Ok(RadialKernelSpec {
            n,
            exponent,
            singular_points,
        })
    }
}

const OUTER_BUDGET: usize = 1 << 13;

fn combine(parts: &[QuadratureResult], extra_rel: f64) -> QuadratureResult {
    let value: f64 = parts.iter().map(|r| r.value).sum();
    let abs_error: f64 =
        parts.iter().map(|r| r.abs_error).sum::<f64>() + value.abs() * extra_rel;
    QuadratureResult {
        value,
        abs_error,
        panels: parts.iter().map(|r| r.panels).sum(),
        converged: parts.iter().all(|r| r.converged) && abs_error.is_finite(),
    }
}

/// `D_{p,beta}` via the multiplicative-group form
/// `int_0^inf |t^{lam/2} - t^{-lam/2}|^p psi(t) dt/t`, `lam = (n - p beta)/p`.
///
/// The integrand is invariant under `t -> 1/t`, so the half-line piece over
/// `(0,1)` is doubled; the `t = 1` endpoint carries the `psi` blow-up
/// `|t-1|^{-1-p beta}` offset by `|t^{lam/2}-t^{-lam/2}|^p ~ |t-1|^p`.
pub fn d_pbeta_mellin(n: usize, p: f64, beta: f64, tol: f64) -> Result<QuadratureResult> {
    let prm = Params::lemma1(n, p, beta)?;
    let lam = prm.lambda;
    let inner_tol = tol * 0.1;
    let inner_failed = Cell::new(false);
    let f = |t: f64| {
        // weight first: nodes can round onto t = 1 where psi diverges but
        // the vanishing oscillation factor kills the product
        let w = (t.powf(lam / 2.0) - t.powf(-lam / 2.0)).abs().powf(p);
        if w == 0.0 {
            return 0.0;
        }
        let psi = psi_kernel_tol(n, p, beta, t, inner_tol);
        if !psi.is_finite() {
            inner_failed.set(true);
            return 0.0;
        }
        w * psi / t
    };
    let half = integrate_adaptive_budget(f, Interval::finite(0.0, 1.0), 0.4 * tol, OUTER_BUDGET);
    let mut out = combine(
        &[QuadratureResult {
            value: 2.0 * half.value,
            abs_error: 2.0 * half.abs_error,
            ..half
        }],
        inner_tol,
    );
    if inner_failed.get() {
        out.converged = false;
        out.abs_error = f64::INFINITY;
    }
    Ok(out)
}

/// Shared radial/angular reduction for kernels of the form
/// `int_{R^n} |1 - |x|^{-lam}|^p k(|x|, 1, x.eta/|x|) dx`.
///
/// `kernel_slice(r, u)` receives `u = 1 - cos(angle)` exactly, so kernels
/// singular on the diagonal can be written as `(r-1)^2 + 2 r u` without
/// cancellation.
fn radial_angular_integral<K: Fn(f64, f64) -> f64>(
    n: usize,
    p: f64,
    lam: f64,
    kernel_slice: K,
    tol: f64,
) -> QuadratureResult {
    let inner_tol = tol * 0.1;
    let inner_failed = Cell::new(false);
    let f = |r: f64| {
        // weight first: panel midpoints can round onto r = 1 exactly, where
        // the slice diverges but the vanishing weight kills the product
        let w = r.powi(n as i32 - 1) * (1.0 - r.powf(-lam)).abs().powf(p);
        if w == 0.0 {
            return 0.0;
        }
        let ang = sphere_slice_one_minus(n, |u| kernel_slice(r, u), inner_tol);
        if !ang.converged {
            inner_failed.set(true);
        }
        w * ang.value
    };
    let lower = integrate_adaptive_budget(&f, Interval::finite(0.0, 1.0), 0.3 * tol, OUTER_BUDGET);
    let upper = integrate_adaptive_budget(&f, Interval::half_line(1.0), 0.3 * tol, OUTER_BUDGET);
    let mut out = combine(&[lower, upper], inner_tol);
    if inner_failed.get() {
        out.converged = false;
        out.abs_error = f64::INFINITY;
    }
    out
}

/// `D_{p,beta}` via the direct n-dimensional form
/// `int_{R^n} |1 - |x|^{-lam}|^p |x - eta|^{-n-p beta} dx`, reduced by sphere
/// slicing to a double 1-D integral. Independent of the Mellin path: a
/// different radial variable and the untransformed angular weight.
pub fn d_pbeta_direct(n: usize, p: f64, beta: f64, tol: f64) -> Result<QuadratureResult> {
    let prm = Params::lemma1(n, p, beta)?;
    let e = (n as f64 + p * beta) / 2.0;
    if n == 1 {
        // two-point sphere: |x - 1| and |x + 1| branches
        let lam = prm.lambda;
        let f = |r: f64| {
            let osc = (1.0 - r.powf(-lam)).abs().powf(p);
            osc * ((r - 1.0).abs().powf(-2.0 * e) + (r + 1.0).powf(-2.0 * e))
        };
        let lower =
            integrate_adaptive_budget(&f, Interval::finite(0.0, 1.0), 0.3 * tol, OUTER_BUDGET);
        let upper =
            integrate_adaptive_budget(&f, Interval::half_line(1.0), 0.3 * tol, OUTER_BUDGET);
        return Ok(combine(&[lower, upper], 0.0));
    }
    // |x - eta|^2 = (r-1)^2 + 2 r (1 - s): exact in the corner r ~ 1, s ~ 1
    Ok(radial_angular_integral(
        n,
        p,
        prm.lambda,
        |r, u| ((r - 1.0) * (r - 1.0) + 2.0 * r * u).powf(-e),
        tol,
    ))
}

/// Generalized constant `int |1-|x|^{-lam}|^p K(x, eta) dx` for a symmetric
/// kernel `K` homogeneous of degree `-n-gamma`, supplied in the
/// rotation-invariant form `k(|x|, |y|, 1 - cos angle)`.
///
/// The angle enters as `1 - cos` so kernels singular on the diagonal can be
/// evaluated without cancellation (`|x-y|^2 = (|x|-|y|)^2 + 2|x||y| omc`).
/// Homogeneity is spot-checked numerically before integrating; a failure is
/// a precondition error. Divergence of the integral itself is reported
/// through the converged flag (the constant is permitted to be infinite).
pub fn sw_constant<K: Fn(f64, f64, f64) -> f64>(
    kernel: K,
    n: usize,
    p: f64,
    gamma: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    let prm = Params::stein_weiss(n, p, gamma)?;
    let deg = -(n as f64) - gamma;
    for &(a, b, omc) in &[(0.7, 1.0, 0.7), (1.3, 1.0, 1.5), (0.4, 0.9, 0.2)] {
        for &d in &[0.5, 2.0] {
            let lhs = kernel(d * a, d * b, omc);
            let rhs = d.powf(deg) * kernel(a, b, omc);
            if !(lhs.is_finite() && rhs.is_finite())
                || (lhs - rhs).abs() > 1e-8 * rhs.abs().max(1e-300)
            {
                return Err(Error::Precondition(format!(
                    "kernel fails homogeneity of degree {deg} at ({a},{b},{omc}) scale {d}"
                )));
            }
        }
    }
    Ok(radial_angular_integral(
        n,
        p,
        prm.lambda,
        |r, u| kernel(r, 1.0, u),
        tol,
    ))
}
