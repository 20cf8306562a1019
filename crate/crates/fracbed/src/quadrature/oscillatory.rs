//! Radial integrals of periodic oscillations against power weights:
//! `int_0^inf g(u) u^{-1-c} du` for periodic `g`, evaluated by per-period
//! panels plus a moment-expansion tail summed with Hurwitz-zeta values.
//! These drive the Pitt numerator and the bilinear delta-kernel constant.

use super::adaptive::{integrate_adaptive_budget, Interval, QuadratureResult};
use super::sphere::sphere_slice_integral;
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// `sum_{k >= k0} k^{-s}` (Hurwitz zeta at integer offset) by
/// Euler-Maclaurin; accurate to ~`k0^{-s-7}` relative, so `k0 >= 10` gives
/// full double precision for the exponents used here.
fn zeta_tail(s: f64, k0: f64) -> f64 {
    debug_assert!(s > 1.0 && k0 >= 2.0);
    let t = k0.powf(-s);
    let rise = |j: usize| (0..j).map(|i| s + i as f64).product::<f64>();
    k0 * t / (s - 1.0) + 0.5 * t + s * t / (12.0 * k0) - rise(3) * t / (720.0 * k0.powi(3))
        + rise(5) * t / (30240.0 * k0.powi(5))
        - rise(7) * t / (1_209_600.0 * k0.powi(7))
}

const HEAD_PERIODS: usize = 64;
const MOMENT_ORDER: usize = 12;

/// `int_0^inf g(u) u^{-1-c} du` for `g` periodic with the given period and
/// vanishing at 0 at least like `u^q`, `q > c > 0`.
///
/// Head: adaptive panels per period up to `HEAD_PERIODS` periods (the first
/// panel owns the `u = 0` singularity). Tail: expand `(k + w)^{-1-c}` in
/// `w`-moments of one period and sum over periods with `zeta_tail`.
pub fn periodic_radial_integral<G: Fn(f64) -> f64>(
    g: G,
    period: f64,
    c: f64,
    tol: f64,
) -> QuadratureResult {
    assert!(period > 0.0 && c > 0.0);
    let mut value = 0.0;
    let mut abs_error = 0.0;
    let mut panels = 0usize;
    let mut converged = true;
    let per_tol = (tol / HEAD_PERIODS as f64).max(1e-14);
    for k in 0..HEAD_PERIODS {
        let a = k as f64 * period;
        let b = a + period;
        let r = integrate_adaptive_budget(
            |u: f64| g(u) * u.powf(-1.0 - c),
            Interval::finite(a, b),
            per_tol,
            1 << 10,
        );
        value += r.value;
        abs_error += r.abs_error;
        panels += r.panels;
        converged &= r.converged;
    }
    // moments of one period in the scaled variable w = u/period
    let mut moments = [0.0f64; MOMENT_ORDER + 1];
    for (j, m) in moments.iter_mut().enumerate() {
        let r = integrate_adaptive_budget(
            |w: f64| g(w * period) * w.powi(j as i32),
            Interval::finite(0.0, 1.0),
            1e-12,
            1 << 9,
        );
        *m = r.value;
        abs_error += r.abs_error * period.powf(-c);
        panels += r.panels;
        converged &= r.converged;
    }
    let k0 = HEAD_PERIODS as f64;
    let mut binom = 1.0; // binom(-1-c, j), running product
    let mut tail = 0.0;
    let mut last_term = 0.0;
    for (j, m) in moments.iter().enumerate() {
        last_term = binom * m * zeta_tail(1.0 + c + j as f64, k0);
        tail += last_term;
        binom *= (-1.0 - c - j as f64) / (j as f64 + 1.0);
    }
    value += period.powf(-c) * tail;
    abs_error += period.powf(-c) * last_term.abs();
    let converged = converged && abs_error <= tol * value.abs().max(1.0);
    QuadratureResult {
        value,
        abs_error,
        panels,
        converged,
    }
}

/// Angular factor `int_{S^{n-1}} |xi_1|^c dxi`.
fn angular_power_factor(n: usize, c: f64, tol: f64) -> QuadratureResult {
    sphere_slice_integral(n, |s: f64| s.abs().powf(c), tol)
}

fn factored(radial: QuadratureResult, angular: QuadratureResult) -> QuadratureResult {
    let value = radial.value * angular.value;
    QuadratureResult {
        value,
        abs_error: radial.abs_error * angular.value.abs()
            + angular.abs_error * radial.value.abs(),
        panels: radial.panels + angular.panels,
        converged: radial.converged && angular.converged,
    }
}

/// `int_{R^n} |e^{2 pi i w.eta} - 1|^{p'} |w|^{-n - p' beta} dw`.
///
/// Uses `|e^{2 pi i s} - 1| = 2 |sin(pi s)|` and the exact factorization
/// into a 1-D oscillatory radial integral times the rotation-invariant
/// angular factor (so the value is independent of the unit vector `eta` by
/// construction; the tests check the same invariance on a direct
/// parametrization).
pub fn pitt_numerator(n: usize, p_prime: f64, beta: f64, tol: f64) -> Result<QuadratureResult> {
    if !(p_prime > 1.0 && p_prime.is_finite()) {
        return Err(Error::Admissibility("p' must lie in (1, inf)".into()));
    }
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Admissibility("beta must lie in (0,1)".into()));
    }
    let c = p_prime * beta;
    let radial = periodic_radial_integral(
        |u: f64| (2.0 * (PI * u).sin().abs()).powf(p_prime),
        1.0,
        c,
        0.5 * tol,
    );
    let angular = angular_power_factor(n, c, 0.5 * tol);
    Ok(factored(radial, angular))
}

/// `int_{R^n} |x|^{-n-lambda} |Delta(x.eta)|^q dx` with
/// `Delta(s) = e^{pi i s} - e^{-pi i s}`, so `|Delta(s)| = 2 |sin(pi s)|`.
pub fn delta_kernel_constant(n: usize, q: f64, lambda: f64, tol: f64) -> Result<QuadratureResult> {
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::Admissibility("q must lie in [1, inf)".into()));
    }
    if !(lambda > 0.0 && lambda < q) {
        return Err(Error::Admissibility("lambda must lie in (0, q)".into()));
    }
    let radial = periodic_radial_integral(
        |u: f64| (2.0 * (PI * u).sin().abs()).powf(q),
        1.0,
        lambda,
        0.5 * tol,
    );
    let angular = angular_power_factor(n, lambda, 0.5 * tol);
    Ok(factored(radial, angular))
}

/// Quadrature route for `int_{R^n} |w|^{-n-lambda} (1 - cos w.eta) dw`,
/// kept as an independent oracle for the closed-form evaluation.
pub fn cosine_kernel_quadrature(n: usize, lambda: f64, tol: f64) -> Result<QuadratureResult> {
    if !(lambda > 0.0 && lambda < 2.0) {
        return Err(Error::Admissibility("lambda must lie in (0, 2)".into()));
    }
    // 1 - cos u evaluated as 2 sin^2(u/2): exact relative accuracy near 0
    let radial = periodic_radial_integral(
        |u: f64| {
            let h = (0.5 * u).sin();
            2.0 * h * h
        },
        2.0 * PI,
        lambda,
        0.5 * tol,
    );
    let angular = angular_power_factor(n, lambda, 0.5 * tol);
    Ok(factored(radial, angular))
}
