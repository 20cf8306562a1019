//! Sphere-slice reduction: integrals over `S^{n-1}` of functions of one
//! coordinate, and the singular slice kernel `psi(t)` built on it.

use super::adaptive::{integrate_adaptive, Interval, QuadratureResult};
use crate::specfun::sphere_area;

/// `int_{S^{n-1}} g(xi_1) dxi` (unnormalized surface measure).
///
/// For `n >= 2` this is `sigma(S^{n-2}) * int_0^pi g(cos th) sin^{n-2} th dth`
/// (the substitution `s = cos th` of the `(1-s^2)^{(n-3)/2}` weight, which
/// keeps the `n = 2` weight blow-up off the quadrature nodes). For `n = 1`
/// the sphere is the two-point set `{-1, +1}`.
pub fn sphere_slice_integral<F: Fn(f64) -> f64>(n: usize, g: F, tol: f64) -> QuadratureResult {
    assert!(n >= 1, "dimension must be >= 1");
    if n == 1 {
        let v = g(1.0) + g(-1.0);
        return if v.is_finite() {
            QuadratureResult {
                value: v,
                abs_error: 0.0,
                panels: 1,
                converged: true,
            }
        } else {
            QuadratureResult::diverged(v)
        };
    }
    let ring = sphere_area(n - 1).expect("n - 1 >= 1");
    let m = (n - 2) as f64;
    let r = integrate_adaptive(
        |th: f64| g(th.cos()) * th.sin().powf(m),
        Interval::finite(0.0, std::f64::consts::PI),
        tol,
    );
    QuadratureResult {
        value: ring * r.value,
        abs_error: ring * r.abs_error,
        panels: r.panels,
        converged: r.converged,
    }
}

/// Same slice integral through the untransformed weight
/// `sigma(S^{n-2}) * int_{-1}^{1} g(s) (1-s^2)^{(n-3)/2} ds`.
///
/// Independent parametrization kept for cross-representation checks; the
/// `n = 2` endpoint weight blow-up `(1-s^2)^{-1/2}` is integrable and left
/// to adaptive refinement.
pub fn sphere_slice_weight_form<F: Fn(f64) -> f64>(n: usize, g: F, tol: f64) -> QuadratureResult {
    assert!(n >= 1, "dimension must be >= 1");
    if n == 1 {
        return sphere_slice_integral(1, g, tol);
    }
    let ring = sphere_area(n - 1).expect("n - 1 >= 1");
    let e = (n as f64 - 3.0) / 2.0;
    let r = integrate_adaptive(
        |s: f64| g(s) * (1.0 - s * s).powf(e),
        Interval::finite(-1.0, 1.0),
        tol,
    );
    QuadratureResult {
        value: ring * r.value,
        abs_error: ring * r.abs_error,
        panels: r.panels,
        converged: r.converged,
    }
}

/// Slice integral in the variable `u = 1 - s`: for integrands that are
/// near-singular at `s = 1`, passing `1 - s` exactly avoids the
/// catastrophic cancellation of computing `1 - cos(theta)` downstream.
/// Returns `sigma(S^{n-2}) * int_0^2 h(u) (u (2-u))^{(n-3)/2} du`,
/// parametrized as `int_0^pi h(2 sin^2(th/2)) sin^{n-2} th dth` so the
/// endpoint weight singularities disappear and `u` retains full precision
/// near 0; for `n = 1` the two-point value `h(0) + h(2)`.
pub fn sphere_slice_one_minus<F: Fn(f64) -> f64>(n: usize, h: F, tol: f64) -> QuadratureResult {
    assert!(n >= 1, "dimension must be >= 1");
    if n == 1 {
        let v = h(0.0) + h(2.0);
        return if v.is_finite() {
            QuadratureResult {
                value: v,
                abs_error: 0.0,
                panels: 1,
                converged: true,
            }
        } else {
            QuadratureResult::diverged(v)
        };
    }
    let ring = sphere_area(n - 1).expect("n - 1 >= 1");
    let m = (n - 2) as f64;
    let r = integrate_adaptive(
        |th: f64| {
            let half_sin = (0.5 * th).sin();
            h(2.0 * half_sin * half_sin) * th.sin().powf(m)
        },
        Interval::finite(0.0, std::f64::consts::PI),
        tol,
    );
    QuadratureResult {
        value: ring * r.value,
        abs_error: ring * r.abs_error,
        panels: r.panels,
        converged: r.converged,
    }
}

/// Slice kernel `psi(t) = int_{S^{n-1}} [t + 1/t - 2 xi_1]^{-(n+p*beta)/2} dxi`.
///
/// Symmetric under inversion `t -> 1/t`. At `t = 1` the bracket vanishes on
/// the slice boundary and the integral diverges; that case returns `+inf`.
/// The bracket is evaluated as `(t-1)^2/t + 2(1 - xi_1)`, which stays fully
/// accurate in the near-singular corner `t ~ 1`, `xi_1 ~ 1` that dominates
/// the `D_{p,beta}` integrals.
pub fn psi_kernel(n: usize, p: f64, beta: f64, t: f64) -> f64 {
    psi_kernel_tol(n, p, beta, t, 1e-10)
}

pub fn psi_kernel_tol(n: usize, p: f64, beta: f64, t: f64, tol: f64) -> f64 {
    assert!(t > 0.0, "t must be positive");
    let e = (n as f64 + p * beta) / 2.0;
    if t == 1.0 {
        return f64::INFINITY;
    }
    let gap = (t - 1.0) * (t - 1.0) / t;
    if n == 1 {
        return gap.powf(-e) + (gap + 4.0).powf(-e);
    }
    let r = sphere_slice_one_minus(n, |u| (gap + 2.0 * u).powf(-e), tol);
    if r.converged {
        r.value
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn constant_slice_is_total_area() {
        let r = sphere_slice_integral(3, |_| 1.0, 1e-12);
        assert!(r.converged);
        assert!(rel(r.value, 4.0 * PI) < 1e-10);
        for n in 1..=6 {
            let r = sphere_slice_integral(n, |_| 1.0, 1e-12);
            assert!(rel(r.value, sphere_area(n).unwrap()) < 1e-10, "n={n}");
        }
    }

    #[test]
    fn odd_slice_vanishes() {
        for n in 1..=5 {
            let r = sphere_slice_integral(n, |s| s, 1e-12);
            assert!(r.value.abs() < 1e-10, "n={n} value={}", r.value);
        }
    }

    #[test]
    fn singular_slice_matches_angular_parametrization() {
        // g(s) = (2-2s)^{-1/4}, n = 2: compare against the direct theta
        // integral 2 * int_0^pi (4 sin^2(th/2))^{-1/4} dth (stable form of
        // 2 - 2 cos th) computed on a different parametrization path.
        let r = sphere_slice_one_minus(2, |u| (2.0 * u).powf(-0.25), 1e-9);
        assert!(r.converged, "err {}", r.abs_error);
        let direct = integrate_adaptive(
            |th: f64| {
                let hs = (0.5 * th).sin();
                2.0 * (4.0 * hs * hs).powf(-0.25)
            },
            Interval::finite(0.0, PI),
            1e-9,
        );
        assert!(direct.converged);
        assert!(rel(r.value, direct.value) < 1e-8);
        // the naive s = cos(th) route loses the low-theta digits to the
        // 1 - cos cancellation; it still agrees at its accuracy floor
        // (observed ~6e-5 relative)
        let naive = sphere_slice_integral(2, |s| (2.0 - 2.0 * s).powf(-0.25), 1e-6);
        assert!(rel(naive.value, direct.value) < 2e-4);
    }

    #[test]
    fn weight_form_matches_angular_form() {
        for n in 1..=5 {
            let a = sphere_slice_integral(n, |s| (3.0 - s).powf(-1.3), 1e-10);
            let b = sphere_slice_weight_form(n, |s| (3.0 - s).powf(-1.3), 1e-10);
            let c = sphere_slice_one_minus(n, |u| (2.0 + u).powf(-1.3), 1e-10);
            assert!(a.converged && b.converged && c.converged, "n={n}");
            // the weight form's +-1 endpoint singularities are resolvable
            // only down to the f64 ulp spacing near 1, so its accuracy
            // bottoms out around sqrt(ulp) ~ 1e-8 absolute
            assert!(rel(a.value, b.value) < 1e-7, "n={n}: {} vs {}", a.value, b.value);
            assert!(rel(a.value, c.value) < 1e-9, "n={n}: {} vs {}", a.value, c.value);
        }
    }

    #[test]
    fn psi_inversion_symmetry() {
        for &(n, p, beta) in &[(1usize, 2.0, 0.5), (2, 1.5, 0.3), (3, 2.0, 0.5), (4, 3.0, 0.7)] {
            for &t in &[0.1, 0.5, 2.0, 10.0] {
                let a = psi_kernel(n, p, beta, t);
                let b = psi_kernel(n, p, beta, 1.0 / t);
                assert!(rel(a, b) < 1e-10, "n={n} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn psi_two_point_formula_in_one_dimension() {
        let (p, beta, t): (f64, f64, f64) = (2.0, 0.5, 3.0);
        let e = (1.0 + p * beta) / 2.0;
        let a = t + 1.0 / t;
        let expected = (a - 2.0).powf(-e) + (a + 2.0).powf(-e);
        assert!(rel(psi_kernel(1, p, beta, t), expected) < 1e-14);
    }

    #[test]
    fn psi_divergence_sentinel_at_one() {
        assert!(psi_kernel(2, 2.0, 0.5, 1.0).is_infinite());
        assert!(psi_kernel(1, 2.0, 0.5, 1.0).is_infinite());
    }

    #[test]
    fn psi_matches_monte_carlo_sphere_average() {
        // (n=3, p=2, beta=0.5, t=2): sample uniform points on S^2 via
        // normalized Gaussians; MC mean * sigma(S^2) ~ psi(t).
        let (n, p, beta, t) = (3usize, 2.0, 0.5, 2.0);
        let e = (n as f64 + p * beta) / 2.0;
        let a = t + 1.0 / t;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let trials = 4_000_000usize;
        let mut acc = 0.0f64;
        for _ in 0..trials {
            // Box-Muller triple
            let u1: f64 = rng.gen::<f64>().max(1e-300);
            let u2: f64 = rng.gen();
            let u3: f64 = rng.gen::<f64>().max(1e-300);
            let u4: f64 = rng.gen();
            let g1 = (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos();
            let g2 = (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).sin();
            let g3 = (-2.0 * u3.ln()).sqrt() * (2.0 * PI * u4).cos();
            let norm = (g1 * g1 + g2 * g2 + g3 * g3).sqrt();
            let s = g1 / norm;
            acc += (a - 2.0 * s).powf(-e);
        }
        let mc = acc / trials as f64 * sphere_area(3).unwrap();
        let exact = psi_kernel(n, p, beta, t);
        assert!(rel(mc, exact) < 1e-3, "mc={mc} exact={exact}");
    }
}
