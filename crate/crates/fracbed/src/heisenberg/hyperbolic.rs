//! Upper half-plane realization of the hyperbolic plane as a
//! non-unimodular affine group: Poincare distance, the gauge-metric
//! factorization through it, the boundary kernel composed with it, and
//! Young/triangle convolution inequalities with the modular weight.

use super::group::HeisenbergPoint;
use crate::error::{Error, Result};
use crate::quadrature::{psi_lambda_rho, QuadratureResult};
use num_complex::Complex64;
use rayon::prelude::*;

/// Point `v = (x, y)` with `y > 0`; Haar measure `y^{-2} dx dy`, modular
/// function `1/y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicPoint {
    pub x: f64,
    pub y: f64,
}

impl HyperbolicPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && y > 0.0) {
            return Err(Error::Precondition("need finite x and y > 0".into()));
        }
        Ok(HyperbolicPoint { x, y })
    }

    pub fn identity() -> Self {
        HyperbolicPoint { x: 0.0, y: 1.0 }
    }
}

/// Affine group law `(x,y)(x',y') = (x + y x', y y')`.
pub fn hyp_mul(u: HyperbolicPoint, v: HyperbolicPoint) -> HyperbolicPoint {
    HyperbolicPoint {
        x: u.x + u.y * v.x,
        y: u.y * v.y,
    }
}

pub fn hyp_inv(v: HyperbolicPoint) -> HyperbolicPoint {
    HyperbolicPoint {
        x: -v.x / v.y,
        y: 1.0 / v.y,
    }
}

/// Modular function `Delta(v) = 1/y`.
pub fn modular(v: HyperbolicPoint) -> f64 {
    1.0 / v.y
}

/// Chordal-normalized Poincare distance
/// `delta = sqrt((x-x')^2 + (y-y')^2) / (2 sqrt(y y'))`.
pub fn poincare_distance(v: HyperbolicPoint, vp: HyperbolicPoint) -> f64 {
    ((v.x - vp.x).powi(2) + (v.y - vp.y).powi(2)).sqrt() / (2.0 * (v.y * vp.y).sqrt())
}

/// The gauge metric split into hyperbolic-plane data (`rho`, `delta`,
/// `theta`) and boundary-sphere data (`zeta_modulus`, `phi`), with the
/// overall radial scale `(4 y y')^{1/4}` kept for reconstruction.
#[derive(Debug, Clone, Copy)]
pub struct MetricFactorization {
    pub rho: f64,
    pub delta: f64,
    pub theta: f64,
    pub zeta_modulus: f64,
    pub phi: f64,
    radial_scale: f64,
}

impl MetricFactorization {
    /// `(4yy')^{1/4} [rho^2 - 2 rho |zeta| cos(theta - phi) + |zeta|^2]^{1/4}`.
    pub fn reconstruct(&self) -> f64 {
        let q = self.rho * self.rho - 2.0 * self.rho * self.zeta_modulus
            * (self.theta - self.phi).cos()
            + self.zeta_modulus * self.zeta_modulus;
        self.radial_scale * q.max(0.0).powf(0.25)
    }
}

/// Factor the gauge distance between `w` and `w'` through the hyperbolic
/// plane: with `y = |z|^2`, `y' = |z'|^2` the radial/center pair lives on
/// the upper half-plane and the angular interaction enters only through
/// one boundary matrix entry `zeta`.
pub fn metric_factorization(
    w: &HeisenbergPoint,
    wp: &HeisenbergPoint,
) -> Result<MetricFactorization> {
    if w.dim() != wp.dim() {
        return Err(Error::Precondition("dimension mismatch".into()));
    }
    let y = w.z_norm_sq();
    let yp = wp.z_norm_sq();
    if y == 0.0 || yp == 0.0 {
        return Err(Error::Domain(
            "angular factorization undefined at z = 0".into(),
        ));
    }
    let root = (y * yp).sqrt();
    let dt = w.t - wp.t;
    let delta = (dt * dt + (y - yp) * (y - yp)).sqrt() / (2.0 * root);
    let rho = (1.0 + delta * delta).sqrt();
    let theta = dt.atan2(y + yp);
    // zeta = <conj(z), z'> / (|z||z'|); modulus <= 1 by Cauchy-Schwarz
    let s: Complex64 = w
        .z
        .iter()
        .zip(wp.z.iter())
        .map(|(a, b)| a.conj() * b)
        .sum();
    let zeta = s / root;
    Ok(MetricFactorization {
        rho,
        delta,
        theta,
        zeta_modulus: zeta.norm().min(1.0),
        phi: zeta.arg().rem_euclid(2.0 * std::f64::consts::PI),
        radial_scale: (4.0 * y * yp).powf(0.25),
    })
}

/// Boundary kernel composed with the Poincare distance:
/// `psi_lambda(sqrt(1 + delta(v,v')^2))` in complex dimension `n`.
pub fn psi_lambda_hyperbolic_kernel(
    n: usize,
    lambda: f64,
    v: HyperbolicPoint,
    vp: HyperbolicPoint,
    tol: f64,
) -> Result<QuadratureResult> {
    let delta = poincare_distance(v, vp);
    psi_lambda_rho(n, lambda, (1.0 + delta * delta).sqrt(), tol)
}

/// Quadrature lattice on the upper half-plane: uniform in `x` and in
/// `ln y`, so the Haar density and modular weight are resolved evenly
/// across the decades of `y`.
#[derive(Debug, Clone, Copy)]
pub struct HyperbolicGrid {
    pub x_half: f64,
    pub log_y_half: f64,
    pub nx: usize,
    pub ny: usize,
}

impl HyperbolicGrid {
    pub fn new(x_half: f64, log_y_half: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(x_half > 0.0 && log_y_half > 0.0) || nx < 2 || ny < 2 {
            return Err(Error::Precondition("degenerate hyperbolic grid".into()));
        }
        Ok(HyperbolicGrid {
            x_half,
            log_y_half,
            nx,
            ny,
        })
    }

    fn dx(&self) -> f64 {
        2.0 * self.x_half / self.nx as f64
    }

    fn ds(&self) -> f64 {
        2.0 * self.log_y_half / self.ny as f64
    }

    /// Cell-center nodes with their Haar weights `y^{-1} dx ds`.
    pub fn nodes(&self) -> Vec<(HyperbolicPoint, f64)> {
        let (dx, ds) = (self.dx(), self.ds());
        let mut out = Vec::with_capacity(self.nx * self.ny);
        for i in 0..self.nx {
            let x = -self.x_half + (i as f64 + 0.5) * dx;
            for j in 0..self.ny {
                let s = -self.log_y_half + (j as f64 + 0.5) * ds;
                let y = s.exp();
                out.push((HyperbolicPoint { x, y }, dx * ds / y));
            }
        }
        out
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Precondition("need 1 <= p < inf".into()));
    }
    Ok(())
}

/// Non-unimodular Young inequality on the grid:
/// returns `(||F * K||_p, ||F||_p ||Delta^{-1/p'} K||_1)` with the group
/// convolution `(F*K)(v) = int F(u) K(u^{-1} v) dnu(u)`. The contract is
/// `lhs <= rhs` up to quadrature error.
pub fn modular_young_check<F, K>(
    grid: &HyperbolicGrid,
    f: F,
    k: K,
    p: f64,
) -> Result<(f64, f64)>
where
    F: Fn(HyperbolicPoint) -> f64 + Sync,
    K: Fn(HyperbolicPoint) -> f64 + Sync,
{
    check_p(p)?;
    let nodes = grid.nodes();
    let fvals: Vec<f64> = nodes.iter().map(|&(v, _)| f(v)).collect();
    let conv: Vec<f64> = nodes
        .par_iter()
        .map(|&(v, _)| {
            let mut acc = 0.0;
            for (idx, &(u, wu)) in nodes.iter().enumerate() {
                acc += wu * fvals[idx] * k(hyp_mul(hyp_inv(u), v));
            }
            acc
        })
        .collect();
    let lhs = nodes
        .iter()
        .zip(conv.iter())
        .map(|(&(_, w), c)| w * c.abs().powf(p))
        .sum::<f64>()
        .powf(1.0 / p);
    let f_norm = nodes
        .iter()
        .zip(fvals.iter())
        .map(|(&(_, w), fv)| w * fv.abs().powf(p))
        .sum::<f64>()
        .powf(1.0 / p);
    // Delta^{-1/p'} = y^{1/p'}; the exponent is 0 at p = 1
    let dual_pow = if p > 1.0 { (p - 1.0) / p } else { 0.0 };
    let k_weighted: f64 = nodes
        .iter()
        .map(|&(u, w)| w * u.y.powf(dual_pow) * k(u).abs())
        .sum();
    Ok((lhs, f_norm * k_weighted))
}

/// Non-unimodular triangle inequality on the grid: returns
/// `(double-sum lhs, product rhs)` for
/// `int int |g(x^{-1}y) f(x) - h(y^{-1}x) f(y)|^p >=
///  int | |g| - Delta^{-1/p} |h(.^{-1})| |^p  int |f|^p`.
pub fn modular_triangle_check<F, G, H>(
    grid: &HyperbolicGrid,
    f: F,
    g: G,
    h: H,
    p: f64,
) -> Result<(f64, f64)>
where
    F: Fn(HyperbolicPoint) -> f64 + Sync,
    G: Fn(HyperbolicPoint) -> f64 + Sync,
    H: Fn(HyperbolicPoint) -> f64 + Sync,
{
    check_p(p)?;
    let nodes = grid.nodes();
    let fvals: Vec<f64> = nodes.iter().map(|&(v, _)| f(v)).collect();
    let lhs: f64 = nodes
        .par_iter()
        .enumerate()
        .map(|(ix, &(vx, wx))| {
            let mut acc = 0.0;
            for (iy, &(vy, wy)) in nodes.iter().enumerate() {
                let a = g(hyp_mul(hyp_inv(vx), vy)) * fvals[ix];
                let b = h(hyp_mul(hyp_inv(vy), vx)) * fvals[iy];
                acc += wx * wy * (a - b).abs().powf(p);
            }
            acc
        })
        .collect::<Vec<f64>>()
        .iter()
        .sum();
    let kernel_part: f64 = nodes
        .iter()
        .map(|&(v, w)| {
            let m = g(v).abs() - v.y.powf(1.0 / p) * h(hyp_inv(v)).abs();
            w * m.abs().powf(p)
        })
        .sum();
    let f_part: f64 = nodes
        .iter()
        .zip(fvals.iter())
        .map(|(&(_, w), fv)| w * fv.abs().powf(p))
        .sum();
    Ok((lhs, kernel_part * f_part))
}
