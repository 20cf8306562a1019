//! Desk-scale verification of the two group-level inequalities: the
//! gauge-seminorm lower bound with weighted norm on the right, and the
//! weighted fractional integral with its sharp constant, both reduced
//! through the central direction as in their proofs.

use crate::error::{Error, Result};
use crate::inequalities::{ConstantLabel, Direction, InequalityReport, TheoremId};
use crate::params::Params;
use crate::quadrature::{
    d_pbeta_direct, integrate_adaptive, integrate_adaptive_budget, Interval, QuadratureResult,
};
use crate::specfun::{beta_line_integral, thm8_prefactor, thm9_constant};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::time::Instant;

/// Cell-centered cubic sampling box `[-L, L]^3` in `(x, y, t)` with
/// `z = x + iy`; centers sit at `-L + (k + 1/2) h`, which keeps every
/// singular axis (`u = 0`, `z = 0`) strictly off the lattice.
#[derive(Debug, Clone, Copy)]
pub struct GroupSampling {
    pub size: usize,
    pub half_width: f64,
}

impl GroupSampling {
    pub fn new(size: usize, half_width: f64) -> Result<Self> {
        if size < 8 || size > 64 {
            return Err(Error::SizeBudget(format!(
                "group sampling size {size} outside [8, 64]"
            )));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::Precondition("half width must be positive".into()));
        }
        Ok(GroupSampling { size, half_width })
    }

    fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.size as f64
    }

    fn centers(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.size)
            .map(|k| -self.half_width + (k as f64 + 0.5) * h)
            .collect()
    }
}

/// Central-direction kernel reduction: the line integral
/// `int (1+t^2)^{-lambda/4} dt` evaluated by the closed Gamma-ratio form
/// and independently by adaptive quadrature.
pub fn j_reduction_check(lambda: f64) -> Result<(f64, QuadratureResult)> {
    if !(lambda > 2.0) {
        return Err(Error::Divergent(format!(
            "central line integral diverges for lambda <= 2, got {lambda}"
        )));
    }
    let closed = beta_line_integral(lambda)?.value;
    let quad = integrate_adaptive(
        |t: f64| (1.0 + t * t).powf(-lambda / 4.0),
        Interval::real_line(),
        1e-12,
    );
    Ok((closed, quad))
}

/// `int_{box^c} gauge^{-mu} dx dy dt` over the complement of the cube
/// `[-L, L]^3` (Lebesgue measure), for `mu > 4`. The `|t| > L` slab has a
/// closed form through the line Beta integral; the annulus part uses the
/// circle-outside-square arc length with an adaptive radial integral.
fn gauge_tail_outside_box(half_width: f64, mu: f64) -> Result<f64> {
    if !(mu > 4.0) {
        return Err(Error::Divergent(format!(
            "gauge tail diverges at infinity for mu <= 4, got {mu}"
        )));
    }
    let l = half_width;
    let c_line = beta_line_integral(mu)?.value / 2.0;
    let slab = 2.0 * PI * c_line * l.powf(2.0 - mu / 2.0) / (mu / 2.0 - 2.0);
    // |t| <= L, (x,y) outside the square: radial profile times arc length
    let g_t = |rho: f64| {
        let cap = l / (rho * rho);
        let inner = integrate_adaptive_budget(
            |s: f64| (1.0 + s * s).powf(-mu / 4.0),
            Interval::finite(0.0, cap),
            1e-11,
            1 << 12,
        );
        2.0 * inner.value * rho.powf(2.0 - mu)
    };
    let arc = move |rho: f64| {
        if rho <= l {
            0.0
        } else if rho >= l * std::f64::consts::SQRT_2 {
            2.0 * PI * rho
        } else {
            8.0 * rho * (l / rho).acos()
        }
    };
    let near = integrate_adaptive_budget(
        |rho: f64| g_t(rho) * arc(rho),
        Interval::finite(l, l * std::f64::consts::SQRT_2),
        1e-9,
        1 << 12,
    );
    let far = integrate_adaptive_budget(
        |rho: f64| g_t(rho) * arc(rho),
        Interval::half_line(l * std::f64::consts::SQRT_2),
        1e-9,
        1 << 12,
    );
    Ok(slab + near.value + far.value)
}

/// Gauge-seminorm inequality on the first group (`n = 1`): the double
/// integral of `|f(w) - f(w')|^p / d(w,w')^{4 + p beta}` dominates the
/// prefactor-times-kernel-constant multiple of `int |z|^{-p beta} |f|^p`.
/// The left side is evaluated through the left-invariant shift
/// decomposition with an analytic correction for the shift box tail.
pub fn thm8_verify<F>(
    f: F,
    family_id: &str,
    p: f64,
    beta: f64,
    grid: &GroupSampling,
) -> Result<InequalityReport>
where
    F: Fn(f64, f64, f64) -> f64 + Sync,
{
    let start = Instant::now();
    let params = Params::thm8(1, p, beta)?;
    let pb = p * beta;
    let mu = 4.0 + pb;
    let n = grid.size;
    let h = grid.spacing();
    let c = grid.centers();
    let w3 = 4.0 * h * h * h; // Haar cell weight, n = 1

    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let mut fvals = vec![0.0f64; n * n * n];
    let mut fmax = 0.0f64;
    let mut boundary_max = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = f(c[i], c[j], c[k]);
                if !v.is_finite() {
                    return Err(Error::Precondition("non-finite sample".into()));
                }
                fvals[idx(i, j, k)] = v;
                fmax = fmax.max(v.abs());
                if i == 0 || j == 0 || k == 0 || i == n - 1 || j == n - 1 || k == n - 1 {
                    boundary_max = boundary_max.max(v.abs());
                }
            }
        }
    }
    if fmax == 0.0 || boundary_max > 0.05 * fmax {
        return Err(Error::Precondition(
            "input must decay inside the sampling box (boundary exceeds 5% of peak)".into(),
        ));
    }

    let fp_norm: f64 = fvals.iter().map(|v| v.abs().powf(p)).sum::<f64>() * w3;

    // lhs = int_u gauge(u)^{-mu} [ int_w |f(w u) - f(w)|^p dw ] du
    let partials: Vec<f64> = (0..n * n * n)
        .into_par_iter()
        .map(|u| {
            let (iu, ju, ku) = (u / (n * n), (u / n) % n, u % n);
            let (xu, yu, tu) = (c[iu], c[ju], c[ku]);
            let zn2 = xu * xu + yu * yu;
            let gauge = (zn2 * zn2 + tu * tu).powf(0.25);
            let mut inner = 0.0f64;
            let mut shifted_mass = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    // w u = (z_w + z_u, t_w + t_u + 2 Im(z_w conj(z_u)))
                    let x = c[i] + xu;
                    let y = c[j] + yu;
                    let twist = 2.0 * (c[j] * xu - c[i] * yu);
                    for k in 0..n {
                        let v = f(x, y, c[k] + tu + twist);
                        inner += (v - fvals[idx(i, j, k)]).abs().powf(p);
                        shifted_mass += v.abs().powf(p);
                    }
                }
            }
            // the w-box drops pairs whose shifted copy sits inside while w
            // itself is outside; f vanishes out there, so the dropped mass
            // is the shifted copy's missing p-mass
            let inner_total = (inner - shifted_mass) * w3 + fp_norm;
            w3 * gauge.powf(-mu) * inner_total
        })
        .collect();
    let grid_sum: f64 = partials.iter().sum();
    // beyond the shift box the two copies of f no longer overlap, so the
    // inner integral is 2 ||f||_p^p to high accuracy
    let tail = 2.0 * fp_norm * 4.0 * gauge_tail_outside_box(grid.half_width, mu)?;
    let lhs = grid_sum + tail;

    let prefactor = thm8_prefactor(1, p, beta)?.value;
    let kernel_const = d_pbeta_direct(2, p, beta, 1e-8)?;
    let constant = prefactor * kernel_const.value;
    let weighted: f64 = (0..n * n * n)
        .map(|u| {
            let (i, j, k) = (u / (n * n), (u / n) % n, u % n);
            let rz = (c[i] * c[i] + c[j] * c[j]).sqrt();
            rz.powf(-pb) * fvals[idx(i, j, k)].abs().powf(p)
        })
        .sum::<f64>()
        * w3;
    let rhs = constant * weighted;

    let mut report = InequalityReport::build(
        TheoremId::T8,
        params,
        vec![family_id.to_string()],
        Direction::Ge,
        lhs,
        rhs,
        constant,
        ConstantLabel::ProofChain,
        0.10 * lhs,
        0.02 * rhs,
        start.elapsed().as_millis() as u64,
    );
    report.annotations.push(format!(
        "shift-box grid sum {grid_sum:.6e} plus analytic tail {tail:.6e}; coarse-grid budget 10%"
    ));
    Ok(report)
}

/// The left side of the gauge-seminorm inequality alone (same
/// discretization as [`thm8_verify`]); used by the invariance checks.
pub fn thm8_lhs<F>(f: F, p: f64, beta: f64, grid: &GroupSampling) -> Result<f64>
where
    F: Fn(f64, f64, f64) -> f64 + Sync,
{
    let r = thm8_verify(f, "probe", p, beta, grid)?;
    Ok(r.lhs)
}

/// Direct coarse evaluation of the weighted fractional integral norm on
/// the group: `|| |z|^{-alpha} (gauge^{-lambda} * (|z|^{-beta} f)) ||_p`
/// with the group convolution `(K * g)(w) = int K(u) g(u^{-1} w) du`.
pub fn thm9_direct_lhs<F>(
    f: F,
    p: f64,
    alpha: f64,
    beta: f64,
    grid: &GroupSampling,
) -> Result<f64>
where
    F: Fn(f64, f64, f64) -> f64 + Sync,
{
    let params = Params::thm9(1, p, alpha, beta)?;
    let lambda = params.lambda;
    let n = grid.size;
    let h = grid.spacing();
    let c = grid.centers();
    let w3 = 4.0 * h * h * h;
    let conv: Vec<f64> = (0..n * n * n)
        .into_par_iter()
        .map(|w| {
            let (iw, jw, kw) = (w / (n * n), (w / n) % n, w % n);
            let (xw, yw, tw) = (c[iw], c[jw], c[kw]);
            let mut acc = 0.0f64;
            for iu in 0..n {
                for ju in 0..n {
                    let (xu, yu) = (c[iu], c[ju]);
                    let zn2 = xu * xu + yu * yu;
                    // u^{-1} w = (z_w - z_u, t_w - t_u - 2 Im(z_u conj(z_w)))
                    let xx = xw - xu;
                    let yy = yw - yu;
                    let twist = -2.0 * (yu * xw - xu * yw);
                    let rz2 = xx * xx + yy * yy;
                    if rz2 < 1e-24 {
                        continue; // skip the singular source column
                    }
                    let wz = rz2.powf(-beta / 2.0);
                    for ku in 0..n {
                        let tu = c[ku];
                        let gauge = (zn2 * zn2 + tu * tu).powf(0.25);
                        acc += gauge.powf(-lambda) * wz * f(xx, yy, tw - tu + twist);
                    }
                }
            }
            acc * w3
        })
        .collect();
    let lhs_p: f64 = (0..n * n * n)
        .map(|w| {
            let (i, j, _) = (w / (n * n), (w / n) % n, w % n);
            let rz = (c[i] * c[i] + c[j] * c[j]).sqrt();
            (rz.powf(-alpha) * conv[w].abs()).powf(p)
        })
        .sum::<f64>()
        * w3;
    Ok(lhs_p.powf(1.0 / p))
}

/// Weighted fractional integral inequality, verified along its proof
/// path: reduce through the central direction to the plane (slice
/// `L^p`-profile `h`, kernel collapsed to `c_J |z|^{-lambda+2}`), compare
/// against the sharp constant times `||h||_p = ||f||_p`, and
/// cross-validate with the direct coarse group evaluation, which the
/// central-direction Young step bounds from above.
pub fn thm9_verify<F>(
    f: F,
    family_id: &str,
    p: f64,
    alpha: f64,
    beta: f64,
    plane_size: usize,
    plane_half_width: f64,
    grid: &GroupSampling,
) -> Result<InequalityReport>
where
    F: Fn(f64, f64, f64) -> f64 + Sync,
{
    let start = Instant::now();
    let params = Params::thm9(1, p, alpha, beta)?;
    let lambda = params.lambda;
    let e = lambda - 2.0; // plane kernel decay exponent, in (0, 2)
    if plane_size < 8 || plane_size > 256 {
        return Err(Error::SizeBudget(format!(
            "plane size {plane_size} outside [8, 256]"
        )));
    }
    let c_j = beta_line_integral(lambda)?.value;
    let m = plane_size;
    let h2 = 2.0 * plane_half_width / m as f64;
    let c2: Vec<f64> = (0..m)
        .map(|k| -plane_half_width + (k as f64 + 0.5) * h2)
        .collect();
    let w2 = 4.0 * h2 * h2;

    // slice profile h(z) = (int |f(z,t)|^p dt)^{1/p}
    let hvals: Vec<f64> = (0..m * m)
        .into_par_iter()
        .map(|q| {
            let (x, y) = (c2[q / m], c2[q % m]);
            let r = integrate_adaptive(
                |t: f64| f(x, y, t).abs().powf(p),
                Interval::real_line(),
                1e-11,
            );
            r.value.max(0.0).powf(1.0 / p)
        })
        .collect();
    let h_norm: f64 = hvals
        .iter()
        .map(|v| v.powf(p))
        .sum::<f64>()
        .mul_add(w2, 0.0)
        .powf(1.0 / p);

    // plane convolution with cell-averaged self weight for the cusp
    let rho0 = h2 / PI.sqrt();
    let self_weight = (2.0 / (2.0 - e)) * rho0.powf(-e);
    let src: Vec<f64> = (0..m * m)
        .map(|q| {
            let (x, y) = (c2[q / m], c2[q % m]);
            (x * x + y * y).sqrt().powf(-beta) * hvals[q]
        })
        .collect();
    let conv: Vec<f64> = (0..m * m)
        .into_par_iter()
        .map(|q| {
            let (x, y) = (c2[q / m], c2[q % m]);
            let mut acc = 0.0f64;
            for (u, s) in src.iter().enumerate() {
                let dx = x - c2[u / m];
                let dy = y - c2[u % m];
                let d2 = dx * dx + dy * dy;
                let ker = if d2 < 1e-24 {
                    self_weight
                } else {
                    d2.powf(-e / 2.0)
                };
                acc += ker * s;
            }
            c_j * w2 * acc
        })
        .collect();
    let lhs_reduction: f64 = (0..m * m)
        .map(|q| {
            let (x, y) = (c2[q / m], c2[q % m]);
            ((x * x + y * y).sqrt().powf(-alpha) * conv[q].abs()).powf(p)
        })
        .sum::<f64>()
        .mul_add(w2, 0.0)
        .powf(1.0 / p);

    let constant = thm9_constant(1, p, alpha, beta)?.value;
    let rhs = constant * h_norm;
    let lhs_direct = thm9_direct_lhs(&f, p, alpha, beta, grid)?;

    let mut report = InequalityReport::build(
        TheoremId::T9,
        params,
        vec![family_id.to_string()],
        Direction::Le,
        lhs_reduction,
        rhs,
        constant,
        ConstantLabel::Sharp,
        0.05 * lhs_reduction,
        0.01 * rhs,
        start.elapsed().as_millis() as u64,
    );
    report.annotations.push(format!(
        "direct group lhs {lhs_direct:.6e} ({:.3} of the reduction lhs); the central-direction \
         Young step is a strict upper bound, so the direct value must not exceed the reduction",
        lhs_direct / lhs_reduction
    ));
    if lhs_direct > lhs_reduction * 1.15 {
        report.verdict = crate::inequalities::Verdict::Violated;
        report
            .annotations
            .push("direct path exceeds its reduction bound".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::Verdict;

    fn gaussian(x: f64, y: f64, t: f64) -> f64 {
        (-PI * (x * x + y * y + t * t)).exp()
    }

    #[test]
    fn central_line_integral_closed_vs_quadrature() {
        for lambda in [2.5, 3.0, 4.0, 6.0, 8.0] {
            let (closed, quad) = j_reduction_check(lambda).unwrap();
            assert!(
                (closed - quad.value).abs() <= 1e-10 * closed,
                "lambda={lambda}: {closed} vs {}",
                quad.value
            );
        }
        let (closed, _) = j_reduction_check(4.0).unwrap();
        assert!((closed - PI).abs() < 1e-14);
        let (closed6, _) = j_reduction_check(6.0).unwrap();
        assert!((closed6 - 2.0).abs() < 1e-14);
        // lambda = 2n+2-alpha-beta at n=1, alpha=beta=0.5
        let (c3, q3) = j_reduction_check(3.0).unwrap();
        assert!(c3.is_finite() && (c3 - q3.value).abs() <= 1e-10 * c3);
        assert!(matches!(j_reduction_check(2.0), Err(Error::Divergent(_))));
    }

    #[test]
    fn gauge_seminorm_holds_for_gaussian() {
        let grid = GroupSampling::new(16, 3.0).unwrap();
        let r = thm8_verify(gaussian, "gaussian", 2.0, 0.25, &grid).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        // frozen oracle values from an independent implementation
        assert!((r.constant / 134.390 - 1.0).abs() < 1e-3, "{}", r.constant);
        assert!((r.lhs / 567.08 - 1.0).abs() < 0.02, "lhs {}", r.lhs);
        assert!((r.rhs / 334.05 - 1.0).abs() < 0.01, "rhs {}", r.rhs);
        assert!(r.ratio > 1.6 && r.ratio < 1.8, "ratio {}", r.ratio);
    }

    #[test]
    fn non_decaying_input_rejected() {
        let grid = GroupSampling::new(8, 2.0).unwrap();
        assert!(matches!(
            thm8_verify(|_, _, _| 1.0, "const", 2.0, 0.25, &grid),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn central_translation_leaves_lhs_unchanged() {
        let grid = GroupSampling::new(12, 3.0).unwrap();
        let shift = grid.spacing();
        let a = thm8_lhs(gaussian, 2.0, 0.25, &grid).unwrap();
        let b = thm8_lhs(
            move |x, y, t| gaussian(x, y, t - shift),
            2.0,
            0.25,
            &grid,
        )
        .unwrap();
        assert!((a - b).abs() <= 1e-10 * a, "{a} vs {b}");
    }

    #[test]
    fn weighted_integral_reduction_holds_with_sharp_constant() {
        let grid = GroupSampling::new(16, 4.0).unwrap();
        let r = thm9_verify(gaussian, "gaussian", 2.0, 0.4, 0.4, 64, 6.0, &grid).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!((r.constant / 1422.488 - 1.0).abs() < 1e-4, "{}", r.constant);
        // frozen oracle: reduction lhs 325.37, direct coarse lhs 51.3
        assert!((r.lhs / 325.37 - 1.0).abs() < 0.02, "lhs {}", r.lhs);
        assert!(r.ratio < 0.25, "ratio {}", r.ratio);
        assert!(r.annotations[0].contains("direct group lhs"));
    }

    #[test]
    fn direct_path_stays_below_reduction() {
        let grid = GroupSampling::new(12, 4.0).unwrap();
        let direct = thm9_direct_lhs(gaussian, 2.0, 0.4, 0.4, &grid).unwrap();
        assert!(direct > 0.0 && direct < 325.37, "direct {direct}");
    }

    #[test]
    fn slice_profile_norm_matches_group_norm() {
        // Fubini: ||h||_{L^p(plane)} = ||f||_{L^p(group)}; cross-check the
        // hybrid slice computation against a dense 3-D grid sum
        let m = 48;
        let l = 5.0;
        let h = 2.0 * l / m as f64;
        let c: Vec<f64> = (0..m).map(|k| -l + (k as f64 + 0.5) * h).collect();
        let p = 2.0;
        let mut h_norm_p = 0.0f64;
        for x in &c {
            for y in &c {
                let r = integrate_adaptive(
                    |t: f64| gaussian(*x, *y, t).powf(p),
                    Interval::real_line(),
                    1e-12,
                );
                h_norm_p += 4.0 * h * h * r.value;
            }
        }
        let mut f_norm_p = 0.0f64;
        for x in &c {
            for y in &c {
                for t in &c {
                    f_norm_p += 4.0 * h * h * h * gaussian(*x, *y, *t).powf(p);
                }
            }
        }
        assert!(
            (h_norm_p - f_norm_p).abs() < 1e-3 * f_norm_p,
            "{h_norm_p} vs {f_norm_p}"
        );
        // closed form: ||f||_2^2 = 4 * 2^{-3/2}
        let exact = 4.0 * (2.0f64).powf(-1.5);
        assert!((h_norm_p - exact).abs() < 1e-6 * exact);
    }

    #[test]
    fn admissibility_boundary_rejected() {
        let grid = GroupSampling::new(8, 3.0).unwrap();
        assert!(matches!(
            thm9_verify(gaussian, "gaussian", 2.0, 1.0, 1.0, 16, 4.0, &grid),
            Err(Error::Admissibility(_))
        ));
        assert!(matches!(
            thm9_verify(gaussian, "gaussian", 2.0, 1.2, 0.4, 16, 4.0, &grid),
            Err(Error::Admissibility(_))
        ));
        assert!(GroupSampling::new(4, 2.0).is_err());
    }
}
