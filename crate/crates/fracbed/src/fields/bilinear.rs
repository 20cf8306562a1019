//! Antisymmetrized two-function forms: the gradient pair form, its
//! convolution lower bound, the dual-exponent pair bound, the quadratic
//! triple-sum identity, and the product-function form on the doubled grid.

use super::besov::{besov_seminorm, radial_shift_integral};
use super::grid::{fourier, gradient, inverse_fourier, shifted, GridFunction, SpectralFunction};
use super::norms::lp_norm;
use crate::error::{Error, Result};
use crate::params::{dual_exponent, Params};
use crate::quadrature::{delta_kernel_constant, QuadratureResult};
use crate::specfun::{
    hausdorff_young_constant, log_gamma, sphere_area, thm6_constant, thm7_constant,
};
use num_complex::Complex64;

fn require_real(f: &GridFunction) -> Result<()> {
    let re_peak = f.values.iter().map(|v| v.re.abs()).fold(0.0f64, f64::max);
    let im_peak = f.values.iter().map(|v| v.im.abs()).fold(0.0f64, f64::max);
    if im_peak > 1e-12 * re_peak.max(1e-300) {
        return Err(Error::Precondition(
            "operation requires a real-valued field".into(),
        ));
    }
    Ok(())
}

fn require_same_grid(f: &GridFunction, g: &GridFunction) -> Result<()> {
    if f.dim != g.dim || f.size != g.size || f.half_width != g.half_width {
        return Err(Error::Precondition("grid shapes differ".into()));
    }
    Ok(())
}

/// `f * f~` with `f~(x) = f(-x)`: spectral multiplication by `|fhat|^2`.
pub fn autocorrelation(f: &GridFunction) -> Result<GridFunction> {
    require_real(f)?;
    let mut fh = fourier(f);
    for v in fh.values.iter_mut() {
        *v = Complex64::new(v.norm_sqr(), 0.0);
    }
    Ok(inverse_fourier(&fh))
}

/// Euclidean magnitude of the gradient field at every sample.
fn gradient_magnitude(parts: &[GridFunction]) -> Vec<f64> {
    let len = parts[0].len();
    (0..len)
        .map(|k| {
            parts
                .iter()
                .map(|p| p.values[k].norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect()
}

/// `int_p^q x^{-gamma} m(x) dx` for `m` linear with endpoint values
/// `mp`, `mq`; at `p = 0` the value `mp = 0` is required (gamma > 1).
fn segment_weighted(p: f64, q: f64, mp: f64, mq: f64, gamma: f64) -> f64 {
    if p == 0.0 {
        return mq / q * q.powf(2.0 - gamma) / (2.0 - gamma);
    }
    let a = (q.powf(1.0 - gamma) - p.powf(1.0 - gamma)) / (1.0 - gamma);
    let b = (q.powf(2.0 - gamma) - p.powf(2.0 - gamma)) / (2.0 - gamma);
    mp * a + (mq - mp) / (q - p) * (b - p * a)
}

/// `int |x|^{-n-lambda} m(x) dx` for a sampled magnitude `m` vanishing
/// linearly at the origin. In one dimension the piecewise-linear
/// interpolant of `m` is integrated against the weight exactly (a
/// midpoint value times the cell weight overestimates near the origin,
/// where the weight piles up at the inner cell edge and `m` is still
/// rising). Higher dimensions use midpoint cells plus an equal-volume-ball
/// origin model.
fn weighted_vanishing_integral(
    f: &GridFunction,
    m: &[f64],
    lambda: f64,
) -> Result<f64> {
    let n = f.dim;
    let nf = n as f64;
    let gamma = nf + lambda;
    let h = f.spacing();
    if n == 1 {
        let half = f.size / 2;
        let mut total = 0.0f64;
        // m(0) = 0 by the vanishing-gradient hypothesis; segments walk
        // outward from the origin on each side
        total += segment_weighted(0.0, h, 0.0, m[half + 1], gamma);
        total += segment_weighted(0.0, h, 0.0, m[half - 1], gamma);
        for j in 1..(f.size - half - 1) {
            let p = j as f64 * h;
            total += segment_weighted(p, p + h, m[half + j], m[half + j + 1], gamma);
            if half >= j + 1 {
                total += segment_weighted(p, p + h, m[half - j], m[half - j - 1], gamma);
            }
        }
        return Ok(total);
    }
    let hn = h.powi(n as i32);
    let mut origin = 0usize;
    for _ in 0..n {
        origin = origin * f.size + f.size / 2;
    }
    let mut total = 0.0f64;
    let mut slope_acc = 0.0f64;
    let mut slope_cnt = 0usize;
    for (idx, &mk) in m.iter().enumerate() {
        if idx == origin {
            continue;
        }
        let x = f.point(idx);
        let r2: f64 = x[..n].iter().map(|t| t * t).sum();
        let r = r2.sqrt();
        if r < 1.5 * h {
            slope_acc += mk / r;
            slope_cnt += 1;
        }
        total += mk * r.powf(-gamma) * hn;
    }
    // origin cell: int |x|^{-n-lambda} s |x| dx over the equal-volume ball
    // = s sigma r_c^{1-lambda} / (1 - lambda)
    let slope = if slope_cnt > 0 {
        slope_acc / slope_cnt as f64
    } else {
        0.0
    };
    let log_rc = (log_gamma(nf / 2.0 + 1.0)? - nf / 2.0 * std::f64::consts::PI.ln()) / nf + h.ln();
    let rc = log_rc.exp();
    total += slope * sphere_area(n)? * rc.powf(1.0 - lambda) / (1.0 - lambda);
    Ok(total)
}

/// Gradient pair form against its convolution lower bound:
/// `lhs = int int |x-y|^{-n-lambda} |f(x) grad f(y) - f(y) grad f(x)|`,
/// `rhs = 2 int |x|^{-n-lambda} |grad (f * f~)(x)| dx`.
pub fn bilinear_thm4(
    f: &GridFunction,
    lambda: f64,
    angular_nodes: usize,
    radial_tol: f64,
) -> Result<(QuadratureResult, f64)> {
    Params::thm4(f.dim, lambda)?;
    require_real(f)?;
    let fh = fourier(f);
    let grads = gradient(f);
    let grad_spectra: Vec<SpectralFunction> = grads.iter().map(fourier).collect();
    let hn = f.spacing().powi(f.dim as i32);
    let pair_energy = |w: &[f64; 3]| -> f64 {
        let fsh = shifted(&fh, &w[..f.dim]);
        let gsh: Vec<GridFunction> = grad_spectra
            .iter()
            .map(|s| shifted(s, &w[..f.dim]))
            .collect();
        let mut acc = 0.0f64;
        for k in 0..f.len() {
            let mut q = 0.0f64;
            for a in 0..f.dim {
                let d = fsh.values[k] * grads[a].values[k] - f.values[k] * gsh[a].values[k];
                q += d.norm_sqr();
            }
            acc += q.sqrt();
        }
        acc * hn
    };
    let lhs = radial_shift_integral(
        f.dim,
        f.half_width,
        f.spacing(),
        lambda,
        angular_nodes,
        radial_tol,
        pair_energy,
    )?;
    let auto = autocorrelation(f)?;
    let auto_grads = gradient(&auto);
    let mag = gradient_magnitude(&auto_grads);
    let rhs = 2.0 * weighted_vanishing_integral(f, &mag, lambda)?;
    Ok((lhs, rhs))
}

/// `h^n sum |f(x+w) g(x) - f(x) g(x+w)|^q`.
fn pair_difference_energy(
    f: &GridFunction,
    g: &GridFunction,
    fh: &SpectralFunction,
    gh: &SpectralFunction,
    w: &[f64; 3],
    q: f64,
) -> f64 {
    let fsh = shifted(fh, &w[..f.dim]);
    let gsh = shifted(gh, &w[..f.dim]);
    let hn = f.spacing().powi(f.dim as i32);
    let mut acc = 0.0f64;
    for k in 0..f.len() {
        let d = fsh.values[k] * g.values[k] - f.values[k] * gsh.values[k];
        acc += d.norm().powf(q);
    }
    acc * hn
}

fn antisymmetric_lhs(
    f: &GridFunction,
    g: &GridFunction,
    q: f64,
    lambda: f64,
    angular_nodes: usize,
    radial_tol: f64,
) -> Result<QuadratureResult> {
    let fh = fourier(f);
    let gh = fourier(g);
    radial_shift_integral(
        f.dim,
        f.half_width,
        f.spacing(),
        lambda,
        angular_nodes,
        radial_tol,
        |w| pair_difference_energy(f, g, &fh, &gh, w, q),
    )
}

/// Spectral value at the signed frequency `m`, zero outside the band.
fn spectral_at(s: &SpectralFunction, m: i64) -> Complex64 {
    let half = s.size as i64 / 2;
    if m < -half || m >= half {
        Complex64::new(0.0, 0.0)
    } else if m >= 0 {
        s.values[m as usize]
    } else {
        s.values[(m + s.size as i64) as usize]
    }
}

/// Antisymmetric pair form against the dual-exponent convolution bound
/// (one dimension): `lhs <= c [ int |H_{lambda/q}(u)|^p du ]^{q/p}` with
/// `H_s(u) = int |v|^s |fhat((u+v)/2) ghat((u-v)/2)| dv` and
/// `c = (c_{h-y}/2)^q int |x|^{-n-lambda} |2 sin(pi x.eta)|^q dx`.
pub fn bilinear_thm5(
    f: &GridFunction,
    g: &GridFunction,
    p: f64,
    lambda: f64,
    angular_nodes: usize,
    radial_tol: f64,
) -> Result<(QuadratureResult, f64)> {
    Params::thm5(f.dim, p, lambda)?;
    require_same_grid(f, g)?;
    if f.dim != 1 {
        return Err(Error::SizeBudget(
            "dual-exponent pair bound evaluated in one dimension only".into(),
        ));
    }
    let q = dual_exponent(p);
    let lhs = antisymmetric_lhs(f, g, q, lambda, angular_nodes, radial_tol)?;
    let fh = fourier(f);
    let gh = fourier(g);
    let inv2l = 1.0 / (2.0 * f.half_width);
    let nn = f.size as i64;
    let s_exp = lambda / q;
    // u and a live on the frequency lattice xi = m/(2L); v = 2a - u
    let mut hp_sum = 0.0f64;
    for mu in -nn..=(nn - 2) {
        let u = mu as f64 * inv2l;
        let mut hval = 0.0f64;
        for ma in (mu - nn / 2).max(-nn / 2)..(mu + nn / 2).min(nn / 2) {
            let fa = spectral_at(&fh, ma).norm();
            if fa == 0.0 {
                continue;
            }
            let gb = spectral_at(&gh, mu - ma).norm();
            if gb == 0.0 {
                continue;
            }
            let v = 2.0 * ma as f64 * inv2l - u;
            hval += v.abs().powf(s_exp) * fa * gb;
        }
        // dv = 2^n da with da the lattice cell 1/(2L)
        hp_sum += (2.0 * hval * inv2l).powf(p);
    }
    let h_integral = hp_sum * inv2l;
    let kernel = delta_kernel_constant(f.dim, q, lambda, 1e-10)?;
    if !kernel.converged {
        return Err(Error::Divergent("pair kernel constant did not converge".into()));
    }
    let chy = hausdorff_young_constant(f.dim, p)?;
    let rhs = (chy.value / 2.0).powf(q) * kernel.value * h_integral.powf(q / p);
    Ok((lhs, rhs))
}

/// Triple-sum side of the quadratic pair identity (one dimension):
/// `c 4^n 2^lambda (1/2L)^{3n} sum_{a,b,d} |xi_d - xi_b|^lambda fhat(a)
/// ghat(b) [ conj(fhat(d) ghat(a+b-d)) - conj(fhat(a+b-d) ghat(d)) ]`.
pub fn thm6_triple_sum(
    f: &GridFunction,
    g: &GridFunction,
    lambda: f64,
) -> Result<Complex64> {
    Params::thm6(f.dim, lambda)?;
    require_same_grid(f, g)?;
    if f.dim != 1 {
        return Err(Error::SizeBudget(
            "triple sum evaluated in one dimension only".into(),
        ));
    }
    if f.size > 128 {
        return Err(Error::SizeBudget(format!(
            "triple sum budget requires N <= 128, got {}",
            f.size
        )));
    }
    let fh = fourier(f);
    let gh = fourier(g);
    let half = f.size as i64 / 2;
    let inv2l = 1.0 / (2.0 * f.half_width);
    // |xi_d - xi_b|^lambda averaged exactly over the (b, d) lattice cell;
    // the offset variable has triangular density, so the average has a
    // closed form in the power-function antiderivatives. Without this the
    // cusp at d = b limits the sum to O(spacing^{1+lambda}) accuracy.
    let i0 = |x: f64| x.signum() * x.abs().powf(1.0 + lambda) / (1.0 + lambda);
    let i1 = |x: f64| x.abs().powf(2.0 + lambda) / (2.0 + lambda);
    let cell_avg: Vec<f64> = (0..f.size as i64 + 1)
        .map(|k| {
            let a = k as f64 * inv2l;
            let d = inv2l;
            let t1 = (d - a) * (i0(a) - i0(a - d)) + (i1(a) - i1(a - d));
            let t2 = (d + a) * (i0(a + d) - i0(a)) - (i1(a + d) - i1(a));
            (t1 + t2) / (d * d)
        })
        .collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for ma in -half..half {
        let fa = spectral_at(&fh, ma);
        if fa.norm_sqr() == 0.0 {
            continue;
        }
        for mb in -half..half {
            let gb = spectral_at(&gh, mb);
            if gb.norm_sqr() == 0.0 {
                continue;
            }
            let lead = fa * gb;
            for md in -half..half {
                let ms = ma + mb - md;
                let wt = cell_avg[(md - mb).unsigned_abs() as usize];
                let bracket = (spectral_at(&fh, md) * spectral_at(&gh, ms)).conj()
                    - (spectral_at(&fh, ms) * spectral_at(&gh, md)).conj();
                acc += wt * lead * bracket;
            }
        }
    }
    let c = thm6_constant(f.dim, lambda)?;
    let scale = c.value * 4.0f64.powi(f.dim as i32) * 2.0f64.powf(lambda)
        * inv2l.powi(3 * f.dim as i32);
    Ok(acc * scale)
}

/// Quadratic pair form against the triple-sum identity (one dimension).
pub fn bilinear_thm6(
    f: &GridFunction,
    g: &GridFunction,
    lambda: f64,
    angular_nodes: usize,
    radial_tol: f64,
) -> Result<(QuadratureResult, f64)> {
    let rhs = thm6_triple_sum(f, g, lambda)?;
    let lhs = antisymmetric_lhs(f, g, 2.0, lambda, angular_nodes, radial_tol)?;
    Ok((lhs, rhs.re))
}

/// Product-function form `F(x, y) = f(x) g(y)` on the doubled grid: the
/// pair seminorm of `F` against the two norm-product lower bounds
/// `c (||f||_p ||g||_q)^p` and `c (||g||_p ||f||_q)^p`, `q = pn/(n - p beta)`
/// (sharp `c` known for `p = 2`; `c = 1` reported otherwise).
pub fn product_form_thm7(
    f: &GridFunction,
    g: &GridFunction,
    p: f64,
    beta: f64,
    angular_nodes: usize,
    radial_tol: f64,
) -> Result<(QuadratureResult, (f64, f64))> {
    let prm = Params::thm7(f.dim, p, beta)?;
    require_same_grid(f, g)?;
    if 2 * f.dim > 3 {
        return Err(Error::SizeBudget(
            "doubled grid exceeds the supported dimension".into(),
        ));
    }
    let n = f.size;
    let mut values = Vec::with_capacity(n * n);
    for kf in 0..n {
        for kg in 0..n {
            values.push(f.values[kf] * g.values[kg]);
        }
    }
    let prod = GridFunction::new(2 * f.dim, n, f.half_width, values)?;
    let lhs = besov_seminorm(&prod, p, beta, angular_nodes, radial_tol)?;
    let q = prm.q();
    let c = if p == 2.0 {
        thm7_constant(f.dim, beta)?.value
    } else {
        1.0
    };
    let a = c * (lp_norm(f, p)? * lp_norm(g, q)?).powf(p);
    let b = c * (lp_norm(g, p)? * lp_norm(f, q)?).powf(p);
    Ok((lhs, (a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::family::{sample, TestFamily};
    use std::f64::consts::PI;

    fn gauss(a: f64, size: usize, l: f64) -> GridFunction {
        sample(&TestFamily::Gaussian { a }, 1, size, l).unwrap()
    }

    #[test]
    fn autocorrelation_peak_and_evenness() {
        let f = gauss(PI, 512, 10.0);
        let ac = autocorrelation(&f).unwrap();
        let mid = ac.len() / 2;
        let l2 = lp_norm(&f, 2.0).unwrap();
        assert!((ac.values[mid].re - l2 * l2).abs() < 1e-10);
        // evenness: a(x) = a(-x) (indices k and N-k)
        let n = ac.size;
        let mut worst = 0.0f64;
        for k in 1..n {
            worst = worst.max((ac.values[k] - ac.values[n - k]).norm());
        }
        assert!(worst < 1e-12, "evenness violation {worst}");
    }

    #[test]
    fn autocorrelation_gradient_vanishes_at_origin() {
        let f = gauss(PI, 512, 10.0);
        let ac = autocorrelation(&f).unwrap();
        let grad = gradient(&ac);
        let mid = ac.len() / 2;
        assert!(grad[0].values[mid].norm() < 1e-8);
    }

    #[test]
    fn gradient_pair_form_equality_for_gaussian() {
        // log-concave f makes the pair integrand single-signed in the
        // shift, so the convolution bound is attained
        let f = gauss(PI, 512, 10.0);
        let (lhs, rhs) = bilinear_thm4(&f, 0.5, 1, 1e-5).unwrap();
        assert!(lhs.converged, "err {}", lhs.abs_error);
        assert!(
            (lhs.value - rhs).abs() <= lhs.abs_error + 2e-3 * lhs.value,
            "lhs {} rhs {rhs} err {}",
            lhs.value,
            lhs.abs_error
        );
    }

    #[test]
    fn gradient_pair_form_dominates_convolution_bound() {
        // two separated bumps are not log-concave: strict inequality
        let f = GridFunction::from_fn(1, 512, 12.0, |x| {
            let t = x[0];
            Complex64::new(
                (-PI * (t - 1.0) * (t - 1.0)).exp() + (-PI * (t + 1.0) * (t + 1.0)).exp(),
                0.0,
            )
        })
        .unwrap();
        let (lhs, rhs) = bilinear_thm4(&f, 0.5, 1, 1e-5).unwrap();
        assert!(lhs.converged, "err {}", lhs.abs_error);
        assert!(rhs.is_finite() && rhs > 0.0);
        assert!(
            lhs.value - rhs > lhs.abs_error,
            "lhs {} rhs {rhs} err {}",
            lhs.value,
            lhs.abs_error
        );
    }

    #[test]
    fn gradient_pair_form_quadratic_scaling() {
        let f = gauss(PI, 256, 8.0);
        let cf = f.scaled(Complex64::new(2.0, 0.0));
        let (l1, r1) = bilinear_thm4(&f, 0.5, 1, 1e-4).unwrap();
        let (l2, r2) = bilinear_thm4(&cf, 0.5, 1, 1e-4).unwrap();
        assert!((l2.value / l1.value - 4.0).abs() < 1e-6);
        assert!((r2 / r1 - 4.0).abs() < 1e-9);
    }

    #[test]
    fn pair_bound_vanishes_for_equal_functions() {
        let f = gauss(PI, 256, 8.0);
        let (lhs, rhs) = bilinear_thm5(&f, &f, 2.0, 0.5, 1, 1e-4).unwrap();
        assert!(lhs.value.abs() < 1e-10 * rhs.max(1.0), "lhs {}", lhs.value);
        assert!(rhs > 0.0);
    }

    #[test]
    fn pair_bound_holds_for_distinct_gaussians() {
        let f = gauss(PI, 512, 10.0);
        let g = gauss(PI / 4.0, 512, 10.0);
        let (lhs, rhs) = bilinear_thm5(&f, &g, 2.0, 0.5, 1, 1e-5).unwrap();
        assert!(lhs.converged);
        assert!(
            rhs - lhs.value > lhs.abs_error,
            "lhs {} rhs {rhs}",
            lhs.value
        );
    }

    #[test]
    fn pair_bound_symmetric_in_swap() {
        let f = gauss(PI, 256, 8.0);
        let g = gauss(1.0, 256, 8.0);
        let (l1, r1) = bilinear_thm5(&f, &g, 1.5, 0.8, 1, 1e-4).unwrap();
        let (l2, r2) = bilinear_thm5(&g, &f, 1.5, 0.8, 1, 1e-4).unwrap();
        assert!((l1.value - l2.value).abs() < 1e-8 * l1.value.abs().max(1.0));
        assert!((r1 - r2).abs() < 1e-8 * r1.abs().max(1.0));
    }

    #[test]
    fn triple_sum_identity_two_paths() {
        let f = gauss(1.0, 64, 8.0);
        let g = gauss(0.25, 64, 8.0);
        let (lhs, rhs) = bilinear_thm6(&f, &g, 0.5, 1, 1e-4).unwrap();
        assert!(lhs.converged, "err {}", lhs.abs_error);
        assert!(
            (lhs.value - rhs).abs() <= 0.05 * lhs.value,
            "lhs {} rhs {rhs}",
            lhs.value
        );
    }

    #[test]
    fn triple_sum_real_and_antisymmetric() {
        let f = gauss(1.0, 64, 8.0);
        let g = gauss(0.25, 64, 8.0);
        let v = thm6_triple_sum(&f, &g, 0.5).unwrap();
        assert!(v.im.abs() < 1e-8 * v.re.abs(), "imag {}", v.im);
        let same = thm6_triple_sum(&f, &f, 0.5).unwrap();
        assert!(same.norm() < 1e-10 * v.norm().max(1.0));
    }

    #[test]
    fn triple_sum_budget() {
        let f = gauss(1.0, 256, 8.0);
        assert!(matches!(
            thm6_triple_sum(&f, &f, 0.5),
            Err(Error::SizeBudget(_))
        ));
    }

    #[test]
    fn product_form_dominates_norm_products() {
        let f = gauss(PI, 128, 8.0);
        let g = gauss(1.0, 128, 8.0);
        let (lhs, (a, b)) = product_form_thm7(&f, &g, 2.0, 0.25, 8, 1e-3).unwrap();
        assert!(lhs.converged, "err {}", lhs.abs_error);
        let bound = a.max(b);
        assert!(
            lhs.value - bound > lhs.abs_error,
            "lhs {} bound {bound}",
            lhs.value
        );
    }

    #[test]
    fn product_form_swap_invariance() {
        let f = gauss(PI, 64, 8.0);
        let g = gauss(1.0, 64, 8.0);
        let (l1, _) = product_form_thm7(&f, &g, 2.0, 0.25, 4, 1e-3).unwrap();
        let (l2, _) = product_form_thm7(&g, &f, 2.0, 0.25, 4, 1e-3).unwrap();
        assert!(
            (l1.value - l2.value).abs() < 1e-2 * l1.value,
            "{} vs {}",
            l1.value,
            l2.value
        );
    }
}
