//! Pair-kernel lower bounds: the triangle-inequality bound, the
//! reduction to norm differences, and the spherical L^p radial reduction.

use super::polarize::torus_distance;
use crate::error::{Error, Result};
use crate::fields::grid::GridFunction;
use crate::fields::lp_norm;

fn require_same_grid(f: &GridFunction, g: &GridFunction) -> Result<()> {
    if f.dim != g.dim || f.size != g.size || f.half_width != g.half_width {
        return Err(Error::Precondition("grid shapes differ".into()));
    }
    Ok(())
}

/// Periodic index difference `a - b` as a flat index into the grid
/// (per-axis wrap).
fn diff_index(f: &GridFunction, a: usize, b: usize) -> usize {
    let n = f.size;
    let mut rem_a = a;
    let mut rem_b = b;
    let mut out = 0usize;
    let mut stride = f.len() / n;
    for _ in 0..f.dim {
        let ka = rem_a / stride;
        let kb = rem_b / stride;
        rem_a %= stride;
        rem_b %= stride;
        // index of coordinate 0 is N/2; difference re-centered there
        let d = (ka + n + n / 2 - kb) % n;
        out = out * n + d;
        stride /= n;
    }
    out
}

/// Triangle-inequality pair bound:
/// `lhs = sum_{x,y} |g(y-x) f(x) - h(x-y) f(y)|^p h^{2n}`,
/// `rhs = sum_y ||g(y)| - |h(-y)||^p h^n  *  sum_x |f(x)|^p h^n`;
/// the left dominates the right.
pub fn triangle_lemma_check(
    f: &GridFunction,
    gk: &GridFunction,
    hk: &GridFunction,
    p: f64,
) -> Result<(f64, f64)> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Admissibility(format!("p must lie in [1, inf), got {p}")));
    }
    require_same_grid(f, gk)?;
    require_same_grid(f, hk)?;
    let hn = f.spacing().powi(f.dim as i32);
    let zero = diff_index(f, 0, 0); // index of the origin cell
    let mut lhs = 0.0f64;
    for x in 0..f.len() {
        for y in 0..f.len() {
            let gyx = gk.values[diff_index(f, y, x)];
            let hxy = hk.values[diff_index(f, x, y)];
            let d = gyx * f.values[x] - hxy * f.values[y];
            lhs += d.norm().powf(p);
        }
    }
    lhs *= hn * hn;
    let mut kern = 0.0f64;
    for y in 0..f.len() {
        // h(-y): reflect through the origin cell index
        let neg = diff_index(f, zero, y);
        kern += (gk.values[y].norm() - hk.values[neg].norm()).abs().powf(p);
    }
    kern *= hn;
    let rhs = kern * lp_norm(f, p)?.powf(p);
    Ok((lhs, rhs))
}

/// Reduction bound: `sum_{u,v} K(u-v) |f(u) - g(v)|^p h^{2n}` against
/// `(sum K h^n) | ||f||_p - ||g||_p |^p`. `K` is a nonnegative kernel
/// sampled on the same grid (argument indexed like a field).
pub fn reduction_lemma_check(
    f: &GridFunction,
    g: &GridFunction,
    kernel: &GridFunction,
    p: f64,
) -> Result<(f64, f64)> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Admissibility(format!("p must lie in [1, inf), got {p}")));
    }
    require_same_grid(f, g)?;
    require_same_grid(f, kernel)?;
    if kernel.values.iter().any(|v| v.re < 0.0 || v.im.abs() > 1e-14) {
        return Err(Error::Precondition("kernel must be nonnegative".into()));
    }
    let hn = f.spacing().powi(f.dim as i32);
    let mut lhs = 0.0f64;
    for u in 0..f.len() {
        for v in 0..f.len() {
            let k = kernel.values[diff_index(f, u, v)].re;
            if k == 0.0 {
                continue;
            }
            lhs += k * (f.values[u] - g.values[v]).norm().powf(p);
        }
    }
    lhs *= hn * hn;
    let mass: f64 = kernel.values.iter().map(|v| v.re).sum::<f64>() * hn;
    let rhs = mass * (lp_norm(f, p)? - lp_norm(g, p)?).abs().powf(p);
    Ok((lhs, rhs))
}

/// Radial profile from spherical L^p averaging, organized so the radial
/// L^p mass is conserved exactly: cells are binned into shells
/// `[j h, (j+1) h)`, and `F_j^p = sigma * (cell mass in shell) / (shell
/// cell volume)`.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    /// shell center radii `(j + 1/2) h`
    pub radii: Vec<f64>,
    /// profile values `F_j`
    pub values: Vec<f64>,
    /// exact shell measures `count_j h^n / sigma` (the discrete
    /// `r^{n-1} dr` weight)
    pub weights: Vec<f64>,
    pub sigma: f64,
}

impl RadialProfile {
    /// `[ sum_j F_j^p w_j ]^{1/p}`, equal to the input `L^p` norm.
    pub fn lp_norm(&self, p: f64) -> f64 {
        self.values
            .iter()
            .zip(self.weights.iter())
            .map(|(v, w)| v.powf(p) * w)
            .sum::<f64>()
            .powf(1.0 / p)
    }

    /// The profile replanted on the source grid as a radial function
    /// `x -> F(|x|) / sigma^{1/p}` (the per-direction amplitude), for
    /// energy comparisons against the original field.
    pub fn as_radial_field(
        &self,
        dim: usize,
        size: usize,
        half_width: f64,
        p: f64,
    ) -> Result<GridFunction> {
        let h = 2.0 * half_width / size as f64;
        let amp: Vec<f64> = self
            .values
            .iter()
            .map(|v| v / self.sigma.powf(1.0 / p))
            .collect();
        GridFunction::from_fn(dim, size, half_width, |x| {
            let r2: f64 = x.iter().map(|t| t * t).sum();
            let j = (r2.sqrt() / h) as usize;
            let v = if j < amp.len() { amp[j] } else { 0.0 };
            num_complex::Complex64::new(v, 0.0)
        })
    }
}

/// `F(r) = [ int_{S^{n-1}} |f(r xi)|^p dxi ]^{1/p}` by shell binning.
pub fn spherical_lp_reduction(f: &GridFunction, p: f64) -> Result<RadialProfile> {
    if f.dim < 2 {
        return Err(Error::Precondition(
            "spherical reduction needs dimension at least 2".into(),
        ));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Admissibility(format!("p must lie in [1, inf), got {p}")));
    }
    let sigma = crate::specfun::sphere_area(f.dim)?;
    let h = f.spacing();
    let hn = h.powi(f.dim as i32);
    let shells = ((f.dim as f64).sqrt() * f.half_width / h) as usize + 2;
    let mut mass = vec![0.0f64; shells];
    let mut volume = vec![0.0f64; shells];
    for idx in 0..f.len() {
        let x = f.point(idx);
        let r: f64 = x[..f.dim].iter().map(|t| t * t).sum::<f64>().sqrt();
        let j = (r / h) as usize;
        mass[j] += f.values[idx].norm().powf(p) * hn;
        volume[j] += hn;
    }
    let last = volume.iter().rposition(|&v| v > 0.0).unwrap_or(0);
    let mut radii = Vec::new();
    let mut values = Vec::new();
    let mut weights = Vec::new();
    for j in 0..=last {
        if volume[j] == 0.0 {
            continue;
        }
        radii.push((j as f64 + 0.5) * h);
        values.push((sigma * mass[j] / volume[j]).powf(1.0 / p));
        weights.push(volume[j] / sigma);
    }
    Ok(RadialProfile {
        radii,
        values,
        weights,
        sigma,
    })
}

/// Pair energy `sum_{x,y} K(d(x,y)) |f(x) - g(y)|^p h^{2n}` with a
/// radial kernel of the periodic distance (comparison helper for the
/// reduction property).
pub fn pair_energy<K: Fn(f64) -> f64>(
    f: &GridFunction,
    g: &GridFunction,
    kernel: K,
    p: f64,
) -> Result<f64> {
    require_same_grid(f, g)?;
    let hn = f.spacing().powi(f.dim as i32);
    let mut acc = 0.0f64;
    for x in 0..f.len() {
        for y in 0..g.len() {
            let k = kernel(torus_distance(f, x, y));
            if k == 0.0 {
                continue;
            }
            acc += k * (f.values[x] - g.values[y]).norm().powf(p);
        }
    }
    Ok(acc * hn * hn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{sample, GridFunction, TestFamily};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn gaussian_kernel(size: usize, l: f64, a: f64) -> GridFunction {
        GridFunction::from_fn(1, size, l, |x| {
            Complex64::new((-a * x[0] * x[0]).exp(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn reduction_equal_functions() {
        let f = sample(&TestFamily::Gaussian { a: PI }, 1, 64, 8.0).unwrap();
        let k = gaussian_kernel(64, 8.0, 1.0);
        let (lhs, rhs) = reduction_lemma_check(&f, &f, &k, 2.0).unwrap();
        assert_eq!(rhs, 0.0);
        assert!(lhs >= 0.0);
    }

    #[test]
    fn reduction_random_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let vals: Vec<Complex64> = (0..64)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
            .collect();
        let f = GridFunction::new(1, 64, 8.0, vals).unwrap();
        let g = sample(&TestFamily::Gaussian { a: 1.0 }, 1, 64, 8.0).unwrap();
        let k = gaussian_kernel(64, 8.0, 2.0);
        for p in [1.0, 2.0, 3.0] {
            let (lhs, rhs) = reduction_lemma_check(&f, &g, &k, p).unwrap();
            assert!(lhs >= rhs, "p {p}: {lhs} < {rhs}");
        }
    }

    #[test]
    fn triangle_random_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let vals: Vec<Complex64> = (0..64)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
            .collect();
        let f = GridFunction::new(1, 64, 8.0, vals).unwrap();
        let gk = gaussian_kernel(64, 8.0, 1.0);
        let hk = gaussian_kernel(64, 8.0, 3.0);
        for p in [1.0, 2.0] {
            let (lhs, rhs) = triangle_lemma_check(&f, &gk, &hk, p).unwrap();
            assert!(lhs >= rhs, "p {p}: {lhs} < {rhs}");
        }
    }

    #[test]
    fn triangle_sharpness_dilation_sweep() {
        // f_eps(x) = eps^{1/p} f(eps x): the bound is saturated as f
        // spreads out (the integral triangle inequality approaches
        // equality when f becomes nearly translation invariant), so the
        // ratio decreases monotonically toward 1 as eps shrinks
        let p = 2.0;
        let gk = gaussian_kernel(256, 8.0, 1.0);
        let hk = gaussian_kernel(256, 8.0, 2.0);
        let mut prev_ratio = f64::INFINITY;
        for eps in [1.0f64, 0.5, 0.25, 0.125] {
            let f = GridFunction::from_fn(1, 256, 8.0, |x| {
                Complex64::new(
                    eps.powf(1.0 / p) * (-PI * (eps * x[0]).powi(2)).exp(),
                    0.0,
                )
            })
            .unwrap();
            let (lhs, rhs) = triangle_lemma_check(&f, &gk, &hk, p).unwrap();
            let ratio = lhs / rhs;
            assert!(ratio >= 1.0 - 1e-10, "eps {eps}: ratio {ratio}");
            assert!(ratio <= prev_ratio + 1e-10, "eps {eps}: not monotone");
            prev_ratio = ratio;
        }
        assert!(prev_ratio < 1.2, "ratio did not approach 1: {prev_ratio}");
    }

    #[test]
    fn spherical_reduction_radial_input() {
        let f = sample(&TestFamily::Gaussian { a: 1.0 }, 2, 64, 6.0).unwrap();
        let prof = spherical_lp_reduction(&f, 2.0).unwrap();
        let sigma = 2.0 * PI;
        // F(r) = sigma^{1/p} f(r) up to shell binning (the p-mean over a
        // shell drifts from the center value once the log-slope is steep,
        // so only moderate radii are compared)
        for (r, v) in prof.radii.iter().zip(prof.values.iter()).take(10) {
            let expect = sigma.sqrt() * (-r * r).exp();
            assert!(
                (v - expect).abs() < 0.2 * expect.max(1e-3),
                "r {r}: {v} vs {expect}"
            );
        }
        // Fubini: radial L^p mass conserved exactly
        let np = prof.lp_norm(2.0);
        let nf = crate::fields::lp_norm(&f, 2.0).unwrap();
        assert!((np - nf).abs() < 1e-12 * nf, "{np} vs {nf}");
    }

    #[test]
    fn spherical_reduction_angular_harmonic() {
        // f = radial * cos(theta): strict energy reduction
        let f = GridFunction::from_fn(2, 32, 5.0, |x| {
            let r2 = x[0] * x[0] + x[1] * x[1];
            let c = if r2 > 0.0 { x[0] / r2.sqrt() } else { 0.0 };
            Complex64::new((-r2).exp() * c, 0.0)
        })
        .unwrap();
        let p = 2.0;
        let prof = spherical_lp_reduction(&f, p).unwrap();
        let radial = prof.as_radial_field(2, 32, 5.0, p).unwrap();
        let kern = |r: f64| (-r * r).exp();
        let ef = pair_energy(&f, &f, kern, p).unwrap();
        let er = pair_energy(&radial, &radial, kern, p).unwrap();
        assert!(er < ef * 0.99, "no strict reduction: {er} vs {ef}");
    }

    #[test]
    fn spherical_reduction_rejects_1d() {
        let f = sample(&TestFamily::Gaussian { a: 1.0 }, 1, 32, 4.0).unwrap();
        assert!(spherical_lp_reduction(&f, 2.0).is_err());
    }
}
