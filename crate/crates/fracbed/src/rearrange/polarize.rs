//! Two-point symmetrization (polarization) across coordinate-aligned
//! mid-cell planes, with the periodic reflection taken as an exact cell
//! bijection, and the discrete two-point energy comparison.

use crate::error::{Error, Result};
use crate::fields::grid::{unravel, GridFunction};
use num_complex::Complex64;

/// Convex gauge catalog for the two-point energy. `Power(p)` is `t^p`
/// with `p >= 1`; `CoshMinusOne` is `cosh t - 1`. Both satisfy
/// `phi(0) = 0`, convexity, monotonicity, and convexity of `t phi'(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gauge {
    Power(f64),
    CoshMinusOne,
}

impl Gauge {
    pub fn validate(&self) -> Result<()> {
        match self {
            Gauge::Power(p) if !(*p >= 1.0 && p.is_finite()) => Err(Error::Admissibility(
                format!("gauge exponent must lie in [1, inf), got {p}"),
            )),
            _ => Ok(()),
        }
    }

    pub fn phi(&self, t: f64) -> f64 {
        match self {
            Gauge::Power(p) => t.powf(*p),
            Gauge::CoshMinusOne => {
                // cosh t - 1 = 2 sinh^2(t/2), accurate near 0
                let s = (0.5 * t).sinh();
                2.0 * s * s
            }
        }
    }
}

/// A coordinate-aligned reflection plane `x_axis = offset` sitting halfway
/// between neighboring cell centers, so the periodic reflection pairs
/// cells exactly and fixes none.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperplane {
    pub axis: usize,
    pub offset: f64,
}

impl Hyperplane {
    pub fn mid_cell(axis: usize, offset: f64) -> Self {
        Hyperplane { axis, offset }
    }

    /// The cell index `j` with the plane at `x = -L + (j + 1/2) h`, or an
    /// error when the plane is not mid-cell for this grid.
    fn plane_index(&self, f: &GridFunction) -> Result<usize> {
        if self.axis >= f.dim {
            return Err(Error::Precondition(format!(
                "plane axis {} out of range for dimension {}",
                self.axis, f.dim
            )));
        }
        let h = f.spacing();
        let t = (self.offset + f.half_width) / h - 0.5;
        let j = t.round();
        if (t - j).abs() > 1e-9 || j < 0.0 || j >= f.size as f64 {
            return Err(Error::Precondition(format!(
                "plane offset {} is not a mid-cell plane of the grid",
                self.offset
            )));
        }
        Ok(j as usize)
    }
}

fn ravel(k: &[usize; 3], size: usize, dim: usize) -> usize {
    let mut idx = 0usize;
    for a in 0..dim {
        idx = idx * size + k[a];
    }
    idx
}

/// Periodic distance of the cell-center coordinate `x` from the origin.
fn torus_abs(x: f64, period: f64) -> f64 {
    let a = x.abs();
    a.min(period - a)
}

/// Periodic reflection partner of `idx` across the plane.
fn partner(idx: usize, f: &GridFunction, axis: usize, j: usize) -> usize {
    let mut k = unravel(idx, f.size, f.dim);
    let n = f.size as i64;
    k[axis] = ((2 * j as i64 + 1 - k[axis] as i64).rem_euclid(n)) as usize;
    ravel(&k, f.size, f.dim)
}

/// Whether `idx` lies on the origin side of the pair `(idx, sigma idx)`:
/// its axis coordinate is periodically closer to 0 (ties broken by index).
fn origin_side(idx: usize, other: usize, f: &GridFunction, axis: usize) -> bool {
    let period = 2.0 * f.half_width;
    let xa = f.point(idx)[axis];
    let xb = f.point(other)[axis];
    let (da, db) = (torus_abs(xa, period), torus_abs(xb, period));
    if da != db {
        da < db
    } else {
        idx < other
    }
}

/// Two-point rearrangement: for each reflection pair the larger value is
/// moved to the origin side. Values must be real.
pub fn polarize(f: &GridFunction, plane: &Hyperplane) -> Result<GridFunction> {
    let j = plane.plane_index(f)?;
    let mut out = f.clone();
    for idx in 0..f.len() {
        let other = partner(idx, f, plane.axis, j);
        if other == idx {
            return Err(Error::Precondition(
                "degenerate pairing: cell reflects onto itself".into(),
            ));
        }
        if other < idx {
            continue; // pair already handled
        }
        let a = f.values[idx];
        let b = f.values[other];
        if a.im.abs() > 1e-12 * a.re.abs().max(1.0) || b.im.abs() > 1e-12 * b.re.abs().max(1.0) {
            return Err(Error::Precondition(
                "polarization requires a real-valued field".into(),
            ));
        }
        let (hi, lo) = if a.re >= b.re { (a, b) } else { (b, a) };
        if origin_side(idx, other, f, plane.axis) {
            out.values[idx] = hi;
            out.values[other] = lo;
        } else {
            out.values[idx] = lo;
            out.values[other] = hi;
        }
    }
    Ok(out)
}

/// Periodic Euclidean distance between cell centers.
pub(crate) fn torus_distance(f: &GridFunction, idx_a: usize, idx_b: usize) -> f64 {
    let period = 2.0 * f.half_width;
    let xa = f.point(idx_a);
    let xb = f.point(idx_b);
    let mut q = 0.0;
    for a in 0..f.dim {
        let d = torus_abs(xa[a] - xb[a], period);
        q += d * d;
    }
    q.sqrt()
}

/// `sum_{x,y} phi(|f(x) - g(y)| / rho(d(x,y))) K(d(x,y)) h^{2n}` before
/// and after polarizing both functions across the plane. `K` must be
/// radially non-increasing and `rho` non-decreasing and positive; both
/// are spot-checked on a sample of radii.
pub fn two_point_energy_check<K, R>(
    f: &GridFunction,
    g: &GridFunction,
    kernel: K,
    gauge: Gauge,
    rho: R,
    plane: &Hyperplane,
) -> Result<(f64, f64)>
where
    K: Fn(f64) -> f64,
    R: Fn(f64) -> f64,
{
    gauge.validate()?;
    if f.dim != g.dim || f.size != g.size || f.half_width != g.half_width {
        return Err(Error::Precondition("grid shapes differ".into()));
    }
    let rmax = (f.dim as f64).sqrt() * f.half_width;
    let mut prev_k = f64::INFINITY;
    let mut prev_r = 0.0f64;
    for i in 0..=64 {
        let r = rmax * i as f64 / 64.0;
        let kv = kernel(r);
        let rv = rho(r);
        if kv > prev_k * (1.0 + 1e-12) {
            return Err(Error::Precondition("kernel is not radially decreasing".into()));
        }
        if !(rv > 0.0) || rv < prev_r * (1.0 - 1e-12) {
            return Err(Error::Precondition(
                "weight must be positive and radially increasing".into(),
            ));
        }
        prev_k = kv;
        prev_r = rv;
    }
    let energy = |a: &GridFunction, b: &GridFunction| -> f64 {
        let mut acc = 0.0f64;
        for i in 0..a.len() {
            for k in 0..b.len() {
                let d = torus_distance(a, i, k);
                let kv = kernel(d);
                if kv == 0.0 {
                    continue;
                }
                let t = (a.values[i].re - b.values[k].re).abs() / rho(d);
                acc += gauge.phi(t) * kv;
            }
        }
        acc * a.spacing().powi(2 * a.dim as i32)
    };
    let before = energy(f, g);
    let fp = polarize(f, plane)?;
    let gp = polarize(g, plane)?;
    let after = energy(&fp, &gp);
    Ok((before, after))
}

/// Convenience: a field from explicit real values.
pub fn real_field(dim: usize, size: usize, half_width: f64, vals: &[f64]) -> Result<GridFunction> {
    GridFunction::new(
        dim,
        size,
        half_width,
        vals.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
    )
}
