//! Reference function families sampled onto grids: Gaussians, the
//! inverse-power optimizer profile, a compactly supported bump, and a
//! modulated Gaussian.

use super::grid::GridFunction;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A sampled family member; parameters as named.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TestFamily {
    /// `e^{-a |x|^2}`, `a > 0`.
    Gaussian { a: f64 },
    /// `(1 + |x|^2)^{-(n - 2s)/2}`, requiring `0 < s < n/2`; peak value 1.
    HlsOptimizer { s: f64 },
    /// Smooth bump `exp(1 - 1/(1 - |2x/L|^2))` supported in `[-L/2, L/2]^n`.
    Bump,
    /// `e^{2 pi i k0 x_1} e^{-pi |x|^2}`.
    ModulatedGaussian { k0: f64 },
}

impl TestFamily {
    pub fn label(&self) -> String {
        match self {
            TestFamily::Gaussian { a } => format!("gaussian(a={a})"),
            TestFamily::HlsOptimizer { s } => format!("hls-optimizer(s={s})"),
            TestFamily::Bump => "bump".to_string(),
            TestFamily::ModulatedGaussian { k0 } => format!("modulated-gaussian(k0={k0})"),
        }
    }
}

/// Sample a family member on the grid `[-L, L)^n`, `N` points per axis.
pub fn sample(
    family: &TestFamily,
    dim: usize,
    size: usize,
    half_width: f64,
) -> Result<GridFunction> {
    match *family {
        TestFamily::Gaussian { a } => {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::Admissibility(format!(
                    "gaussian width parameter must be positive, got {a}"
                )));
            }
            GridFunction::from_fn(dim, size, half_width, |x| {
                let r2: f64 = x.iter().map(|t| t * t).sum();
                Complex64::new((-a * r2).exp(), 0.0)
            })
        }
        TestFamily::HlsOptimizer { s } => {
            if !(s > 0.0 && s < dim as f64 / 2.0) {
                return Err(Error::Admissibility(format!(
                    "optimizer exponent must lie in (0, n/2), got {s}"
                )));
            }
            let e = -(dim as f64 - 2.0 * s) / 2.0;
            GridFunction::from_fn(dim, size, half_width, |x| {
                let r2: f64 = x.iter().map(|t| t * t).sum();
                Complex64::new((1.0 + r2).powf(e), 0.0)
            })
        }
        TestFamily::Bump => GridFunction::from_fn(dim, size, half_width, |x| {
            let q: f64 = x
                .iter()
                .map(|t| (2.0 * t / half_width) * (2.0 * t / half_width))
                .sum();
            if q >= 1.0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new((1.0 - 1.0 / (1.0 - q)).exp(), 0.0)
            }
        }),
        TestFamily::ModulatedGaussian { k0 } => {
            if !k0.is_finite() {
                return Err(Error::Admissibility("modulation frequency must be finite".into()));
            }
            GridFunction::from_fn(dim, size, half_width, |x| {
                let r2: f64 = x.iter().map(|t| t * t).sum();
                let amp = (-std::f64::consts::PI * r2).exp();
                let ph = 2.0 * std::f64::consts::PI * k0 * x[0];
                Complex64::new(amp * ph.cos(), amp * ph.sin())
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peak_values() {
        let g = sample(&TestFamily::Gaussian { a: std::f64::consts::PI }, 1, 64, 8.0).unwrap();
        let mid = g.len() / 2; // k = N/2 is x = 0
        assert!((g.values[mid].re - 1.0).abs() < 1e-15);
        let h = sample(&TestFamily::HlsOptimizer { s: 0.5 }, 2, 32, 8.0).unwrap();
        let mid2 = (32 / 2) * 32 + 32 / 2;
        assert!((h.values[mid2].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bump_support() {
        let b = sample(&TestFamily::Bump, 2, 64, 8.0).unwrap();
        for idx in 0..b.len() {
            let x = b.point(idx);
            let outside = x[..2].iter().any(|t| t.abs() >= 4.0);
            if outside {
                assert_eq!(b.values[idx], Complex64::new(0.0, 0.0), "x={x:?}");
            }
        }
        let mid = (32usize) * 64 + 32;
        assert!((b.values[mid].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gaussian_periodization_is_negligible() {
        let g = sample(&TestFamily::Gaussian { a: std::f64::consts::PI }, 1, 256, 10.0).unwrap();
        assert!(g.boundary_ratio() < 1e-100, "ratio {}", g.boundary_ratio());
    }

    #[test]
    fn inadmissible_parameters() {
        assert!(sample(&TestFamily::Gaussian { a: -1.0 }, 1, 64, 8.0).is_err());
        assert!(sample(&TestFamily::HlsOptimizer { s: 0.8 }, 1, 64, 8.0).is_err());
        assert!(sample(&TestFamily::HlsOptimizer { s: 0.0 }, 2, 64, 8.0).is_err());
    }

    #[test]
    fn modulated_gaussian_magnitude() {
        let g = sample(&TestFamily::ModulatedGaussian { k0: 3.0 }, 1, 128, 8.0).unwrap();
        for idx in 0..g.len() {
            let x = g.point(idx)[0];
            let expect = (-std::f64::consts::PI * x * x).exp();
            assert!((g.values[idx].norm() - expect).abs() < 1e-13);
        }
    }
}
