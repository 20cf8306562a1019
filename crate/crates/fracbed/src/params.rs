//! Exponent bookkeeping shared by every theorem context.
//!
//! Each theorem places different strict inequalities on the exponent
//! symbols, so admissibility checking lives in one named constructor per
//! context rather than being scattered through the evaluation code.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One record holding every exponent/index symbol used in the bench.
///
/// `p_prime` is always derived from `p` (never stored independently);
/// `p = 1` maps to `p' = +inf` and is rejected by operations that need a
/// finite dual exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub p: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Context-dependent homogeneity degree (theorem 4-6 kernel order,
    /// or `(n - p beta)/p` in Lemma 1 contexts).
    pub lambda: f64,
    /// Stein-Weiss kernel degree.
    pub gamma: f64,
    /// Hyperbolic weight exponent.
    pub sigma: f64,
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Admissibility(msg.to_string()))
    }
}

fn finite(v: f64, name: &str) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Admissibility(format!("{name} must be finite")))
    }
}

impl Params {
    fn base(n: usize, p: f64, alpha: f64, beta: f64) -> Result<Self> {
        check(n >= 1, "n >= 1")?;
        finite(p, "p")?;
        finite(alpha, "alpha")?;
        finite(beta, "beta")?;
        check(p >= 1.0, "p >= 1")?;
        Ok(Params {
            n,
            p,
            alpha,
            beta,
            lambda: 0.0,
            gamma: 0.0,
            sigma: 0.0,
        })
    }

    /// Dual exponent `p/(p-1)`; `+inf` at `p = 1`.
    pub fn p_prime(&self) -> f64 {
        dual_exponent(self.p)
    }

    /// `q = pn/(n - p beta)`.
    pub fn q(&self) -> f64 {
        let n = self.n as f64;
        self.p * n / (n - self.p * self.beta)
    }

    /// `q* = pn/(n - p(alpha + beta))`.
    pub fn q_star(&self) -> f64 {
        let n = self.n as f64;
        self.p * n / (n - self.p * (self.alpha + self.beta))
    }

    /// Besov context: `0 < beta < 1`, `1 <= p < n/beta` (Lemma 1).
    pub fn lemma1(n: usize, p: f64, beta: f64) -> Result<Self> {
        let mut s = Self::base(n, p, 0.0, beta)?;
        check(beta > 0.0 && beta < 1.0, "beta in (0,1)")?;
        check(p < n as f64 / beta, "p < n/beta")?;
        s.lambda = (n as f64 - p * beta) / p;
        check(s.lambda > 0.0, "lambda = (n - p beta)/p > 0")?;
        Ok(s)
    }

    /// Theorem 1/2 context: `0 < beta < 1`, `alpha >= 0`,
    /// `1 <= p < n/(alpha + beta)`.
    pub fn thm1(n: usize, p: f64, alpha: f64, beta: f64) -> Result<Self> {
        let mut s = Self::base(n, p, alpha, beta)?;
        check(beta > 0.0 && beta < 1.0, "beta in (0,1)")?;
        check(alpha >= 0.0, "alpha >= 0")?;
        check(p < n as f64 / (alpha + beta), "p < n/(alpha+beta)")?;
        s.lambda = (n as f64 - p * beta) / p;
        Ok(s)
    }

    /// Sharp-constant context for Theorem 2: Theorem 1 with `p = 2`.
    pub fn thm2(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        let s = Self::thm1(n, 2.0, alpha, beta)?;
        check(
            2.0 < n as f64 / (alpha + beta),
            "2 < n/(alpha+beta) for the sharp constant",
        )?;
        Ok(s)
    }

    /// Hausdorff-Young context (Theorem 3): `1 < p < inf`, `0 < beta < 1`.
    pub fn hausdorff_young(n: usize, p: f64, beta: f64) -> Result<Self> {
        let s = Self::base(n, p, 0.0, beta)?;
        check(p > 1.0, "p > 1")?;
        check(beta > 0.0 && beta < 1.0, "beta in (0,1)")?;
        Ok(s)
    }

    /// Theorem 4 context: `0 < lambda < 1`.
    pub fn thm4(n: usize, lambda: f64) -> Result<Self> {
        let mut s = Self::base(n, 1.0, 0.0, 0.5)?;
        finite(lambda, "lambda")?;
        check(lambda > 0.0 && lambda < 1.0, "lambda in (0,1)")?;
        s.lambda = lambda;
        Ok(s)
    }

    /// Theorem 5 context: `1 < p <= 2`, `q = p'`, `0 < lambda < q`.
    pub fn thm5(n: usize, p: f64, lambda: f64) -> Result<Self> {
        let mut s = Self::base(n, p, 0.0, 0.5)?;
        check(p > 1.0 && p <= 2.0, "1 < p <= 2")?;
        finite(lambda, "lambda")?;
        let q = dual_exponent(p);
        check(lambda > 0.0 && lambda < q, "lambda in (0, p')")?;
        s.lambda = lambda;
        Ok(s)
    }

    /// Theorem 6 context: `0 < lambda < 2`.
    pub fn thm6(n: usize, lambda: f64) -> Result<Self> {
        let mut s = Self::base(n, 2.0, 0.0, 0.5)?;
        finite(lambda, "lambda")?;
        check(lambda > 0.0 && lambda < 2.0, "lambda in (0,2)")?;
        s.lambda = lambda;
        Ok(s)
    }

    /// Theorem 7 context: `0 < beta < 1`, `1 <= p < n/beta`.
    pub fn thm7(n: usize, p: f64, beta: f64) -> Result<Self> {
        Self::lemma1(n, p, beta)
    }

    /// Theorem 8 context (`2n`-dimensional admissibility on the group):
    /// `0 < beta < 1`, `1 <= p < 2n/beta`.
    pub fn thm8(n: usize, p: f64, beta: f64) -> Result<Self> {
        let mut s = Self::base(n, p, 0.0, beta)?;
        check(beta > 0.0 && beta < 1.0, "beta in (0,1)")?;
        check(p < 2.0 * n as f64 / beta, "p < 2n/beta")?;
        s.lambda = (2.0 * n as f64 - p * beta) / p;
        Ok(s)
    }

    /// Theorem 9 context: `1 < p < inf`, `alpha < 2n/p`, `beta < 2n/p'`,
    /// `alpha + beta > 0`, `lambda = 2n + 2 - alpha - beta in (2, 2n+2)`.
    pub fn thm9(n: usize, p: f64, alpha: f64, beta: f64) -> Result<Self> {
        let mut s = Self::base(n, p, alpha, beta)?;
        check(p > 1.0, "p > 1")?;
        let nn = n as f64;
        let pp = dual_exponent(p);
        check(alpha < 2.0 * nn / p, "alpha < 2n/p")?;
        check(beta < 2.0 * nn / pp, "beta < 2n/p'")?;
        check(alpha + beta > 0.0, "alpha + beta > 0")?;
        s.lambda = 2.0 * nn + 2.0 - alpha - beta;
        check(
            s.lambda > 2.0 && s.lambda < 2.0 * nn + 2.0,
            "lambda = 2n+2-alpha-beta in (2, 2n+2)",
        )?;
        Ok(s)
    }

    /// Pitt context (Theorem 10): `1 < p <= 2`, `0 < beta < min(1, n/p')`.
    pub fn pitt(n: usize, p: f64, beta: f64) -> Result<Self> {
        let mut s = Self::base(n, p, 0.0, beta)?;
        check(p > 1.0 && p <= 2.0, "1 < p <= 2")?;
        let pp = dual_exponent(p);
        check(
            beta > 0.0 && beta < (n as f64 / pp).min(1.0),
            "beta in (0, min(1, n/p'))",
        )?;
        s.lambda = (n as f64 - pp * beta) / pp;
        Ok(s)
    }

    /// Extended uncertainty context: `0 < alpha < n`.
    pub fn uncertainty(n: usize, alpha: f64) -> Result<Self> {
        let mut s = Self::base(n, 2.0, alpha, 0.5)?;
        check(alpha > 0.0 && (alpha as f64) < n as f64, "alpha in (0, n)")?;
        s.alpha = alpha;
        Ok(s)
    }

    /// Stein-Weiss context: `0 < gamma < min(n, p)`.
    pub fn stein_weiss(n: usize, p: f64, gamma: f64) -> Result<Self> {
        let mut s = Self::base(n, p, 0.0, 0.5)?;
        finite(gamma, "gamma")?;
        check(
            gamma > 0.0 && gamma < (n as f64).min(p),
            "gamma in (0, min(n, p))",
        )?;
        s.gamma = gamma;
        s.lambda = (n as f64 - gamma) / p;
        Ok(s)
    }
}

/// Dual exponent `p/(p-1)` computed in one place; `p = 1` maps to `+inf`.
pub fn dual_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else {
        p / (p - 1.0)
    }
}
