//! Adaptive Gauss-Kronrod quadrature over finite and unbounded intervals.
//!
//! Endpoint singularities are never sampled (Kronrod abscissae are
//! interior), so integrable algebraic blow-ups at declared endpoints are
//! handled by geometric refinement. Unbounded endpoints go through an
//! inversion substitution placing the point at infinity at 0.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Value + error estimate + subdivision count + convergence flag.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error: f64,
    pub panels: usize,
    pub converged: bool,
}

impl QuadratureResult {
    pub fn diverged(value: f64) -> Self {
        QuadratureResult {
            value,
            abs_error: f64::INFINITY,
            panels: 1,
            converged: false,
        }
    }
}

/// Integration interval; infinite endpoints are allowed.
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn finite(a: f64, b: f64) -> Self {
        Interval { a, b }
    }
    pub fn half_line(a: f64) -> Self {
        Interval {
            a,
            b: f64::INFINITY,
        }
    }
    pub fn real_line() -> Self {
        Interval {
            a: f64::NEG_INFINITY,
            b: f64::INFINITY,
        }
    }
}

// 15-point Kronrod extension of 7-point Gauss on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One G7K15 pass on [a, b]: returns the Kronrod value and the QUADPACK
/// error estimate `resasc * min(1, (200 |K-G| / resasc)^{3/2})`, which
/// guards against the raw `|K15 - G7|` difference under-reporting on
/// panels containing unresolved singular structure.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        fv1[j] = f(c - x);
        fv2[j] = f(c + x);
        resk += WGK[j] * (fv1[j] + fv2[j]);
        if j % 2 == 1 {
            resg += WG[j / 2] * (fv1[j] + fv2[j]);
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    resasc *= h.abs();
    let kron = resk * h;
    let mut err = ((resk - resg) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * 1.0f64.min((200.0 * err / resasc).powf(1.5));
    }
    (kron, err)
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_PANEL_BUDGET: usize = 1 << 16;

/// Adaptively integrate `f` over `interval` to relative tolerance `tol`.
///
/// Non-convergence within the panel budget is reported through the
/// `converged` flag, never silently.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, interval: Interval, tol: f64) -> QuadratureResult {
    integrate_adaptive_budget(f, interval, tol, DEFAULT_PANEL_BUDGET)
}

pub fn integrate_adaptive_budget<F: Fn(f64) -> f64>(
    f: F,
    interval: Interval,
    tol: f64,
    budget: usize,
) -> QuadratureResult {
    let (a, b) = (interval.a, interval.b);
    // Unbounded ends are mapped so the point at infinity lands at u = 0,
    // where f64 spacing is dense; mapping it to u = 1 instead caps the
    // resolvable tail mass at ~sqrt(ulp(1)) ~ 1e-8 for sqrt-type decay.
    // Half-lines split one unit past the finite endpoint so endpoint
    // singularities refine in their own dense neighborhood.
    match (a.is_finite(), b.is_finite()) {
        (true, true) => adaptive_finite(&|t| f(t), a, b, tol, budget),
        (true, false) => {
            let c = a + 1.0f64.max(a.abs());
            let near = adaptive_finite(&|t| f(t), a, c, 0.5 * tol, budget / 2);
            // t = c + (1-u)/u, dt = -du/u^2
            let g = |u: f64| f(c + (1.0 - u) / u) / (u * u);
            let far = adaptive_finite(&g, 0.0, 1.0, 0.5 * tol, budget / 2);
            merge(near, far)
        }
        (false, true) => {
            let c = b - 1.0f64.max(b.abs());
            let near = adaptive_finite(&|t| f(t), c, b, 0.5 * tol, budget / 2);
            let g = |u: f64| f(c - (1.0 - u) / u) / (u * u);
            let far = adaptive_finite(&g, 0.0, 1.0, 0.5 * tol, budget / 2);
            merge(near, far)
        }
        (false, false) => {
            // fold into (0, inf): both tails meet at u = 0
            let near = adaptive_finite(&|t| f(t) + f(-t), 0.0, 1.0, 0.5 * tol, budget / 2);
            let g = |u: f64| {
                let t = 1.0 / u;
                (f(t) + f(-t)) / (u * u)
            };
            let far = adaptive_finite(&g, 0.0, 1.0, 0.5 * tol, budget / 2);
            merge(near, far)
        }
    }
}

fn merge(a: QuadratureResult, b: QuadratureResult) -> QuadratureResult {
    QuadratureResult {
        value: a.value + b.value,
        abs_error: a.abs_error + b.abs_error,
        panels: a.panels + b.panels,
        converged: a.converged && b.converged,
    }
}

fn adaptive_finite(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, budget: usize) -> QuadratureResult {
    if !(b > a) {
        return QuadratureResult {
            value: 0.0,
            abs_error: 0.0,
            panels: 1,
            converged: true,
        };
    }
    let fw = |t: f64| {
        let v = f(t);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let (v0, e0) = gk15(&fw, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a,
        b,
        value: v0,
        error: e0,
    });
    let mut total_value = v0;
    let mut total_error = e0;
    let mut panels = 1usize;
    // a minimum subdivision depth guards against symmetric integrands whose
    // G7/K15 difference cancels deceptively on the very first panel
    const MIN_PANELS: usize = 8;
    while panels < budget {
        if panels >= MIN_PANELS && total_error <= tol * total_value.abs().max(1.0) {
            break;
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // interval exhausted at machine precision
            heap.push(worst);
            break;
        }
        let (vl, el) = gk15(&fw, worst.a, mid);
        let (vr, er) = gk15(&fw, mid, worst.b);
        total_value += vl + vr - worst.value;
        total_error += el + er - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: vl,
            error: el,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: vr,
            error: er,
        });
        panels += 1;
    }
    // re-sum from panels for a cleaner error estimate
    let mut value = 0.0;
    let mut error = 0.0;
    for p in heap.iter() {
        value += p.value;
        error += p.error;
    }
    let converged = error.is_finite() && error <= tol * value.abs().max(1.0);
    QuadratureResult {
        value,
        abs_error: error,
        panels,
        converged,
    }
}
