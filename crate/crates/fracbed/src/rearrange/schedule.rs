//! Random polarization schedules: repeated two-point symmetrization
//! across random coordinate-aligned mid-cell planes, with a per-step
//! energy/convergence trace exportable as CSV.

use super::polarize::{polarize, torus_distance, Hyperplane};
use super::rearrange::decreasing_rearrangement;
use crate::error::{Error, Result};
use crate::fields::grid::GridFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write;

/// One recorded polarization step.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub axis: usize,
    pub offset: f64,
    pub energy_before: f64,
    pub energy_after: f64,
    pub l1_distance: f64,
}

/// Trace of a schedule run; `l1_start` is the distance of the input to
/// its rearrangement before any step.
#[derive(Debug, Clone)]
pub struct PolarizationTrace {
    pub steps: Vec<TraceStep>,
    pub l1_start: f64,
    pub final_field: GridFunction,
}

impl PolarizationTrace {
    pub fn final_l1_distance(&self) -> f64 {
        self.steps.last().map_or(self.l1_start, |s| s.l1_distance)
    }

    /// CSV rows `step,axis,offset,energyBefore,energyAfter,l1dist`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "step,axis,offset,energyBefore,energyAfter,l1dist")?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                i, s.axis, s.offset, s.energy_before, s.energy_after, s.l1_distance
            )?;
        }
        Ok(())
    }
}

/// Quadratic pair energy against a truncated power kernel: a cheap
/// discrete stand-in for the difference seminorm that the two-point
/// lemma makes monotone under every polarization step.
fn kernel_energy(f: &GridFunction, exponent: f64) -> f64 {
    let h = f.spacing();
    let mut acc = 0.0f64;
    for i in 0..f.len() {
        for k in (i + 1)..f.len() {
            let d = torus_distance(f, i, k);
            let diff = f.values[i].re - f.values[k].re;
            acc += 2.0 * diff * diff * d.max(h).powf(-exponent);
        }
    }
    acc * h.powi(2 * f.dim as i32)
}

fn l1_distance(a: &GridFunction, b: &GridFunction) -> f64 {
    let hn = a.spacing().powi(a.dim as i32);
    a.values
        .iter()
        .zip(b.values.iter())
        .map(|(x, y)| (x.re - y.re).abs())
        .sum::<f64>()
        * hn
}

/// Reorder values within each equal-distance cell class into the same
/// descending order the rearrangement uses. Mirror cells at equal
/// distance share parity and can never be paired by a mid-cell
/// reflection, so both tie orders are polarization fixed points; the
/// rearrangement is only determined up to these classes.
fn tie_canonical(f: &GridFunction) -> GridFunction {
    use crate::fields::grid::unravel;
    let half = f.size as i64 / 2;
    let class = |idx: usize| -> u64 {
        let k = unravel(idx, f.size, f.dim);
        let mut q = 0i64;
        for a in 0..f.dim {
            let d = k[a] as i64 - half;
            q += d * d;
        }
        q as u64
    };
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by_key(|&i| (class(i), i));
    let mut out = f.clone();
    let mut start = 0usize;
    while start < order.len() {
        let c = class(order[start]);
        let mut end = start + 1;
        while end < order.len() && class(order[end]) == c {
            end += 1;
        }
        if end - start > 1 {
            let mut vals: Vec<f64> = order[start..end]
                .iter()
                .map(|&i| f.values[i].re)
                .collect();
            vals.sort_by(|a, b| b.total_cmp(a));
            for (slot, &cell) in order[start..end].iter().enumerate() {
                out.values[cell] = num_complex::Complex64::new(vals[slot], 0.0);
            }
        }
        start = end;
    }
    out
}

/// Apply `steps` random coordinate-aligned polarizations (axis uniform,
/// offset uniform over mid-cell planes) and record the energy decrease
/// and the L1 distance to the decreasing rearrangement.
pub fn polarization_schedule(
    f: &GridFunction,
    steps: usize,
    seed: u64,
) -> Result<PolarizationTrace> {
    if steps == 0 {
        return Err(Error::Precondition("schedule needs at least one step".into()));
    }
    let target = decreasing_rearrangement(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = f.spacing();
    let exponent = f.dim as f64 + 1.0; // n + p beta with p = 2, beta = 1/2
    let mut cur = f.clone();
    let mut energy = kernel_energy(&cur, exponent);
    let l1_start = l1_distance(&tie_canonical(&cur), &target);
    let mut trace = Vec::with_capacity(steps);
    for _ in 0..steps {
        let axis = rng.gen_range(0..f.dim);
        let j = rng.gen_range(0..f.size);
        let offset = -f.half_width + (j as f64 + 0.5) * h;
        let plane = Hyperplane::mid_cell(axis, offset);
        let next = polarize(&cur, &plane)?;
        let energy_after = kernel_energy(&next, exponent);
        trace.push(TraceStep {
            axis,
            offset,
            energy_before: energy,
            energy_after,
            l1_distance: l1_distance(&tie_canonical(&next), &target),
        });
        cur = next;
        energy = energy_after;
    }
    Ok(PolarizationTrace {
        steps: trace,
        l1_start,
        final_field: cur,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{sample, TestFamily};
    use crate::rearrange::polarize::real_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn converges_to_rearrangement() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let vals: Vec<f64> = (0..64).map(|_| rng.gen_range(0.0..1.0)).collect();
        let f = real_field(1, 64, 8.0, &vals).unwrap();
        let l1_norm: f64 = vals.iter().sum::<f64>() * 0.25;
        let trace = polarization_schedule(&f, 10_000, 5).unwrap();
        assert!(
            trace.final_l1_distance() <= 1e-3 * l1_norm,
            "final distance {} vs norm {l1_norm}",
            trace.final_l1_distance()
        );
    }

    #[test]
    fn energy_monotone_every_step() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let vals: Vec<f64> = (0..32).map(|_| rng.gen_range(0.0..1.0)).collect();
        let f = real_field(1, 32, 4.0, &vals).unwrap();
        let trace = polarization_schedule(&f, 500, 9).unwrap();
        for (i, s) in trace.steps.iter().enumerate() {
            assert!(
                s.energy_after <= s.energy_before + 1e-12 * s.energy_before,
                "step {i}"
            );
        }
    }

    #[test]
    fn radial_decreasing_starts_converged() {
        let f = sample(&TestFamily::Gaussian { a: PI }, 1, 64, 8.0).unwrap();
        let trace = polarization_schedule(&f, 1, 1).unwrap();
        assert!(trace.l1_start < 1e-13, "start {}", trace.l1_start);
    }

    #[test]
    fn csv_export() {
        let f = real_field(1, 16, 4.0, &(0..16).map(|k| k as f64).collect::<Vec<_>>()).unwrap();
        let trace = polarization_schedule(&f, 3, 2).unwrap();
        let mut buf = Vec::new();
        trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "step,axis,offset,energyBefore,energyAfter,l1dist");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,0,"));
    }

    #[test]
    fn zero_steps_rejected() {
        let f = real_field(1, 16, 4.0, &vec![0.0; 16]).unwrap();
        assert!(polarization_schedule(&f, 0, 1).is_err());
    }
}
