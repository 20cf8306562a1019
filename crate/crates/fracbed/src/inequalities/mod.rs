//! Per-theorem inequality orchestration: evaluate both sides, grade the
//! result against propagated error budgets, and emit deterministic JSON
//! reports.

mod report;
mod verify;

pub use report::{
    grade, ConstantLabel, Direction, InequalityReport, TheoremId, Verdict,
};
pub use verify::{
    pitt_verify, radial_decay_sentinel, sharpness_probe, uncertainty_verify, verify, ProbePoint,
    Tier, VerifyRequest,
};
