//! The report record every verification produces: both sides of an
//! inequality with error estimates and a three-valued verdict that never
//! over-claims at grid resolution.

use crate::params::Params;
use serde::{Deserialize, Serialize};

/// Which inequality a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "BBM")]
    Bbm,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    Pitt,
    Uncertainty,
    Lemma1,
    #[serde(rename = "SW")]
    Sw,
    Triangle,
    Reduction,
    #[serde(rename = "HLS")]
    Hls,
}

impl TheoremId {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Bbm => "BBM",
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::T5 => "T5",
            TheoremId::T6 => "T6",
            TheoremId::T7 => "T7",
            TheoremId::T8 => "T8",
            TheoremId::T9 => "T9",
            TheoremId::Pitt => "Pitt",
            TheoremId::Uncertainty => "Uncertainty",
            TheoremId::Lemma1 => "Lemma1",
            TheoremId::Sw => "SW",
            TheoremId::Triangle => "Triangle",
            TheoremId::Reduction => "Reduction",
            TheoremId::Hls => "HLS",
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        [
            TheoremId::Bbm,
            TheoremId::T1,
            TheoremId::T2,
            TheoremId::T3,
            TheoremId::T4,
            TheoremId::T5,
            TheoremId::T6,
            TheoremId::T7,
            TheoremId::T8,
            TheoremId::T9,
            TheoremId::Pitt,
            TheoremId::Uncertainty,
            TheoremId::Lemma1,
            TheoremId::Sw,
            TheoremId::Triangle,
            TheoremId::Reduction,
            TheoremId::Hls,
        ]
        .into_iter()
        .find(|t| t.as_str().eq_ignore_ascii_case(s))
    }
}

/// Whether the claim is `lhs >= rhs` or `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Ge,
    Le,
}

/// Outcome of one verification, graded by the error budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    HoldsWithinError,
    Violated,
    Divergent,
}

/// Whether the reported constant is the claimed-sharp value or a
/// composition of kernel constants from the proof chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantLabel {
    Sharp,
    ProofChain,
}

/// Fully evaluated two-sided record for one inequality instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InequalityReport {
    pub theorem_id: TheoremId,
    pub params: Params,
    pub function_ids: Vec<String>,
    pub direction: Direction,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub constant_label: ConstantLabel,
    pub ratio: f64,
    pub lhs_error: f64,
    pub rhs_error: f64,
    pub verdict: Verdict,
    /// Free-form caveats (endpoint annotations, coarse-grid notes).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
    pub runtime_ms: u64,
}

/// Verdict from the two sides and their absolute error estimates. A
/// violation is only declared when it survives the combined error budget;
/// non-finite sides are `Divergent`.
pub fn grade(direction: Direction, lhs: f64, rhs: f64, lhs_error: f64, rhs_error: f64) -> Verdict {
    if !lhs.is_finite() || !rhs.is_finite() {
        return Verdict::Divergent;
    }
    let budget = lhs_error + rhs_error;
    match direction {
        Direction::Ge => {
            if lhs >= rhs {
                Verdict::Holds
            } else if lhs >= rhs - budget {
                Verdict::HoldsWithinError
            } else {
                Verdict::Violated
            }
        }
        Direction::Le => {
            if lhs <= rhs {
                Verdict::Holds
            } else if lhs <= rhs + budget {
                Verdict::HoldsWithinError
            } else {
                Verdict::Violated
            }
        }
    }
}

impl InequalityReport {
    /// Assemble a report, deriving ratio and verdict.
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        theorem_id: TheoremId,
        params: Params,
        function_ids: Vec<String>,
        direction: Direction,
        lhs: f64,
        rhs: f64,
        constant: f64,
        constant_label: ConstantLabel,
        lhs_error: f64,
        rhs_error: f64,
        runtime_ms: u64,
    ) -> Self {
        InequalityReport {
            theorem_id,
            params,
            function_ids,
            direction,
            lhs,
            rhs,
            constant,
            constant_label,
            ratio: lhs / rhs,
            lhs_error,
            rhs_error,
            verdict: grade(direction, lhs, rhs, lhs_error, rhs_error),
            annotations: Vec::new(),
            runtime_ms,
        }
    }

    pub fn ok(&self) -> bool {
        matches!(self.verdict, Verdict::Holds | Verdict::HoldsWithinError)
    }

    /// Deterministic JSON body (runtime excluded so identical inputs hash
    /// identically).
    pub fn json_body(&self) -> serde_json::Result<String> {
        let mut v = serde_json::to_value(self)?;
        if let Some(m) = v.as_object_mut() {
            m.remove("runtimeMs");
        }
        serde_json::to_string_pretty(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grading_respects_error_budget() {
        assert_eq!(grade(Direction::Ge, 1.1, 1.0, 0.0, 0.0), Verdict::Holds);
        assert_eq!(
            grade(Direction::Ge, 0.95, 1.0, 0.04, 0.02),
            Verdict::HoldsWithinError
        );
        assert_eq!(grade(Direction::Ge, 0.9, 1.0, 0.01, 0.01), Verdict::Violated);
        assert_eq!(grade(Direction::Le, 1.1, 1.0, 0.2, 0.0), Verdict::HoldsWithinError);
        assert_eq!(grade(Direction::Le, 0.3, 1.0, 0.0, 0.0), Verdict::Holds);
        assert_eq!(
            grade(Direction::Ge, f64::INFINITY, 1.0, 0.0, 0.0),
            Verdict::Divergent
        );
    }

    #[test]
    fn theorem_id_round_trip() {
        for s in [
            "BBM", "T1", "T4", "T9", "Pitt", "Uncertainty", "Lemma1", "SW", "Triangle",
            "Reduction", "HLS",
        ] {
            assert_eq!(TheoremId::parse(s).unwrap().as_str(), s);
        }
        assert!(TheoremId::parse("T11").is_none());
    }

    #[test]
    fn json_body_stable_and_runtime_free() {
        let params = Params::lemma1(1, 2.0, 0.4).unwrap();
        let mut r = InequalityReport::build(
            TheoremId::Lemma1,
            params,
            vec!["gaussian".into()],
            Direction::Ge,
            2.0,
            1.0,
            1.0,
            ConstantLabel::Sharp,
            0.01,
            0.01,
            17,
        );
        let a = r.json_body().unwrap();
        r.runtime_ms = 99;
        let b = r.json_body().unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"theoremId\": \"Lemma1\""));
        assert!(a.contains("\"verdict\": \"holds\""));
        assert!(!a.contains("runtimeMs"));
    }
}
