//! Machine-readable check reports.
//!
//! A report lists premise checks and conclusion checks. The verdict is a
//! function of those lists alone: any failed premise gives
//! `premises_failed`; otherwise any failed conclusion is a
//! `THEOREM_VIOLATION`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::field::Scalar;

/// Conventions every report states.
pub const SERIES_CONVENTION: &str =
    "lower central series is two-sided: A^1 = A, A^{k+1} = span(A*A^k + A^k*A); class c means A^c != 0 = A^{c+1}";
pub const BIMODULE_CONVENTION: &str =
    "bimodule axioms: S_{bc} = S_c S_b + T_b S_c, T_b S_c = S_c T_b + S_{bc}, T_c T_b = T_{cb} + T_b T_c; S_c S_b = -S_c T_b checked as derived";
pub const FLAG_CONVENTION: &str =
    "Engel flag levels M_i = {m | Em, mE in M_{i-1}} use the given generator list E, not its product closure";
pub const WORD_BOUND_CONVENTION: &str = "word bound uses n = 1 + min{e : T_a^e = 0}; words of length 2n-1 must vanish";
pub const INDEX_CONVENTION: &str = "basis indices are 1-based in files and reports";

pub fn default_conventions() -> Vec<String> {
    [
        SERIES_CONVENTION,
        BIMODULE_CONVENTION,
        FLAG_CONVENTION,
        WORD_BOUND_CONVENTION,
        INDEX_CONVENTION,
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "premises_failed")]
    PremisesFailed,
    #[serde(rename = "THEOREM_VIOLATION")]
    TheoremViolation,
    #[serde(rename = "error")]
    Error,
}

impl Verdict {
    /// Process exit code for this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::PremisesFailed => 1,
            Verdict::Error => 2,
            Verdict::TheoremViolation => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::PremisesFailed => "premises_failed",
            Verdict::TheoremViolation => "THEOREM_VIOLATION",
            Verdict::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Premise {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conclusion {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub conventions: Vec<String>,
    pub premises: Vec<Premise>,
    pub conclusions: Vec<Conclusion>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, input: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            conventions: default_conventions(),
            premises: Vec::new(),
            conclusions: Vec::new(),
            verdict: Verdict::Pass,
            notes: Vec::new(),
            error: None,
        }
    }

    pub fn premise(&mut self, name: impl Into<String>, pass: bool, witness: Option<Value>) -> &mut Self {
        self.premises.push(Premise {
            name: name.into(),
            pass,
            witness,
        });
        self.refresh();
        self
    }

    pub fn conclusion(&mut self, name: impl Into<String>, pass: bool, data: Option<Value>) -> &mut Self {
        self.conclusions.push(Conclusion {
            name: name.into(),
            pass,
            data,
        });
        self.refresh();
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn fail_with_error(&mut self, message: impl Into<String>) -> &mut Self {
        self.error = Some(message.into());
        self.refresh();
        self
    }

    pub fn premises_pass(&self) -> bool {
        self.premises.iter().all(|p| p.pass)
    }

    pub fn conclusions_pass(&self) -> bool {
        self.conclusions.iter().all(|c| c.pass)
    }

    /// Absorbs another report's checks under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) -> &mut Self {
        for p in other.premises {
            self.premises.push(Premise {
                name: format!("{prefix}{}", p.name),
                ..p
            });
        }
        for c in other.conclusions {
            self.conclusions.push(Conclusion {
                name: format!("{prefix}{}", c.name),
                ..c
            });
        }
        self.notes.extend(other.notes);
        if self.error.is_none() {
            self.error = other.error;
        }
        self.refresh();
        self
    }

    fn refresh(&mut self) {
        self.verdict = if self.error.is_some() {
            Verdict::Error
        } else if !self.premises_pass() {
            Verdict::PremisesFailed
        } else if !self.conclusions_pass() {
            Verdict::TheoremViolation
        } else {
            Verdict::Pass
        };
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Coordinates as JSON strings, exact.
pub fn coords_json(coords: &[Scalar]) -> Value {
    Value::Array(coords.iter().map(|s| Value::String(s.to_string())).collect())
}
