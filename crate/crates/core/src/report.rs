use serde::Serialize;

use crate::series::Valuation;

/// One identity evaluated on one input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub identity: String,
    pub inputs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_valuation: Option<Valuation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub required: Option<usize>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes iff the residual is known to vanish modulo `h^required`.
    pub fn valuation(
        identity: impl Into<String>,
        inputs: impl Into<String>,
        residual: Valuation,
        required: usize,
    ) -> Self {
        Check {
            identity: identity.into(),
            inputs: inputs.into(),
            residual_valuation: Some(residual),
            required: Some(required),
            pass: residual.meets(required),
            note: None,
        }
    }

    /// An exact yes/no check with no valuation attached.
    pub fn exact(identity: impl Into<String>, inputs: impl Into<String>, pass: bool) -> Self {
        Check {
            identity: identity.into(),
            inputs: inputs.into(),
            residual_valuation: None,
            required: None,
            pass,
            note: None,
        }
    }

    pub fn failed(identity: impl Into<String>, inputs: impl Into<String>, why: String) -> Self {
        Check::exact(identity, inputs, false).with_note(why)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub overall: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            checks: Vec::new(),
            overall: true,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.overall &= check.pass;
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// One line per check plus a verdict line.
    pub fn render_text(&self) -> String {
        let mut out = format!("== {} ==\n", self.suite);
        for c in &self.checks {
            let status = if c.pass { "ok  " } else { "FAIL" };
            out.push_str(&format!("{status} {} [{}]", c.identity, c.inputs));
            if let (Some(v), Some(r)) = (c.residual_valuation, c.required) {
                out.push_str(&format!(" residual {v} (need >= {r})"));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!(" -- {n}"));
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        let verdict = if self.overall { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{verdict}: {} checks, {} failed\n",
            self.checks.len(),
            self.failures().count()
        ));
        out
    }
}
