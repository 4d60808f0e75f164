use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PassResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl PassResult {
    pub fn new(name: &str, status: Status, detail: impl Into<String>) -> Self {
        PassResult {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionOutput {
    pub expression: String,
    pub anchor: String,
    pub normalized: String,
    pub alpha: String,
    pub beta: String,
    pub expected_alpha: String,
    pub expected_beta: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GuessOutput {
    pub order: usize,
    pub degree: usize,
    pub terms: usize,
    pub range: (i64, i64),
    pub candidates: Vec<String>,
}

/// Outcome of one command. `exit_code` is 0 exactly when no pass failed.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub case: String,
    pub passes: Vec<PassResult>,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guess: Option<GuessOutput>,
}

impl RunReport {
    pub fn new(command: &str, case: impl Into<String>) -> Self {
        RunReport {
            command: command.to_string(),
            case: case.into(),
            passes: Vec::new(),
            exit_code: 0,
            reduction: None,
            guess: None,
        }
    }

    pub fn push(&mut self, pass: PassResult) {
        if pass.status == Status::Fail {
            self.exit_code = crate::EXIT_FAIL;
        }
        self.passes.push(pass);
    }

    pub fn count(&self, status: Status) -> usize {
        self.passes.iter().filter(|p| p.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.command, self.case).unwrap();
        if let Some(r) = &self.reduction {
            writeln!(out, "  expression: {}", r.expression).unwrap();
            writeln!(out, "  normalized: {}", r.normalized).unwrap();
            writeln!(out, "  anchor:     {}", r.anchor).unwrap();
            writeln!(out, "  alpha = {}, beta = {}", r.alpha, r.beta).unwrap();
            writeln!(
                out,
                "  expected alpha = {}, beta = {}",
                r.expected_alpha, r.expected_beta
            )
            .unwrap();
        }
        if let Some(g) = &self.guess {
            writeln!(
                out,
                "  order {}, degree {}, {} terms (n = {}..{})",
                g.order, g.degree, g.terms, g.range.0, g.range.1
            )
            .unwrap();
            for c in &g.candidates {
                writeln!(out, "{c}").unwrap();
            }
        }
        let total = self.passes.len();
        let width = self.passes.iter().map(|p| p.name.len()).max().unwrap_or(0);
        for (i, p) in self.passes.iter().enumerate() {
            writeln!(
                out,
                "  [{}/{total}] {:width$}  {:7}  {}",
                i + 1,
                p.name,
                p.status.as_str(),
                p.detail
            )
            .unwrap();
        }
        let ran = total - self.count(Status::Skipped);
        let mut summary = format!("result: {}/{ran} passed", self.count(Status::Pass));
        if self.count(Status::Skipped) > 0 {
            write!(summary, ", {} skipped", self.count(Status::Skipped)).unwrap();
        }
        writeln!(out, "{summary}").unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_tracks_failures_only() {
        let mut r = RunReport::new("verify", "A001711");
        r.push(PassResult::new("closed-form", Status::Pass, "ok"));
        r.push(PassResult::new("egf", Status::Skipped, "none"));
        assert_eq!(r.exit_code, 0);
        r.push(PassResult::new("sweep", Status::Fail, "n = 7"));
        assert_eq!(r.exit_code, 1);
    }

    #[test]
    fn json_shape() {
        let mut r = RunReport::new("verify", "A045406");
        r.push(PassResult::new("egf", Status::Skipped, "none"));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["passes"][0]["status"], "skipped");
        assert_eq!(v["exit_code"], 0);
        assert!(v.get("reduction").is_none());
    }

    #[test]
    fn human_summary() {
        let mut r = RunReport::new("verify", "A001711");
        r.push(PassResult::new("closed-form", Status::Pass, "ok"));
        r.push(PassResult::new("egf", Status::Skipped, "none"));
        let text = r.to_human();
        assert!(text.contains("[2/2] egf          skipped  none"), "{text}");
        assert!(text.ends_with("result: 1/1 passed, 1 skipped\n"));
    }
}
