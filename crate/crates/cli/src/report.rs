use std::fmt::{Display, Write as _};

/// A `key: value` report with fields in the order they were added, ending in `status:`.
#[derive(Debug, Clone)]
pub struct Report {
    command: &'static str,
    body: String,
    failed: bool,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            body: format!("command: {command}\n"),
            failed: false,
        }
    }

    pub fn field(&mut self, key: &str, value: impl Display) {
        let _ = writeln!(self.body, "{key}: {value}");
    }

    /// Appends a rendered sub-report, prefixing each of its keys with `section.`.
    pub fn section(&mut self, section: &str, rendered: &str) {
        for line in rendered.lines() {
            if line.starts_with(' ') {
                let _ = writeln!(self.body, "{line}");
            } else {
                let _ = writeln!(self.body, "{section}.{line}");
            }
        }
    }

    /// Records a failed check; `check` must already describe the failure.
    pub fn require(&mut self, check: bool) {
        self.failed |= !check;
    }

    pub fn finish(self, artifact: Option<String>) -> Outcome {
        let passed = !self.failed;
        let status = if passed { "pass" } else { "fail" };
        let mut report = self.body;
        let _ = writeln!(report, "status: {status}");
        Outcome {
            summary: format!("{}: {status}", self.command),
            report,
            artifact,
            passed,
        }
    }
}

/// The result of a command that read its inputs successfully.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// Machine-readable report, written to standard output.
    pub report: String,
    /// One-line human-readable summary, written to standard error.
    pub summary: String,
    /// What `--output` receives: the constructed object, or the report when there is none.
    pub artifact: Option<String>,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn output_text(&self) -> &str {
        self.artifact.as_deref().unwrap_or(&self.report)
    }
}
