//! Machine-readable run reports.
//!
//! Every command assembles one [`ReportDocument`]: a JSON object with a
//! stable layout (struct fields in declaration order, map keys sorted) so
//! that two runs with identical inputs and seed produce byte-identical
//! reports except for the `timing_ms` field, which golden comparisons are
//! expected to strip.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

/// Overall outcome of one command run, mapped to the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// A checked property holds (exit 0).
    Pass,
    /// A checked property fails; details are in the report (exit 2).
    Fail,
    /// Informational command with nothing to pass or fail (exit 0).
    Info,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Info => 0,
            Verdict::Fail => 2,
        }
    }
}

/// The full record of one command run.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    /// Subcommand name as invoked.
    pub command: String,
    /// Library/CLI version stamp.
    pub version: String,
    /// Echo of every input that determines the run: file paths or builtin
    /// names, dimensions, caps, seeds, tolerances.
    pub config: Value,
    /// "pass", "fail", or "info".
    pub verdict: String,
    /// Command-specific results.
    pub results: Value,
    /// Witness objects explaining a failing verdict (empty otherwise).
    pub witnesses: Vec<Value>,
    /// Wall-clock runtime in milliseconds.  Excluded from golden
    /// comparisons: it is the only nondeterministic field.
    pub timing_ms: u128,
}

/// Builder tracking the start time of the run.
pub struct ReportBuilder {
    command: String,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(command: &str) -> Self {
        ReportBuilder {
            command: command.to_string(),
            started: Instant::now(),
        }
    }

    pub fn finish(
        self,
        config: Value,
        verdict: Verdict,
        results: Value,
        witnesses: Vec<Value>,
    ) -> (ReportDocument, Verdict) {
        let document = ReportDocument {
            command: self.command,
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            verdict: verdict.as_str().to_string(),
            results,
            witnesses,
            timing_ms: self.started.elapsed().as_millis(),
        };
        (document, verdict)
    }
}

impl ReportDocument {
    /// Serializes the report as pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Writes the report to `path`.
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json())
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn verdict_strings_and_exit_codes() {
        assert_eq!(Verdict::Pass.as_str(), "pass");
        assert_eq!(Verdict::Fail.as_str(), "fail");
        assert_eq!(Verdict::Info.as_str(), "info");
        assert_eq!(Verdict::Pass.exit_code(), 0);
        assert_eq!(Verdict::Info.exit_code(), 0);
        assert_eq!(Verdict::Fail.exit_code(), 2);
    }

    #[test]
    fn report_layout_is_stable() {
        let builder = ReportBuilder::new("demo");
        let (document, verdict) = builder.finish(
            json!({"dimension": 2}),
            Verdict::Pass,
            json!({"value": 1}),
            vec![],
        );
        assert_eq!(verdict, Verdict::Pass);
        let text = document.to_json();
        assert!(text.ends_with('\n'));
        // Top-level keys appear in declaration order.
        let order = [
            "\"command\"",
            "\"version\"",
            "\"config\"",
            "\"verdict\"",
            "\"results\"",
            "\"witnesses\"",
            "\"timing_ms\"",
        ];
        let positions: Vec<usize> = order
            .iter()
            .map(|key| text.find(key).expect("key present"))
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn report_write_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        let (document, _) =
            ReportBuilder::new("demo").finish(json!({}), Verdict::Info, json!(null), vec![]);
        document.write(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["command"], "demo");
        assert_eq!(value["verdict"], "info");
    }
}
