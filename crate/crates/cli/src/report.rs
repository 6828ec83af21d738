use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one subcommand. A failing report always carries witnesses.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub verdict: Verdict,
    pub summary: String,
    pub witnesses: Vec<Value>,
    pub timing_ms: u128,
    /// Extra human-readable lines, shown only in text mode.
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, summary: impl Into<String>, witnesses: Vec<Value>) -> Self {
        let verdict = if witnesses.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Report {
            command,
            verdict,
            summary: summary.into(),
            witnesses,
            timing_ms: 0,
            text: Vec::new(),
        }
    }

    pub fn with_text(mut self, text: Vec<String>) -> Self {
        self.text = text;
        self
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }

    pub fn render_text(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
        };
        let mut out = format!("{}: {verdict} - {}\n", self.command, self.summary);
        for line in &self.text {
            out.push_str(line);
            out.push('\n');
        }
        if !self.witnesses.is_empty() {
            out.push_str("witnesses:\n");
            for w in &self.witnesses {
                out.push_str(&format!("  {w}\n"));
            }
        }
        out.push_str(&format!("({} ms)\n", self.timing_ms));
        out
    }
}
