//! Deterministic report structures, rendered as text or JSON. The two
//! renderings carry the same fields; timing goes to stderr so that repeated
//! runs on one input produce byte-identical reports.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ComputeLine {
    pub degree: isize,
    pub decomposition: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub degree: isize,
    pub sequence: String,
    pub position: String,
    pub verdict: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoLine {
    pub label: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "command")]
pub enum Report {
    #[serde(rename = "compute")]
    Compute { theory: String, on: String, results: Vec<ComputeLine> },
    #[serde(rename = "check")]
    Check { check: String, on: String, results: Vec<CheckLine>, all_exact: bool },
    #[serde(rename = "demo")]
    Demo { demo: String, results: Vec<DemoLine> },
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Compute { theory, on, results } => {
                out.push_str(&format!("== compute {} on {} ==\n", theory, on));
                for line in results {
                    out.push_str(&format!("degree {}: {}\n", line.degree, line.decomposition));
                }
            }
            Report::Check { check, on, results, all_exact } => {
                out.push_str(&format!("== check {} on {} ==\n", check, on));
                for line in results {
                    out.push_str(&format!(
                        "k={} {} @ {}: {}\n",
                        line.degree, line.sequence, line.position, line.verdict
                    ));
                }
                out.push_str(&format!(
                    "verdict: {}\n",
                    if *all_exact { "PASS" } else { "FAIL" }
                ));
            }
            Report::Demo { demo, results } => {
                out.push_str(&format!("== demo {} ==\n", demo));
                for line in results {
                    out.push_str(&format!("{}: {}\n", line.label, line.value));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn render(&self, format: &str) -> String {
        if format == "json" {
            self.to_json()
        } else {
            self.to_text()
        }
    }
}
