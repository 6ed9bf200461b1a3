use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One line of the JSON-lines run log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub parameters: Value,
    pub outcome: Value,
    pub seconds: f64,
    pub version: String,
}

impl RunRecord {
    pub fn new(command: &str, parameters: Value, outcome: Value, seconds: f64) -> Self {
        RunRecord {
            command: command.to_string(),
            parameters,
            outcome,
            seconds,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn append_to(&self, path: &Path) -> std::io::Result<()> {
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(file, "{}", self.to_line())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let rec = RunRecord::new(
            "search",
            json!({"k": 2, "t": 3, "p": 10, "c": 4, "precoloring": [[1, 4]]}),
            json!({"status": "SAT", "nodes": 17, "witness": [4, 1, 2]}),
            0.1 + 0.2,
        );
        let back: RunRecord = serde_json::from_str(&rec.to_line()).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.seconds.to_bits(), (0.1f64 + 0.2).to_bits());
    }
}
