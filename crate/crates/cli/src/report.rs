//! Machine-readable command reports. JSON output is byte-stable: the value
//! tree is backed by sorted maps, so identical inputs always serialize to
//! identical bytes.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// Structured outcome of one command invocation.
pub struct Report {
    pub command: &'static str,
    pub inputs: Vec<String>,
    pub results: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, inputs: Vec<String>) -> Self {
        Report {
            command,
            inputs,
            results: Value::Object(Map::new()),
            warnings: Vec::new(),
        }
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn set(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.results {
            map.insert(key.to_string(), value);
        }
    }

    /// The full report as a JSON document with sorted keys throughout
    /// (serde_json's default map is ordered).
    pub fn to_json(&self) -> String {
        let doc = json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "warnings": self.warnings,
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }
}

/// An exact rational rendered for a report: decimal plus the exact fraction.
pub fn ratio_value(r: Ratio<i64>) -> Value {
    json!({
        "value": ratio_f64(r),
        "exact": format!("{}/{}", r.numer(), r.denom()),
    })
}

pub fn ratio_f64(r: Ratio<i64>) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Render warnings for the text mode, one prefixed line each.
pub fn write_warnings(out: &mut String, warnings: &[String]) {
    for w in warnings {
        out.push_str("warning: ");
        out.push_str(w);
        out.push('\n');
    }
}
