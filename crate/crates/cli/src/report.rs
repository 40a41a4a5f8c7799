use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Envelope shared by every subcommand's JSON output. Everything except
/// `timings` is a function of the command, its configuration and the seed.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub check: &'static str,
    pub degree: Option<usize>,
    pub order: Option<String>,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<Option<u32>>>,
    pub budget_used: u64,
    pub budget_limit: u64,
    pub timings: BTreeMap<String, f64>,
    pub details: Value,
}

impl Report {
    pub fn new(command: &'static str, check: &'static str, verdict: bool) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            check,
            degree: None,
            order: None,
            verdict,
            exponents: None,
            budget_used: 0,
            budget_limit: 0,
            timings: BTreeMap::new(),
            details: Value::Null,
        }
    }

    /// Moves a nested `timings_ms` map out of `details` into `timings`.
    pub fn with_details(mut self, details: impl Serialize) -> Self {
        let mut v = serde_json::to_value(details).expect("report details serialise");
        if let Some(obj) = v.as_object_mut() {
            if let Some(Value::Object(t)) = obj.remove("timings_ms") {
                for (k, ms) in t {
                    if let Some(ms) = ms.as_f64() {
                        self.timings.insert(k, ms);
                    }
                }
            }
        }
        self.details = v;
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}
