//! Machine-readable run reports.
//!
//! JSON output has sorted keys and shortest round-trip float text, so two
//! runs of the same scenario are byte-identical.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::scenario::{ScenarioError, ScenarioFile, Units};

pub type Record = Map<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
}

impl Check {
    pub fn at_most(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self { name: name.into(), passed: measured <= threshold, measured, threshold }
    }

    pub fn at_least(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self { name: name.into(), passed: measured >= threshold, measured, threshold }
    }

    pub fn below(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self { name: name.into(), passed: measured < threshold, measured, threshold }
    }

    /// Boolean check: measured is 1 for true, threshold is 1.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), passed: ok, measured: if ok { 1.0 } else { 0.0 }, threshold: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub scenario: ScenarioFile,
    pub results: Vec<Record>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// 0 when every check passed, 2 otherwise.
    pub fn exit_status(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> Result<String, ScenarioError> {
        // round-tripping through Value sorts every object's keys
        let value = serde_json::to_value(self).map_err(|e| ScenarioError::Invalid(e.to_string()))?;
        let mut text = serde_json::to_string_pretty(&value).map_err(|e| ScenarioError::Invalid(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String, ScenarioError> {
        records_to_csv(&[], &self.results.iter().map(|r| (Vec::new(), r)).collect::<Vec<_>>())
    }
}

/// Serializes `value` into a record tagged with its unit system.
pub fn record<T: Serialize>(value: &T, units: Units) -> Record {
    let mut map = match serde_json::to_value(value) {
        Ok(Value::Object(m)) => m,
        _ => Map::new(),
    };
    map.insert("units".into(), Value::String(units.label().into()));
    map
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// CSV with `lead` columns first, then the sorted union of scalar record keys.
/// Nested values and record keys shadowed by a lead column are left out.
pub(crate) fn records_to_csv(lead: &[String], rows: &[(Vec<String>, &Record)]) -> Result<String, ScenarioError> {
    let mut keys = std::collections::BTreeSet::new();
    for (_, r) in rows {
        for (k, v) in r.iter() {
            if scalar_text(v).is_some() && !lead.contains(k) {
                keys.insert(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = lead.iter().map(String::as_str).chain(keys.iter().map(String::as_str)).collect();
    let to_err = |e: csv::Error| ScenarioError::Invalid(format!("csv: {e}"));
    w.write_record(&header).map_err(to_err)?;
    for (lead_vals, r) in rows {
        let row: Vec<String> = lead_vals
            .iter()
            .cloned()
            .chain(keys.iter().map(|k| r.get(k).and_then(scalar_text).unwrap_or_default()))
            .collect();
        w.write_record(&row).map_err(to_err)?;
    }
    let bytes = w.into_inner().map_err(|e| ScenarioError::Invalid(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| ScenarioError::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_constructors() {
        assert!(Check::at_most("a", 1.0, 1.0).passed);
        assert!(!Check::below("b", 1.0, 1.0).passed);
        assert!(Check::at_least("c", 0.5, 0.5 - 1e-6).passed);
        let f = Check::flag("d", false);
        assert!(!f.passed && f.measured == 0.0);
    }

    #[test]
    fn record_carries_units() {
        #[derive(Serialize)]
        struct R {
            x: f64,
        }
        let r = record(&R { x: 0.1 }, Units::Si);
        assert_eq!(r["units"], "si");
        assert_eq!(r["x"], 0.1);
    }

    #[test]
    fn csv_skips_nested() {
        let mut r = Record::new();
        r.insert("b".into(), Value::from(2.5));
        r.insert("a".into(), Value::from(true));
        r.insert("nested".into(), Value::Array(vec![]));
        let text = records_to_csv(&["p".into()], &[(vec!["1".into()], &r)]).unwrap();
        assert_eq!(text, "p,a,b\n1,true,2.5\n");
    }
}
