use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use pcp_core::pcpcheck::ProbeEvaluation;
use pcp_core::sketchers::{Method, SketchParams};
use pcp_core::solvers::Task;
use pcp_core::CertificateF64;
use serde::Serialize;
use serde_json::Value;

use crate::Format;

#[derive(Debug, Clone, Serialize)]
pub struct PcpSummary {
    pub max_abs_rel_err: f64,
    pub eps_target: f64,
    pub pass: bool,
    pub n_probes: usize,
    pub per_probe: Vec<ProbeEvaluation<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferSummary {
    pub task: Task,
    pub gamma: Option<f64>,
    /// `‖A − P̃A‖_F²`.
    pub lhs: f64,
    /// `None` when γ is unknown (heuristic solver).
    pub rhs: Option<f64>,
    pub holds: Option<bool>,
    pub optimum_on_a: f64,
    pub cost_on_sketch: f64,
    /// Cluster labels for k-means.
    pub assignment: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub method: Method,
    pub params: SketchParams,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub c_const: f64,
    pub width_not_reducing: bool,
    pub certificate_t1: Option<CertificateF64>,
    pub certificate_t2: Option<CertificateF64>,
    pub pcp: Option<PcpSummary>,
    pub transfer: Option<TransferSummary>,
    pub timing_ms: BTreeMap<&'static str, f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialsReport {
    pub trials: usize,
    pub passed: usize,
    /// Trials must pass at a rate of at least `1 − δ`.
    pub required_fraction: f64,
    pub pass: bool,
    pub reports: Vec<Report>,
}

/// Flattens nested JSON into `(dotted.key, value)` pairs; arrays use their indices.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let join = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(map) => map.iter().for_each(|(k, v)| walk(&join(k), v, out)),
            Value::Array(items) => items
                .iter()
                .enumerate()
                .for_each(|(i, v)| walk(&join(&i.to_string()), v, out)),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            Value::Null => out.push((prefix.to_string(), String::new())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header line of dotted keys, then one line of values.
pub fn to_csv(value: &Value) -> String {
    let pairs = flatten(value);
    let header: Vec<String> = pairs.iter().map(|(k, _)| csv_field(k)).collect();
    let row: Vec<String> = pairs.iter().map(|(_, v)| csv_field(v)).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

pub fn emit<R: Serialize>(report: &R, format: Format, out: Option<&Path>) -> Result<()> {
    let value = serde_json::to_value(report)?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&value)? + "\n",
        Format::Csv => to_csv(&value),
    };
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn dotted_keys() {
        let v = json!({"a": {"b": 1, "c": [true, null]}, "s": "x,y"});
        let flat = flatten(&v);
        assert_eq!(
            flat,
            vec![
                ("a.b".into(), "1".into()),
                ("a.c.0".into(), "true".into()),
                ("a.c.1".into(), "".into()),
                ("s".into(), "x,y".into()),
            ]
        );
        assert_eq!(to_csv(&v), "a.b,a.c.0,a.c.1,s\n1,true,,\"x,y\"\n");
    }
}
