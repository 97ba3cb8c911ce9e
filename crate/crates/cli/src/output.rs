//! Rendering of tables and reports in the three output formats.

use std::fmt::Write as _;

use clap::ValueEnum;
use natspec_core::spectrum::SpectrumTable;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub fn table(t: &SpectrumTable, f: Format) -> String {
    match f {
        Format::Json => t.to_json() + "\n",
        Format::Csv => t.to_csv(),
        Format::Pretty => t.to_pretty(),
    }
}

/// Canonical JSON: object keys sorted, no insignificant whitespace.
pub fn canonical<T: Serialize>(x: &T) -> Value {
    // serde_json's default map is ordered, so a round trip through Value sorts keys.
    serde_json::to_value(x).expect("report serializes")
}

/// Reports: JSON, pretty-printed JSON, or flattened `path,value` rows.
pub fn report<T: Serialize>(x: &T, f: Format) -> String {
    let v = canonical(x);
    match f {
        Format::Json => v.to_string() + "\n",
        Format::Pretty => serde_json::to_string_pretty(&v).expect("report serializes") + "\n",
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", &v, &mut rows);
            let mut s = String::from("path,value\n");
            for (k, val) in rows {
                let _ = writeln!(s, "{},{}", csv_field(&k), csv_field(&val));
            }
            s
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out))
        }
        Value::Array(a) => out.push((prefix.to_string(), a.iter().map(scalar).collect::<Vec<_>>().join(" "))),
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
