//! Report envelope and its JSON / CSV renderings.

use serde_json::{Map, Value};

/// Significant digits kept for every floating-point output.
pub const SIGNIFICANT_DIGITS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A flat table for CSV output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub outputs: Value,
    pub provenance: Value,
    pub table: Table,
}

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Round every non-integer number in a JSON tree.
pub fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(f64::NAN));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(normalize).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, normalize(v))).collect())
        }
        other => other,
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn envelope(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.into()));
        m.insert("inputs".into(), normalize(self.inputs.clone()));
        m.insert("outputs".into(), normalize(self.outputs.clone()));
        m.insert("provenance".into(), self.provenance.clone());
        Value::Object(m)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.envelope()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = self.table.header.join(",");
                s.push('\n');
                for row in &self.table.rows {
                    let cells: Vec<String> =
                        row.iter().map(|v| cell(&normalize(v.clone()))).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nine_digits() {
        assert_eq!(round_sig(12.589116706291275), 12.5891167);
        assert_eq!(round_sig(1636.8889454399189), 1636.88895);
        assert_eq!(round_sig(-0.0), -0.0);
    }

    #[test]
    fn integers_untouched() {
        assert_eq!(
            normalize(json!({"n": 151, "x": 0.1234567891234})),
            json!({"n": 151, "x": 0.123456789})
        );
    }

    #[test]
    fn csv_matches_json_numbers() {
        let mut table = Table::new(vec!["a", "b"]);
        table.push(vec![json!(1e-7 / 3.0), json!("pos")]);
        let r = Report {
            command: "t",
            inputs: json!({}),
            outputs: json!({"a": 1e-7 / 3.0}),
            provenance: json!({}),
            table,
        };
        let csv = r.render(Format::Csv);
        let json = r.envelope();
        assert_eq!(
            csv.lines().nth(1).unwrap().split(',').next().unwrap(),
            json["outputs"]["a"].to_string()
        );
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }
}
