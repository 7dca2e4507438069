//! Rendering of command results as JSON, CSV or text.
//!
//! Every number in the JSON output is exact: integers are arbitrary
//! precision, and timings carry a fixed three decimals, so parsing a report
//! and emitting it again reproduces it byte for byte.

use num_bigint::BigInt;
use permcount::group_ring::big_json;
use permcount::FieldCtx;
use serde_json::{Map, Number, Value};

pub fn int(n: &BigInt) -> Value {
    big_json(n)
}

pub fn millis(ms: f64) -> Value {
    Value::Number(
        format!("{ms:.3}")
            .parse::<Number>()
            .expect("fixed-point decimals are JSON numbers"),
    )
}

#[derive(Debug)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

#[derive(Debug, Default)]
pub struct Report {
    /// (q, p, r) when the report concerns a single field.
    pub field: Option<(u32, u32, u32)>,
    pub command: &'static str,
    pub results: Vec<Value>,
    pub checks: Vec<Check>,
    pub timings: Vec<(String, f64)>,
    /// Extra top-level members after the fixed ones, in order.
    pub extra: Vec<(&'static str, Value)>,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, ctx: Option<&FieldCtx>) -> Self {
        Report {
            command,
            field: ctx.map(|c| (c.q(), c.p(), c.r())),
            ..Report::default()
        }
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check { name: name.into(), ok });
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        let (q, p, r) = match self.field {
            Some((q, p, r)) => (Value::from(q), Value::from(p), Value::from(r)),
            None => (Value::Null, Value::Null, Value::Null),
        };
        top.insert("q".into(), q);
        top.insert("p".into(), p);
        top.insert("r".into(), r);
        top.insert("command".into(), Value::from(self.command));
        top.insert("results".into(), Value::Array(self.results.clone()));
        let checks = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), Value::from(c.name.clone()));
                m.insert("ok".into(), Value::from(c.ok));
                Value::Object(m)
            })
            .collect();
        top.insert("checks".into(), Value::Array(checks));
        let timings = self
            .timings
            .iter()
            .map(|(label, ms)| {
                let mut m = Map::new();
                m.insert("label".into(), Value::from(label.clone()));
                m.insert("millis".into(), millis(*ms));
                Value::Object(m)
            })
            .collect();
        top.insert("timings".into(), Value::Array(timings));
        for (k, v) in &self.extra {
            top.insert((*k).into(), v.clone());
        }
        Value::Object(top)
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.csv_header)?;
        for row in &self.csv_rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields is UTF-8"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.text {
            out.push_str(line);
            out.push('\n');
        }
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for c in &self.checks {
                out.push_str(&format!("  {:<24} {}\n", c.name, if c.ok { "ok" } else { "FAILED" }));
            }
        }
        if !self.timings.is_empty() {
            out.push_str("timings:\n");
            for (label, ms) in &self.timings {
                out.push_str(&format!("  {label:<24} {ms:.3} ms\n"));
            }
        }
        out
    }
}

/// Pretty JSON with a trailing newline.
pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("a Value always serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trips_byte_for_byte() {
        let ctx = FieldCtx::build(2, 2, None).unwrap();
        let mut r = Report::new("count", Some(&ctx));
        r.results.push(int(&"123456789012345678901234567890".parse().unwrap()));
        r.check("sum-rule", true);
        r.timings.push(("groupring-ryser".into(), 0.1 + 0.2));
        let first = json_text(&r.to_json());
        let reparsed: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(json_text(&reparsed), first);
        assert!(first.find("\"q\"").unwrap() < first.find("\"command\"").unwrap());
        assert!(first.contains("\"millis\": 0.300"));
    }

    #[test]
    fn csv_quotes_nothing_plain() {
        let mut r = Report::new("table", None);
        r.csv_header = vec!["d", "N_fixed0", "N_lidl_mullen"];
        r.csv_rows.push(vec!["1".into(), "3".into(), "12".into()]);
        assert_eq!(r.to_csv().unwrap(), "d,N_fixed0,N_lidl_mullen\n1,3,12\n");
    }
}
