//! Report rendering: JSON or CSV on stdout, floats at 17 significant digits.

use std::io::{self, Write};

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A report is either one record or a table of rows sharing a header.
pub enum Report {
    Single(Value),
    Rows { meta: Map<String, Value>, key: &'static str, rows: Vec<Value> },
}

/// `%.17g`: shortest positional form when the exponent is moderate, scientific otherwise,
/// trailing zeros trimmed.
pub fn g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mant.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

struct G17Formatter;

impl serde_json::ser::Formatter for G17Formatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        let s = g17(value);
        // Integral values still need a marker so they read back as floats.
        if s.contains(['.', 'e']) {
            w.write_all(s.as_bytes())
        } else {
            write!(w, "{s}.0")
        }
    }
}

pub fn to_json_string(v: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, G17Formatter);
    serde::Serialize::serialize(v, &mut ser).expect("in-memory JSON");
    String::from_utf8(out).expect("UTF-8 JSON")
}

/// Flattens nested objects into dotted keys; arrays of scalars become `key.0`, `key.1`, ...
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::Null => out.push((prefix.into(), String::new())),
        Value::Bool(b) => out.push((prefix.into(), b.to_string())),
        Value::Number(n) => {
            let s = if n.is_f64() { g17(n.as_f64().expect("f64")) } else { n.to_string() };
            out.push((prefix.into(), s));
        }
        Value::String(s) => out.push((prefix.into(), s.clone())),
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match (report, format) {
        (Report::Single(v), Format::Json) => to_json_string(v) + "\n",
        (Report::Rows { meta, key, rows }, Format::Json) => {
            let mut m = meta.clone();
            m.insert((*key).into(), Value::Array(rows.clone()));
            to_json_string(&Value::Object(m)) + "\n"
        }
        (Report::Single(v), Format::Csv) => csv_table(std::slice::from_ref(v)),
        (Report::Rows { rows, .. }, Format::Csv) => csv_table(rows),
    }
}

fn csv_table(rows: &[Value]) -> String {
    let flat: Vec<Vec<(String, String)>> = rows
        .iter()
        .map(|r| {
            let mut f = Vec::new();
            flatten("", r, &mut f);
            f
        })
        .collect();
    let mut header: Vec<String> = Vec::new();
    for row in &flat {
        for (k, _) in row {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory CSV");
    for row in &flat {
        let rec = header
            .iter()
            .map(|h| row.iter().find(|(k, _)| k == h).map(|(_, v)| v.as_str()).unwrap_or(""));
        w.write_record(rec).expect("in-memory CSV");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("UTF-8 CSV")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn seventeen_digits() {
        assert_eq!(g17(std::f64::consts::SQRT_2), "1.4142135623730951");
        assert_eq!(g17(0.5), "0.5");
        assert_eq!(g17(1e-7), "9.9999999999999995e-8");
        assert_eq!(g17(123.0), "123");
        assert_eq!(g17(2.5e20), "2.5e20");
        for x in [0.1, 1.0 / 3.0, 6.02214076e23, -1.2345e-9, 1e300] {
            assert_eq!(g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_floats_round_trip() {
        let s = to_json_string(&json!({"a": 1.0, "b": 0.1, "n": 3}));
        assert_eq!(s, r#"{"a":1.0,"b":0.10000000000000001,"n":3}"#);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["b"].as_f64(), Some(0.1));
    }

    #[test]
    fn csv_flattens_nested_rows() {
        let rows = vec![json!({"k": 1, "v": [0.5, 2.0]}), json!({"k": 2, "v": [1.0, 3.0]})];
        let r = Report::Rows { meta: Map::new(), key: "rows", rows };
        assert_eq!(render(&r, Format::Csv), "k,v.0,v.1\n1,0.5,2\n2,1,3\n");
    }
}
