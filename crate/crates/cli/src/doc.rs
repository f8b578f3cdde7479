use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::args::Format;

pub type Record = Map<String, Value>;

/// Output of one command: metadata and uniform records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub meta: Map<String, Value>,
    pub records: Vec<Record>,
}

/// Number rounded to 15 significant digits; non-finite values become null.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
}

pub fn opt(x: Option<f64>) -> Value {
    x.map(num).unwrap_or(Value::Null)
}

#[macro_export]
macro_rules! record {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut r = $crate::doc::Record::new();
        $(r.insert($k.to_string(), serde_json::Value::from($v));)*
        r
    }};
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Document {
    pub fn new(meta: Map<String, Value>) -> Self {
        Document { meta, records: Vec::new() }
    }

    pub fn write(&self, format: Format, w: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *w, self)?;
                writeln!(w)
            }
            Format::Csv => {
                let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
                if let Some(first) = self.records.first() {
                    out.write_record(first.keys())?;
                    for r in &self.records {
                        out.write_record(first.keys().map(|k| r.get(k).map(cell).unwrap_or_default()))?;
                    }
                }
                out.flush()
            }
        }
    }
}
