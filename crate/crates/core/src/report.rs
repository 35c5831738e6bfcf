//! Machine-readable command output: a flat summary plus named tables,
//! rendered as JSON or CSV with round-trip float formatting.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Number, Value as Json};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?}; expected json or csv"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Self::Real(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Self::Int(v as i64)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Self::Int(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Self::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Self::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Self::Text(v)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Self::Null, Into::into)
    }
}

impl Value {
    fn to_json(&self) -> Json {
        match self {
            Value::Int(i) => Json::from(*i),
            Value::Real(x) => Number::from_f64(*x).map_or(Json::Null, Json::Number),
            Value::Text(s) => Json::from(s.as_str()),
            Value::Bool(b) => Json::from(*b),
            Value::Null => Json::Null,
        }
    }

    fn to_csv_field(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            // Debug formatting is the shortest string that parses back to
            // the same f64.
            Value::Real(x) => format!("{x:?}"),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Null => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputDocument {
    pub command: String,
    pub summary: Vec<(String, Value)>,
    pub tables: Vec<Table>,
}

impl OutputDocument {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            summary: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.summary.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    /// One object: `command`, the summary keys, then each table as an array
    /// of row objects.
    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Json::from(self.command.as_str()));
        for (k, v) in &self.summary {
            root.insert(k.clone(), v.to_json());
        }
        for t in &self.tables {
            let rows = t
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Json> = t.columns.iter().cloned().zip(row.iter().map(Value::to_json)).collect();
                    Json::Object(obj)
                })
                .collect();
            root.insert(t.name.clone(), Json::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Json::Object(root)).expect("JSON values serialize");
        s.push('\n');
        s
    }

    /// A `key,value` section followed by one section per table, sections
    /// separated by a blank line. Each table section opens with a
    /// `# <name>` line and a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut kv = csv::WriterBuilder::new().from_writer(Vec::new());
        kv.write_record(["key", "value"]).expect("in-memory write");
        kv.write_record(["command", self.command.as_str()]).expect("in-memory write");
        for (k, v) in &self.summary {
            kv.write_record([k.as_str(), v.to_csv_field().as_str()]).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(kv.into_inner().expect("flush")).expect("utf8"));
        for t in &self.tables {
            let _ = write!(out, "\n# {}\n", t.name);
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            w.write_record(&t.columns).expect("in-memory write");
            for row in &t.rows {
                w.write_record(row.iter().map(Value::to_csv_field)).expect("in-memory write");
            }
            out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf8"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputDocument {
        let mut d = OutputDocument::new("demo");
        d.set("n", 3usize).set("x", 0.1).set("ok", true).set("missing", Value::Null);
        let mut t = Table::new("rows", &["k", "v"]);
        t.push(vec![1usize.into(), 1e-20.into()]);
        t.push(vec![2usize.into(), (-2.5).into()]);
        d.tables.push(t);
        d
    }

    #[test]
    fn json_layout() {
        let v: Json = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["command"], "demo");
        assert_eq!(v["n"], 3);
        assert_eq!(v["x"].as_f64(), Some(0.1));
        assert!(v["missing"].is_null());
        assert_eq!(v["rows"][0]["v"].as_f64(), Some(1e-20));
        assert_eq!(v["rows"][1]["k"], 2);
    }

    #[test]
    fn csv_layout() {
        let s = sample().to_csv();
        assert_eq!(
            s,
            "key,value\ncommand,demo\nn,3\nx,0.1\nok,true\nmissing,\n\n# rows\nk,v\n1,1e-20\n2,-2.5\n"
        );
    }

    #[test]
    fn formats_parse() {
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
