//! Tabular reports and their three renderings.

use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonlike,
    Pretty,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(u64),
    Num(f64),
    Text(String),
    Empty,
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as u64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Empty, Into::into)
    }
}

/// 17 significant digits: enough to read every `f64` back exactly.
pub fn machine_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "NaN".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// `%g` with 6 significant digits.
pub fn pretty_number(v: f64) -> String {
    if !v.is_finite() {
        return machine_number(v);
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = format!("{:.5e}", v);
    let (mantissa, e) = exp.split_once('e').expect("exponent form");
    let e: i32 = e.parse().expect("integer exponent");
    if (-4..6).contains(&e) {
        let decimals = (5 - e).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa), if e < 0 { '-' } else { '+' }, e.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl Value {
    fn machine(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Num(v) => machine_number(*v),
            Value::Text(t) => t.clone(),
            Value::Empty => String::new(),
        }
    }

    fn pretty(&self) -> String {
        match self {
            Value::Num(v) => pretty_number(*v),
            Value::Empty => "-".to_string(),
            other => other.machine(),
        }
    }

    fn json(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Num(v) if v.is_finite() => machine_number(*v),
            Value::Num(_) | Value::Empty => "null".to_string(),
            Value::Text(t) => serde_json::to_string(t).expect("strings serialize"),
        }
    }
}

/// A header, rows of cells and a key/value footer.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub footer: Vec<(String, Value)>,
}

impl Report {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Self { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn row(&mut self, cells: Vec<Value>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.footer.push((key.to_string(), value.into()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Jsonlike => self.jsonlike(),
            Format::Pretty => self.pretty(),
        }
    }

    /// Header and rows as CSV records; footer entries follow as `# key,value` comment records.
    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let io = "writing to memory cannot fail";
        w.write_record(&self.columns).expect(io);
        for row in &self.rows {
            w.write_record(row.iter().map(Value::machine)).expect(io);
        }
        for (key, value) in &self.footer {
            w.write_record([format!("# {key}"), value.machine()]).expect(io);
        }
        String::from_utf8(w.into_inner().expect(io)).expect("csv output is utf-8")
    }

    fn jsonlike(&self) -> String {
        let key = |k: &str| serde_json::to_string(k).expect("strings serialize");
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"title\": {},", key(&self.title));
        let _ = writeln!(out, "  \"columns\": [{}],", self.columns.iter().map(|c| key(c)).collect::<Vec<_>>().join(", "));
        out.push_str("  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(Value::json).collect();
            let _ = write!(out, "{}\n    [{}]", if i == 0 { "" } else { "," }, cells.join(", "));
        }
        out.push_str(if self.rows.is_empty() { "],\n" } else { "\n  ],\n" });
        out.push_str("  \"footer\": {");
        for (i, (k, v)) in self.footer.iter().enumerate() {
            let _ = write!(out, "{}\n    {}: {}", if i == 0 { "" } else { "," }, key(k), v.json());
        }
        out.push_str(if self.footer.is_empty() { "}\n}\n" } else { "\n  }\n}\n" });
        out
    }

    fn pretty(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Value::pretty).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| cells.iter().map(|r| r[c].chars().count()).chain([self.columns[c].chars().count()]).max().unwrap_or(0))
            .collect();
        let line = |parts: &[String]| {
            let padded: Vec<String> = parts.iter().zip(&widths).map(|(p, w)| format!("{p:>w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = String::new();
        if !self.title.is_empty() {
            out.push_str(&self.title);
            out.push('\n');
        }
        out.push_str(&line(&self.columns));
        out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
        for row in &cells {
            out.push_str(&line(row));
        }
        if !self.footer.is_empty() {
            out.push('\n');
            let kw = self.footer.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &self.footer {
                let _ = writeln!(out, "{k:<kw$}  {}", v.pretty());
            }
        }
        out
    }
}
