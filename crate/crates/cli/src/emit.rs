//! Rendering of command results as CSV, JSON or plain text.

use serde_json::{Map, Value};

use crate::config::OutputFormat;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

/// 17 significant digits, so every `f64` round-trips.
pub fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => csv_number(*x),
            Cell::Text(s) => csv_field(s),
            Cell::Empty => String::new(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.6e}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => "-".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => Value::from(*x),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Header row first, then one line per row, `\n` terminated.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.iter().map(|h| csv_field(h)).collect::<Vec<_>>().join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = (0..self.header.len())
            .map(|j| cells.iter().map(|r| r[j].len()).chain([self.header[j].len()]).max().unwrap_or(0))
            .collect();
        let line = |items: Vec<&str>| {
            items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_owned()
        };
        let mut out = line(self.header.iter().map(String::as_str).collect());
        out.push('\n');
        for r in &cells {
            out.push_str(&line(r.iter().map(String::as_str).collect()));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = self.header.iter().cloned().zip(r.iter().map(Cell::json)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub command: &'static str,
    pub table: Option<Table>,
    pub summary: Vec<(String, Value)>,
    /// Extra top-level JSON members.
    pub extra: Vec<(String, Value)>,
    /// Verdict of the command's checks; `false` maps to exit code 1.
    pub passed: bool,
}

impl CommandOutput {
    pub fn new(command: &'static str) -> Self {
        CommandOutput {
            command,
            table: None,
            summary: Vec::new(),
            extra: Vec::new(),
            passed: true,
        }
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.push((key.to_owned(), value.into()));
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Main output, plus text for stderr when the format has no room for the
/// summary.
pub fn render(out: &CommandOutput, format: OutputFormat) -> (String, Option<String>) {
    let summary_lines = || {
        out.summary
            .iter()
            .map(|(k, v)| format!("{k}: {}\n", plain(v)))
            .collect::<String>()
    };
    match format {
        OutputFormat::Csv => {
            let body = out.table.as_ref().map(Table::to_csv).unwrap_or_default();
            let notes = out
                .summary
                .iter()
                .map(|(k, v)| format!("# {k}: {}\n", plain(v)))
                .collect::<String>();
            (body, (!notes.is_empty()).then_some(notes))
        }
        OutputFormat::Json => {
            let mut root = Map::new();
            root.insert("command".into(), Value::from(out.command));
            root.insert("passed".into(), Value::from(out.passed));
            root.insert("summary".into(), Value::Object(out.summary.iter().cloned().collect()));
            if let Some(t) = &out.table {
                root.insert("rows".into(), t.to_json());
            }
            for (k, v) in &out.extra {
                root.insert(k.clone(), v.clone());
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("values are serializable");
            s.push('\n');
            (s, None)
        }
        OutputFormat::Text => {
            let mut s = summary_lines();
            if let Some(t) = &out.table {
                s.push('\n');
                s.push_str(&t.to_text());
            }
            (s, None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_numbers_round_trip() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0] {
            let s = csv_number(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(csv_number(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn csv_quotes_when_needed() {
        let mut t = Table::new(["name", "value"]);
        t.push(vec!["a,b".into(), 1.0.into()]);
        t.push(vec!["say \"hi\"".into(), Cell::Empty]);
        assert_eq!(
            t.to_csv(),
            "name,value\n\"a,b\",1.0000000000000000e0\n\"say \"\"hi\"\"\",\n"
        );
    }

    #[test]
    fn header_always_present() {
        assert_eq!(Table::new(["t", "b"]).to_csv(), "t,b\n");
    }

    #[test]
    fn json_rows_and_summary() {
        let mut out = CommandOutput::new("demo");
        let mut t = Table::new(["t", "x"]);
        t.push(vec![0.5.into(), Cell::Empty]);
        out.table = Some(t);
        out.note("verdict", "PASS");
        let (s, err) = render(&out, OutputFormat::Json);
        assert!(err.is_none());
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["rows"][0]["t"], 0.5);
        assert!(v["rows"][0]["x"].is_null());
        assert_eq!(v["summary"]["verdict"], "PASS");
        assert_eq!(v["passed"], true);
    }

    #[test]
    fn csv_summary_goes_to_side_channel() {
        let mut out = CommandOutput::new("demo");
        out.table = Some(Table::new(["t"]));
        out.note("tau", -0.5);
        let (body, side) = render(&out, OutputFormat::Csv);
        assert_eq!(body, "t\n");
        assert_eq!(side.unwrap(), "# tau: -0.5\n");
    }
}
