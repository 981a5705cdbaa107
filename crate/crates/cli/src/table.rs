use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

/// Output of one command: metadata plus rows under named columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultTable {
    pub command: String,
    pub version: String,
    pub config: BTreeMap<String, String>,
    /// Truncation window of the computation.
    pub window: String,
    /// Why the window is in the stable or exact range.
    pub justification: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ResultTable {
    pub fn new(command: &str, config: BTreeMap<String, String>, columns: &[&str]) -> Self {
        ResultTable {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            window: String::new(),
            justification: String::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I: IntoIterator<Item = S>, S: ToString>(&mut self, row: I) {
        let row: Vec<String> = row.into_iter().map(|s| s.to_string()).collect();
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Rows whose first column equals `section`.
    pub fn section(&self, section: &str) -> Vec<&Vec<String>> {
        self.rows.iter().filter(|r| r.first().is_some_and(|s| s == section)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# command: {}\n# version: {}\n", self.command, self.version));
        for (k, v) in &self.config {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&format!("# window: {}\n# justification: {}\n", self.window, self.justification));
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| escape(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| serde_json::Value::Object(self.columns.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
            .collect();
        let v = json!({
            "command": self.command,
            "version": self.version,
            "config": self.config,
            "window": self.window,
            "justification": self.justification,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }
}

fn escape(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}
