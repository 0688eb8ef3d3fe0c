use serde_json::{json, Map, Value};

use crate::commands::CliError;

pub enum Section {
    Fields(Vec<(String, String)>),
    Table {
        title: String,
        headers: Vec<String>,
        rows: Vec<Vec<String>>,
    },
}

/// Result of one command: the JSON payload plus a text rendering.
pub struct Report {
    command: &'static str,
    ok: bool,
    payload: Value,
    diagnostics: Vec<String>,
    sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &'static str, payload: Value) -> Self {
        Report {
            command,
            ok: true,
            payload,
            diagnostics: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn failure(command: &'static str, e: &CliError) -> Self {
        Report {
            command,
            ok: false,
            payload: json!({ "error": e.kind(), "message": e.to_string() }),
            diagnostics: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn diagnostic(mut self, msg: impl Into<String>) -> Self {
        self.diagnostics.push(msg.into());
        self
    }

    pub fn fields<K: Into<String>, V: ToString>(
        mut self,
        fields: impl IntoIterator<Item = (K, V)>,
    ) -> Self {
        self.sections.push(Section::Fields(
            fields
                .into_iter()
                .map(|(k, v)| (k.into(), v.to_string()))
                .collect(),
        ));
        self
    }

    pub fn table(mut self, title: &str, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.sections.push(Section::Table {
            title: title.to_string(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows,
        });
        self
    }

    pub fn to_json(&self) -> String {
        let mut env = Map::new();
        env.insert("status".into(), json!(if self.ok { "ok" } else { "error" }));
        env.insert("command".into(), json!(self.command));
        env.insert("payload".into(), self.payload.clone());
        env.insert("diagnostics".into(), json!(self.diagnostics));
        serde_json::to_string_pretty(&Value::Object(env)).expect("values serialize")
    }

    pub fn print_text(&self) {
        if !self.ok {
            eprintln!(
                "error: {}",
                self.payload["message"].as_str().unwrap_or("failed")
            );
            return;
        }
        let mut first = true;
        for section in &self.sections {
            if !first {
                println!();
            }
            first = false;
            match section {
                Section::Fields(fields) => {
                    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                    for (k, v) in fields {
                        println!("{k:<width$}  {v}");
                    }
                }
                Section::Table {
                    title,
                    headers,
                    rows,
                } => {
                    if !title.is_empty() {
                        println!("{title}");
                    }
                    print_table(headers, rows);
                }
            }
        }
        for d in &self.diagnostics {
            eprintln!("note: {d}");
        }
    }
}

fn print_table(headers: &[String], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    println!("{}", line(headers));
    println!(
        "{}",
        widths
            .iter()
            .map(|&w| "-".repeat(w))
            .collect::<Vec<_>>()
            .join("  ")
    );
    for row in rows {
        println!("{}", line(row));
    }
}
