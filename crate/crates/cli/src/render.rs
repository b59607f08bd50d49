use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Table {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows
            .push(cells.into_iter().map(|c| c.to_string()).collect());
    }

    /// Two-column `key, value` table.
    pub fn pairs<S: ToString>(title: impl Into<String>, pairs: Vec<(&str, S)>) -> Self {
        let mut t = Table::new(title, &["key", "value"]);
        for (k, v) in pairs {
            t.row([k.to_string(), v.to_string()]);
        }
        t
    }

    fn render_text(&self, out: &mut String) {
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|i| {
                self.rows
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([self.headers[i].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        out.push_str(&self.title);
        out.push('\n');
        out.push_str(&line(&self.headers));
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
    }
}

/// A command result: the serialized value plus its human-readable tables.
pub struct Output {
    json: String,
    tables: Vec<Table>,
}

impl Output {
    pub fn new<T: Serialize>(value: &T, tables: Vec<Table>) -> Self {
        Output {
            json: serde_json::to_string_pretty(value).expect("serializable"),
            tables,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.json),
            Format::Table => {
                let mut out = String::new();
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    t.render_text(&mut out);
                }
                out
            }
            Format::Csv => {
                // Several tables become blocks separated by a blank line, each
                // with a leading `table` column naming it.
                let multi = self.tables.len() > 1;
                let mut blocks = Vec::new();
                for t in &self.tables {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let prefix = |cells: &[String]| -> Vec<String> {
                        let mut v = Vec::with_capacity(cells.len() + 1);
                        if multi {
                            v.push(t.title.clone());
                        }
                        v.extend(cells.iter().cloned());
                        v
                    };
                    let mut header = t.headers.clone();
                    if multi {
                        header.insert(0, "table".into());
                    }
                    w.write_record(&header).expect("in-memory write");
                    for r in &t.rows {
                        w.write_record(prefix(r)).expect("in-memory write");
                    }
                    blocks.push(String::from_utf8(w.into_inner().expect("flush")).expect("utf8"));
                }
                blocks.join("\n")
            }
        }
    }
}
