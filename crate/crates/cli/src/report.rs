//! Reports: one row per checked property, rendered as a table or as
//! line-delimited JSON records.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::Format;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub index: usize,
    pub property: String,
    pub input: String,
    pub output: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub seed: u64,
    pub bounds: String,
    pub checks: Vec<Check>,
    pub certificates: Vec<String>,
    /// Extra text shown after the table (not part of the records).
    pub appendix: Option<String>,
    /// Wall-clock time; text output only, so records stay reproducible.
    pub elapsed: Option<std::time::Duration>,
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    record: &'static str,
    command: &'a str,
    field: &'a str,
    seed: u64,
    #[serde(flatten)]
    check: &'a Check,
}

#[derive(Serialize)]
struct SummaryRecord<'a> {
    record: &'static str,
    command: &'a str,
    field: &'a str,
    seed: u64,
    bounds: &'a str,
    checks: usize,
    passed: usize,
    certificates: &'a [String],
    pass: bool,
}

impl Report {
    pub fn new(command: &str, field: &str, seed: u64, bounds: &str) -> Self {
        Report {
            command: command.to_string(),
            field: field.to_string(),
            seed,
            bounds: bounds.to_string(),
            checks: Vec::new(),
            certificates: Vec::new(),
            appendix: None,
            elapsed: None,
        }
    }

    pub fn push(&mut self, property: &str, input: impl Into<String>, output: impl Into<String>, pass: bool) {
        self.checks.push(Check {
            index: self.checks.len() + 1,
            property: property.to_string(),
            input: input.into(),
            output: output.into(),
            pass,
        });
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == self.checks.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Records => self.render_records(),
        }
    }

    fn render_records(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let r = CheckRecord {
                record: "check",
                command: &self.command,
                field: &self.field,
                seed: self.seed,
                check: c,
            };
            out.push_str(&serde_json::to_string(&r).expect("records serialize"));
            out.push('\n');
        }
        let s = SummaryRecord {
            record: "summary",
            command: &self.command,
            field: &self.field,
            seed: self.seed,
            bounds: &self.bounds,
            checks: self.checks.len(),
            passed: self.passed(),
            certificates: &self.certificates,
            pass: self.all_pass(),
        };
        out.push_str(&serde_json::to_string(&s).expect("records serialize"));
        out.push('\n');
        out
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}  field: {}  seed: {}", self.command, self.field, self.seed);
        let rows: Vec<[String; 5]> = self
            .checks
            .iter()
            .map(|c| {
                [
                    c.index.to_string(),
                    c.property.clone(),
                    if c.pass { "ok" } else { "FAIL" }.to_string(),
                    c.input.clone(),
                    c.output.clone(),
                ]
            })
            .collect();
        let header = ["#", "property", "result", "input", "output"].map(String::from);
        let mut width = header.clone().map(|h| h.chars().count());
        for r in &rows {
            for (w, cell) in width.iter_mut().zip(r) {
                *w = (*w).max(cell.lines().map(|l| l.chars().count()).max().unwrap_or(0));
            }
        }
        for r in std::iter::once(&header).chain(&rows) {
            let mut line = String::new();
            for (i, cell) in r.iter().enumerate() {
                let cell = cell.replace('\n', " | ");
                if i + 1 == r.len() {
                    line.push_str(&cell);
                } else {
                    let pad = width[i].saturating_sub(cell.chars().count());
                    line.push_str(&cell);
                    line.push_str(&" ".repeat(pad + 2));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        for c in &self.certificates {
            let _ = writeln!(out, "certificate: {c}");
        }
        let _ = writeln!(
            out,
            "{} {}/{} checks passed",
            if self.all_pass() { "PASS" } else { "FAIL" },
            self.passed(),
            self.checks.len()
        );
        if let Some(d) = self.elapsed {
            let _ = writeln!(out, "time: {} ms", d.as_millis());
        }
        if let Some(a) = &self.appendix {
            out.push_str(a);
            if !a.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_are_stable() {
        let mut r = Report::new("tame", "padic:5:8", 7, "maxq=1024,maxdeg=4,oracleprec=8");
        r.push("tame", "deg:2 {p,2}", "deg:1 {2}", true);
        let a = r.render(Format::Records);
        assert_eq!(a, r.render(Format::Records));
        let first = a.lines().next().unwrap();
        assert_eq!(
            first,
            r#"{"record":"check","command":"tame","field":"padic:5:8","seed":7,"index":1,"property":"tame","input":"deg:2 {p,2}","output":"deg:1 {2}","pass":true}"#
        );
        assert!(a.lines().nth(1).unwrap().contains(r#""pass":true"#));
    }

    #[test]
    fn text_table() {
        let mut r = Report::new("x", "ff:3", 0, "");
        r.push("p", "a", "b", false);
        let t = r.render(Format::Text);
        assert!(t.contains("FAIL 0/1 checks passed"));
    }
}
