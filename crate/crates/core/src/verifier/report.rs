//! Check reports: one row per (instance, method), rendered as TSV or text.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// Carries the reference value the row was compared against.
    Fail { expected: String },
    Skipped(String),
    /// Report-only rows with nothing to compare against.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("PASS"),
            Status::Fail { expected } => write!(f, "FAIL(expected {expected})"),
            Status::Skipped(reason) => write!(f, "SKIPPED({reason})"),
            Status::Info => f.write_str("INFO"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub family: String,
    pub params: String,
    pub method: String,
    pub value: String,
    pub status: Status,
}

impl CheckRow {
    /// PASS when `value == expected`, otherwise FAIL carrying both.
    pub fn compare(
        family: impl Into<String>,
        params: impl Into<String>,
        method: impl Into<String>,
        value: impl fmt::Display,
        expected: impl fmt::Display,
    ) -> CheckRow {
        let (value, expected) = (value.to_string(), expected.to_string());
        let status = if value == expected { Status::Pass } else { Status::Fail { expected } };
        CheckRow { family: family.into(), params: params.into(), method: method.into(), value, status }
    }

    pub fn with_status(
        family: impl Into<String>,
        params: impl Into<String>,
        method: impl Into<String>,
        value: impl Into<String>,
        status: Status,
    ) -> CheckRow {
        CheckRow { family: family.into(), params: params.into(), method: method.into(), value: value.into(), status }
    }

    pub fn skipped(
        family: impl Into<String>,
        params: impl Into<String>,
        method: impl Into<String>,
        reason: impl fmt::Display,
    ) -> CheckRow {
        Self::with_status(family, params, method, "-", Status::Skipped(reason.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub info: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: CheckRow) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.rows.extend(other.rows);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.rows {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail { .. } => s.fail += 1,
                Status::Skipped(_) => s.skipped += 1,
                Status::Info => s.info += 1,
            }
        }
        s
    }

    pub fn has_failures(&self) -> bool {
        self.rows.iter().any(|r| matches!(r.status, Status::Fail { .. }))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| matches!(r.status, Status::Fail { .. }))
    }

    /// Header line plus one tab-separated line per row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("family\tparams\tmethod\tvalue\tstatus\n");
        for r in &self.rows {
            out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.family, r.params, r.method, r.value, r.status));
        }
        out
    }

    /// Aligned table followed by the summary and a list of failures.
    pub fn to_text(&self) -> String {
        let cells: Vec<[String; 5]> = self
            .rows
            .iter()
            .map(|r| [r.family.clone(), r.params.clone(), r.method.clone(), r.value.clone(), r.status.to_string()])
            .collect();
        let mut width = [6, 6, 6, 5, 6];
        for c in &cells {
            for (w, s) in width.iter_mut().zip(c) {
                *w = (*w).max(s.chars().count());
            }
        }
        let line = |c: [&str; 5]| {
            let mut s = String::new();
            for (i, (w, v)) in width.iter().zip(c).enumerate() {
                if i == 4 {
                    s.push_str(v);
                } else {
                    s.push_str(&format!("{v:<w$}  "));
                }
            }
            s.push('\n');
            s
        };
        let mut out = line(["family", "params", "method", "value", "status"]);
        for c in &cells {
            out.push_str(&line([&c[0], &c[1], &c[2], &c[3], &c[4]]));
        }
        let s = self.summary();
        out.push_str(&format!(
            "\nrows {}: {} pass, {} fail, {} skipped, {} info\n",
            self.rows.len(),
            s.pass,
            s.fail,
            s.skipped,
            s.info
        ));
        for r in self.failures() {
            if let Status::Fail { expected } = &r.status {
                out.push_str(&format!(
                    "FAIL {} {} {}: got {}, expected {}\n",
                    r.family, r.params, r.method, r.value, expected
                ));
            }
        }
        out
    }
}
