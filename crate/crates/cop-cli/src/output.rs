//! Rendering of command results as JSON or CSV.

use cop_core::regularity::RecurrenceTable;
use cop_core::Scalar;
use serde_json::Value;

/// Result of a command: the JSON document and, when there is one, the
/// recurrence table that `--csv` renders.
pub struct Report {
    pub json: Value,
    pub table: Option<RecurrenceTable>,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report { json, table: None }
    }

    pub fn with_table(json: Value, table: RecurrenceTable) -> Self {
        Report { json, table: Some(table) }
    }
}

fn cells(z: Option<&Scalar>) -> String {
    match z {
        Some(z) => format!("{},{}", z.re, z.im),
        None => ",".to_string(),
    }
}

/// Rows `n,B_re,B_im,C_re,C_im,h_re,h_im`, with `C_n` blank at `n = 0` and
/// blank cells wherever the table has no entry.
pub fn table_csv(t: &RecurrenceTable) -> String {
    let rows = t.b.len().max(t.h.len());
    let mut out = String::from("n,B_re,B_im,C_re,C_im,h_re,h_im\n");
    for n in 0..rows {
        let c = n.checked_sub(1).and_then(|i| t.c.get(i));
        out.push_str(&format!("{n},{},{},{}\n", cells(t.b.get(n)), cells(c), cells(t.h.get(n))));
    }
    out
}
