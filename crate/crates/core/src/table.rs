//! Branching-factor table rendering with comparison against printed values.

use std::fmt::Write;

use serde::Serialize;

use crate::measure::{factor_table, Weighting, PRINTED_OVERALL, PRINTED_S, TABLE};

/// Printed values differing from the recomputation by more than this are flagged.
const MATCH_TOLERANCE: f64 = 5e-5;

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub s: f64,
    pub raw: f64,
    pub uprounded: f64,
    /// Published value for this cell, when `s` is one of the printed columns.
    pub printed: Option<f64>,
    pub mismatch: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableLine {
    pub rule: String,
    pub formula: String,
    pub cells: Vec<TableCell>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub lines: Vec<TableLine>,
}

impl TableReport {
    pub fn mismatches(&self) -> Vec<(&TableLine, &TableCell)> {
        self.lines.iter().flat_map(|l| l.cells.iter().filter(|c| c.mismatch).map(move |c| (l, c))).collect()
    }

    /// Cells that have a printed value to compare with.
    pub fn compared(&self) -> usize {
        self.lines.iter().flat_map(|l| &l.cells).filter(|c| c.printed.is_some()).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:<20} {:<34}", "rule", "vector");
        if let Some(first) = self.lines.first() {
            for c in &first.cells {
                let _ = write!(out, " {:>10}", format!("s={}", c.s));
            }
        }
        out.push('\n');
        for line in &self.lines {
            let _ = write!(out, "{:<20} {:<34}", line.rule, line.formula);
            for c in &line.cells {
                let mark = if c.mismatch { "*" } else { " " };
                let _ = write!(out, " {:>9.4}{mark}", c.uprounded);
            }
            out.push('\n');
        }
        for (line, c) in self.mismatches() {
            let _ = writeln!(
                out,
                "* {} at s={}: printed {:.4}, recomputed {:.6} (uprounded {:.4})",
                line.formula,
                c.s,
                c.printed.unwrap_or(f64::NAN),
                c.raw,
                c.uprounded
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("rule,vector,s,raw,uprounded,printed,mismatch\n");
        for line in &self.lines {
            for c in &line.cells {
                let printed = c.printed.map(|p| p.to_string()).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "\"{}\",\"{}\",{},{:.6},{:.4},{},{}",
                    line.rule, line.formula, c.s, c.raw, c.uprounded, printed, c.mismatch
                );
            }
        }
        out
    }
}

fn printed_column(s: f64) -> Option<usize> {
    PRINTED_S.iter().position(|&p| (p - s).abs() < 1e-9)
}

/// Recomputes the branching-factor table at each weighting and flags cells
/// whose published value disagrees with the recomputation.
pub fn emit_table(weights: &[Weighting]) -> TableReport {
    let rows = factor_table(weights);
    let lines = rows
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let cells = row
                .values
                .iter()
                .map(|&(s, raw, up)| {
                    let printed = printed_column(s).map(|col| match TABLE.get(i) {
                        Some(entry) => entry.printed[col],
                        None => PRINTED_OVERALL[col],
                    });
                    let mismatch = printed.is_some_and(|p| (p - up).abs() > MATCH_TOLERANCE);
                    TableCell { s, raw, uprounded: up, printed, mismatch }
                })
                .collect();
            TableLine { rule: row.rule, formula: row.formula, cells }
        })
        .collect();
    TableReport { lines }
}

pub fn default_weights() -> Vec<Weighting> {
    PRINTED_S.iter().map(|&s| Weighting::new(s).expect("printed columns are valid")).collect()
}
