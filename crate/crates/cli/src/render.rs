//! Output rendering: aligned text tables, exact matrix and vector printing,
//! and the stdout-or-file sink shared by every subcommand.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use troplab_core::matrix::RatMat;
use troplab_core::Rational;

/// Left-aligned table: cells padded to the column width, columns joined by
/// two spaces, no trailing spaces on any line.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.len());
        }
    }
    let render_row = |cells: &[String]| -> String {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < cells.len() {
                for _ in cell.len()..width[i] {
                    line.push(' ');
                }
            }
        }
        line
    };
    let head: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    let mut out = render_row(&head);
    out.push('\n');
    for row in rows {
        out.push_str(&render_row(row));
        out.push('\n');
    }
    out
}

pub fn rat_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

/// `(a,b,c)` with exact entries, matching the state display format.
pub fn tuple(v: &[Rational]) -> String {
    format!("({})", rat_strings(v).join(","))
}

/// `[[a, b], [c, d]]`, row major.
pub fn mat_text(m: &RatMat) -> String {
    let rows: Vec<String> = m
        .rows
        .iter()
        .map(|r| format!("[{}]", rat_strings(r).join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn mat_json(m: &RatMat) -> Value {
    json!(m
        .rows
        .iter()
        .map(|r| rat_strings(r))
        .collect::<Vec<Vec<String>>>())
}

pub fn pretty(doc: &Value) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(doc)?))
}

/// Write to `--out PATH` when given, stdout otherwise.
pub fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_pads_every_column_but_never_trails() {
        let out = table(
            &["t", "wide header", "x"],
            &[
                vec!["10".into(), "v".into(), "a".into()],
                vec!["2".into(), "value".into(), "b".into()],
            ],
        );
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "t   wide header  x");
        assert_eq!(lines[1], "10  v            a");
        assert_eq!(lines[2], "2   value        b");
        assert!(lines.iter().all(|l| !l.ends_with(' ')));
    }

    #[test]
    fn matrices_print_row_major() {
        let m = RatMat::new(vec![
            vec![Rational::from_int(12), Rational::from_int(-3)],
            vec![Rational::from_int(-3), Rational::from_int(6)],
        ]);
        assert_eq!(mat_text(&m), "[[12, -3], [-3, 6]]");
    }
}
