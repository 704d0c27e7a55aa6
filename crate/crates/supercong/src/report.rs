//! Report rendering: a human table, JSON lines, or CSV.
//!
//! Residues are already decimal strings inside [`CheckRecord`], so every
//! format is width-agnostic. JSON lines round-trip losslessly through
//! [`parse_json_report`]; CSV carries params URL-encoded in one cell.

use std::fmt;
use std::str::FromStr;

use crate::checks::CheckRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown format {other:?} (expected text, json, or csv)")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Text => "text",
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

pub fn format_report(records: &[CheckRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => format_text(records),
        ReportFormat::Json => format_json(records),
        ReportFormat::Csv => format_csv(records),
    }
}

fn format_json(records: &[CheckRecord]) -> String {
    let mut out = String::new();
    for rec in records {
        out.push_str(&serde_json::to_string(rec).expect("records are plain data"));
        out.push('\n');
    }
    out
}

/// Inverse of the JSON formatter, for round-trip tests and downstream tools.
pub fn parse_json_report(input: &str) -> Result<Vec<CheckRecord>, serde_json::Error> {
    input.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

fn format_csv(records: &[CheckRecord]) -> String {
    let mut out = String::from("p,check,params,lhs,rhs,ok\n");
    for rec in records {
        let params = rec
            .params
            .iter()
            .map(|(k, v)| format!("{}={}", percent_encode(k), percent_encode(v)))
            .collect::<Vec<_>>()
            .join("&");
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            rec.p, rec.check, params, rec.lhs, rec.rhs, rec.ok
        ));
    }
    out
}

/// Percent-encodes everything outside the URL-unreserved set, so the params
/// cell never collides with the CSV comma or the pair separators.
fn percent_encode(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for b in s.bytes() {
        match b {
            b'A'..=b'Z' | b'a'..=b'z' | b'0'..=b'9' | b'-' | b'_' | b'.' | b'~' => {
                out.push(b as char)
            }
            _ => out.push_str(&format!("%{b:02X}")),
        }
    }
    out
}

fn format_text(records: &[CheckRecord]) -> String {
    let header = ["p", "check", "params", "lhs", "rhs", "status"];
    let rows: Vec<[String; 6]> = records
        .iter()
        .map(|rec| {
            let params = if rec.params.is_empty() {
                "-".to_string()
            } else {
                rec.params
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            [
                rec.p.to_string(),
                rec.check.clone(),
                params,
                rec.lhs.clone(),
                rec.rhs.clone(),
                if rec.ok { "ok".to_string() } else { "FAIL".to_string() },
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let render = |cells: &[String], widths: &[usize], out: &mut String| {
        let line = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    };
    let header_cells: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    render(&header_cells, &widths, &mut out);
    for row in &rows {
        render(row, &widths, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{rv_check, sun_check};
    use crate::residue::PrimeContext;

    fn sample() -> Vec<CheckRecord> {
        vec![
            rv_check(&PrimeContext::new(3).unwrap()),
            sun_check(&PrimeContext::new(5).unwrap()),
        ]
    }

    #[test]
    fn json_schema_and_round_trip() {
        let records = sample();
        let text = format_report(&records, ReportFormat::Json);
        let first = text.lines().next().unwrap();
        assert_eq!(first, r#"{"p":3,"check":"rv","params":{},"lhs":"8","rhs":"8","ok":true}"#);
        assert_eq!(parse_json_report(&text).unwrap(), records);
    }

    #[test]
    fn csv_layout() {
        let records = sample();
        let text = format_report(&records, ReportFormat::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "p,check,params,lhs,rhs,ok");
        assert_eq!(lines[1], "3,rv,,8,8,true");
        assert_eq!(lines[2], "5,sun,x=1&y=2,12,12,true");
        assert_eq!(format_report(&[], ReportFormat::Csv), "p,check,params,lhs,rhs,ok\n");
    }

    #[test]
    fn csv_percent_encoding() {
        assert_eq!(percent_encode("p=5"), "p%3D5");
        assert_eq!(percent_encode("-3"), "-3");
        assert_eq!(percent_encode("a b&c"), "a%20b%26c");
        assert_eq!(percent_encode("1/2"), "1%2F2");
    }

    #[test]
    fn text_table() {
        let records = sample();
        let text = format_report(&records, ReportFormat::Text);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("p"));
        assert!(lines[1].ends_with("ok"));
        assert!(lines[2].contains("x=1 y=2"));
        // A failing record renders FAIL in the status column.
        let mut bad = records[0].clone();
        bad.ok = false;
        let text = format_report(&[bad], ReportFormat::Text);
        assert!(text.lines().nth(1).unwrap().ends_with("FAIL"));
    }

    #[test]
    fn format_names_parse() {
        assert_eq!("json".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert_eq!("text".parse::<ReportFormat>().unwrap(), ReportFormat::Text);
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert!("xml".parse::<ReportFormat>().is_err());
        assert_eq!(ReportFormat::Csv.to_string(), "csv");
    }
}
