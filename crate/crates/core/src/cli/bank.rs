//! Finite item bank ingestion: CSV with header `a,b,c` (the `c` column is
//! optional and defaults to 0), one item per row, decimal floats.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::irt::Item;

/// A diagnosable problem on one line of a bank file.
#[derive(Debug, Clone, PartialEq)]
pub struct RowIssue {
    /// 1-based line number (the header is line 1).
    pub line: usize,
    pub message: String,
}

impl fmt::Display for RowIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BankError {
    Io(String),
    Header(String),
    Rows(Vec<RowIssue>),
}

impl fmt::Display for BankError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(msg) => write!(f, "cannot read bank: {msg}"),
            Self::Header(msg) => write!(f, "bad bank header: {msg}"),
            Self::Rows(issues) => {
                writeln!(f, "{} invalid row(s):", issues.len())?;
                for issue in issues {
                    writeln!(f, "  {issue}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for BankError {}

/// Reads and validates a bank file, reporting every bad row with its line
/// number.
pub fn read_bank(path: &Path) -> Result<Vec<Item>, BankError> {
    let text = fs::read_to_string(path).map_err(|e| BankError::Io(format!("{}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| BankError::Header("file is empty".into()))?;
    let has_c = match header.trim() {
        "a,b,c" => true,
        "a,b" => false,
        other => {
            return Err(BankError::Header(format!(
                "expected `a,b,c` or `a,b`, found `{other}`"
            )))
        }
    };

    let mut items = Vec::new();
    let mut issues = Vec::new();
    for (index, raw) in lines {
        let line = index + 1;
        let row = raw.trim();
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        let expected = if has_c { 3 } else { 2 };
        if fields.len() != expected {
            issues.push(RowIssue {
                line,
                message: format!("expected {expected} fields, found {}", fields.len()),
            });
            continue;
        }
        let parse = |name: &str, s: &str| -> Result<f64, String> {
            s.parse::<f64>().map_err(|_| format!("{name} = `{s}` is not a number"))
        };
        let parsed = parse("a", fields[0]).and_then(|a| {
            let b = parse("b", fields[1])?;
            let c = if has_c { parse("c", fields[2])? } else { 0.0 };
            Ok((a, b, c))
        });
        match parsed {
            Err(message) => issues.push(RowIssue { line, message }),
            Ok((a, b, c)) => match Item::new(a, b, c) {
                Ok(item) => items.push(item),
                Err(e) => issues.push(RowIssue {
                    line,
                    message: e.to_string(),
                }),
            },
        }
    }
    if issues.is_empty() {
        Ok(items)
    } else {
        Err(BankError::Rows(issues))
    }
}

/// Parameter ranges of a validated bank.
#[derive(Debug, Clone, PartialEq)]
pub struct BankSummary {
    pub count: usize,
    pub a_range: (f64, f64),
    pub b_range: (f64, f64),
    pub c_range: (f64, f64),
}

pub fn summarize(items: &[Item]) -> Option<BankSummary> {
    let first = items.first()?;
    let mut summary = BankSummary {
        count: items.len(),
        a_range: (first.a(), first.a()),
        b_range: (first.b(), first.b()),
        c_range: (first.c(), first.c()),
    };
    for item in &items[1..] {
        summary.a_range = (summary.a_range.0.min(item.a()), summary.a_range.1.max(item.a()));
        summary.b_range = (summary.b_range.0.min(item.b()), summary.b_range.1.max(item.b()));
        summary.c_range = (summary.c_range.0.min(item.c()), summary.c_range.1.max(item.c()));
    }
    Some(summary)
}
