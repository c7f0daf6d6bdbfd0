//! Plain-text standard-basis files.
//!
//! ```text
//! # comments start with '#'
//! dimension 3
//!
//! 100
//! 010
//! 001
//!
//! 001
//! 101
//! 010
//! ...
//! ```
//!
//! After the `dimension n` header come `n` blocks of `n` rows, separated by
//! blank lines. Character `j` of row `k` in block `i` is entry `(k, j)` of
//! `A_i`, so the blocks read exactly like the printed matrices.

use std::fmt::Write as _;

use semifield::{Gf2Matrix, StandardBasis, MAX_DIM};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<StandardBasis, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim_start().starts_with('#'));

    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| err(1, 1, "missing `dimension <n>` header"))?;
    let n = header
        .strip_prefix("dimension")
        .map(str::trim)
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or_else(|| {
            err(
                hline,
                1,
                format!("expected `dimension <n>`, found {header:?}"),
            )
        })?;
    if n > MAX_DIM {
        return Err(err(hline, 11, format!("dimension {n} exceeds {MAX_DIM}")));
    }

    let mut blocks: Vec<Vec<u16>> = Vec::new();
    let mut current: Option<Vec<u16>> = None;
    let mut last_line = hline;
    for (lno, line) in lines {
        last_line = lno;
        if line.is_empty() {
            if let Some(rows) = current.take() {
                if rows.len() != n {
                    return Err(err(
                        lno,
                        1,
                        format!(
                            "block {} has {} rows, expected {n}",
                            blocks.len() + 1,
                            rows.len()
                        ),
                    ));
                }
                blocks.push(rows);
            }
            continue;
        }
        let rows = current.get_or_insert_with(Vec::new);
        if blocks.len() == n {
            return Err(err(lno, 1, format!("more than {n} blocks")));
        }
        if rows.len() == n {
            return Err(err(
                lno,
                1,
                format!("block {} has more than {n} rows", blocks.len() + 1),
            ));
        }
        let mut bits = 0u16;
        let mut width = 0;
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' if c < MAX_DIM => bits |= 1 << c,
                '1' => {}
                _ => return Err(err(lno, c + 1, format!("unexpected character {ch:?}"))),
            }
            width = c + 1;
        }
        if width != n {
            return Err(err(
                lno,
                width.min(n) + 1,
                format!("row has {width} entries, expected {n}"),
            ));
        }
        rows.push(bits);
    }
    if let Some(rows) = current.take() {
        if rows.len() != n {
            return Err(err(
                last_line + 1,
                1,
                format!(
                    "block {} has {} rows, expected {n}",
                    blocks.len() + 1,
                    rows.len()
                ),
            ));
        }
        blocks.push(rows);
    }
    if blocks.len() != n {
        return Err(err(
            last_line + 1,
            1,
            format!("found {} blocks, expected {n}", blocks.len()),
        ));
    }
    let mats = blocks
        .iter()
        .map(|rows| Gf2Matrix::from_row_bits(n, rows).expect("rows checked against dimension"))
        .collect();
    Ok(StandardBasis::new(mats).expect("n matrices of dimension n"))
}

pub fn serialize(basis: &StandardBasis) -> String {
    let mut out = String::new();
    writeln!(out, "dimension {}", basis.dim()).unwrap();
    for m in basis.matrices() {
        out.push('\n');
        for row in m.to_row_strings() {
            out.push_str(&row);
            out.push('\n');
        }
    }
    out
}
