//! Search configuration files (TOML).
//!
//! Matrix and column indices are 1-based, bit strings follow the basis-file
//! convention (leftmost character = first coordinate).
//!
//! ```toml
//! dimension = 7
//! output = "solutions"
//! threads = 4
//! shard_depth = 1
//!
//! [budget]
//! max_solutions = 10
//! max_nodes = 50_000_000
//! wall_clock_secs = 60
//!
//! [subfield_block]
//! polynomial = "x^3+x+1"
//!
//! [[matrix]]
//! index = 4
//! fixture = "paper-example"
//!
//! [[matrix]]
//! index = 5
//! rows = ["0000100", "0000111", "0001010", "0010011", "1010001", "0000110", "0111011"]
//!
//! [[column]]
//! matrix = 7
//! column = 2
//! bits = "0000100"
//! ```

use std::path::PathBuf;
use std::time::Duration;

use semifield::{fixtures, Gf2Matrix, Gf2Poly, Gf2Vector, SearchBudget, SearchConstraints};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config syntax: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Constraints(#[from] semifield::SearchError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    dimension: usize,
    output: Option<PathBuf>,
    threads: Option<usize>,
    shard_depth: Option<usize>,
    progress_every: Option<u64>,
    #[serde(default)]
    budget: RawBudget,
    subfield_block: Option<RawBlock>,
    #[serde(default)]
    matrix: Vec<RawMatrix>,
    #[serde(default)]
    column: Vec<RawColumn>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBudget {
    max_solutions: Option<usize>,
    max_nodes: Option<u64>,
    wall_clock_secs: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlock {
    polynomial: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    index: usize,
    rows: Option<Vec<String>>,
    fixture: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawColumn {
    matrix: usize,
    column: usize,
    bits: String,
}

/// A parsed and validated search request.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub constraints: SearchConstraints,
    pub budget: SearchBudget,
    pub output: Option<PathBuf>,
    pub threads: usize,
    pub shard_depth: usize,
    pub progress_every: u64,
}

fn one_based(what: &str, k: usize, n: usize) -> Result<usize, ConfigError> {
    if (1..=n).contains(&k) {
        Ok(k - 1)
    } else {
        Err(ConfigError::Invalid(format!("{what} {k} outside 1..={n}")))
    }
}

pub fn parse(text: &str) -> Result<SearchConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text)?;
    let n = raw.dimension;
    let mut cons = SearchConstraints::new(n)?;

    if let Some(block) = &raw.subfield_block {
        let p: Gf2Poly = block
            .polynomial
            .parse()
            .map_err(|e: semifield::Error| ConfigError::Invalid(e.to_string()))?;
        cons = cons.with_subfield_block(p)?;
    }

    for m in &raw.matrix {
        let i = one_based("matrix index", m.index, n)?;
        let mat = match (&m.rows, &m.fixture) {
            (Some(rows), None) => Gf2Matrix::from_row_strs(rows)
                .filter(|x| x.dim() == n)
                .ok_or_else(|| {
                    ConfigError::Invalid(format!(
                        "matrix {}: expected {n} rows of {n} bits",
                        m.index
                    ))
                })?,
            (None, Some(name)) => {
                let b = fixtures::by_name(name)
                    .ok_or_else(|| ConfigError::Invalid(format!("unknown fixture {name:?}")))?;
                if b.dim() != n {
                    return Err(ConfigError::Invalid(format!(
                        "fixture {name} has dimension {}, config has {n}",
                        b.dim()
                    )));
                }
                *b.matrix(i)
            }
            _ => {
                return Err(ConfigError::Invalid(format!(
                    "matrix {}: give exactly one of `rows` or `fixture`",
                    m.index
                )))
            }
        };
        cons = cons.with_fixed_matrix(i, mat)?;
    }

    for c in &raw.column {
        let i = one_based("column matrix", c.matrix, n)?;
        let j = one_based("column index", c.column, n)?;
        let v = Gf2Vector::from_bit_str(&c.bits)
            .filter(|v| v.dim() == n)
            .ok_or_else(|| {
                ConfigError::Invalid(format!(
                    "column ({}, {}): expected {n} bits, found {:?}",
                    c.matrix, c.column, c.bits
                ))
            })?;
        cons = cons.with_fixed_column(i, j, v)?;
    }

    let wall_clock = match raw.budget.wall_clock_secs {
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => {
            return Err(ConfigError::Invalid(format!(
                "wall_clock_secs {s} is not a duration"
            )))
        }
        None => None,
    };
    Ok(SearchConfig {
        constraints: cons,
        budget: SearchBudget {
            max_solutions: raw.budget.max_solutions,
            max_nodes: raw.budget.max_nodes,
            wall_clock,
        },
        output: raw.output,
        threads: raw.threads.unwrap_or(1).max(1),
        shard_depth: raw.shard_depth.unwrap_or(0),
        progress_every: raw.progress_every.unwrap_or(1 << 20),
    })
}
