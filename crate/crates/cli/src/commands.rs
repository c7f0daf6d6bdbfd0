//! Subcommand implementations. Each writes its document to `out`,
//! diagnostics to `err`, and returns the process exit status.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use semifield::search::{run_shards, search_with_observer, split_search_space};
use semifield::{fixtures, Cube, Gf2Vector, StandardBasis};
use serde::{Deserialize, Serialize};

use crate::document::{self, VerifyDocument};
use crate::{basis_file, config};

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Failed = 1,
    BadInput = 2,
    BudgetExhausted = 3,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

/// Resolves a path or built-in fixture name. Existing files win over
/// fixture names.
pub fn load_basis(source: &str) -> Result<StandardBasis, String> {
    let path = Path::new(source);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| format!("{source}: {e}"))?;
        return basis_file::parse(&text).map_err(|e| format!("{source}: {e}"));
    }
    fixtures::by_name(source).ok_or_else(|| {
        format!(
            "{source}: no such file or built-in fixture (built-ins: {})",
            fixtures::NAMES.join(", ")
        )
    })
}

fn emit_json<T: Serialize>(out: &mut dyn Write, doc: &T) {
    let text = serde_json::to_string_pretty(doc).expect("documents serialize");
    let _ = writeln!(out, "{text}");
}

fn fail_input(err: &mut dyn Write, msg: impl AsRef<str>) -> Exit {
    let _ = writeln!(err, "error: {}", msg.as_ref());
    Exit::BadInput
}

pub fn cmd_verify(
    source: &str,
    table: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Exit {
    let basis = match load_basis(source) {
        Ok(b) => b,
        Err(e) => return fail_input(err, e),
    };
    let report = basis.verify();
    emit_json(
        out,
        &VerifyDocument {
            command: "verify".into(),
            source: source.into(),
            dimension: basis.dim(),
            verification: (&report).into(),
        },
    );
    if !report.passed() {
        return Exit::Failed;
    }
    if let Some(path) = table {
        if let Err(e) = write_table(&basis.to_cube(), path) {
            return fail_input(err, format!("{}: {e}", path.display()));
        }
    }
    Exit::Success
}

/// Full multiplication table: row `x` lists `x*y` for `y = 0..2^n`, as
/// hexadecimal integers (bit 0 = coordinate of the unity).
pub fn multiplication_table(cube: &Cube) -> String {
    let n = cube.dim();
    let width = n.div_ceil(4).max(1);
    let mut text = String::new();
    for x in 0u32..1 << n {
        let xv = Gf2Vector::new(n, x as u16).expect("within dimension");
        let left = cube.left_mul_matrix(xv).expect("same dimension");
        let row: Vec<String> = (0u32..1 << n)
            .map(|y| {
                let p = left.mat_vec(Gf2Vector::new(n, y as u16).expect("within dimension"));
                format!("{:0width$x}", p.expect("same dimension").bits())
            })
            .collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    text
}

fn write_table(cube: &Cube, path: &Path) -> std::io::Result<()> {
    fs::write(path, multiplication_table(cube))
}

pub fn cmd_analyze(source: &str, subs: &[usize], out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let basis = match load_basis(source) {
        Ok(b) => b,
        Err(e) => return fail_input(err, e),
    };
    let n = basis.dim();
    if let Some(&m) = subs.iter().find(|&&m| m == 0 || m > n) {
        return fail_input(err, format!("--sub {m} outside 1..={n}"));
    }
    let doc = match document::analyze(source, &basis, subs) {
        Ok(d) => d,
        Err(e) => return fail_input(err, e.to_string()),
    };
    emit_json(out, &doc);
    if doc.verification.passed {
        Exit::Success
    } else {
        let _ = writeln!(err, "error: {source} is not a standard basis");
        Exit::Failed
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct OppositeDocument {
    command: String,
    source: String,
    output: String,
}

pub fn cmd_opposite(source: &str, output: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let basis = match load_basis(source) {
        Ok(b) => b,
        Err(e) => return fail_input(err, e),
    };
    let opposite = basis.to_cube().opposite().to_basis();
    if let Err(e) = fs::write(output, basis_file::serialize(&opposite)) {
        return fail_input(err, format!("{}: {e}", output.display()));
    }
    emit_json(
        out,
        &OppositeDocument {
            command: "opposite".into(),
            source: source.into(),
            output: output.display().to_string(),
        },
    );
    Exit::Success
}

pub fn cmd_mult(source: &str, x: &str, y: &str, out: &mut dyn Write, err: &mut dyn Write) -> Exit {
    let basis = match load_basis(source) {
        Ok(b) => b,
        Err(e) => return fail_input(err, e),
    };
    let n = basis.dim();
    let operand = |s: &str| {
        Gf2Vector::from_bit_str(s)
            .filter(|v| v.dim() == n)
            .ok_or_else(|| format!("operand {s:?} is not a string of {n} characters from {{0,1}}"))
    };
    let (xv, yv) = match (operand(x), operand(y)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail_input(err, e),
    };
    let product = basis
        .to_cube()
        .multiply(xv, yv)
        .expect("operands match dimension");
    let _ = writeln!(out, "{product}");
    Exit::Success
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchManifest {
    pub schema: String,
    pub count: usize,
    pub nodes: u64,
    pub prunes: u64,
    pub elapsed_ms: u128,
    pub exhausted: bool,
    pub shards: usize,
    pub files: Vec<String>,
}

pub struct SearchOptions {
    pub out_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub progress: bool,
}

pub fn cmd_search(
    config_path: &Path,
    opts: &SearchOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Exit {
    let text = match fs::read_to_string(config_path) {
        Ok(t) => t,
        Err(e) => return fail_input(err, format!("{}: {e}", config_path.display())),
    };
    let cfg = match config::parse(&text) {
        Ok(c) => c,
        Err(e) => return fail_input(err, format!("{}: {e}", config_path.display())),
    };
    let out_dir = opts
        .out_dir
        .clone()
        .or(cfg.output.clone())
        .unwrap_or_else(|| PathBuf::from("solutions"));
    let threads = opts.threads.unwrap_or(cfg.threads).max(1);

    let start = Instant::now();
    let (outcome, shards) = if threads > 1 || cfg.shard_depth > 0 {
        let available = cfg.constraints.unassigned_columns().len();
        let depth = if cfg.shard_depth == 0 {
            available.min(1)
        } else {
            cfg.shard_depth
        };
        let shards = match split_search_space(&cfg.constraints, depth) {
            Ok(s) => s,
            Err(e) => return fail_input(err, e.to_string()),
        };
        let outcome = run_shards(&shards, cfg.budget, threads);
        if opts.progress {
            let _ = writeln!(
                err,
                "{}",
                semifield::SearchEvent::Finished {
                    solutions: outcome.bases.len(),
                    nodes: outcome.nodes_visited,
                    prunes: outcome.prunes,
                    exhausted: outcome.exhausted,
                }
            );
        }
        (outcome, shards.len())
    } else {
        let every = if opts.progress { cfg.progress_every } else { 0 };
        let progress = opts.progress;
        let outcome = search_with_observer(&cfg.constraints, cfg.budget, every, &mut |ev| {
            if progress {
                let _ = writeln!(err, "{ev}");
            }
        });
        (outcome, 1)
    };

    if let Err(e) = fs::create_dir_all(&out_dir) {
        return fail_input(err, format!("{}: {e}", out_dir.display()));
    }
    let mut files = Vec::with_capacity(outcome.bases.len());
    for (k, b) in outcome.bases.iter().enumerate() {
        let name = format!("solution-{:04}.basis", k + 1);
        if let Err(e) = fs::write(out_dir.join(&name), basis_file::serialize(b)) {
            return fail_input(err, format!("{}: {e}", out_dir.join(&name).display()));
        }
        files.push(name);
    }
    let manifest = SearchManifest {
        schema: "semifield-search/1".into(),
        count: outcome.bases.len(),
        nodes: outcome.nodes_visited,
        prunes: outcome.prunes,
        elapsed_ms: start.elapsed().as_millis(),
        exhausted: outcome.exhausted,
        shards,
        files,
    };
    let manifest_text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    if let Err(e) = fs::write(out_dir.join("manifest.json"), &manifest_text) {
        return fail_input(err, format!("{}: {e}", out_dir.display()));
    }
    let _ = writeln!(out, "{manifest_text}");
    if manifest.count > 0 || manifest.exhausted {
        Exit::Success
    } else {
        Exit::BudgetExhausted
    }
}
