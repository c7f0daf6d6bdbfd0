//! File formats, documents and subcommands behind the `semifield` binary.

pub mod basis_file;
pub mod commands;
pub mod config;
pub mod document;

pub use commands::Exit;
