//! Command-line layer over `rdv-core`.
//!
//! This crate owns everything about the tool's *surface*: the scenario file
//! format, the trace CSV contract, the human-readable run report, and the
//! `rdv` binary's argument parsing and exit codes. No algorithmic work
//! happens here; every computation is delegated to `rdv-core`.

pub mod commands;
pub mod report;
pub mod scenario;
pub mod trace_csv;
