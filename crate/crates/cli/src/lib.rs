//! Manifest parsing, command dispatch and reports for the `mgce` tool.

pub mod manifest;
pub mod report;
pub mod run;

pub use manifest::{parse_manifest, Manifest, ManifestError};
pub use report::{Check, Report, Table};
pub use run::{execute, run_args, Cli, Outcome};
