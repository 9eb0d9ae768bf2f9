//! Instance files, request dispatch, reports and the table cache behind the
//! `multimult` binary.

pub mod cache;
pub mod instance;
pub mod report;
pub mod run;

pub use cache::{default_cache_dir, DiskCache, CACHE_DIR_ENV};
pub use instance::{parse_instance, Instance, ParseError, RequestKind};
pub use report::{without_timing, Report, SCHEMA};
pub use run::{run_instance, RunOptions};
