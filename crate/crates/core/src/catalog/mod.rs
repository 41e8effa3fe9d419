//! Group catalog, analysis pipeline, cache and verification suites.

pub mod format;

pub use format::{parse_cycles, parse_str, render, CatalogEntry, ClassLabel, OutData};
pub mod load;

pub use load::{bundled, bundled_names, parse_catalog, LoadedGroup, OutGroups, BUNDLED};
pub mod analyze;

pub use analyze::{analyze, AnalysisReport, AnalyzeOptions, Stage, REPORT_VERSION};
pub mod cache;

pub use cache::{Cache, Lookup, CACHE_ENV};
pub mod verify;

pub use verify::{run_suite, CheckResult, SUITES};
