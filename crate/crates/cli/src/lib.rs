//! Front end for `cj-core`: expression evaluation, named checks, built-in
//! demos, `.cjx` scenario files and randomized property suites. Every run
//! produces a [`report::Report`].

pub mod checks;
pub mod demo;
pub mod error;
pub mod report;
pub mod scenario;
pub mod suites;

pub use error::{CliError, Result};
pub use report::{CheckRecord, Expectation, Report};
