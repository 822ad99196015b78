//! Instance files, the built-in corpus, generators and check suites on top of `galcom-core`.

pub mod builder;
pub mod corpus;
pub mod error;
pub mod format;
pub mod generate;
pub mod instance;
pub mod report;
pub mod suites;

pub use error::{CliError, Result};
pub use format::InstanceFile;
pub use instance::{load, load_path, load_str, AnyInstance, Instance};
pub use report::Report;
pub use suites::{run_any, run_suite, Config, Suite};
