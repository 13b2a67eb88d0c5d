//! File formats, instance generation, differential checking and the
//! command-line front end for `fuzzycover`.

pub mod app;
pub mod check;
pub mod error;
pub mod generate;
pub mod ops;
pub mod report;
pub mod system_file;

pub use app::run;
pub use error::CliError;
pub use system_file::{load, save, Loaded, SystemFile};
