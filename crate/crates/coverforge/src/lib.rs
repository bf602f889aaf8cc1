//! File formats, reports and the command dispatcher behind the `coverforge`
//! binary.

pub mod commands;
pub mod io;
pub mod report;

pub use commands::{run, Command, Job, Outcome, Source};
