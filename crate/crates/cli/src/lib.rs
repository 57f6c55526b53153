//! Command-line front end: document format and the commands behind `dtep`.

pub mod commands;
pub mod format;
