//! File formats, renders, reports, and the command-line frontend for the
//! chaodna image cipher. The algorithms live in `chaodna-core`.

pub mod cli;
pub mod pgm;
pub mod render;
pub mod report;

pub use cli::run;
