//! Command-line front end: argument handling, reports and figures.

pub mod app;
pub mod figures;
pub mod report;
pub mod svg;
