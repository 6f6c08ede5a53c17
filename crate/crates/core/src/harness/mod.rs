pub mod catalog;
pub mod cli;
pub mod report;
pub mod suites;
