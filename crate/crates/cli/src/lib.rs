//! Input language, reports and verification suites for the `logls` tool.

pub mod commands;
pub mod corpus;
pub mod input;
pub mod report;
pub mod suites;
