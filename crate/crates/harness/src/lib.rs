//! Verification harness: group specifications, the shipped corpus, the
//! check registry and JSON reports.

pub mod checks;
pub mod compute;
pub mod corpus;
pub mod report;
pub mod search;
pub mod spec;
