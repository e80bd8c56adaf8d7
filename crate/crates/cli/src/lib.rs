//! Construction language, reports, cache and command dispatch for the
//! `zerodiv` binary.

pub mod cache;
pub mod commands;
pub mod dsl;
pub mod report;
