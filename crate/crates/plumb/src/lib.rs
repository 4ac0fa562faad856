//! File formats, cycle expressions and command implementations behind the
//! `plumb` binary.

pub mod commands;
pub mod expr;
pub mod format;
pub mod report;
