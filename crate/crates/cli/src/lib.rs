//! Command-line front end for `cyclepack`: file formats, domain
//! enumeration and the sweep harness used for cross-validation.

pub mod commands;
pub mod enumerate;
pub mod formats;
pub mod sweep;
