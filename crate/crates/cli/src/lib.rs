//! File format, DOT output and reports for the `taxo` binary.

pub mod dot;
pub mod format;
pub mod report;

pub use dot::to_dot;
pub use format::{normalize, parse, print, ParseError, PosetFile};
pub use report::Report;
