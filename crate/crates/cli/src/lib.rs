//! Command-line front end for the right-LCM toolkit.
//!
//! The binary reads a monoid spec file, runs one of four commands
//! against a ball of configurable radius, and emits either a human
//! transcript or a canonical JSON report. All the mathematics lives in
//! `rlcm-core`; this crate only parses files, wires flags to library
//! calls, and serializes the outcomes.

pub mod commands;
pub mod repfile;
pub mod report;
pub mod specfile;
