//! Command-line companion to the `phyla` library: JSON file formats,
//! deterministic run reports, verb dispatch, and the acceptance suites.
//!
//! The binary (`phyla`) is a thin clap wrapper over [`run::run`]; everything
//! it can do is reachable from here, which is how the integration tests
//! drive the same code paths without spawning processes.

pub mod formats;
pub mod report;
pub mod run;
pub mod suite;
