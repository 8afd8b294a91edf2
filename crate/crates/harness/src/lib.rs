//! Experiment harness: config parsing, deterministic per-trial streams, a
//! worker pool that cannot perturb results, and bit-stable CSV/JSON reports.
//!
//! The library side exists so integration tests can drive the typed
//! experiment pipeline directly; the `polyperm` binary is a thin CLI over
//! [`experiments`].

pub mod config;
pub mod experiments;
pub mod report;
pub mod runner;
