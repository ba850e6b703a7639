//! File formats, command line and benchmark harness around
//! [`isodescent_core`].

pub mod bench;
pub mod cli;
pub mod error;
pub mod format;
pub mod run;

pub use isodescent_core as core;
