//! JSON formats and the command runner for `vvmf-core`.
//!
//! Reports are deterministic: object keys are sorted and the only run
//! identifier is a SHA-256 digest of the command, its flags and the input.

pub mod codec;
pub mod run;

pub use run::{run, Command, Job};
