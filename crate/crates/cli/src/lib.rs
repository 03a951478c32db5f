//! Library surface of the corpus runner: document loading, command
//! implementations and report assembly. The binary in `main.rs` is a thin
//! argument-parsing shell over this.

pub mod commands;
pub mod corpus;
pub mod report;
