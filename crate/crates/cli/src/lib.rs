//! Library half of the `arithmon` command: expression parsing and the
//! command implementations, kept separate from `main` so they can be tested
//! in process.

pub mod app;
pub mod expr;
