//! Command-line front end for `qharmonic`: an expression parser for
//! algebra elements, seeded random sampling, the verification suites and
//! the command dispatcher behind the `qharm` binary.

pub mod commands;
pub mod expr;
pub mod random;
pub mod suites;
