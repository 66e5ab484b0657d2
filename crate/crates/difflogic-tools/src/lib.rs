//! Text formats, random corpora, the comparison harness and the command-line
//! front end for the `difflogic` solvers.

pub mod algo;
pub mod bench;
pub mod cli;
pub mod random;
pub mod text;
