//! Finite quandles, their invariants, and conjugation quandles in GL(2, C).

pub mod acceptance;
pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod gl2;
pub mod group;
pub mod oracles;
pub mod quandle;
pub mod words;
mod table_io;

pub use table_io::ParseError;
