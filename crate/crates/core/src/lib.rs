//! Exact workbench for two lexicographic ordered abelian groups built from
//! squares and circles, their embeddings, congruence formulas over them,
//! and Hahn series with exponents in them.

pub mod corpus;
pub mod embedding;
pub mod error;
pub mod exec;
pub mod formula;
pub mod hahn;
pub mod oag;
pub mod report;
pub mod sample;
pub mod suite;

pub use error::{Error, ParseError, Result};
