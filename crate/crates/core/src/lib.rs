pub mod cli;
pub mod clique;
pub mod codes;
pub mod cuts;
pub mod error;
pub mod flow;
pub mod gen;
pub mod graph;
pub mod iterative;
pub mod netcoding;
pub mod recursive;
pub mod table;
pub mod witness;

pub use error::{Error, Result};
