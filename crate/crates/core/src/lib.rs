//! Exact probabilistic membership for context-free and counter-recognizable
//! languages over probabilistic words, through weighted CYK and through
//! deterministic decomposable circuits.

pub mod circuit;
pub mod compile;
pub mod counterauto;
pub mod error;
pub mod grammar;
pub mod oracle;
pub mod probword;
pub mod reductions;
pub mod wcyk;

pub use error::{Error, Result};
