//! Exact spectral moments of uniform hypergraphs and tools for comparing
//! their Estrada indices.

pub mod canon;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod estrada;
pub mod families;
pub mod hypergraph;
pub mod oracle;
pub mod rational;
pub mod trace;
pub mod verify;

pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use rational::ExactRational;
