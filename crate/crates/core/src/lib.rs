pub mod alpha;
pub mod capacity;
pub mod cli;
pub mod error;
pub mod graph;
pub mod poly;
pub mod theta;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{Graph, StableSetWitness};
