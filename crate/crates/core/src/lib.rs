//! Cactus-graph covering paths and CNOT-minimal synthesis of quantum hashing
//! and QFT circuits on cactus-shaped devices.

pub mod covering;
pub mod error;
pub mod graph;
pub mod hash;
pub mod qft;
pub mod circuit;
pub mod cli;
pub mod sim;

pub use error::{Error, Result};
