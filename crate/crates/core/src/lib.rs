//! Sampling, exact edge probabilities, connectivity analysis and Monte Carlo
//! validation for uniform and binomial random s-intersection graphs.

pub mod connectivity;
pub mod error;
pub mod experiment;
pub mod format;
pub mod graph;
pub mod model;
pub mod probability;
pub mod sampler;
pub mod scaling;
pub mod seed;

pub use error::{Error, Result};
pub use model::{BinomialParams, ModelKind, PropertyTarget, UniformParams};
