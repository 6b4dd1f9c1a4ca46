//! Tabloid multiplicities of regular semisimple Hessenberg varieties.
//!
//! The graded cohomology of `Hess(X, h)` decomposes, as an `S_n`-representation,
//! into tabloid modules `M^μ` with multiplicities `c_{μ,i}`. This crate computes
//! those multiplicities from permutation counts, checks the counting identities
//! behind them, and implements the sink-set induction on `h`.

pub mod cache;
pub mod combinat;
pub mod engine;
pub mod error;
pub mod hessenberg;
pub mod par;
pub mod sink;
pub mod solver;
pub mod verify;

pub use combinat::{Partition, Perm, RootPair, SimpleRootSet};
pub use engine::Engine;
pub use error::{Error, Result};
pub use hessenberg::{HessFunction, SinkSet};
pub use par::Exec;
pub use solver::{AMatrix, MultTable};
pub use verify::{Check, VerificationReport};
