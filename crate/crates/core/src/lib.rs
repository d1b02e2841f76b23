//! Exact homology of finite digraphs with coefficients built from an algebra
//! and a bimodule, together with independent reference computations.

pub mod algebra;
pub mod coeff;
pub mod complex;
pub mod digraph;
pub mod elim;
pub mod error;
pub mod functor;
pub mod int;
pub mod matrix;
pub mod oracles;
pub mod pipeline;
pub mod poset;
pub mod report;
pub mod ring;
pub mod snf;

pub use error::{Error, Result};
