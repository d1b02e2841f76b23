//! Reference computations that share only linear algebra with the path-poset
//! pipeline.

mod cube;
mod hochschild;

pub use cube::{polygon_cube_complex, polygon_hat_homology, MAX_CUBE_POLYGON};
pub use hochschild::{hh_zero, hochschild_complex, hochschild_homology, DEFAULT_MAX_BAR_DIM};
