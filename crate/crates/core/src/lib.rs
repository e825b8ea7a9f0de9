//! Exact computations with finite-dimensional coalgebras, corings and Hopf
//! actions over the rationals and prime fields.

pub mod algebra;
pub mod cli;
pub mod coring;
pub mod coalgebra;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod hopf;
pub mod io;
pub mod limits;
pub mod matrix;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Mat;
pub use subspace::Subspace;
