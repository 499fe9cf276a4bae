pub mod basis;
pub mod cli;
pub mod coalgebra;
pub mod comodule;
pub mod complex;
pub mod cyclic;
pub mod error;
pub mod fixture;
pub mod field;
pub mod fixtures;
pub mod invariance;
pub mod linalg;
pub mod resolution;
pub mod slices;

pub use coalgebra::{BasisElement, CoalgebraMorphism, DGCoalgebra, Validation};
pub use complex::{ChainComplex, ChainMap};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::{Matrix, SparseMatrix};
