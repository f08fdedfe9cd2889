//! Free chain complexes over ℤ, chain maps and labelled cell complexes.

mod complex;
mod sparse;

pub use complex::{CellComplex, ChainComplex, ChainError, ChainMap};
pub use sparse::SparseMatrix;
