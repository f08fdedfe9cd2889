//! Exact integer and rational linear algebra: Smith normal form, homology
//! of chain complexes, induced maps and rational canonical forms.

mod homology;
mod matrix;
mod poly;
pub mod rational;
mod ring;
mod smith;

pub use homology::{
    homology, induced_map_on_homology, try_homology, HomologyBasis, HomologyGroup, InducedMap,
};
pub use matrix::{IntMatrix, Matrix, QMatrix};
pub use poly::Poly;
pub use rational::rational_canonical_form;
pub use ring::{EuclideanRing, Ring};
pub use smith::{invariant_factors, smith_normal_form, solve, Smith};
