//! Mapping-torus Conley index of discrete dynamical systems.
//!
//! The crate builds combinatorial index pairs from rigorous interval
//! enclosures of a map, forms chain-level mapping tori, computes their
//! integral homology and compares fundamental-group data through
//! low-index subgroup fingerprints.

pub mod chain;
pub mod cubical;
pub mod dynamics;
pub mod fpgroup;
pub mod homalg;
pub mod interval;
pub mod shifteq;
pub mod torus;
