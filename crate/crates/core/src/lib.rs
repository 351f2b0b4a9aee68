//! Exact combinatorics for trisection diagrams and their branched covers.

pub mod algebra;
pub mod braid;
pub mod cover;
pub mod fixtures;
pub mod lattice;
pub mod surface;
pub mod trisect;
