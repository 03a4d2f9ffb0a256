//! Exact computations for flat affine geometry: left-symmetric algebras,
//! the associative product that a flat connection induces on infinitesimal
//! affine transformations, and associative envelopes.
//!
//! Everything is computed over ℚ or over the field of rational functions
//! on a coordinate chart; there is no floating point anywhere.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod envelope;
pub mod geometry;
pub mod linalg;
pub mod symcore;
