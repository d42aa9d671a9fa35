//! Bit-packed linear algebra over GF(2).
//!
//! Everything here is immutable once built and safe to share across threads.
//! Vectors serialize to hex with coordinate 0 as the most significant bit;
//! matrices serialize as one hex string per row.

mod matrix;
mod vector;

pub use matrix::{BitMatrix, Rref};
pub use vector::BitVector;
