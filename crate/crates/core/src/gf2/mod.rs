//! Bit-packed exact linear algebra over GF(2).

mod matrix;
mod solve;
mod vector;

pub use matrix::Gf2Matrix;
pub(crate) use matrix::parse_dims;
pub use solve::AffineSolutionSet;
pub use vector::Gf2Vector;
