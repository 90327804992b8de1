//! Exact GF(2) linear algebra and Lights Out solving.
//!
//! For every symmetric matrix over GF(2), finite or countably infinite with
//! finitely many ones per row, the diagonal vector lies in the range. This
//! crate computes such solutions:
//!
//! * [`gf2`]: packed vectors and matrices, elimination, nullspaces.
//! * [`diagrange`]: `x` with `A x = diag(A)` for finite symmetric `A`.
//! * [`rowfinite`]: infinite row-finite symmetric matrices, cut points and
//!   block decompositions, periodic specifications.
//! * [`transfer`]: solution prefixes of infinite systems, horizon-bounded or
//!   exact through a finite transfer automaton.
//! * [`lightsout`]: the game on finite and infinite graphs.

pub mod diagrange;
mod error;
pub mod gf2;
pub mod lightsout;
pub mod rowfinite;
pub mod transfer;

pub use error::{Error, Result};
pub use gf2::{AffineSolutionSet, Gf2Matrix, Gf2Vector};
