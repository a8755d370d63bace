//! Iterative derivations on the function field of the curve `z^2 + z = x^3`
//! over `F_2`, extended to `L = F(t)(x, z)` with `theta(t) = t + T`.
//!
//! The crate builds higher derivations whose coefficient tables satisfy the
//! block recursion for iterativity and compatibility with the group law, and
//! verifies them exactly at a finite truncation order.

pub mod algebra;
pub mod cli;
pub mod construct;
pub mod ec;
pub mod error;
pub mod function_field;
pub mod hd;
pub mod io;
pub mod series;
pub mod torsion;
pub mod verify;

pub use error::{Error, Result};
pub use function_field::FieldElem;
pub use series::Tps;
