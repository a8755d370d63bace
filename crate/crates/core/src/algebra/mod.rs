//! Exact arithmetic: binary fields, polynomials, fraction fields, the tower
//! `F(t)(x)`, binomial parity, the Taylor shift and the text grammar.

pub mod bivariate;
pub mod field;
pub mod gf;
pub mod lucas;
pub mod poly;
pub mod ratfunc;
pub mod shift;
pub mod text;

pub use field::Field;
pub use gf::{BinaryField, Gf2, Gf2m, Gf4};
pub use lucas::{binom_mod2, lucas_binom};
pub use poly::Poly;
pub use ratfunc::{RatFunc, RatT, Tower};
pub use shift::taylor_shift;
