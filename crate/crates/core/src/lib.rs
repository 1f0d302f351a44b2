//! Exact computer algebra for the matrix-pair model of the moduli space of
//! stable sheaves with Hilbert polynomial `3m+1` on `P3`.

pub mod chow;
pub mod complexes;
pub mod deform;
pub mod moduli;
pub mod polyring;
pub mod reproduce;
pub mod tangent;

pub use polyring::{parse_poly, Poly, QMatrix, Rational};
