//! The parameter-space model: stable pairs `(B, A)`, the group action,
//! normal forms, stratum classification, Fitting ideals and the geometry
//! of nets of quadrics.

mod classify;
mod fitting;
mod gamma;
mod group;
mod nets;
mod pair;
pub mod sample;

use thiserror::Error;

use crate::complexes::ComplexError;
use crate::polyring::PolyError;

pub use classify::{
    classify, is_pair_stable, is_singular_planar, minor_scalar, normal_form, PlanarData, SheafClass, Stratum,
};
pub use fitting::{fitting_ideal, ideal_piece_rank, ideals_equal, FittingIdeal};
pub use gamma::gamma_map;
pub use group::GroupElement;
pub use nets::{net_in_n1, net_is_stable, rho_map, tau_forms, tau_map, NetFile, NetQ, TauImage};
pub use pair::{Fixture, PairBA};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the pair does not induce an exact sequence on degree-3 sections")]
    NotExact,
    #[error("the pair is unstable: λ = 0 and z1 ∧ z2 ∧ z3 = 0")]
    Unstable,
    #[error("normal-form reduction failed: {0}")]
    Reduction(String),
    #[error("operation needs a planar pair")]
    NotPlanar,
    #[error("linear forms are dependent")]
    DependentForms,
    #[error("`{0}` involves a variable other than x0, x1, x2")]
    NotThreeVariables(String),
    #[error("the cubic q1*l2 - q2*l1 vanishes identically")]
    ZeroCubic,
    #[error("q{index} = {q} is not contained in (l1, l2)")]
    NotInIdeal { index: usize, q: String },
    #[error("inconclusive over the rationals: {0}")]
    Inconclusive(String),
    #[error("malformed net: {0}")]
    MalformedNet(String),
    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),
}
