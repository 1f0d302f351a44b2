//! Integer intersection theory: rewrite rings, Chern class calculus,
//! and the Betti numbers of the moduli space and its components.

mod betti;
mod chern;
mod m1;
mod ring;

use thiserror::Error;

pub use betti::{betti_from_ring, blowup_betti, mayer_vietoris_betti, pbundle_betti, BettiTable};
pub use chern::{chern_inverse, chern_sym3_rank3, ChernClass};
pub use m1::{
    chern_h, chern_h_dual, flag_ring, m1_chow_computation, m1_chow_ideal, p3_ring, ph_ring, projective_bundle_ring,
    space_betti, M1Computation, Space, N_BETTI, PRINTED_F,
};
pub use ring::{Elem, RewriteRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("invalid relation {0}")]
    BadRelation(String),
    #[error("ring has a free generator, so its monomial basis is infinite")]
    InfiniteBasis,
    #[error("basis monomial of degree {degree} exceeds dimension {dim}")]
    DegreeExceedsDimension { degree: usize, dim: usize },
    #[error("negative rank {value} at index {index}")]
    NegativeRank { index: usize, value: i64 },
    #[error("total Chern class {0} does not start with 1")]
    NotUnit(String),
    #[error("symmetric reduction failed: {0}")]
    SymmetricReduction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("computed relation differs from the displayed one\n  computed: {computed}\n  printed:  {printed}\n  difference: {diff}")]
    RelationMismatch { computed: String, printed: String, diff: String },
}
