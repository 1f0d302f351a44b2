//! Linearized computations at a pair: the tangent space of the parameter
//! space, the orbit tangent space, stabilizer dimension, the tangent
//! dimension of the moduli space, and the tangent checks on nets.

mod layout;
mod nets;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::complexes::{compose, ComplexError, GradedMatrix, TwistList, L0_TWISTS, L1_TWISTS, L2_TWISTS};
use crate::moduli::{classify, ModuliError, PairBA, Stratum};
use crate::polyring::{to_rational_vec, QMatrix, Rational};

pub use layout::{AmbientCoords, MatrixLayout};
pub use nets::{net_tangent_check, NetTangentCheck};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangentError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error("net is not of the form ((l1, w, 0), (l2, 0, w)): {0}")]
    MalformedNormalForm(String),
    #[error("w, l1, l2, l3 are not a basis of linear forms")]
    DependentForms,
}

/// An element `(R, S, T)` of the Lie algebra of the group, as graded
/// endomorphisms of the three terms of the resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieTriple {
    pub r: GradedMatrix,
    pub s: GradedMatrix,
    pub t: GradedMatrix,
}

fn tw(t: &[i32]) -> TwistList {
    t.into()
}

impl LieTriple {
    pub fn zero() -> Self {
        LieTriple {
            r: GradedMatrix::zero(tw(&L2_TWISTS), tw(&L2_TWISTS)),
            s: GradedMatrix::zero(tw(&L1_TWISTS), tw(&L1_TWISTS)),
            t: GradedMatrix::zero(tw(&L0_TWISTS), tw(&L0_TWISTS)),
        }
    }

    /// The 32 elementary triples: 4 for `R`, 22 for `S`, 6 for `T`.
    pub fn basis() -> Vec<LieTriple> {
        let mut out = Vec::new();
        for r in MatrixLayout::new(tw(&L2_TWISTS), tw(&L2_TWISTS)).basis_matrices() {
            out.push(LieTriple { r, ..LieTriple::zero() });
        }
        for s in MatrixLayout::new(tw(&L1_TWISTS), tw(&L1_TWISTS)).basis_matrices() {
            out.push(LieTriple { s, ..LieTriple::zero() });
        }
        for t in MatrixLayout::new(tw(&L0_TWISTS), tw(&L0_TWISTS)).basis_matrices() {
            out.push(LieTriple { t, ..LieTriple::zero() });
        }
        out
    }

    /// `(R·B0 − B0·S, S·A0 − A0·T)`.
    pub fn orbit_direction(
        &self,
        b0: &GradedMatrix,
        a0: &GradedMatrix,
    ) -> Result<(GradedMatrix, GradedMatrix), ComplexError> {
        let b1 = compose(&self.r, b0)?.sub(&compose(b0, &self.s)?)?;
        let a1 = compose(&self.s, a0)?.sub(&compose(a0, &self.t)?)?;
        Ok((b1, a1))
    }
}

/// A linear subspace given by its dimension and a primitive integral basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub dim: usize,
    pub basis: Vec<Vec<BigInt>>,
}

impl Subspace {
    pub fn basis_strings(&self) -> Vec<Vec<String>> {
        self.basis.iter().map(|v| v.iter().map(|c| c.to_string()).collect()).collect()
    }
}

/// Matrix of `(B1, A1) ↦ B1·A0 + B0·A1`, ambient coordinates to the
/// coefficients of the 2×2 product (two cubics, two quadrics).
pub fn tangent_equations(pair: &PairBA) -> Result<QMatrix, TangentError> {
    let amb = AmbientCoords::new();
    let out = MatrixLayout::new(tw(&L2_TWISTS), tw(&L0_TWISTS));
    let mut cols = Vec::with_capacity(amb.dim());
    for (b1, a1) in amb.basis_pairs() {
        let prod = compose(&b1, pair.a())?.add(&compose(pair.b(), &a1)?)?;
        cols.push(out.vector(&prod));
    }
    Ok(QMatrix::from_cols(out.dim(), &cols))
}

/// `T_p X`: kernel of the linearized complex condition.
pub fn tangent_space_x(pair: &PairBA) -> Result<Subspace, TangentError> {
    let (rank, basis) = tangent_equations(pair)?.rank_and_kernel();
    Ok(Subspace { dim: AmbientCoords::new().dim() - rank, basis })
}

/// Matrix whose columns are the orbit directions of the 32 Lie basis
/// elements, in ambient coordinates.
pub fn orbit_matrix(pair: &PairBA) -> Result<QMatrix, TangentError> {
    let amb = AmbientCoords::new();
    let cols = LieTriple::basis()
        .iter()
        .map(|x| {
            let (b1, a1) = x.orbit_direction(pair.b(), pair.a())?;
            Ok(amb.vector(&b1, &a1))
        })
        .collect::<Result<Vec<_>, ComplexError>>()?;
    Ok(QMatrix::from_cols(amb.dim(), &cols))
}

/// `T_p F_p`: the image of `Lie(G)` in ambient coordinates.
pub fn orbit_tangent(pair: &PairBA) -> Result<Subspace, TangentError> {
    let m = orbit_matrix(pair)?;
    let pivots = m.pivot_columns();
    let basis = pivots
        .iter()
        .map(|&c| {
            let col: Vec<Rational> = (0..m.rows()).map(|r| m.get(r, c).clone()).collect();
            crate::polyring::primitive_integer_vector(&col)
        })
        .collect();
    Ok(Subspace { dim: pivots.len(), basis })
}

pub fn stabilizer_dim(pair: &PairBA) -> Result<usize, TangentError> {
    let m = orbit_matrix(pair)?;
    Ok(m.cols() - m.rank())
}

pub fn tangent_dim_m(pair: &PairBA) -> Result<usize, TangentError> {
    let dim_tx = AmbientCoords::new().dim() - tangent_equations(pair)?.rank();
    Ok(dim_tx - orbit_matrix(pair)?.rank())
}

/// Whether `(B1, A1)` satisfies `B1·A0 + B0·A1 = 0`.
pub fn is_tangent_vector(pair: &PairBA, b1: &GradedMatrix, a1: &GradedMatrix) -> Result<bool, TangentError> {
    Ok(compose(b1, pair.a())?.add(&compose(pair.b(), a1)?)?.is_zero())
}

/// Whether every vector of `T_p X` has vanishing `λ`-coordinate.
pub fn tangent_space_in_lambda_hyperplane(pair: &PairBA) -> Result<bool, TangentError> {
    let idx = AmbientCoords::new().lambda_index();
    Ok(tangent_space_x(pair)?.basis.iter().all(|v| v[idx] == BigInt::from(0)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    pub stratum: Stratum,
    pub dim_tx: usize,
    pub dim_orbit: usize,
    pub dim_stab: usize,
    pub dim_moduli: usize,
    pub tx_basis: Vec<Vec<String>>,
    pub orbit_basis: Vec<Vec<String>>,
}

impl TangentReport {
    pub fn verdict(&self) -> String {
        format!("moduli tangent dimension = {} (stratum {})", self.dim_moduli, self.stratum.name())
    }
}

pub fn tangent_report(pair: &PairBA) -> Result<TangentReport, TangentError> {
    let tx = tangent_space_x(pair)?;
    let orbit = orbit_tangent(pair)?;
    let dim_stab = stabilizer_dim(pair)?;
    Ok(TangentReport {
        stratum: classify(pair).stratum(),
        dim_tx: tx.dim,
        dim_orbit: orbit.dim,
        dim_stab,
        dim_moduli: tx.dim - orbit.dim,
        tx_basis: tx.basis_strings(),
        orbit_basis: orbit.basis_strings(),
    })
}

/// Whether every orbit direction lies in `T_p X`.
pub fn orbit_in_tangent_space(pair: &PairBA) -> Result<bool, TangentError> {
    let eq = tangent_equations(pair)?;
    let orbit = orbit_tangent(pair)?;
    Ok(orbit
        .basis
        .iter()
        .all(|v| eq.mul_vec(&to_rational_vec(v)).iter().all(|c| *c == Rational::from_integer(0.into()))))
}
