//! The one-parameter deformation of a singular planar pair into pairs of
//! structure sheaves of space cubics.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{
    check_exact_e, compose, hilbert_function, ComplexError, GradedMatrix, TwistList, L0_TWISTS, L1_TWISTS, L2_TWISTS,
};
use crate::moduli::{GroupElement, ModuliError, PairBA};
use crate::polyring::{parse_poly, wedge_rank, Poly, PolyError, QMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
    #[error("invalid family data: {0}")]
    Data(String),
    #[error("w, l1, l2 are linearly dependent")]
    DependentForms,
    #[error("transformation matrices are not invertible at t = {0}")]
    NotInvertible(Rational),
    #[error("the {0} square does not commute at t = {1}")]
    NotCommuting(Square, Rational),
}

/// The two squares of the transformation diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Square {
    /// `B_t` against `B̃_t`.
    Left,
    /// `A_t` against `Ã_t`.
    Right,
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Square::Left => "left",
            Square::Right => "right",
        })
    }
}

/// Family data as JSON: `{"w": .., "l1": .., "l2": .., "a1": .., "b1": .., "a2": .., "b2": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub w: String,
    pub l1: String,
    pub l2: String,
    pub a1: String,
    pub b1: String,
    pub a2: String,
    pub b2: String,
}

/// Linear forms `w, l1, l2, a1, b1, a2, b2`; `q_i = a_i·l1 + b_i·l2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyData {
    pub w: Poly,
    pub l1: Poly,
    pub l2: Poly,
    pub a1: Poly,
    pub b1: Poly,
    pub a2: Poly,
    pub b2: Poly,
}

impl FamilyData {
    pub fn q1(&self) -> Poly {
        &(&self.a1 * &self.l1) + &(&self.b1 * &self.l2)
    }

    pub fn q2(&self) -> Poly {
        &(&self.a2 * &self.l1) + &(&self.b2 * &self.l2)
    }

    pub fn from_file(file: &FamilyFile) -> Result<Self, DeformError> {
        let p = |s: &str| parse_poly(s).map_err(|e| DeformError::Data(format!("`{s}`: {e}")));
        Ok(FamilyData {
            w: p(&file.w)?,
            l1: p(&file.l1)?,
            l2: p(&file.l2)?,
            a1: p(&file.a1)?,
            b1: p(&file.b1)?,
            a2: p(&file.a2)?,
            b2: p(&file.b2)?,
        })
    }

    pub fn to_file(&self) -> FamilyFile {
        FamilyFile {
            w: self.w.to_string(),
            l1: self.l1.to_string(),
            l2: self.l2.to_string(),
            a1: self.a1.to_string(),
            b1: self.b1.to_string(),
            a2: self.a2.to_string(),
            b2: self.b2.to_string(),
        }
    }

    /// The family through the nodal fixture.
    pub fn planar_nodal() -> Self {
        let file: FamilyFile =
            serde_json::from_str(include_str!("../fixtures/FIX-PN-family.json")).expect("shipped family file");
        FamilyData::from_file(&file).expect("shipped family file")
    }

    /// `a_i = b_i = 0` with `w, l1, l2 = x3, x1, x2`.
    pub fn zero_data() -> Self {
        FamilyData {
            w: Poly::var(3),
            l1: Poly::var(1),
            l2: Poly::var(2),
            a1: Poly::zero(),
            b1: Poly::zero(),
            a2: Poly::zero(),
            b2: Poly::zero(),
        }
    }
}

/// `B_t = B0 + t·B1`, `A_t = A0 + t·A1` over the parametric ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationFamily {
    pub data: FamilyData,
    pub b0: GradedMatrix,
    pub a0: GradedMatrix,
    pub b1: GradedMatrix,
    pub a1: GradedMatrix,
}

fn tw(t: &[i32]) -> TwistList {
    t.into()
}

fn matrix(source: &[i32], target: &[i32], rows: Vec<Vec<Poly>>) -> Result<GradedMatrix, DeformError> {
    Ok(GradedMatrix::new(tw(source), tw(target), rows)?)
}

pub fn build_family(data: FamilyData) -> Result<DeformationFamily, DeformError> {
    let forms = [&data.w, &data.l1, &data.l2, &data.a1, &data.b1, &data.a2, &data.b2];
    if forms.iter().any(|f| f.linear_coeffs().is_none()) {
        return Err(DeformError::Data("all forms must be linear".into()));
    }
    if wedge_rank(&[data.w.clone(), data.l1.clone(), data.l2.clone()])? != 3 {
        return Err(DeformError::DependentForms);
    }
    let z = Poly::zero;
    let (w, l1, l2) = (&data.w, &data.l1, &data.l2);
    let (q1, q2) = (data.q1(), data.q2());
    let b0 = matrix(&L2_TWISTS, &L1_TWISTS, vec![vec![-&q1, -l1, w.clone(), z()], vec![-&q2, -l2, z(), w.clone()]])?;
    let a0 = matrix(
        &L1_TWISTS,
        &L0_TWISTS,
        vec![vec![w.clone(), z()], vec![z(), w.clone()], vec![q1, l1.clone()], vec![q2, l2.clone()]],
    )?;
    let b1 = matrix(
        &L2_TWISTS,
        &L1_TWISTS,
        vec![vec![z(), z(), data.a1.clone(), data.b1.clone()], vec![z(), z(), data.a2.clone(), data.b2.clone()]],
    )?;
    let a1 = matrix(
        &L1_TWISTS,
        &L0_TWISTS,
        vec![
            vec![&data.a1 + &data.b2, Poly::one()],
            vec![&(&data.b1 * &data.a2) - &(&data.b2 * &data.a1), z()],
            vec![z(), z()],
            vec![z(), z()],
        ],
    )?;
    Ok(DeformationFamily { data, b0, a0, b1, a1 })
}

fn plus_t(m0: &GradedMatrix, m1: &GradedMatrix) -> GradedMatrix {
    let rows = (0..m0.rows())
        .map(|i| (0..m0.cols()).map(|j| m0.entry(i, j) + &(m1.entry(i, j) * &Poly::t())).collect())
        .collect();
    GradedMatrix::new(m0.source().clone(), m0.target().clone(), rows).expect("same shape")
}

impl DeformationFamily {
    pub fn b_t(&self) -> GradedMatrix {
        plus_t(&self.b0, &self.b1)
    }

    pub fn a_t(&self) -> GradedMatrix {
        plus_t(&self.a0, &self.a1)
    }

    /// The printed generators of the ideal of the curve `C_t`.
    pub fn curve_ideal(&self, t0: &Rational) -> [Poly; 3] {
        let a = self.tilde_a(t0);
        std::array::from_fn(|i| a.entry(i + 1, 0).clone())
    }

    /// `B̃_t` at `t0`.
    pub fn tilde_b(&self, t0: &Rational) -> GradedMatrix {
        let d = &self.data;
        let t = Poly::constant(t0.clone());
        let z = Poly::zero;
        matrix(
            &L2_TWISTS,
            &L1_TWISTS,
            vec![
                vec![z(), -&d.l1, &(&t * &d.a1) + &d.w, &t * &d.b1],
                vec![z(), -&d.l2, &t * &d.a2, &(&t * &d.b2) + &d.w],
            ],
        )
        .expect("printed shape")
    }

    /// `Ã_t` at `t0`.
    pub fn tilde_a(&self, t0: &Rational) -> GradedMatrix {
        let d = &self.data;
        let t = Poly::constant(t0.clone());
        let tt = &t * &t;
        let s = &(&d.a1 + &d.b2) * &t;
        let z = Poly::zero;
        let e1 = &(&tt * &(&(&d.b1 * &d.a2) - &(&d.b2 * &d.a1))) - &(&(&s * &d.w) + &(&d.w * &d.w));
        let e = |q: &Poly, l: &Poly| &(&t * q) - &(&(&s * l) + &(l * &d.w));
        matrix(
            &L1_TWISTS,
            &L0_TWISTS,
            vec![vec![z(), Poly::one()], vec![e1, z()], vec![e(&d.q1(), &d.l1), z()], vec![e(&d.q2(), &d.l2), z()]],
        )
        .expect("printed shape")
    }

    /// `T_{2,t}, T_{1,t}, T_{0,t}` at `t0 ≠ 0`, as one group element.
    pub fn transforms(&self, t0: &Rational) -> Result<GroupElement, DeformError> {
        if t0.is_zero() {
            return Err(DeformError::NotInvertible(t0.clone()));
        }
        let d = &self.data;
        let inv = t0.recip();
        let mut g1 = QMatrix::identity(2);
        g1.set(0, 0, inv.clone());
        g1.set(1, 1, inv.clone());
        let mut g = QMatrix::identity(3);
        for i in 0..3 {
            g.set(i, i, t0.clone());
        }
        Ok(GroupElement {
            g1,
            alpha: -t0.clone(),
            g,
            u: [-&d.w, -&d.l1, -&d.l2],
            beta: Rational::one(),
            gamma: -(&inv * &inv),
            shear: -(&(&d.a1 + &d.b2) + &d.w.scale(&inv)),
        })
    }
}

/// Which of `T_i` or `T_i⁻¹` serves as the vertical map at each term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Orientation {
    pub v2_inverse: bool,
    pub v1_inverse: bool,
    pub v0_inverse: bool,
}

impl Orientation {
    pub fn all() -> Vec<Orientation> {
        (0..8).map(|k| Orientation { v2_inverse: k & 4 != 0, v1_inverse: k & 2 != 0, v0_inverse: k & 1 != 0 }).collect()
    }
}

/// Vertical maps `(T2, T1⁻¹, T0)`: `B_t·T1⁻¹ = T2·B̃_t` and `A_t·T0 = T1⁻¹·Ã_t`.
pub const CALIBRATED_ORIENTATION: Orientation = Orientation { v2_inverse: false, v1_inverse: true, v0_inverse: false };

fn squares(fam: &DeformationFamily, t0: &Rational, o: Orientation) -> Result<(bool, bool), DeformError> {
    let g = fam.transforms(t0)?;
    let pick = |inverse: bool, m: GradedMatrix, minv: GradedMatrix| if inverse { minv } else { m };
    let g1inv = GroupElement { g1: g.g1.inverse().expect("invertible"), ..GroupElement::identity() }.g1_matrix();
    let v2 = pick(o.v2_inverse, g.g1_matrix(), g1inv);
    let v1 = pick(o.v1_inverse, g.g2_matrix(), g.g2_inverse());
    let v0 = pick(o.v0_inverse, g.g3_matrix(), g.g3_inverse());
    let (bt, at) = (fam.b_t().specialize_t(t0), fam.a_t().specialize_t(t0));
    let left = compose(&bt, &v1)? == compose(&v2, &fam.tilde_b(t0))?;
    let right = compose(&at, &v0)? == compose(&v1, &fam.tilde_a(t0))?;
    Ok((left, right))
}

/// Orientations for which both squares commute at `t0`.
pub fn calibrate_orientation(fam: &DeformationFamily, t0: &Rational) -> Result<Vec<Orientation>, DeformError> {
    let mut out = Vec::new();
    for o in Orientation::all() {
        if squares(fam, t0, o)? == (true, true) {
            out.push(o);
        }
    }
    Ok(out)
}

pub fn verify_transform_diagram(fam: &DeformationFamily, t0: &Rational) -> Result<bool, DeformError> {
    match squares(fam, t0, CALIBRATED_ORIENTATION)? {
        (true, true) => Ok(true),
        (false, _) => Err(DeformError::NotCommuting(Square::Left, t0.clone())),
        (_, false) => Err(DeformError::NotCommuting(Square::Right, t0.clone())),
    }
}

/// Sample points at which exactness of the specialized complex is checked.
pub fn family_sample_points() -> Vec<Rational> {
    [0, 1, -1, 2, 7].into_iter().map(|n| Rational::from_integer(n.into())).collect()
}

/// Outcome of [`verify_family_complex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyComplexCheck {
    /// First nonzero entry of `B_t·A_t`, if any.
    pub first_nonzero: Option<(usize, usize, Poly)>,
    /// `check_exact_E` at each sample point.
    pub exact_at: Vec<(Rational, bool)>,
}

impl FamilyComplexCheck {
    pub fn passed(&self) -> bool {
        self.first_nonzero.is_none() && self.exact_at.iter().all(|(_, ok)| *ok)
    }
}

pub fn verify_family_complex(fam: &DeformationFamily) -> Result<FamilyComplexCheck, DeformError> {
    let (bt, at) = (fam.b_t(), fam.a_t());
    let prod = compose(&bt, &at)?;
    let first_nonzero = prod.first_nonzero().map(|(i, j, p)| (i, j, p.clone()));
    let mut exact_at = Vec::new();
    for t0 in family_sample_points() {
        let ok = check_exact_e(&bt.specialize_t(&t0), &at.specialize_t(&t0))?;
        exact_at.push((t0, ok));
    }
    Ok(FamilyComplexCheck { first_nonzero, exact_at })
}

pub fn fiber_at(fam: &DeformationFamily, t0: &Rational) -> Result<PairBA, DeformError> {
    Ok(PairBA::new(fam.b_t().specialize_t(t0), fam.a_t().specialize_t(t0))?)
}

/// `hilbert_function(A_t0, m) = 3m + 1` for `m = 0..=5` at every sample.
pub fn family_hilbert_check(fam: &DeformationFamily, samples: &[Rational]) -> Result<bool, DeformError> {
    let at = fam.a_t();
    for t0 in samples {
        let a = at.specialize_t(t0);
        for m in 0..=5 {
            if hilbert_function(&a, m)? != 3 * m + 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
