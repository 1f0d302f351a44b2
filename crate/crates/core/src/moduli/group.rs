use num_traits::{One, Zero};

use super::{ModuliError, PairBA};
use crate::complexes::{compose, GradedMatrix, TwistList, L0_TWISTS, L1_TWISTS, L2_TWISTS};
use crate::polyring::{Poly, QMatrix, Rational};

/// An element `(g1, g2, g3)` of the automorphism group of the three terms
/// of the resolution.
///
/// ```text
///            ( α  0 0 0 )
/// g2 =       ( u1       )     g3 = ( β  0 )
///            ( u2   g   )          ( u  γ )
///            ( u3       )
/// ```
///
/// acting by `(B, A) ↦ (g1·B·g2⁻¹, g2·A·g3⁻¹)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub g1: QMatrix,
    pub alpha: Rational,
    pub g: QMatrix,
    pub u: [Poly; 3],
    pub beta: Rational,
    pub gamma: Rational,
    pub shear: Poly,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement {
            g1: QMatrix::identity(2),
            alpha: Rational::one(),
            g: QMatrix::identity(3),
            u: [Poly::zero(), Poly::zero(), Poly::zero()],
            beta: Rational::one(),
            gamma: Rational::one(),
            shear: Poly::zero(),
        }
    }

    pub fn validate(&self) -> Result<(), ModuliError> {
        let bad = |m: &str| Err(ModuliError::InvalidGroupElement(m.to_string()));
        if self.g1.rows() != 2 || self.g1.cols() != 2 || self.g1.determinant().is_zero() {
            return bad("g1 must be an invertible 2x2 matrix");
        }
        if self.g.rows() != 3 || self.g.cols() != 3 || self.g.determinant().is_zero() {
            return bad("g must be an invertible 3x3 matrix");
        }
        if self.alpha.is_zero() || self.beta.is_zero() || self.gamma.is_zero() {
            return bad("alpha, beta, gamma must be nonzero");
        }
        if self.u.iter().chain(std::iter::once(&self.shear)).any(|p| p.linear_coeffs().is_none()) {
            return bad("shear entries must be linear forms");
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElement::identity()
    }

    pub fn g1_matrix(&self) -> GradedMatrix {
        constant_matrix(&L2_TWISTS, &self.g1)
    }

    pub fn g2_matrix(&self) -> GradedMatrix {
        let mut rows = vec![vec![Poly::constant(self.alpha.clone()), Poly::zero(), Poly::zero(), Poly::zero()]];
        for i in 0..3 {
            let mut row = vec![self.u[i].clone()];
            row.extend((0..3).map(|j| Poly::constant(self.g.get(i, j).clone())));
            rows.push(row);
        }
        GradedMatrix::new(tw(&L1_TWISTS), tw(&L1_TWISTS), rows).expect("well-formed g2")
    }

    /// `g2⁻¹ = [[1/α, 0], [-g⁻¹·u/α, g⁻¹]]`.
    pub fn g2_inverse(&self) -> GradedMatrix {
        let ginv = self.g.inverse().expect("g is invertible");
        let inv_alpha = self.alpha.recip();
        let mut rows = vec![vec![Poly::constant(inv_alpha.clone()), Poly::zero(), Poly::zero(), Poly::zero()]];
        for i in 0..3 {
            let mut col0 = Poly::zero();
            for k in 0..3 {
                col0 -= &self.u[k].scale(&(ginv.get(i, k) * &inv_alpha));
            }
            let mut row = vec![col0];
            row.extend((0..3).map(|j| Poly::constant(ginv.get(i, j).clone())));
            rows.push(row);
        }
        GradedMatrix::new(tw(&L1_TWISTS), tw(&L1_TWISTS), rows).expect("well-formed g2 inverse")
    }

    pub fn g3_matrix(&self) -> GradedMatrix {
        let rows = vec![
            vec![Poly::constant(self.beta.clone()), Poly::zero()],
            vec![self.shear.clone(), Poly::constant(self.gamma.clone())],
        ];
        GradedMatrix::new(tw(&L0_TWISTS), tw(&L0_TWISTS), rows).expect("well-formed g3")
    }

    /// `g3⁻¹ = [[1/β, 0], [-u/(βγ), 1/γ]]`.
    pub fn g3_inverse(&self) -> GradedMatrix {
        let rows = vec![
            vec![Poly::constant(self.beta.recip()), Poly::zero()],
            vec![-self.shear.scale(&(&self.beta * &self.gamma).recip()), Poly::constant(self.gamma.recip())],
        ];
        GradedMatrix::new(tw(&L0_TWISTS), tw(&L0_TWISTS), rows).expect("well-formed g3 inverse")
    }

    /// `(g1·B·g2⁻¹, g2·A·g3⁻¹)` on raw matrices.
    pub fn act(&self, b: &GradedMatrix, a: &GradedMatrix) -> Result<(GradedMatrix, GradedMatrix), ModuliError> {
        let b2 = compose(&compose(&self.g1_matrix(), b)?, &self.g2_inverse())?;
        let a2 = compose(&compose(&self.g2_matrix(), a)?, &self.g3_inverse())?;
        Ok((b2, a2))
    }

    pub fn act_on(&self, pair: &PairBA) -> Result<PairBA, ModuliError> {
        let (b, a) = self.act(pair.b(), pair.a())?;
        PairBA::new(b, a)
    }

    /// The element acting as `self` after `inner`.
    pub fn after(&self, inner: &GroupElement) -> GroupElement {
        // g2: [[α',0],[u',g']]·[[α,0],[u,g]] = [[α'α,0],[u'α + g'u, g'g]]
        let u = std::array::from_fn(|i| {
            let mut acc = self.u[i].scale(&inner.alpha);
            for k in 0..3 {
                acc += inner.u[k].scale(self.g.get(i, k));
            }
            acc
        });
        // g3: [[β',0],[u',γ']]·[[β,0],[u,γ]] = [[β'β,0],[u'β + γ'u, γ'γ]]
        let shear = self.shear.scale(&inner.beta) + inner.shear.scale(&self.gamma);
        GroupElement {
            g1: self.g1.mul(&inner.g1),
            alpha: &self.alpha * &inner.alpha,
            g: self.g.mul(&inner.g),
            u,
            beta: &self.beta * &inner.beta,
            gamma: &self.gamma * &inner.gamma,
            shear,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let ginv = self.g.inverse().expect("g is invertible");
        let inv_alpha = self.alpha.recip();
        let u = std::array::from_fn(|i| {
            let mut acc = Poly::zero();
            for k in 0..3 {
                acc -= &self.u[k].scale(&(ginv.get(i, k) * &inv_alpha));
            }
            acc
        });
        GroupElement {
            g1: self.g1.inverse().expect("g1 is invertible"),
            alpha: inv_alpha,
            g: ginv,
            u,
            beta: self.beta.recip(),
            gamma: self.gamma.recip(),
            shear: -self.shear.scale(&(&self.beta * &self.gamma).recip()),
        }
    }
}

fn tw(t: &[i32]) -> TwistList {
    t.into()
}

fn constant_matrix(twists: &[i32], m: &QMatrix) -> GradedMatrix {
    let rows = (0..m.rows()).map(|i| (0..m.cols()).map(|j| Poly::constant(m.get(i, j).clone())).collect()).collect();
    GradedMatrix::new(tw(twists), tw(twists), rows).expect("constant matrix between equal twists")
}
