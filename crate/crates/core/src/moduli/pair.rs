use super::ModuliError;
use crate::complexes::{check_exact_e, GradedMatrix, PairFile, L0_TWISTS, L1_TWISTS, L2_TWISTS};
use crate::polyring::{wedge_rank, Poly, Rational};

/// A stable pair `(B, A)` whose degree-3 section sequence is exact.
///
/// Layout of `A` (rows are `O(-1), O(-2), O(-2), O(-2)`; columns `O, O(-1)`):
///
/// ```text
///     ( z   λ  )
/// A = ( q1  z1 )
///     ( q2  z2 )
///     ( q3  z3 )
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairBA {
    b: GradedMatrix,
    a: GradedMatrix,
}

impl PairBA {
    /// Validate twists, exactness and stability.
    pub fn new(b: GradedMatrix, a: GradedMatrix) -> Result<Self, ModuliError> {
        if !check_exact_e(&b, &a)? {
            return Err(ModuliError::NotExact);
        }
        let pair = PairBA { b, a };
        if !super::is_pair_stable(&pair.a) {
            return Err(ModuliError::Unstable);
        }
        Ok(pair)
    }

    pub fn from_file(file: &PairFile) -> Result<Self, ModuliError> {
        let (b, a) = file.to_matrices()?;
        PairBA::new(b, a)
    }

    pub fn from_json(json: &str) -> Result<Self, ModuliError> {
        let file: PairFile =
            serde_json::from_str(json).map_err(|e| ModuliError::Reduction(format!("invalid pair JSON: {e}")))?;
        PairBA::from_file(&file)
    }

    pub fn to_file(&self) -> PairFile {
        PairFile::from_matrices(&self.b, &self.a)
    }

    /// The planar normal form built from `w, l1, l2, q1, q2`.
    pub fn planar(w: &Poly, l1: &Poly, l2: &Poly, q1: &Poly, q2: &Poly) -> Result<Self, ModuliError> {
        let z = Poly::zero();
        let b = GradedMatrix::new(
            L2_TWISTS[..].into(),
            L1_TWISTS[..].into(),
            vec![vec![-q1, -l1, w.clone(), z.clone()], vec![-q2, -l2, z.clone(), w.clone()]],
        )?;
        let a = GradedMatrix::new(
            L1_TWISTS[..].into(),
            L0_TWISTS[..].into(),
            vec![
                vec![w.clone(), z.clone()],
                vec![z, w.clone()],
                vec![q1.clone(), l1.clone()],
                vec![q2.clone(), l2.clone()],
            ],
        )?;
        PairBA::new(b, a)
    }

    /// The non-planar normal form with linear block `net` and quadrics `q`.
    pub fn non_planar(net: &[[Poly; 3]; 2], q: &[Poly; 3]) -> Result<Self, ModuliError> {
        let z = Poly::zero();
        let b = GradedMatrix::new(
            L2_TWISTS[..].into(),
            L1_TWISTS[..].into(),
            net.iter().map(|row| std::iter::once(z.clone()).chain(row.iter().cloned()).collect()).collect(),
        )?;
        let mut rows = vec![vec![z.clone(), Poly::one()]];
        rows.extend(q.iter().map(|qi| vec![qi.clone(), z.clone()]));
        let a = GradedMatrix::new(L1_TWISTS[..].into(), L0_TWISTS[..].into(), rows)?;
        PairBA::new(b, a)
    }

    pub fn b(&self) -> &GradedMatrix {
        &self.b
    }

    pub fn a(&self) -> &GradedMatrix {
        &self.a
    }

    /// The degree-0 entry `λ` of `A`.
    pub fn lambda(&self) -> Rational {
        lambda_of(&self.a)
    }

    /// The degree-1 entry `z` in the first row of `A`.
    pub fn z(&self) -> &Poly {
        self.a.entry(0, 0)
    }

    /// `(z1, z2, z3)`, the linear entries of the second column of `A`.
    pub fn zcol(&self) -> [Poly; 3] {
        zcol_of(&self.a)
    }

    /// `(q1, q2, q3)`, the quadratic entries of the first column of `A`.
    pub fn qcol(&self) -> [Poly; 3] {
        std::array::from_fn(|i| self.a.entry(i + 1, 0).clone())
    }

    /// The 2×3 block of linear entries of `B`.
    pub fn linear_block(&self) -> [[Poly; 3]; 2] {
        std::array::from_fn(|r| std::array::from_fn(|c| self.b.entry(r, c + 1).clone()))
    }

    pub fn is_planar_normal_form(&self) -> bool {
        let (a, b) = (&self.a, &self.b);
        let w = a.entry(0, 0);
        let (l1, l2) = (a.entry(2, 1), a.entry(3, 1));
        a.entry(0, 1).is_zero()
            && a.entry(1, 0).is_zero()
            && a.entry(1, 1) == w
            && b.entry(0, 0) == &-a.entry(2, 0)
            && b.entry(1, 0) == &-a.entry(3, 0)
            && b.entry(0, 1) == &-l1
            && b.entry(1, 1) == &-l2
            && b.entry(0, 2) == w
            && b.entry(1, 3) == w
            && b.entry(0, 3).is_zero()
            && b.entry(1, 2).is_zero()
            && wedge_rank(&[w.clone(), l1.clone(), l2.clone()]) == Ok(3)
    }

    pub fn is_non_planar_normal_form(&self) -> bool {
        let (a, b) = (&self.a, &self.b);
        a.entry(0, 0).is_zero()
            && a.entry(0, 1) == &Poly::one()
            && (1..4).all(|i| a.entry(i, 1).is_zero())
            && (0..2).all(|r| b.entry(r, 0).is_zero())
    }
}

pub(crate) fn lambda_of(a: &GradedMatrix) -> Rational {
    a.entry(0, 1).coeff(&crate::polyring::Monomial::ONE)
}

pub(crate) fn zcol_of(a: &GradedMatrix) -> [Poly; 3] {
    std::array::from_fn(|i| a.entry(i + 1, 1).clone())
}

/// The three canonical fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fixture {
    /// Twisted cubic, non-planar.
    TwistedCubic,
    /// Planar sheaf, locally free on its support.
    PlanarSmooth,
    /// Planar sheaf on a nodal cubic, singular at `(1:0:0:0)`.
    PlanarNodal,
}

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::TwistedCubic, Fixture::PlanarSmooth, Fixture::PlanarNodal];

    pub fn name(&self) -> &'static str {
        match self {
            Fixture::TwistedCubic => "FIX-TC",
            Fixture::PlanarSmooth => "FIX-PS",
            Fixture::PlanarNodal => "FIX-PN",
        }
    }

    pub fn json(&self) -> &'static str {
        match self {
            Fixture::TwistedCubic => include_str!("../../fixtures/FIX-TC.json"),
            Fixture::PlanarSmooth => include_str!("../../fixtures/FIX-PS.json"),
            Fixture::PlanarNodal => include_str!("../../fixtures/FIX-PN.json"),
        }
    }

    pub fn from_name(name: &str) -> Option<Fixture> {
        Fixture::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(name))
    }

    /// Load and validate the fixture.
    pub fn load(&self) -> PairBA {
        PairBA::from_json(self.json()).expect("shipped fixtures are exact and stable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;
    use num_traits::Zero;

    #[test]
    fn fixtures_load() {
        for f in Fixture::ALL {
            let p = f.load();
            assert_eq!(p.lambda().is_zero(), f != Fixture::TwistedCubic, "{}", f.name());
        }
        assert!(Fixture::TwistedCubic.load().is_non_planar_normal_form());
        assert!(Fixture::PlanarSmooth.load().is_planar_normal_form());
        assert!(Fixture::PlanarNodal.load().is_planar_normal_form());
        assert_eq!(Fixture::from_name("fix-pn"), Some(Fixture::PlanarNodal));
    }

    #[test]
    fn planar_constructor_matches_fixture() {
        let p = |s: &str| parse_poly(s).unwrap();
        let built = PairBA::planar(&p("x3"), &p("x1"), &p("x2"), &p("x0*x2"), &p("x1^2 + x0*x1")).unwrap();
        assert_eq!(built, Fixture::PlanarNodal.load());
    }

    #[test]
    fn unstable_and_inexact_pairs_are_rejected() {
        let p = |s: &str| parse_poly(s).unwrap();
        // q1 = q2 = 0 gives a non-exact sequence.
        let err = PairBA::planar(&p("x3"), &p("x1"), &p("x2"), &Poly::zero(), &Poly::zero());
        assert_eq!(err, Err(ModuliError::NotExact));
        let bad = r#"{"B": [["0","x2","-x1","x0"]], "A": []}"#;
        assert!(PairBA::from_json(bad).is_err());
    }
}
