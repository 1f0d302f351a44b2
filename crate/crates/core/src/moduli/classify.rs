use num_traits::{One, Zero};
use serde::Serialize;

use super::pair::{lambda_of, zcol_of};
use super::{GroupElement, ModuliError, PairBA};
use crate::complexes::GradedMatrix;
use crate::polyring::{
    divide_by_linear, linear_matrix, primitive_integer_vector, to_rational_vec, wedge_rank, Poly, QMatrix, Rational,
};

/// Stability of the `A`-matrix: `λ ≠ 0` or `z1 ∧ z2 ∧ z3 ≠ 0`.
pub fn is_pair_stable(a: &GradedMatrix) -> bool {
    if a.rows() != 4 || a.cols() != 2 {
        return false;
    }
    !lambda_of(a).is_zero() || wedge_rank(&zcol_of(a)) == Ok(3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Stratum {
    NonPlanar,
    PlanarNonSingular,
    PlanarSingular,
}

impl Stratum {
    pub const ALL: [Stratum; 3] = [Stratum::NonPlanar, Stratum::PlanarNonSingular, Stratum::PlanarSingular];

    pub fn is_planar(&self) -> bool {
        *self != Stratum::NonPlanar
    }

    pub fn name(&self) -> &'static str {
        match self {
            Stratum::NonPlanar => "non-planar",
            Stratum::PlanarNonSingular => "planar, non-singular",
            Stratum::PlanarSingular => "planar, singular",
        }
    }
}

/// Data of a planar pair read off its normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarData {
    pub w: Poly,
    pub l1: Poly,
    pub l2: Poly,
    pub q1: Poly,
    pub q2: Poly,
    /// The point `w = l1 = l2 = 0`, primitive integral coordinates.
    pub point: [Rational; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SheafClass {
    NonPlanar,
    PlanarNonSingular(PlanarData),
    PlanarSingular(PlanarData),
}

impl SheafClass {
    pub fn stratum(&self) -> Stratum {
        match self {
            SheafClass::NonPlanar => Stratum::NonPlanar,
            SheafClass::PlanarNonSingular(_) => Stratum::PlanarNonSingular,
            SheafClass::PlanarSingular(_) => Stratum::PlanarSingular,
        }
    }

    pub fn planar_data(&self) -> Option<&PlanarData> {
        match self {
            SheafClass::NonPlanar => None,
            SheafClass::PlanarNonSingular(d) | SheafClass::PlanarSingular(d) => Some(d),
        }
    }
}

pub fn classify(pair: &PairBA) -> SheafClass {
    if !pair.lambda().is_zero() {
        return SheafClass::NonPlanar;
    }
    let (nf, _) = normal_form(pair).expect("stable exact pairs reduce to a normal form");
    let data = planar_data(&nf);
    let zero = |q: &Poly| q.eval_at(&data.point).is_zero();
    if zero(&data.q1) && zero(&data.q2) {
        SheafClass::PlanarSingular(data)
    } else {
        SheafClass::PlanarNonSingular(data)
    }
}

pub fn is_singular_planar(pair: &PairBA) -> Result<bool, ModuliError> {
    match classify(pair) {
        SheafClass::NonPlanar => Err(ModuliError::NotPlanar),
        c => Ok(c.stratum() == Stratum::PlanarSingular),
    }
}

fn planar_data(nf: &PairBA) -> PlanarData {
    let a = nf.a();
    let w = a.entry(0, 0).clone();
    let (l1, l2) = (a.entry(2, 1).clone(), a.entry(3, 1).clone());
    let m = linear_matrix(&[&w, &l1, &l2]).expect("linear forms");
    let kernel = m.kernel();
    debug_assert_eq!(kernel.len(), 1);
    let p = to_rational_vec(&primitive_integer_vector(&to_rational_vec(&kernel[0])));
    PlanarData {
        w,
        l1,
        l2,
        q1: a.entry(2, 0).clone(),
        q2: a.entry(3, 0).clone(),
        point: std::array::from_fn(|i| p[i].clone()),
    }
}

/// Reduce a pair to one of the two normal forms, returning the normal
/// pair and an element `g` with `g·pair = pair'`.
pub fn normal_form(pair: &PairBA) -> Result<(PairBA, GroupElement), ModuliError> {
    let g = if pair.lambda().is_zero() { planar_reduction(pair)? } else { non_planar_reduction(pair) };
    let (b, a) = g.act(pair.b(), pair.a())?;
    let nf = PairBA::new(b, a)?;
    let ok = if pair.lambda().is_zero() { nf.is_planar_normal_form() } else { nf.is_non_planar_normal_form() };
    if !ok {
        return Err(ModuliError::Reduction("result is not in normal form".into()));
    }
    Ok((nf, g))
}

fn non_planar_reduction(pair: &PairBA) -> GroupElement {
    let lambda = pair.lambda();
    let inv = lambda.recip();
    let z = pair.zcol();
    GroupElement {
        u: std::array::from_fn(|i| -z[i].scale(&inv)),
        gamma: lambda,
        shear: pair.z().clone(),
        ..GroupElement::identity()
    }
}

fn planar_reduction(pair: &PairBA) -> Result<GroupElement, ModuliError> {
    let fail = |m: &str| ModuliError::Reduction(m.to_string());
    let z = pair.zcol();
    let w = pair.z().clone();
    let zm = linear_matrix(&[&z[0], &z[1], &z[2]])?;
    let wc = w.linear_coeffs().ok_or_else(|| fail("A(0,0) is not linear"))?;
    let c = zm.transpose().solve(&wc).ok_or_else(|| fail("A(0,0) is not in the span of the z-column"))?;
    if c.iter().all(Zero::is_zero) {
        return Err(fail("A(0,0) vanishes"));
    }
    // Rows (c, e_a, e_b) with (w, z_a, z_b) independent.
    let k = (0..3).find(|&k| !c[k].is_zero()).expect("nonzero");
    let rest: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let mut g = QMatrix::zeros(3, 3);
    for j in 0..3 {
        g.set(0, j, c[j].clone());
    }
    g.set(1, rest[0], Rational::one());
    g.set(2, rest[1], Rational::one());
    let step1 = GroupElement { g, ..GroupElement::identity() };

    let (b1, a1) = step1.act(pair.b(), pair.a())?;
    let r = divide_by_linear(a1.entry(1, 0), &w).ok_or_else(|| fail("q-entry not divisible by w"))?;
    let step2 = GroupElement { u: [-r, Poly::zero(), Poly::zero()], ..GroupElement::identity() };
    let (b2, _) = step2.act(&b1, &a1)?;

    let (l1, l2) = (&z[rest[0]], &z[rest[1]]);
    let target = [[-l1, w.clone(), Poly::zero()], [-l2, Poly::zero(), w.clone()]];
    let block: [[Poly; 3]; 2] = std::array::from_fn(|r| std::array::from_fn(|c| b2.entry(r, c + 1).clone()));
    // Find h with block = h · target, then g1 = h⁻¹.
    let coeffs = |row: &[Poly; 3]| -> Vec<Rational> {
        row.iter().flat_map(|p| p.linear_coeffs().expect("linear").to_vec()).collect()
    };
    let basis = QMatrix::from_cols(12, &[coeffs(&target[0]), coeffs(&target[1])]);
    let mut h = QMatrix::zeros(2, 2);
    for (r, row) in block.iter().enumerate() {
        let x = basis.solve(&coeffs(row)).ok_or_else(|| fail("linear block of B is not a Koszul block"))?;
        h.set(r, 0, x[0].clone());
        h.set(r, 1, x[1].clone());
    }
    let g1 = h.inverse().ok_or_else(|| fail("degenerate linear block of B"))?;
    let step3 = GroupElement { g1, ..GroupElement::identity() };
    Ok(step3.after(&step2.after(&step1)))
}

/// The common scalar `c` with `(q1, q2, q3) = c·(M23, −M13, M12)` for a
/// non-planar normal form, where `Mij` are the minors of the linear block.
pub fn minor_scalar(pair: &PairBA) -> Option<Rational> {
    let n = pair.linear_block();
    let minor = |i: usize, j: usize| &n[0][i] * &n[1][j] - &n[1][i] * &n[0][j];
    let m = [minor(1, 2), -minor(0, 2), minor(0, 1)];
    let q = pair.qcol();
    let (idx, lead) = m.iter().enumerate().find(|(_, p)| !p.is_zero())?;
    let (mono, mc) = lead.leading_term()?;
    let c = q[idx].coeff(mono) / mc;
    (0..3).all(|i| q[i] == m[i].scale(&c)).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::hilbert_polynomial;
    use crate::moduli::sample::{random_group_element, random_normal_pair};
    use crate::moduli::Fixture;
    use crate::polyring::{parse_poly, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn stability_examples() {
        assert!(is_pair_stable(Fixture::TwistedCubic.load().a()));
        assert!(is_pair_stable(Fixture::PlanarSmooth.load().a()));
        let a = GradedMatrix::parse_strs(
            &crate::complexes::L1_TWISTS,
            &crate::complexes::L0_TWISTS,
            &[&["x3", "0"], &["x0^2", "x0"], &["x1^2", "x1"], &["x2^2", "x0 + x1"]],
        )
        .unwrap();
        assert!(!is_pair_stable(&a));
    }

    #[test]
    fn fixture_classes() {
        assert_eq!(classify(&Fixture::TwistedCubic.load()), SheafClass::NonPlanar);
        assert_eq!(classify(&Fixture::PlanarSmooth.load()).stratum(), Stratum::PlanarNonSingular);
        let pn = classify(&Fixture::PlanarNodal.load());
        assert_eq!(pn.stratum(), Stratum::PlanarSingular);
        assert_eq!(pn.planar_data().unwrap().point, [rat(1), rat(0), rat(0), rat(0)]);
        assert_eq!(is_singular_planar(&Fixture::PlanarNodal.load()), Ok(true));
        assert_eq!(is_singular_planar(&Fixture::PlanarSmooth.load()), Ok(false));
        assert_eq!(is_singular_planar(&Fixture::TwistedCubic.load()), Err(ModuliError::NotPlanar));
        let modified = PairBA::planar(&p("x3"), &p("x1"), &p("x2"), &p("x0*x1"), &p("x1*x2")).unwrap();
        assert_eq!(is_singular_planar(&modified), Ok(true));
    }

    #[test]
    fn normal_forms_are_fixed() {
        for f in Fixture::ALL {
            let pair = f.load();
            let (nf, g) = normal_form(&pair).unwrap();
            assert_eq!(nf, pair, "{}", f.name());
            assert!(g.is_identity(), "{}", f.name());
        }
    }

    #[test]
    fn twisted_cubic_minor_signs() {
        assert_eq!(minor_scalar(&Fixture::TwistedCubic.load()), Some(rat(1)));
    }

    #[test]
    fn orbit_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for stratum in Stratum::ALL {
            for _ in 0..6 {
                let base = random_normal_pair(&mut rng, stratum);
                let g = random_group_element(&mut rng);
                let moved = g.act_on(&base).unwrap();
                let (nf, h) = normal_form(&moved).unwrap();
                assert_eq!(h.act_on(&moved).unwrap(), nf);
                assert_eq!(classify(&nf).stratum(), stratum);
                assert_eq!(classify(&moved).stratum(), stratum);
                let (nf2, h2) = normal_form(&nf).unwrap();
                assert_eq!(nf2, nf);
                assert!(h2.is_identity());
                assert_eq!(hilbert_polynomial(moved.a()).unwrap().to_string(), "3m+1");
                if stratum == Stratum::NonPlanar {
                    assert!(minor_scalar(&nf).is_some());
                }
            }
        }
    }
}
