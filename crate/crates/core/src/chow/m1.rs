use num_bigint::BigInt;
use serde::Serialize;

use super::{
    betti_from_ring, blowup_betti, chern_inverse, chern_sym3_rank3, mayer_vietoris_betti, pbundle_betti, BettiTable,
    ChernClass, ChowError, Elem, RewriteRing,
};

/// The displayed generator `f` of the ideal of `A*(M1)`.
pub const PRINTED_F: &str = "u^9 + 10*s*u^8 - 3*t*u^8 + 55*s^2*u^7 - 30*s*t*u^7 + 9*t^2*u^7 \
    + 220*s^3*u^6 - 165*s^2*t*u^6 + 90*s*t^2*u^6 + 495*s^2*t^2*u^5 - 660*s^3*t*u^5 + 1980*s^3*t^2*u^4";

/// Betti numbers of the space of stable nets of quadrics, a stored input.
pub const N_BETTI: [u64; 13] = [1, 1, 3, 4, 7, 8, 10, 8, 7, 4, 3, 1, 1];

/// `base[v]` modulo `v^r + c1·v^{r−1} + … + c_r`, `r = c.truncation()`.
pub fn projective_bundle_ring(base: &RewriteRing, c: &ChernClass, fiber_var: &str) -> Result<RewriteRing, ChowError> {
    let ring = base.adjoin(fiber_var);
    let n = ring.nvars();
    let k = n - 1;
    let r = c.truncation() as u32;
    let v = Elem::var(n, k);
    let mut rel = Elem::zero(n);
    for i in 0..=r {
        rel = rel.add(&c.c(i as usize).extend(n).mul(&v.pow(r - i)));
    }
    ring.with_relation(k, &rel)
}

/// `Z[s]/(s⁴)`, the Chow ring of `P³`.
pub fn p3_ring() -> RewriteRing {
    RewriteRing::free(&["s"]).with_relation(0, &Elem::var(1, 0).pow(4)).expect("pure power")
}

fn powers_of_s(sign: i64) -> ChernClass {
    let s = Elem::var(1, 0);
    let comps: Vec<Elem> = (1..=3).map(|k| s.pow(k).scale(&BigInt::from(sign.pow(k)))).collect();
    ChernClass::from_components(1, &comps)
}

/// `c(H) = 1 − s + s² − s³`.
pub fn chern_h() -> ChernClass {
    powers_of_s(-1)
}

/// `c(H*) = c(Q) = 1 + s + s² + s³`.
pub fn chern_h_dual() -> ChernClass {
    powers_of_s(1)
}

/// `A*(P(H)) = Z[s, t]/(s⁴, t³ − st² + s²t − s³)`.
pub fn ph_ring() -> RewriteRing {
    projective_bundle_ring(&p3_ring(), &chern_h(), "t").expect("monic relation")
}

/// `A*(N1) = A*(Flag(1, 3)) = Z[s, t]/(s⁴, t³ + st² + s²t + s³)`.
pub fn flag_ring() -> RewriteRing {
    projective_bundle_ring(&p3_ring(), &chern_h_dual(), "t").expect("monic relation")
}

/// The chain of computations leading to `A*(M1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M1Computation {
    pub ph: RewriteRing,
    pub sym3: ChernClass,
    pub chern_k: ChernClass,
    pub ring: RewriteRing,
    pub relation: Elem,
    pub printed: Elem,
}

impl M1Computation {
    pub fn matches_printed(&self) -> bool {
        self.relation == self.printed
    }

    /// `computed − printed`.
    pub fn difference(&self) -> Elem {
        self.relation.sub(&self.printed)
    }
}

pub fn m1_chow_computation() -> Result<M1Computation, ChowError> {
    let ph = ph_ring();
    let h = chern_h_dual();
    let sym3 = chern_sym3_rank3(&h.c(1), &h.c(2), &h.c(3), 3)?.reduce(&p3_ring());
    let t = Elem::var(2, 1);
    let mut comps = vec![t.scale(&BigInt::from(3))];
    comps.extend((2..=9).map(|_| Elem::zero(2)));
    let inv = chern_inverse(&ChernClass::from_components(2, &comps));
    let mut sym3_ext = sym3.extend(2).truncate(9);
    for k in 4..=9 {
        debug_assert!(sym3_ext.c(k).is_zero());
    }
    sym3_ext = sym3_ext.truncate(9);
    let chern_k = sym3_ext.product(&inv).reduce(&ph);
    let ring = projective_bundle_ring(&ph, &chern_k, "u")?;
    let relation = ring.relation(2).expect("u relation");
    let printed = Elem::parse(PRINTED_F, &["s", "t", "u"])?;
    Ok(M1Computation { ph, sym3, chern_k, ring, relation, printed })
}

/// `A*(M1)` as `Z[s, t, u]/𝔞`; fails unless the computed `u`-relation is
/// the displayed `f`.
pub fn m1_chow_ideal() -> Result<RewriteRing, ChowError> {
    let comp = m1_chow_computation()?;
    if comp.matches_printed() {
        return Ok(comp.ring);
    }
    let names = comp.ring.names().to_vec();
    Err(ChowError::RelationMismatch {
        computed: comp.relation.format(&names),
        printed: comp.printed.format(&names),
        diff: comp.difference().format(&names),
    })
}

/// The spaces whose Betti tables are reproduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Space {
    N,
    N1,
    /// Exceptional divisor `P(N_{N1/N})`.
    E,
    M0,
    M1,
    M0capM1,
    M,
}

impl Space {
    pub const ALL: [Space; 7] = [Space::N, Space::N1, Space::E, Space::M0, Space::M1, Space::M0capM1, Space::M];

    pub fn name(&self) -> &'static str {
        match self {
            Space::N => "N",
            Space::N1 => "N1",
            Space::E => "E",
            Space::M0 => "M0",
            Space::M1 => "M1",
            Space::M0capM1 => "M0capM1",
            Space::M => "M",
        }
    }

    pub fn from_name(name: &str) -> Option<Space> {
        Space::ALL.into_iter().find(|s| s.name().eq_ignore_ascii_case(name))
    }
}

pub fn space_betti(space: Space) -> Result<BettiTable, ChowError> {
    let n = || BettiTable::new(N_BETTI.to_vec());
    let n1 = || betti_from_ring(&flag_ring(), 5);
    let e = || Ok::<_, ChowError>(pbundle_betti(&n1()?, 6));
    let m1 = || betti_from_ring(&m1_chow_computation()?.ring, 13);
    let m0 = || blowup_betti(&n(), &n1()?, &e()?);
    match space {
        Space::N => Ok(n()),
        Space::N1 => n1(),
        Space::E | Space::M0capM1 => e(),
        Space::M0 => m0(),
        Space::M1 => m1(),
        Space::M => mayer_vietoris_betti(&m0()?, &m1()?, &e()?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundle_rings() {
        assert_eq!(ph_ring().presentation(), "Z[s, t]/(s^4, t^3 - s*t^2 + s^2*t - s^3)");
        assert_eq!(flag_ring().presentation(), "Z[s, t]/(s^4, t^3 + s*t^2 + s^2*t + s^3)");
        let plane = projective_bundle_ring(&RewriteRing::point(), &ChernClass::one(0, 3), "u").unwrap();
        assert_eq!(plane.presentation(), "Z[u]/(u^3)");
        assert_eq!(betti_from_ring(&flag_ring(), 5).unwrap().betti, vec![1, 2, 3, 3, 2, 1]);
    }

    #[test]
    fn chern_class_of_k() {
        let comp = m1_chow_computation().unwrap();
        let names = comp.ring.names()[..2].to_vec();
        let c = |k| comp.chern_k.c(k).format(&names);
        assert_eq!(c(1), "-3*t + 10*s");
        assert_eq!(c(2), "9*t^2 - 30*s*t + 55*s^2");
        assert_eq!(c(3), "63*s*t^2 - 138*s^2*t + 193*s^3");
        assert_eq!(c(4), "225*s^2*t^2 - 390*s^3*t");
        assert_eq!(c(5), "495*s^3*t^2");
        for k in 6..=9 {
            assert!(comp.chern_k.c(k).is_zero());
        }
        // c(K)·(1 + 3t) = c(S³H*) in A*(P(H)).
        let t = Elem::var(2, 1);
        let one_plus = ChernClass::from_components(2, &[t.scale(&BigInt::from(3))]);
        let back = comp.chern_k.truncate(5).product(&one_plus.extend(2).truncate(5)).reduce(&comp.ph);
        assert_eq!(back.truncate(3), comp.sym3.extend(2));
        assert!((4..=5).all(|k| back.c(k).is_zero()));
    }

    #[test]
    fn printed_f_drops_cubes_of_t() {
        // The displayed f is what one gets by expanding c(S³H*)·(1 + 3t)⁻¹
        // modulo (s⁴, t³) instead of the P(H) relation.
        let naive = RewriteRing::free(&["s", "t"])
            .with_relation(0, &Elem::var(2, 0).pow(4))
            .unwrap()
            .with_relation(1, &Elem::var(2, 1).pow(3))
            .unwrap();
        let comp = m1_chow_computation().unwrap();
        let t = Elem::var(2, 1);
        let mut comps = vec![t.scale(&BigInt::from(3))];
        comps.extend((2..=9).map(|_| Elem::zero(2)));
        let inv = chern_inverse(&ChernClass::from_components(2, &comps));
        let ck = comp.sym3.extend(2).truncate(9).product(&inv).reduce(&naive);
        let ring = projective_bundle_ring(&naive, &ck, "u").unwrap();
        assert_eq!(ring.relation(2).unwrap(), comp.printed);
        assert!(!comp.matches_printed());
        assert!(matches!(m1_chow_ideal(), Err(ChowError::RelationMismatch { .. })));
    }

    #[test]
    fn tables() {
        let expect = |s, v: &[u64], e| {
            let t = space_betti(s).unwrap();
            assert_eq!(t.betti, v, "{s:?}");
            assert_eq!(t.euler, e, "{s:?}");
        };
        expect(Space::N, &N_BETTI, 58);
        expect(Space::N1, &[1, 2, 3, 3, 2, 1], 12);
        expect(Space::M0capM1, &[1, 3, 6, 9, 11, 12, 12, 11, 9, 6, 3, 1], 84);
        expect(Space::M0, &[1, 2, 6, 10, 16, 19, 22, 19, 16, 10, 6, 2, 1], 130);
        expect(Space::M1, &[1, 3, 6, 9, 11, 12, 12, 12, 12, 11, 9, 6, 3, 1], 108);
        expect(Space::M, &[1, 2, 6, 10, 16, 19, 22, 20, 19, 15, 12, 7, 4, 1], 154);
        let two_route = pbundle_betti(&pbundle_betti(&BettiTable::new(vec![1, 1, 1, 1]), 2), 8);
        assert_eq!(two_route, space_betti(Space::M1).unwrap());
        assert!(!space_betti(Space::M).unwrap().is_palindromic());
    }
}
