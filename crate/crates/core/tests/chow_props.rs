use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use cubic_moduli::chow::{
    betti_from_ring, blowup_betti, chern_inverse, chern_sym3_rank3, mayer_vietoris_betti, pbundle_betti,
    projective_bundle_ring, BettiTable, ChernClass, Elem, RewriteRing,
};

fn class(nvars: usize, trunc: usize) -> impl Strategy<Value = ChernClass> {
    let term = (prop::collection::vec(0u32..4, nvars), -6i64..=6);
    prop::collection::vec(prop::collection::vec(term, 0..4), trunc).prop_map(move |parts| {
        let comps: Vec<Elem> = parts
            .into_iter()
            .enumerate()
            .map(|(d, terms)| {
                let mut e = Elem::zero(nvars);
                for (exps, c) in terms {
                    e.add_term(exps, BigInt::from(c));
                }
                e.part(d as u32 + 1)
            })
            .collect();
        ChernClass::from_components(nvars, &comps)
    })
}

/// Roots of a monic cubic by Durand–Kerner iteration.
fn cubic_roots(coeffs: [f64; 3]) -> [Complex64; 3] {
    let f = |z: Complex64| ((z + coeffs[0]) * z + coeffs[1]) * z + coeffs[2];
    let mut roots = [Complex64::new(0.4, 0.9), Complex64::new(0.4, 0.9).powu(2), Complex64::new(0.4, 0.9).powu(3)];
    for _ in 0..2000 {
        for i in 0..3 {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            roots[i] -= f(roots[i]) / den;
        }
    }
    roots
}

/// Elementary symmetric functions of the ten weight-3 root sums.
fn sym3_numeric(r: [Complex64; 3]) -> Vec<Complex64> {
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for i in 0..=3u32 {
        for j in 0..=3 - i {
            let k = 3 - i - j;
            let w = r[0] * i as f64 + r[1] * j as f64 + r[2] * k as f64;
            let mut next = poly.clone();
            next.push(Complex64::new(0.0, 0.0));
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c * w;
            }
            poly = next;
        }
    }
    poly
}

fn free_h() -> RewriteRing {
    RewriteRing::free(&["h"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inverse_round_trip(c in class(2, 5)) {
        let inv = chern_inverse(&c);
        prop_assert_eq!(c.product(&inv), ChernClass::one(2, 5));
        prop_assert_eq!(chern_inverse(&inv), c);
    }

    #[test]
    fn inverse_in_quotient_ring(c in class(1, 3)) {
        let ring = free_h().with_relation(0, &Elem::var(1, 0).pow(4)).unwrap();
        let prod = c.product(&chern_inverse(&c)).reduce(&ring);
        prop_assert_eq!(prod, ChernClass::one(1, 3));
    }

    #[test]
    fn sym3_matches_splitting_principle(a1 in -5i64..=5, a2 in -5i64..=5, a3 in -5i64..=5) {
        // x³ − a1·x² + a2·x − a3 has roots with elementary symmetric functions a_i.
        let (b, c, d) = (-a1, a2, -a3);
        let disc = 18 * b * c * d - 4 * b.pow(3) * d + b * b * c * c - 4 * c.pow(3) - 27 * d * d;
        prop_assume!(disc != 0);
        let roots = cubic_roots([b as f64, c as f64, d as f64]);
        let numeric = sym3_numeric(roots);
        let h = Elem::var(1, 0);
        let cs: Vec<Elem> = [a1, a2, a3].iter().enumerate().map(|(k, &a)| h.pow(k as u32 + 1).scale(&BigInt::from(a))).collect();
        let exact = chern_sym3_rank3(&cs[0], &cs[1], &cs[2], 10).unwrap();
        for k in 0..=10usize {
            let v = exact.c(k).coeff(&[k as u32]).to_f64().unwrap();
            let z = numeric[k];
            let tol = 1e-6 * v.abs().max(1.0);
            prop_assert!((z.re - v).abs() <= tol && z.im.abs() <= tol, "k = {}: {} vs {}", k, v, z);
        }
    }

    #[test]
    fn bundle_formula_matches_ring_count(ranks in prop::collection::vec(1usize..4, 1..3)) {
        // Iterated bundles of trivial Chern classes over a point.
        let mut ring = RewriteRing::point();
        let mut table = BettiTable::point();
        for (i, r) in ranks.iter().enumerate() {
            let c = ChernClass::one(ring.nvars() + 1, *r);
            ring = projective_bundle_ring(&ring, &c, &format!("u{i}")).unwrap();
            table = pbundle_betti(&table, r - 1);
        }
        prop_assert_eq!(betti_from_ring(&ring, table.dim()).unwrap(), table.clone());
        prop_assert_eq!(table.euler, ranks.iter().map(|&r| r as u64).product::<u64>());
        prop_assert!(table.is_palindromic());
    }

    #[test]
    fn gluing_formulas_invert(b0 in prop::collection::vec(0u64..20, 1..8), b1 in prop::collection::vec(0u64..20, 1..8)) {
        let (t0, t1) = (BettiTable::new(b0), BettiTable::new(b1));
        let empty = BettiTable::new(vec![0]);
        let sum = mayer_vietoris_betti(&t0, &t1, &empty).unwrap();
        prop_assert_eq!(sum.euler, t0.euler + t1.euler);
        let back = mayer_vietoris_betti(&sum, &empty, &t1).unwrap();
        prop_assert_eq!(back.euler, t0.euler);
        prop_assert_eq!(blowup_betti(&t0, &t1, &t1).unwrap().euler, t0.euler);
    }
}
