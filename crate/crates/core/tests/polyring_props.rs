use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use cubic_moduli::polyring::Monomial;
use cubic_moduli::{parse_poly, Poly, QMatrix, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(([0u16..3, 0u16..3, 0u16..3, 0u16..3], rational()), 0..6)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|(e, c)| (Monomial::x(e), c))))
}

fn matrix() -> impl Strategy<Value = QMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], c), r)
            .prop_map(|rows| QMatrix::from_int_rows(&rows))
    })
}

/// Textbook Gauss–Jordan over Q.
fn naive_rank(m: &QMatrix) -> usize {
    let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &pivot;
                for j in 0..m.cols() {
                    let v = &a[rank][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #[test]
    fn print_parse_round_trip(p in poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn ranks_agree_with_naive_elimination(m in matrix()) {
        let r = naive_rank(&m);
        prop_assert_eq!(m.rank(), r);
        prop_assert_eq!(m.rank_dense(), r);
        prop_assert_eq!(m.transpose().rank(), r);
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix()) {
        let (rank, kernel) = m.rank_and_kernel();
        prop_assert_eq!(rank + kernel.len(), m.cols());
        for v in &kernel {
            let q: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
            prop_assert!(m.mul_vec(&q).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverse_of_invertible(m in matrix()) {
        if m.rows() == m.cols() && !m.determinant().is_zero() {
            let inv = m.inverse().unwrap();
            prop_assert_eq!(m.mul(&inv), QMatrix::identity(m.rows()));
            prop_assert_eq!(m.determinant() * inv.determinant(), Rational::one());
        }
    }
}
