//! Seeded random pairs, group elements and nets.

use num_traits::Zero;
use rand::Rng;

use super::{GroupElement, PairBA, Stratum};
use crate::polyring::{monomial_basis, rat, wedge_rank, Poly, QMatrix, Rational};

fn small<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-3..=3))
}

fn nonzero<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let c = small(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_linear_form<R: Rng>(rng: &mut R) -> Poly {
    loop {
        let l = Poly::linear(&[small(rng), small(rng), small(rng), small(rng)]);
        if !l.is_zero() {
            return l;
        }
    }
}

pub fn random_quadric<R: Rng>(rng: &mut R) -> Poly {
    Poly::from_terms(monomial_basis(2).into_iter().map(|m| (m, small(rng))))
}

fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    loop {
        let m = QMatrix::from_rows((0..n).map(|_| (0..n).map(|_| small(rng)).collect()).collect());
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

fn independent_forms<R: Rng>(rng: &mut R, n: usize) -> Vec<Poly> {
    loop {
        let forms: Vec<Poly> = (0..n).map(|_| random_linear_form(rng)).collect();
        if wedge_rank(&forms) == Ok(n) {
            return forms;
        }
    }
}

pub fn random_group_element<R: Rng>(rng: &mut R) -> GroupElement {
    GroupElement {
        g1: random_invertible(rng, 2),
        alpha: nonzero(rng),
        g: random_invertible(rng, 3),
        u: std::array::from_fn(|_| random_linear_form(rng)),
        beta: nonzero(rng),
        gamma: nonzero(rng),
        shear: random_linear_form(rng),
    }
}

/// A random 2×3 matrix of linear forms.
pub fn random_net_rows<R: Rng>(rng: &mut R) -> [[Poly; 3]; 2] {
    std::array::from_fn(|_| std::array::from_fn(|_| random_linear_form(rng)))
}

/// A random pair of the given stratum, in normal form.
pub fn random_normal_pair<R: Rng>(rng: &mut R, stratum: Stratum) -> PairBA {
    loop {
        let attempt = match stratum {
            Stratum::NonPlanar => {
                let n = random_net_rows(rng);
                let minor = |i: usize, j: usize| &n[0][i] * &n[1][j] - &n[1][i] * &n[0][j];
                let q = [minor(1, 2), -minor(0, 2), minor(0, 1)];
                PairBA::non_planar(&n, &q)
            }
            Stratum::PlanarNonSingular | Stratum::PlanarSingular => {
                let f = independent_forms(rng, 3);
                let (w, l1, l2) = (&f[0], &f[1], &f[2]);
                let (q1, q2) = if stratum == Stratum::PlanarSingular {
                    let mut comb = || &random_linear_form(rng) * l1 + &random_linear_form(rng) * l2;
                    (comb(), comb())
                } else {
                    (random_quadric(rng), random_quadric(rng))
                };
                PairBA::planar(w, l1, l2, &q1, &q2)
            }
        };
        if let Ok(pair) = attempt {
            if super::classify(&pair).stratum() == stratum {
                return pair;
            }
        }
    }
}

/// A random pair of the given stratum moved by a random group element.
pub fn random_pair<R: Rng>(rng: &mut R, stratum: Stratum) -> PairBA {
    let base = random_normal_pair(rng, stratum);
    random_group_element(rng).act_on(&base).expect("group action preserves exact stable pairs")
}
