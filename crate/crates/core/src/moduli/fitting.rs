use crate::complexes::GradedMatrix;
use crate::polyring::{monomial_basis, span_rank, Poly, Rational};

/// The 2×2 minors of `A`, indexed by row pairs `(i, j)`, `i < j`, in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittingIdeal {
    pub minors: Vec<((usize, usize), Poly)>,
}

impl FittingIdeal {
    pub fn generators(&self) -> Vec<Poly> {
        self.minors.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn nonzero_generators(&self) -> Vec<Poly> {
        self.minors.iter().filter(|(_, p)| !p.is_zero()).map(|(_, p)| p.clone()).collect()
    }

    /// Whether this ideal equals the ideal generated by `gens`.
    pub fn equals_ideal(&self, gens: &[Poly]) -> bool {
        ideals_equal(&self.generators(), gens, 3)
    }
}

pub fn fitting_ideal(a: &GradedMatrix) -> FittingIdeal {
    let mut minors = Vec::new();
    for i in 0..a.rows() {
        for j in i + 1..a.rows() {
            let det = a.entry(i, 0) * a.entry(j, 1) - a.entry(i, 1) * a.entry(j, 0);
            minors.push(((i, j), det));
        }
    }
    FittingIdeal { minors }
}

fn piece_vectors(gens: &[Poly], d: i64) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let Some(e) = g.x_degree() else { continue };
        let e = e as i64;
        if e > d {
            continue;
        }
        for m in monomial_basis(d - e) {
            let prod = g * &Poly::term(m, Rational::from_integer(1.into()));
            out.push(prod.coeff_vector(d).expect("homogeneous generators"));
        }
    }
    out
}

/// Dimension of the degree-`d` piece of the ideal generated by `gens`.
pub fn ideal_piece_rank(gens: &[Poly], d: i64) -> usize {
    span_rank(&piece_vectors(gens, d))
}

/// Equality of two homogeneous ideals, compared piece by piece in degrees
/// `0..=max_degree`.
pub fn ideals_equal(left: &[Poly], right: &[Poly], max_degree: i64) -> bool {
    (0..=max_degree).all(|d| {
        let l = piece_vectors(left, d);
        let r = piece_vectors(right, d);
        let rl = span_rank(&l);
        let rr = span_rank(&r);
        rl == rr && span_rank(&[l, r].concat()) == rl
    })
}
