//! Exact polynomials in `x0..x3` (plus the deformation parameter `t`) and
//! exact rational linear algebra.

mod linalg;
mod monomial;
mod parse;
mod poly;

use thiserror::Error;

pub use linalg::{is_zero_vector, primitive_integer_vector, span_rank, to_rational_vec, QMatrix};
pub use monomial::{graded_dim, monomial_basis, Monomial, NUM_X, T_INDEX};
pub use parse::{parse_poly, ParseError};
pub use poly::Poly;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expected a linear form, got `{0}`")]
    NotLinear(String),
}

/// Dimension of the span of a list of linear forms.
///
/// `z1 ∧ z2 ∧ z3 ≠ 0` is exactly `wedge_rank(&[z1, z2, z3]) == 3`.
pub fn wedge_rank(forms: &[Poly]) -> Result<usize, PolyError> {
    let rows = forms
        .iter()
        .map(|f| f.linear_coeffs().map(|c| c.to_vec()).ok_or_else(|| PolyError::NotLinear(f.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(span_rank(&rows))
}

/// Coefficient matrix of a list of linear forms, one row per form.
pub(crate) fn linear_matrix(forms: &[&Poly]) -> Result<QMatrix, PolyError> {
    let rows = forms
        .iter()
        .map(|f| f.linear_coeffs().map(|c| c.to_vec()).ok_or_else(|| PolyError::NotLinear(f.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(if rows.is_empty() { QMatrix::zeros(0, NUM_X) } else { QMatrix::from_rows(rows) })
}

/// Quotient `p / l` for a linear form `l` dividing `p` (both `t`-free and
/// homogeneous); `None` when `l` does not divide `p`.
pub fn divide_by_linear(p: &Poly, l: &Poly) -> Option<Poly> {
    if p.is_zero() {
        return Some(Poly::zero());
    }
    let d = p.x_degree()? as i64;
    if d == 0 || l.linear_coeffs().is_none() || l.is_zero() {
        return None;
    }
    // Solve l * r = p for r of degree d-1.
    let basis = monomial_basis(d - 1);
    let cols: Vec<Vec<Rational>> =
        basis.iter().map(|m| (l * &Poly::term(*m, rat(1))).coeff_vector(d).expect("homogeneous")).collect();
    let a = QMatrix::from_cols(graded_dim(d), &cols);
    let x = a.solve(&p.coeff_vector(d)?)?;
    Some(Poly::from_coeff_vector(d - 1, &x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn wedge_rank_examples() {
        assert_eq!(wedge_rank(&[p("x0"), p("x1"), p("x2")]), Ok(3));
        assert_eq!(wedge_rank(&[p("x0"), p("2*x0")]), Ok(1));
        assert_eq!(wedge_rank(&[p("x0+x1"), p("x1+x2"), p("x0-x2")]), Ok(2));
        assert!(matches!(wedge_rank(&[p("x0^2")]), Err(PolyError::NotLinear(_))));
    }

    #[test]
    fn division_by_linear_forms() {
        assert_eq!(divide_by_linear(&p("x0*x3 + x3^2"), &p("x3")), Some(p("x0 + x3")));
        assert_eq!(divide_by_linear(&p("x0*x1"), &p("x3")), None);
        assert_eq!(divide_by_linear(&Poly::zero(), &p("x3")), Some(Poly::zero()));
    }
}
