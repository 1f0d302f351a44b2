use num_traits::Zero;

use super::ModuliError;
use crate::polyring::{linear_matrix, primitive_integer_vector, to_rational_vec, Poly, Rational};

const PLANE: [bool; 5] = [true, true, true, false, false];

/// `(q1, l1, q2, l2) ↦ (q1·l2 − q2·l1, l1 ∧ l2)` for forms in `x0, x1, x2`.
///
/// The point is returned with primitive integral coordinates whose first
/// nonzero entry is positive.
pub fn gamma_map(q1: &Poly, l1: &Poly, q2: &Poly, l2: &Poly) -> Result<(Poly, [Rational; 3]), ModuliError> {
    for f in [q1, l1, q2, l2] {
        if !f.uses_only(PLANE) {
            return Err(ModuliError::NotThreeVariables(f.to_string()));
        }
    }
    let m = linear_matrix(&[l1, l2])?;
    if m.rank() < 2 {
        return Err(ModuliError::DependentForms);
    }
    let f = q1 * l2 - q2 * l1;
    if f.is_zero() {
        return Err(ModuliError::ZeroCubic);
    }
    // Kernel restricted to the plane: drop the x3 column.
    let plane =
        crate::polyring::QMatrix::from_rows((0..2).map(|r| (0..3).map(|c| m.get(r, c).clone()).collect()).collect());
    let kernel = plane.kernel();
    let v = primitive_integer_vector(&to_rational_vec(&kernel[0]));
    let p = to_rational_vec(&v);
    let point = [p[0].clone(), p[1].clone(), p[2].clone()];
    debug_assert!(f.eval_at(&[point[0].clone(), point[1].clone(), point[2].clone(), Rational::zero()]).is_zero());
    Ok((f, point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, rat};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn examples() {
        let (f, pt) = gamma_map(&p("x0^2"), &p("x1"), &p("x1*x2"), &p("x2")).unwrap();
        assert_eq!(f, p("x0^2*x2 - x1^2*x2"));
        assert_eq!(pt, [rat(1), rat(0), rat(0)]);
        let (f, pt) = gamma_map(&p("x0*x2"), &p("x1"), &p("x1^2 + x0*x1"), &p("x2")).unwrap();
        assert_eq!(f, p("x0*x2^2 - x1^3 - x0*x1^2"));
        assert_eq!(pt, [rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn errors() {
        let q = p("x0^2");
        assert_eq!(gamma_map(&q, &p("x1"), &q, &p("x1")), Err(ModuliError::DependentForms));
        assert_eq!(gamma_map(&p("x1"), &p("x1"), &p("x2"), &p("x2")), Err(ModuliError::ZeroCubic));
        assert!(matches!(gamma_map(&q, &p("x3"), &q, &p("x1")), Err(ModuliError::NotThreeVariables(_))));
    }
}
