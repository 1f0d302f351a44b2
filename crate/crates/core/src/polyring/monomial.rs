use std::cmp::Ordering;
use std::fmt;

/// Number of homogeneous variables `x0..x3`.
pub const NUM_X: usize = 4;
/// Index of the ungraded deformation parameter `t` in an exponent vector.
pub const T_INDEX: usize = 4;

pub(crate) const VAR_NAMES: [&str; 5] = ["x0", "x1", "x2", "x3", "t"];

/// Exponent vector over `(x0, x1, x2, x3, t)`.
///
/// Ordered graded-lexicographically with `x0 > x1 > x2 > x3 > t`; the
/// total degree used for grading includes the `t` exponent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; 5]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 5]);

    pub fn var(index: usize) -> Self {
        let mut e = [0; 5];
        e[index] = 1;
        Monomial(e)
    }

    pub fn x(exps: [u16; 4]) -> Self {
        Monomial([exps[0], exps[1], exps[2], exps[3], 0])
    }

    pub fn exponents(&self) -> &[u16; 5] {
        &self.0
    }

    /// Sum of the `x`-exponents; `t` is ungraded.
    pub fn x_degree(&self) -> u32 {
        self.0[..NUM_X].iter().map(|&e| e as u32).sum()
    }

    pub fn t_degree(&self) -> u32 {
        self.0[T_INDEX] as u32
    }

    pub fn total_degree(&self) -> u32 {
        self.x_degree() + self.t_degree()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    pub fn without_t(&self) -> Monomial {
        let mut e = self.0;
        e[T_INDEX] = 0;
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &e) in VAR_NAMES.iter().zip(self.0.iter()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{}^{}", name, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Dimension of the space of degree-`d` forms in `x0..x3`, i.e. `C(d+3, 3)`.
pub fn graded_dim(d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    let d = d as usize;
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// The degree-`d` monomials in `x0..x3`, in descending graded-lex order
/// (`x0^d` first, `x3^d` last). Empty for negative `d`.
pub fn monomial_basis(d: i64) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(graded_dim(d));
    if d < 0 {
        return out;
    }
    let d = d as u16;
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push(Monomial::x([a, b, c, d - a - b - c]));
            }
        }
    }
    out
}
