use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{monomial_basis, Monomial, NUM_X, T_INDEX};
use super::Rational;

/// Sparse polynomial over the rationals in `x0..x3` and `t`.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(Monomial::ONE, c)
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(Rational::from_integer(c.into()))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// The variable `x_i` (`i < 4`) or `t` (`i == 4`).
    pub fn var(i: usize) -> Self {
        Poly::term(Monomial::var(i), Rational::one())
    }

    pub fn t() -> Self {
        Poly::var(T_INDEX)
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let mut p = Poly::zero();
        for (i, c) in coeffs.iter().enumerate().take(NUM_X) {
            p.add_term(Monomial::var(i), c.clone());
        }
        p
    }

    pub fn linear_int(coeffs: [i64; 4]) -> Self {
        let c: Vec<Rational> = coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect();
        Poly::linear(&c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The common `x`-degree of all terms, or `None` for the zero polynomial
    /// or an `x`-inhomogeneous one.
    pub fn x_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.x_degree();
        it.all(|m| m.x_degree() == d).then_some(d)
    }

    /// True when zero or homogeneous of `x`-degree `d`.
    pub fn is_zero_or_of_degree(&self, d: i64) -> bool {
        self.is_zero() || (d >= 0 && self.x_degree() == Some(d as u32))
    }

    pub fn has_t(&self) -> bool {
        self.terms.keys().any(|m| m.t_degree() > 0)
    }

    pub fn t_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.t_degree()).max().unwrap_or(0)
    }

    /// True when only the variables with `used[i]` set occur.
    pub fn uses_only(&self, used: [bool; 5]) -> bool {
        self.terms.keys().all(|m| m.0.iter().zip(used.iter()).all(|(&e, &u)| e == 0 || u))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a point of `k^4`; any `t` is set to zero.
    pub fn eval_at(&self, point: &[Rational; 4]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            if m.t_degree() > 0 {
                continue;
            }
            let mut v = c.clone();
            for (i, p) in point.iter().enumerate() {
                for _ in 0..m.0[i] {
                    v *= p;
                }
            }
            total += v;
        }
        total
    }

    /// Substitute `t := t0`.
    pub fn specialize_t(&self, t0: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..m.t_degree() {
                v *= t0;
            }
            out.add_term(m.without_t(), v);
        }
        out
    }

    /// Coefficient of `t^k`, as a polynomial in `x`.
    pub fn t_coefficient(&self, k: u32) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.t_degree() == k).map(|(m, c)| (m.without_t(), c.clone())))
    }

    /// Substitute `x_j := images[j]`, leaving `t` untouched.
    pub fn substitute(&self, images: &[Poly; 4]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t_part = [0u16; 5];
            t_part[T_INDEX] = m.0[T_INDEX];
            let mut v = Poly::term(Monomial(t_part), c.clone());
            for (j, img) in images.iter().enumerate() {
                for _ in 0..m.0[j] {
                    v = &v * img;
                }
            }
            out += v;
        }
        out
    }

    /// Coefficients along `monomial_basis(d)`; `None` if the polynomial
    /// involves `t` or has a term of another degree.
    pub fn coeff_vector(&self, d: i64) -> Option<Vec<Rational>> {
        if !self.is_zero_or_of_degree(d) || self.has_t() {
            return None;
        }
        Some(monomial_basis(d).iter().map(|m| self.coeff(m)).collect())
    }

    pub fn from_coeff_vector(d: i64, v: &[Rational]) -> Poly {
        Poly::from_terms(monomial_basis(d).into_iter().zip(v.iter().cloned()))
    }

    /// Coefficients `[c0, c1, c2, c3]` of a linear form (or zero).
    pub fn linear_coeffs(&self) -> Option<[Rational; 4]> {
        if !self.is_zero_or_of_degree(1) || self.has_t() {
            return None;
        }
        Some(std::array::from_fn(|i| self.coeff(&Monomial::var(i))))
    }

    /// Multiply by the least common multiple of the denominators and
    /// divide by the content, giving a primitive integral polynomial with a
    /// positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        use num_integer::Integer;
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> =
            self.terms.values().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = g.gcd(i);
        }
        let (_, lead) = self.leading_term().expect("nonzero");
        if lead.is_negative() {
            g = -g;
        }
        let factor = Rational::new(den, g);
        self.scale(&factor)
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = *m == Monomial::ONE;
            if is_const {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}
