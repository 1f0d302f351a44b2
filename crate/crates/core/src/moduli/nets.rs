use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{normal_form, ModuliError, PairBA};
use crate::polyring::{
    divide_by_linear, linear_matrix, parse_poly, rat, wedge_rank, Monomial, Poly, QMatrix, Rational, NUM_X,
};

/// A 2×3 matrix of linear forms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NetQ {
    rows: [[Poly; 3]; 2],
}

/// JSON form of a net: `{"Q": [[..3 forms..], [..3 forms..]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetFile {
    #[serde(rename = "Q")]
    pub q: Vec<Vec<String>>,
}

impl NetQ {
    pub fn new(rows: [[Poly; 3]; 2]) -> Result<Self, ModuliError> {
        for f in rows.iter().flatten() {
            if f.linear_coeffs().is_none() {
                return Err(ModuliError::MalformedNet(format!("`{f}` is not a linear form")));
            }
        }
        Ok(NetQ { rows })
    }

    pub fn parse(rows: &[[&str; 3]; 2]) -> Result<Self, ModuliError> {
        let mut out: [[Poly; 3]; 2] = Default::default();
        for (r, row) in rows.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                out[r][c] = parse_poly(s).map_err(|e| ModuliError::MalformedNet(e.to_string()))?;
            }
        }
        NetQ::new(out)
    }

    pub fn from_file(file: &NetFile) -> Result<Self, ModuliError> {
        if file.q.len() != 2 || file.q.iter().any(|r| r.len() != 3) {
            return Err(ModuliError::MalformedNet("expected a 2x3 matrix".into()));
        }
        let s = |r: usize, c: usize| file.q[r][c].as_str();
        NetQ::parse(&[[s(0, 0), s(0, 1), s(0, 2)], [s(1, 0), s(1, 1), s(1, 2)]])
    }

    pub fn to_file(&self) -> NetFile {
        NetFile { q: self.rows.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect() }
    }

    pub fn rows(&self) -> &[[Poly; 3]; 2] {
        &self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> &Poly {
        &self.rows[r][c]
    }

    /// The minors on column pairs `(0,1), (0,2), (1,2)`.
    pub fn minors(&self) -> [Poly; 3] {
        let m = |i: usize, j: usize| &self.rows[0][i] * &self.rows[1][j] - &self.rows[0][j] * &self.rows[1][i];
        [m(0, 1), m(0, 2), m(1, 2)]
    }

    fn coeffs(&self, r: usize, c: usize) -> [Rational; 4] {
        self.rows[r][c].linear_coeffs().expect("validated linear")
    }
}

impl fmt::Display for NetQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The linear block of `B`.
pub fn rho_map(pair: &PairBA) -> NetQ {
    NetQ::new(pair.linear_block()).expect("linear block of B is linear")
}

// Univariate polynomials, ascending coefficients.
type Upoly = Vec<Rational>;

fn trim(mut p: Upoly) -> Upoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn urem(a: &Upoly, b: &Upoly) -> Upoly {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let f = r.last().unwrap() / lb;
        let shift = r.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &f * bc;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn ugcd(a: Upoly, b: Upoly) -> Upoly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = urem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

fn binary_form_string(c: &[Rational; 3]) -> String {
    let mut p = Poly::zero();
    let names = [Monomial::x([2, 0, 0, 0]), Monomial::x([1, 1, 0, 0]), Monomial::x([0, 2, 0, 0])];
    for (m, c) in names.iter().zip(c) {
        p.add_term(*m, c.clone());
    }
    p.to_string().replace("x0", "s").replace("x1", "t")
}

/// Stability of a net: no zero column and no two zeros in a row after
/// row and column operations.
///
/// Returns [`ModuliError::Inconclusive`] when a row combination with
/// dependent entries exists only over an irrational quadratic extension.
pub fn net_is_stable(q: &NetQ) -> Result<bool, ModuliError> {
    // (a) Q·μ = 0 for some μ ≠ 0.
    let mut sys = QMatrix::zeros(2 * NUM_X, 3);
    for r in 0..2 {
        for c in 0..3 {
            for (k, v) in q.coeffs(r, c).into_iter().enumerate() {
                sys.set(r * NUM_X + k, c, v);
            }
        }
    }
    if sys.rank() < 3 {
        return Ok(false);
    }
    // (b) 2×2 minors of the 3×4 coefficient matrix of s·Q0 + t·Q1.
    let mut forms: Vec<[Rational; 3]> = Vec::new();
    for j1 in 0..3 {
        for j2 in j1 + 1..3 {
            let (a1, a2) = (q.coeffs(0, j1), q.coeffs(0, j2));
            let (b1, b2) = (q.coeffs(1, j1), q.coeffs(1, j2));
            for k1 in 0..NUM_X {
                for k2 in k1 + 1..NUM_X {
                    // (s a1k1 + t b1k1)(s a2k2 + t b2k2) − (s a1k2 + t b1k2)(s a2k1 + t b2k1)
                    let ss = &a1[k1] * &a2[k2] - &a1[k2] * &a2[k1];
                    let st = &a1[k1] * &b2[k2] + &b1[k1] * &a2[k2] - &a1[k2] * &b2[k1] - &b1[k2] * &a2[k1];
                    let tt = &b1[k1] * &b2[k2] - &b1[k2] * &b2[k1];
                    forms.push([ss, st, tt]);
                }
            }
        }
    }
    if forms.iter().all(|f| f.iter().all(Zero::is_zero)) {
        return Ok(false);
    }
    // Root (1 : 0).
    if forms.iter().all(|f| f[0].is_zero()) {
        return Ok(false);
    }
    // Affine roots (s : 1): gcd of c_tt + c_st s + c_ss s².
    let g = forms.iter().map(|f| vec![f[2].clone(), f[1].clone(), f[0].clone()]).fold(Vec::new(), ugcd);
    match g.len() {
        0 | 1 => Ok(true),
        2 => Ok(false),
        _ => {
            let disc = &g[1] * &g[1] - rat(4) * &g[2] * &g[0];
            if rational_sqrt(&disc).is_some() {
                Ok(false)
            } else {
                let form = [g[2].clone(), g[1].clone(), g[0].clone()];
                Err(ModuliError::Inconclusive(format!(
                    "row combinations with dependent entries are cut out by the irreducible form {}",
                    binary_form_string(&form)
                )))
            }
        }
    }
}

fn gram(q: &Poly) -> QMatrix {
    let mut s = QMatrix::zeros(NUM_X, NUM_X);
    for (m, c) in q.terms() {
        let idx: Vec<usize> = (0..NUM_X).flat_map(|i| std::iter::repeat_n(i, m.0[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            s.set(i, i, c.clone());
        } else {
            let half = c / rat(2);
            s.set(i, j, half.clone());
            s.set(j, i, half);
        }
    }
    s
}

/// Candidate linear factors of a nonzero quadratic form.
fn linear_factors(q: &Poly) -> Result<Vec<Poly>, ModuliError> {
    let s = gram(q);
    let rank = s.rank();
    let form = |v: &[Rational]| Poly::linear(v).primitive();
    if rank == 1 {
        let row = (0..NUM_X).find(|&i| !s.row(i).iter().all(Zero::is_zero)).expect("rank 1");
        return Ok(vec![form(s.row(row))]);
    }
    if rank > 2 {
        return Ok(Vec::new());
    }
    let pivots = s.transpose().pivot_columns();
    let (r1, r2) = (s.row(pivots[0]).to_vec(), s.row(pivots[1]).to_vec());
    let rm = QMatrix::from_rows(vec![r1.clone(), r2.clone()]);
    let v1 = rm.solve(&[rat(1), rat(0)]).expect("independent rows");
    let v2 = rm.solve(&[rat(0), rat(1)]).expect("independent rows");
    let at = |v: &[Rational]| q.eval_at(&[v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]);
    let sum: Vec<Rational> = v1.iter().zip(&v2).map(|(a, b)| a + b).collect();
    let (a, c) = (at(&v1), at(&v2));
    let b = at(&sum) - &a - &c;
    let y1 = Poly::linear(&r1);
    let y2 = Poly::linear(&r2);
    if a.is_zero() {
        // q = y2·(b·y1 + c·y2)
        return Ok(vec![y2.primitive(), (y1.scale(&b) + y2.scale(&c)).primitive()]);
    }
    let disc = &b * &b - rat(4) * &a * &c;
    let Some(root) = rational_sqrt(&disc) else {
        return Err(ModuliError::Inconclusive(format!("the minor {q} splits only over Q(sqrt({disc}))")));
    };
    let two_a = rat(2) * &a;
    Ok([&root, &-root.clone()]
        .into_iter()
        .map(|r| {
            let rho = (-&b + r) / &two_a;
            (&y1 - &y2.scale(&rho)).primitive()
        })
        .collect())
}

/// A linear form dividing all three minors of `q`, if one exists over the
/// rationals.
pub fn net_in_n1(q: &NetQ) -> Result<Option<Poly>, ModuliError> {
    let minors = q.minors();
    let Some(first) = minors.iter().find(|m| !m.is_zero()) else {
        return Ok(None);
    };
    for w in linear_factors(first)? {
        if minors.iter().all(|m| divide_by_linear(m, &w).is_some()) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Image of a singular planar pair in the blow-up, together with the
/// dimension of the solution space of each `q_i = a_i·l1 + b_i·l2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauImage {
    pub net: NetQ,
    pub raw_solution_dims: [usize; 2],
}

/// `q_i = a_i·l1 + b_i·l2 ↦ ((0, a1, b1), (0, a2, b2))`.
///
/// In coordinates `(y1, y2, y3, y4) = (l1, l2, w, m)`, `a_i` collects the
/// monomials of `q_i` containing `y1` (divided by `y1`), so that `b_i` has
/// no `y1`-term.
pub fn tau_map(pair: &PairBA) -> Result<TauImage, ModuliError> {
    if !pair.lambda().is_zero() {
        return Err(ModuliError::NotPlanar);
    }
    let nf = if pair.is_planar_normal_form() { pair.clone() } else { normal_form(pair)?.0 };
    let a = nf.a();
    tau_forms(a.entry(0, 0), a.entry(2, 1), a.entry(3, 1), [a.entry(2, 0), a.entry(3, 0)])
}

/// The linear solve behind [`tau_map`], on planar data `w, l1, l2, q1, q2`.
pub fn tau_forms(w: &Poly, l1: &Poly, l2: &Poly, q: [&Poly; 2]) -> Result<TauImage, ModuliError> {
    if wedge_rank(&[w.clone(), l1.clone(), l2.clone()])? != 3 {
        return Err(ModuliError::DependentForms);
    }
    let mut basis = vec![l1.clone(), l2.clone(), w.clone()];
    for k in 0..NUM_X {
        let xk = Poly::var(k);
        let refs: Vec<&Poly> = basis.iter().chain(std::iter::once(&xk)).collect();
        if linear_matrix(&refs)?.rank() == 4 {
            basis.push(Poly::var(k));
            break;
        }
    }
    let p = linear_matrix(&basis.iter().collect::<Vec<_>>())?;
    let pinv = p.inverse().expect("basis of linear forms");
    let to_y: [Poly; 4] = std::array::from_fn(|k| Poly::linear(pinv.row(k)));
    let to_x: [Poly; 4] = std::array::from_fn(|j| basis[j].clone());
    let y1 = Monomial::var(0);
    let y2 = Monomial::var(1);

    let mut out: [[Poly; 3]; 2] = Default::default();
    let mut dims = [0usize; 2];
    for (i, qi) in q.iter().enumerate() {
        let qy = qi.substitute(&to_y);
        let (mut ay, mut by) = (Poly::zero(), Poly::zero());
        for (m, c) in qy.terms() {
            if let Some(rest) = m.div(&y1) {
                ay.add_term(rest, c.clone());
            } else if let Some(rest) = m.div(&y2) {
                by.add_term(rest, c.clone());
            } else {
                return Err(ModuliError::NotInIdeal { index: i + 1, q: qi.to_string() });
            }
        }
        let (ai, bi) = (ay.substitute(&to_x), by.substitute(&to_x));
        debug_assert_eq!(&(&ai * l1) + &(&bi * l2), **qi);
        dims[i] = solution_dim(l1, l2);
        out[i] = [Poly::zero(), ai, bi];
    }
    Ok(TauImage { net: NetQ::new(out)?, raw_solution_dims: dims })
}

/// Kernel dimension of `(a, b) ↦ a·l1 + b·l2` on pairs of linear forms.
fn solution_dim(l1: &Poly, l2: &Poly) -> usize {
    let mut cols = Vec::new();
    for l in [l1, l2] {
        for k in 0..NUM_X {
            cols.push((l * &Poly::var(k)).coeff_vector(2).expect("quadric"));
        }
    }
    let m = QMatrix::from_cols(cols[0].len(), &cols);
    m.cols() - m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::Fixture;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn rho_examples() {
        let tc = rho_map(&Fixture::TwistedCubic.load());
        assert_eq!(tc, NetQ::parse(&[["x2", "-x1", "x0"], ["x3", "-x2", "x1"]]).unwrap());
        let pn = rho_map(&Fixture::PlanarNodal.load());
        assert_eq!(pn, NetQ::parse(&[["-x1", "x3", "0"], ["-x2", "0", "x3"]]).unwrap());
        assert_eq!(net_is_stable(&tc), Ok(true));
        assert_eq!(net_is_stable(&pn), Ok(true));
    }

    #[test]
    fn stability_examples() {
        let s = |rows| net_is_stable(&NetQ::parse(rows).unwrap());
        assert_eq!(s(&[["x0", "x1", "x2"], ["x1", "x2", "x3"]]), Ok(true));
        assert_eq!(s(&[["x0", "0", "0"], ["x1", "x2", "x3"]]), Ok(false));
        assert_eq!(s(&[["x1", "x3", "0"], ["x2", "0", "x3"]]), Ok(true));
        // Zero column after column operations.
        assert_eq!(s(&[["x0", "x1", "x0 + x1"], ["x2", "x3", "x2 + x3"]]), Ok(false));
        // Row combination 2·Q0 − Q1 = (x0, 0, 0) after column operations.
        assert_eq!(s(&[["x0 + x1", "x2", "x3"], ["x0 + 2*x1", "2*x2", "2*x3"]]), Ok(false));
    }

    #[test]
    fn irrational_row_dependency_forces_a_zero_column() {
        // s·Q0 + t·Q1 has dependent entries exactly when s² = 2t²; the
        // columns are then rationally dependent.
        let q = NetQ::parse(&[["x1", "x0", "x0 + x1"], ["x0", "2*x1", "x0 + 2*x1"]]).unwrap();
        assert_eq!(net_is_stable(&q), Ok(false));
    }

    #[test]
    fn irrational_factor_is_inconclusive() {
        let q = NetQ::parse(&[["x0", "2*x1", "x2"], ["x1", "x0", "x3"]]).unwrap();
        assert_eq!(net_is_stable(&q), Ok(true));
        assert!(matches!(net_in_n1(&q), Err(ModuliError::Inconclusive(_))));
    }

    #[test]
    fn n1_examples() {
        let w = net_in_n1(&NetQ::parse(&[["x1", "x3", "0"], ["x2", "0", "x3"]]).unwrap()).unwrap();
        assert_eq!(w, Some(p("x3")));
        let w = net_in_n1(&NetQ::parse(&[["x0", "x3", "0"], ["x1", "0", "x3"]]).unwrap()).unwrap();
        assert_eq!(w, Some(p("x3")));
        assert_eq!(net_in_n1(&rho_map(&Fixture::TwistedCubic.load())), Ok(None));
        assert_eq!(net_in_n1(&rho_map(&Fixture::PlanarNodal.load())), Ok(Some(p("x3"))));
    }

    #[test]
    fn factor_minors() {
        assert_eq!(linear_factors(&p("x0^2 - x1^2")).unwrap().len(), 2);
        assert_eq!(linear_factors(&p("x0^2 + 2*x0*x1 + x1^2")).unwrap(), vec![p("x0 + x1")]);
        assert!(linear_factors(&p("x0^2 + x1^2 + x2^2")).unwrap().is_empty());
        assert!(matches!(linear_factors(&p("x0^2 - 2*x1^2")), Err(ModuliError::Inconclusive(_))));
    }

    #[test]
    fn tau_examples() {
        let img = tau_map(&Fixture::PlanarNodal.load()).unwrap();
        assert_eq!(img.net, NetQ::parse(&[["0", "0", "x0"], ["0", "x1 + x0", "0"]]).unwrap());
        assert_eq!(img.raw_solution_dims, [1, 1]);
        // q1·l2 − q2·l1 = 0 here, so these forms do not come from a pair.
        let img = tau_forms(&p("x3"), &p("x1"), &p("x2"), [&p("x1*x2"), &p("x2^2")]).unwrap();
        assert_eq!(img.net, NetQ::parse(&[["0", "x2", "0"], ["0", "0", "x2"]]).unwrap());
        assert!(matches!(tau_map(&Fixture::PlanarSmooth.load()), Err(ModuliError::NotInIdeal { index: 1, .. })));
        assert_eq!(tau_map(&Fixture::TwistedCubic.load()), Err(ModuliError::NotPlanar));
    }
}
