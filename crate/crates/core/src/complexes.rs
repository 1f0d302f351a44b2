//! Graded matrices between twisted free modules over `k[x0..x3]`, their
//! section-level matrices, exactness of the degree-3 section sequence and
//! Hilbert data of cokernels.
//!
//! Maps act on row vectors from the left: an element of the source is a
//! row vector `(f_i)` with `f_i` of degree `m + source[i]`, and its image
//! is `(sum_i f_i * phi[i][j])_j`. Consequently entry `(i, j)` is zero or
//! homogeneous of degree `target[j] - source[i]`, and the complex
//! `L2 --B--> L1 --A--> L0` satisfies the matrix identity `B * A = 0`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{graded_dim, monomial_basis, parse_poly, ParseError, Poly, QMatrix, Rational};

/// Twists of the two copies of `O(-3)`.
pub const L2_TWISTS: [i32; 2] = [-3, -3];
/// Twists of `O(-1) ⊕ 3 O(-2)`.
pub const L1_TWISTS: [i32; 4] = [-1, -2, -2, -2];
/// Twists of `O ⊕ O(-1)`.
pub const L0_TWISTS: [i32; 2] = [0, -1];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("entry ({row}, {col}) = `{entry}` is not homogeneous of degree {expected}")]
    DegreeInconsistent { row: usize, col: usize, expected: i32, entry: String },
    #[error("section matrices need t-free entries")]
    Parametric,
    #[error("Hilbert function values {0:?} do not fit a linear polynomial")]
    NotLinear(Vec<i64>),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Twists of the summands of a free module `⊕ O(d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistList(Vec<i32>);

impl TwistList {
    pub fn new(twists: Vec<i32>) -> Self {
        assert!(!twists.is_empty(), "a twist list has at least one summand");
        TwistList(twists)
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension of the degree-`m` global sections of the twisted module.
    pub fn sections_dim(&self, m: i64) -> usize {
        self.0.iter().map(|&d| graded_dim(m + d as i64)).sum()
    }
}

impl From<&[i32]> for TwistList {
    fn from(v: &[i32]) -> Self {
        TwistList::new(v.to_vec())
    }
}

/// Matrix of polynomials between twisted free modules.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedMatrix {
    source: TwistList,
    target: TwistList,
    entries: Vec<Vec<Poly>>,
}

impl GradedMatrix {
    /// Build and validate degrees; `t` may occur in entries and is ignored
    /// for grading.
    pub fn new(source: TwistList, target: TwistList, entries: Vec<Vec<Poly>>) -> Result<Self, ComplexError> {
        if entries.len() != source.len() || entries.iter().any(|r| r.len() != target.len()) {
            return Err(ComplexError::ShapeMismatch(format!("expected {}x{} entries", source.len(), target.len())));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let expected = target.0[j] - source.0[i];
                if !e.is_zero_or_of_degree(expected as i64) {
                    return Err(ComplexError::DegreeInconsistent { row: i, col: j, expected, entry: e.to_string() });
                }
            }
        }
        Ok(GradedMatrix { source, target, entries })
    }

    pub fn zero(source: TwistList, target: TwistList) -> Self {
        let entries = vec![vec![Poly::zero(); target.len()]; source.len()];
        GradedMatrix { source, target, entries }
    }

    pub fn identity(twists: TwistList) -> Self {
        let n = twists.len();
        let entries =
            (0..n).map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect()).collect();
        GradedMatrix { source: twists.clone(), target: twists, entries }
    }

    /// Parse a grid of polynomial strings.
    pub fn parse(source: &[i32], target: &[i32], grid: &[Vec<String>]) -> Result<Self, ComplexError> {
        let entries = grid
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        GradedMatrix::new(source.into(), target.into(), entries)
    }

    pub fn parse_strs(source: &[i32], target: &[i32], grid: &[&[&str]]) -> Result<Self, ComplexError> {
        let owned: Vec<Vec<String>> = grid.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        GradedMatrix::parse(source, target, &owned)
    }

    pub fn source(&self) -> &TwistList {
        &self.source
    }

    pub fn target(&self) -> &TwistList {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.source.len()
    }

    pub fn cols(&self) -> usize {
        self.target.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    /// Degree an entry at `(i, j)` must have.
    pub fn entry_degree(&self, i: usize, j: usize) -> i32 {
        self.target.0[j] - self.source.0[i]
    }

    /// Replace one entry, re-validating its degree.
    pub fn with_entry(&self, i: usize, j: usize, value: Poly) -> Result<Self, ComplexError> {
        let mut entries = self.entries.clone();
        entries[i][j] = value;
        GradedMatrix::new(self.source.clone(), self.target.clone(), entries)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn is_parametric(&self) -> bool {
        self.entries.iter().flatten().any(Poly::has_t)
    }

    pub fn specialize_t(&self, t0: &Rational) -> GradedMatrix {
        self.map_entries(|p| p.specialize_t(t0))
    }

    pub fn scale(&self, c: &Rational) -> GradedMatrix {
        self.map_entries(|p| p.scale(c))
    }

    fn map_entries(&self, f: impl Fn(&Poly) -> Poly) -> GradedMatrix {
        GradedMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn add(&self, other: &GradedMatrix) -> Result<GradedMatrix, ComplexError> {
        if self.source != other.source || self.target != other.target {
            return Err(ComplexError::ShapeMismatch("sum of matrices with different twists".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(GradedMatrix { source: self.source.clone(), target: self.target.clone(), entries })
    }

    pub fn sub(&self, other: &GradedMatrix) -> Result<GradedMatrix, ComplexError> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    /// First nonzero entry, in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Poly)> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, e)| (i, j, e)))
            .find(|(_, _, e)| !e.is_zero())
    }

    /// Pretty grid of the entries (one row per line).
    pub fn to_grid(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedMatrix {:?} -> {:?} ", self.source.0, self.target.0)?;
        f.debug_list().entries(self.to_grid()).finish()
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_grid() {
            writeln!(f, "[ {} ]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The composite `L --B--> M --A--> N`, i.e. the matrix product `B * A`.
pub fn compose(b: &GradedMatrix, a: &GradedMatrix) -> Result<GradedMatrix, ComplexError> {
    if b.target != a.source {
        return Err(ComplexError::ShapeMismatch(format!(
            "target {:?} of the first map differs from source {:?} of the second",
            b.target.0, a.source.0
        )));
    }
    let entries = (0..b.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| {
                    let mut acc = Poly::zero();
                    for k in 0..b.cols() {
                        let (x, y) = (&b.entries[i][k], &a.entries[k][j]);
                        if !x.is_zero() && !y.is_zero() {
                            acc += x * y;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    GradedMatrix::new(b.source.clone(), a.target.clone(), entries)
}

/// Matrix of the induced map on degree-`m` sections.
///
/// Rows are indexed by `(i, monomial of degree m + source[i])`, columns by
/// `(j, monomial of degree m + target[j])`, summands in order and
/// monomials in descending graded-lex order.
pub fn sections_matrix(phi: &GradedMatrix, m: i64) -> Result<QMatrix, ComplexError> {
    if phi.is_parametric() {
        return Err(ComplexError::Parametric);
    }
    let row_bases: Vec<_> = phi.source.0.iter().map(|&d| monomial_basis(m + d as i64)).collect();
    let col_offsets: Vec<usize> = phi
        .target
        .0
        .iter()
        .scan(0, |acc, &d| {
            let start = *acc;
            *acc += graded_dim(m + d as i64);
            Some(start)
        })
        .collect();
    let col_bases: Vec<_> = phi.target.0.iter().map(|&d| monomial_basis(m + d as i64)).collect();
    let mut out = QMatrix::zeros(phi.source.sections_dim(m), phi.target.sections_dim(m));
    let mut r = 0;
    for (i, basis) in row_bases.iter().enumerate() {
        for mono in basis {
            for j in 0..phi.cols() {
                let e = &phi.entries[i][j];
                if e.is_zero() {
                    continue;
                }
                for (k, target_mono) in col_bases[j].iter().enumerate() {
                    // coefficient of target_mono in mono * e
                    if let Some(q) = target_mono.div(mono) {
                        let c = e.coeff(&q);
                        if c != Rational::from_integer(0.into()) {
                            out.set(r, col_offsets[j] + k, c);
                        }
                    }
                }
            }
            r += 1;
        }
    }
    Ok(out)
}

fn check_cr_shape(b: &GradedMatrix, a: &GradedMatrix) -> Result<(), ComplexError> {
    if b.source.0 != L2_TWISTS || b.target.0 != L1_TWISTS {
        return Err(ComplexError::ShapeMismatch(format!(
            "B must map {:?} to {:?}, got {:?} to {:?}",
            L2_TWISTS, L1_TWISTS, b.source.0, b.target.0
        )));
    }
    if a.source.0 != L1_TWISTS || a.target.0 != L0_TWISTS {
        return Err(ComplexError::ShapeMismatch(format!(
            "A must map {:?} to {:?}, got {:?} to {:?}",
            L1_TWISTS, L0_TWISTS, a.source.0, a.target.0
        )));
    }
    Ok(())
}

/// Exactness of `0 -> k^2 -> S^2V* ⊕ k^3⊗V* -> S^3V* ⊕ S^2V*` induced on
/// degree-3 sections: `B*A = 0`, `rank B~ = 2` and `rank A~ = 20`.
pub fn check_exact_e(b: &GradedMatrix, a: &GradedMatrix) -> Result<bool, ComplexError> {
    check_exact_at(b, a, &[3])
}

/// As [`check_exact_e`], additionally re-checking the section sequence at
/// twists 4 and 5.
pub fn check_exact_e_strict(b: &GradedMatrix, a: &GradedMatrix) -> Result<bool, ComplexError> {
    check_exact_at(b, a, &[3, 4, 5])
}

fn check_exact_at(b: &GradedMatrix, a: &GradedMatrix, twists: &[i64]) -> Result<bool, ComplexError> {
    check_cr_shape(b, a)?;
    if b.is_parametric() || a.is_parametric() {
        return Err(ComplexError::Parametric);
    }
    if !compose(b, a)?.is_zero() {
        return Ok(false);
    }
    for &m in twists {
        let rank_b = sections_matrix(b, m)?.rank();
        if rank_b != b.source.sections_dim(m) {
            return Ok(false);
        }
        let rank_a = sections_matrix(a, m)?.rank();
        if rank_a + rank_b != a.source.sections_dim(m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of the degree-`m` part of the cokernel of `A`.
pub fn hilbert_function(a: &GradedMatrix, m: i64) -> Result<i64, ComplexError> {
    let s = sections_matrix(a, m)?;
    Ok(a.target.sections_dim(m) as i64 - s.rank() as i64)
}

/// Linear Hilbert polynomial `multiplicity * m + constant`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertPoly {
    pub multiplicity: i64,
    pub constant: i64,
}

impl HilbertPoly {
    pub fn eval(&self, m: i64) -> i64 {
        self.multiplicity * m + self.constant
    }

    /// Constant term of the reduced polynomial `P(m) / multiplicity`.
    pub fn reduced_constant(&self) -> Rational {
        Rational::new(self.constant.into(), self.multiplicity.into())
    }
}

impl fmt::Display for HilbertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}m+{}", self.multiplicity, self.constant)
    }
}

/// Fit a linear polynomial through the Hilbert function at `m = 1..4` and
/// confirm it at `m = 5, 6`.
pub fn hilbert_polynomial(a: &GradedMatrix) -> Result<HilbertPoly, ComplexError> {
    let values = (1..=6).map(|m| hilbert_function(a, m)).collect::<Result<Vec<_>, _>>()?;
    let slope = values[1] - values[0];
    let constant = values[0] - slope;
    let fits = values.iter().zip(1..).all(|(&v, m)| v == slope * m + constant);
    if !fits {
        return Err(ComplexError::NotLinear(values));
    }
    Ok(HilbertPoly { multiplicity: slope, constant })
}

/// On-disk form of a pair: `{"B": 2x4 grid, "A": 4x2 grid}` of polynomial
/// strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFile {
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
}

impl PairFile {
    /// Parse into `(B, A)` with the twists of the common resolution.
    pub fn to_matrices(&self) -> Result<(GradedMatrix, GradedMatrix), ComplexError> {
        let b = GradedMatrix::parse(&L2_TWISTS, &L1_TWISTS, &self.b)?;
        let a = GradedMatrix::parse(&L1_TWISTS, &L0_TWISTS, &self.a)?;
        Ok((b, a))
    }

    pub fn from_matrices(b: &GradedMatrix, a: &GradedMatrix) -> Self {
        PairFile { b: b.to_grid(), a: a.to_grid() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tc() -> (GradedMatrix, GradedMatrix) {
        let b =
            GradedMatrix::parse_strs(&L2_TWISTS, &L1_TWISTS, &[&["0", "x2", "-x1", "x0"], &["0", "x3", "-x2", "x1"]])
                .unwrap();
        let a = GradedMatrix::parse_strs(
            &L1_TWISTS,
            &L0_TWISTS,
            &[&["0", "1"], &["x0*x2 - x1^2", "0"], &["x0*x3 - x1*x2", "0"], &["x1*x3 - x2^2", "0"]],
        )
        .unwrap();
        (b, a)
    }

    #[test]
    fn degree_validation() {
        let err =
            GradedMatrix::parse_strs(&L1_TWISTS, &L0_TWISTS, &[&["x0^2", "1"], &["0", "0"], &["0", "0"], &["0", "0"]]);
        assert!(matches!(err, Err(ComplexError::DegreeInconsistent { row: 0, col: 0, expected: 1, .. })));
        let neg = GradedMatrix::parse_strs(&[0], &[-1], &[&["1"]]);
        assert!(matches!(neg, Err(ComplexError::DegreeInconsistent { .. })));
    }

    #[test]
    fn twisted_cubic_pair_is_a_complex() {
        let (b, a) = tc();
        let ba = compose(&b, &a).unwrap();
        assert!(ba.is_zero());
        assert_eq!(ba.source().as_slice(), &L2_TWISTS);
        assert_eq!(ba.target().as_slice(), &L0_TWISTS);
    }

    #[test]
    fn compose_nonzero_and_shape_mismatch() {
        let b = GradedMatrix::parse_strs(&[-1], &[0, 0], &[&["x3", "0"]]).unwrap();
        let a = GradedMatrix::parse_strs(&[0, 0], &[1], &[&["x3"], &["0"]]).unwrap();
        assert_eq!(compose(&b, &a).unwrap().entry(0, 0), &parse_poly("x3^2").unwrap());
        let a_off = GradedMatrix::parse_strs(&[0, 0], &[1], &[&["0"], &["x3"]]).unwrap();
        assert!(compose(&b, &a_off).unwrap().is_zero());
        assert!(matches!(compose(&a, &a), Err(ComplexError::ShapeMismatch(_))));
    }

    #[test]
    fn section_matrix_shapes_and_ranks() {
        let (b, a) = tc();
        let sa = sections_matrix(&a, 3).unwrap();
        assert_eq!((sa.rows(), sa.cols()), (22, 30));
        assert_eq!(sa.rank(), 20);
        let sb = sections_matrix(&b, 3).unwrap();
        assert_eq!((sb.rows(), sb.cols()), (2, 22));
        assert_eq!(sb.rank(), 2);
        let s2 = sections_matrix(&a, 2).unwrap();
        assert_eq!((s2.rows(), s2.cols()), (7, 14));
    }

    #[test]
    fn exactness_and_negative_control() {
        let (b, a) = tc();
        assert!(check_exact_e(&b, &a).unwrap());
        assert!(check_exact_e_strict(&b, &a).unwrap());
        let b_bad = b
            .with_entry(1, 1, Poly::zero())
            .and_then(|m| m.with_entry(1, 2, Poly::zero()))
            .and_then(|m| m.with_entry(1, 3, Poly::zero()))
            .unwrap();
        assert_eq!(sections_matrix(&b_bad, 3).unwrap().rank(), 1);
        assert!(!check_exact_e(&b_bad, &a).unwrap());
        assert!(matches!(check_exact_e(&a, &b), Err(ComplexError::ShapeMismatch(_))));
    }

    #[test]
    fn twisted_cubic_hilbert_data() {
        let (_, a) = tc();
        assert_eq!(hilbert_function(&a, 0).unwrap(), 1);
        assert_eq!(hilbert_function(&a, 1).unwrap(), 4);
        assert_eq!(hilbert_function(&a, 2).unwrap(), 7);
        let hp = hilbert_polynomial(&a).unwrap();
        assert_eq!(hp, HilbertPoly { multiplicity: 3, constant: 1 });
        assert_eq!(hp.reduced_constant(), Rational::new(1.into(), 3.into()));
    }

    #[test]
    fn non_linear_hilbert_function_is_rejected() {
        // Cokernel O/(x0) ⊕ O(-1): a plane plus a free summand.
        let a =
            GradedMatrix::parse_strs(&L1_TWISTS, &L0_TWISTS, &[&["x0", "0"], &["0", "0"], &["0", "0"], &["0", "0"]])
                .unwrap();
        assert!(matches!(hilbert_polynomial(&a), Err(ComplexError::NotLinear(_))));
    }

    #[test]
    fn pair_file_round_trip() {
        let (b, a) = tc();
        let file = PairFile::from_matrices(&b, &a);
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains("\"B\"") && json.contains("\"A\""));
        let back: PairFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_matrices().unwrap(), (b, a));
    }
}
