//! Exact linear algebra over the rationals.
//!
//! Rank and kernel use fraction-free (Bareiss) elimination on an integer
//! copy of the matrix; each row is first cleared of denominators, which
//! changes neither the rank nor the kernel.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Build from row vectors; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect())
    }

    /// Matrix whose columns are the given vectors, with `rows` rows.
    pub fn from_cols(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = QMatrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Stack `other` to the right of `self`.
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let rows = (0..self.rows).map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect()).collect();
        QMatrix::from_rows_sized(rows, self.rows, self.cols + other.cols)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn from_rows_sized(rows: Vec<Vec<Rational>>, r: usize, c: usize) -> QMatrix {
        if r == 0 {
            return QMatrix::zeros(0, c);
        }
        QMatrix::from_rows(rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Exact rank by sparse integer elimination on primitive rows.
    pub fn rank(&self) -> usize {
        let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for i in 0..self.rows {
            let den = self.row(i).iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let mut row: SparseRow = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j, (c * Rational::from_integer(den.clone())).to_integer()))
                .collect();
            while let Some(&(lead, _)) = row.first() {
                match pivots.get(&lead) {
                    Some(p) => row = eliminate_lead(&row, p),
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }

    /// Rank by Bareiss elimination; slower, kept as a cross-check.
    pub fn rank_dense(&self) -> usize {
        Echelon::compute(self).pivots.len()
    }

    /// Exact rank and a kernel basis of primitive integer vectors.
    ///
    /// The basis has `cols - rank` vectors, one per non-pivot column, each
    /// with a positive entry in its free column.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<BigInt>>) {
        let ech = Echelon::compute(self);
        let kernel = ech.kernel();
        (ech.pivots.len(), kernel)
    }

    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        self.rank_and_kernel().1
    }

    /// Indices of columns that form a basis of the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        Echelon::compute(self).pivots
    }

    /// One solution `x` of `self * x = rhs`, if the system is consistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows, "rhs length");
        let aug = self.hstack(&QMatrix::from_cols(self.rows, &[rhs.to_vec()]));
        let ech = Echelon::compute(&aug);
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        // Back-substitute with every free variable set to zero.
        let mut x = vec![Rational::zero(); self.cols + 1];
        x[self.cols] = -Rational::one();
        ech.back_substitute(&mut x);
        x.truncate(self.cols);
        Some(x)
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let ech = Echelon::compute(self);
        if ech.pivots.len() < n {
            return Rational::zero();
        }
        // After full Bareiss elimination the last pivot is the determinant of
        // the row-scaled integer matrix, up to the sign of the row swaps.
        let last = ech.rows[n - 1][n - 1].clone();
        let mut det = Rational::from_integer(last);
        if ech.swaps % 2 == 1 {
            det = -det;
        }
        det / &ech.row_scale
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.rows;
        assert_eq!(n, self.cols, "inverse of a non-square matrix");
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            cols.push(self.solve(&e)?);
        }
        Some(QMatrix::from_cols(n, &cols))
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

type SparseRow = Vec<(usize, BigInt)>;

/// `p0·row − r0·pivot` for equal leading columns, made primitive.
fn eliminate_lead(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let (a, b) = (&pivot[0].1, &row[0].1);
    let g = a.gcd(b);
    let (fa, fb) = (a / &g, b / &g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, &fa * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&fb * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, &fa * &row[i - 1].1 - &fb * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    let content = out.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for (_, v) in &mut out {
            *v /= &content;
        }
    }
    out
}

/// Integer row-echelon form produced by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    cols: usize,
    swaps: usize,
    /// Product of the per-row denominator multipliers.
    row_scale: Rational,
}

impl Echelon {
    fn compute(m: &QMatrix) -> Echelon {
        let mut row_scale = Rational::one();
        let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
            .map(|i| {
                let row = m.row(i);
                let den = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                row_scale *= Rational::from_integer(den.clone());
                row.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                rows.swap(p, r);
                swaps += 1;
            }
            let (top, rest) = rows.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = pivot_row[c].clone();
            for row in rest.iter_mut() {
                let factor = row[c].clone();
                for j in c + 1..m.cols {
                    let v = &pivot * &row[j] - &factor * &pivot_row[j];
                    debug_assert!((&v % &prev).is_zero());
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
            // Bareiss keeps the pivot rows themselves unchanged once fixed, so
            // their entries stay exact minors.
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        Echelon { rows, pivots, cols: m.cols, swaps, row_scale }
    }

    /// Solve the pivot variables of `x` in place, given its free entries.
    fn back_substitute(&self, x: &mut [Rational]) {
        for (k, &p) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[k];
            let mut acc = Rational::zero();
            for j in p + 1..self.cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc += Rational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[p] = -acc / Rational::from_integer(row[p].clone());
        }
    }

    fn kernel(&self) -> Vec<Vec<BigInt>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                self.back_substitute(&mut x);
                primitive_integer_vector(&x)
            })
            .collect()
    }
}

/// Scale a rational vector to a primitive integer vector, keeping its
/// direction (no sign flip).
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

pub fn to_rational_vec(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

/// Rank of the span of a list of vectors of equal length.
pub fn span_rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMatrix::from_rows(vectors.to_vec()).rank()
}

pub fn is_zero_vector(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = QMatrix::identity(2).rank_and_kernel();
        assert_eq!(r, 2);
        assert!(k.is_empty());
    }

    #[test]
    fn sparse_and_dense_rank_agree() {
        let m = QMatrix::from_rows(vec![
            vec![q(2), q(4), q(0), q(6)],
            vec![q(0), q(0), Rational::new(5.into(), 3.into()), Rational::new(1.into(), 3.into())],
            vec![q(0), q(0), q(0), q(0)],
            vec![q(2), q(4), q(15), q(9)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_dense(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn zero_matrix_kernel() {
        let (r, k) = QMatrix::zeros(3, 4).rank_and_kernel();
        assert_eq!(r, 0);
        assert_eq!(k.len(), 4);
    }

    #[test]
    fn proportional_rows() {
        let m = QMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        let (r, k) = m.rank_and_kernel();
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![BigInt::from(-2), BigInt::from(1)]]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = QMatrix::from_rows(vec![
            vec![q(1), Rational::new(1.into(), 2.into()), q(0), q(3)],
            vec![q(2), q(1), q(1), q(0)],
            vec![q(3), Rational::new(3.into(), 2.into()), q(1), q(3)],
        ]);
        let (r, k) = m.rank_and_kernel();
        assert_eq!(r, 2);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(&to_rational_vec(v)).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = QMatrix::from_int_rows(&[vec![2, 1], vec![1, 1]]);
        let x = m.solve(&[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        assert_eq!(m.determinant(), q(1));
        let singular = QMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(singular.solve(&[q(1), q(0)]).is_none());
        assert!(singular.inverse().is_none());
        assert_eq!(singular.determinant(), q(0));
    }

    #[test]
    fn determinant_with_swaps_and_fractions() {
        let m = QMatrix::from_rows(vec![
            vec![q(0), q(1), q(2)],
            vec![Rational::new(1.into(), 2.into()), q(0), q(1)],
            vec![q(1), q(1), q(0)],
        ]);
        // Cofactor expansion: 0*(0-1) - 1*(0-1) + 2*(1/2-0) = 2
        assert_eq!(m.determinant(), q(2));
    }
}
