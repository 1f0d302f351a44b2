use crate::complexes::{GradedMatrix, TwistList, L0_TWISTS, L1_TWISTS, L2_TWISTS};
use crate::polyring::{graded_dim, monomial_basis, rat, Monomial, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Slot {
    row: usize,
    col: usize,
    degree: i64,
    offset: usize,
}

/// Coordinates on the graded matrices between two twist lists: entries in
/// row-major order, each entry's coefficients in descending graded-lex
/// order. Entries of negative degree carry no coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixLayout {
    source: TwistList,
    target: TwistList,
    slots: Vec<Slot>,
    dim: usize,
}

impl MatrixLayout {
    pub fn new(source: TwistList, target: TwistList) -> Self {
        let mut slots = Vec::new();
        let mut offset = 0;
        for row in 0..source.len() {
            for col in 0..target.len() {
                let degree = (target.as_slice()[col] - source.as_slice()[row]) as i64;
                if degree >= 0 {
                    slots.push(Slot { row, col, degree, offset });
                    offset += graded_dim(degree);
                }
            }
        }
        MatrixLayout { source, target, slots, dim: offset }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// First coordinate of entry `(row, col)`.
    pub fn offset(&self, row: usize, col: usize) -> Option<usize> {
        self.slots.iter().find(|s| s.row == row && s.col == col).map(|s| s.offset)
    }

    /// `(row, col, monomial)` of a coordinate.
    pub fn describe(&self, index: usize) -> (usize, usize, Monomial) {
        let s = self.slots.iter().rev().find(|s| s.offset <= index).expect("index in range");
        (s.row, s.col, monomial_basis(s.degree)[index - s.offset])
    }

    pub fn vector(&self, m: &GradedMatrix) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.dim);
        for s in &self.slots {
            v.extend(m.entry(s.row, s.col).coeff_vector(s.degree).expect("entry of layout degree"));
        }
        v
    }

    pub fn matrix(&self, v: &[Rational]) -> GradedMatrix {
        let mut entries = vec![vec![Poly::zero(); self.target.len()]; self.source.len()];
        for s in &self.slots {
            let n = graded_dim(s.degree);
            entries[s.row][s.col] = Poly::from_coeff_vector(s.degree, &v[s.offset..s.offset + n]);
        }
        GradedMatrix::new(self.source.clone(), self.target.clone(), entries).expect("layout degrees")
    }

    /// One matrix per coordinate, with a single monomial entry.
    pub fn basis_matrices(&self) -> Vec<GradedMatrix> {
        (0..self.dim)
            .map(|i| {
                let mut v = vec![rat(0); self.dim];
                v[i] = rat(1);
                self.matrix(&v)
            })
            .collect()
    }
}

/// Coordinates on pairs `(B1, A1)`: the `B`-block (44) then the `A`-block (47).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientCoords {
    pub b: MatrixLayout,
    pub a: MatrixLayout,
}

impl Default for AmbientCoords {
    fn default() -> Self {
        AmbientCoords::new()
    }
}

impl AmbientCoords {
    pub fn new() -> Self {
        let (l2, l1, l0): (TwistList, TwistList, TwistList) =
            (L2_TWISTS[..].into(), L1_TWISTS[..].into(), L0_TWISTS[..].into());
        AmbientCoords { b: MatrixLayout::new(l2, l1.clone()), a: MatrixLayout::new(l1, l0) }
    }

    pub fn dim(&self) -> usize {
        self.b.dim() + self.a.dim()
    }

    /// Coordinate of the degree-0 entry of `A1`.
    pub fn lambda_index(&self) -> usize {
        self.b.dim() + self.a.offset(0, 1).expect("degree-0 entry")
    }

    pub fn vector(&self, b1: &GradedMatrix, a1: &GradedMatrix) -> Vec<Rational> {
        let mut v = self.b.vector(b1);
        v.extend(self.a.vector(a1));
        v
    }

    pub fn split(&self, v: &[Rational]) -> (GradedMatrix, GradedMatrix) {
        let (vb, va) = v.split_at(self.b.dim());
        (self.b.matrix(vb), self.a.matrix(va))
    }

    pub fn basis_pairs(&self) -> Vec<(GradedMatrix, GradedMatrix)> {
        let zb = self.b.matrix(&vec![rat(0); self.b.dim()]);
        let za = self.a.matrix(&vec![rat(0); self.a.dim()]);
        let mut out: Vec<_> = self.b.basis_matrices().into_iter().map(|b| (b, za.clone())).collect();
        out.extend(self.a.basis_matrices().into_iter().map(|a| (zb.clone(), a)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::Fixture;

    #[test]
    fn ambient_layout() {
        let amb = AmbientCoords::new();
        assert_eq!(amb.b.dim(), 44);
        assert_eq!(amb.a.dim(), 47);
        assert_eq!(amb.dim(), 91);
        assert_eq!(amb.lambda_index(), 48);
        let (r, c, m) = amb.a.describe(4);
        assert_eq!((r, c, m), (0, 1, Monomial::ONE));
        let target = MatrixLayout::new(L2_TWISTS[..].into(), L0_TWISTS[..].into());
        assert_eq!(target.dim(), 60);
    }

    #[test]
    fn round_trip() {
        let pair = Fixture::PlanarNodal.load();
        let amb = AmbientCoords::new();
        let v = amb.vector(pair.b(), pair.a());
        assert_eq!(amb.split(&v), (pair.b().clone(), pair.a().clone()));
        assert_eq!(v[amb.lambda_index()], rat(0));
    }
}
