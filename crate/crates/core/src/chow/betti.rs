use std::fmt::Write;

use serde::Serialize;

use super::{ChowError, RewriteRing};

/// Ranks of the Chow groups `A_i`, indexed by dimension `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BettiTable {
    pub betti: Vec<u64>,
    pub euler: u64,
}

impl BettiTable {
    pub fn new(ranks: Vec<u64>) -> Self {
        let euler = ranks.iter().sum();
        BettiTable { betti: ranks, euler }
    }

    pub fn point() -> Self {
        BettiTable::new(vec![1])
    }

    pub fn dim(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }

    pub fn rank(&self, i: usize) -> u64 {
        self.betti.get(i).copied().unwrap_or(0)
    }

    pub fn is_palindromic(&self) -> bool {
        self.betti.iter().eq(self.betti.iter().rev())
    }

    /// A two-row markdown table `i | 0 | 1 | ... | e`.
    pub fn markdown(&self, label: &str) -> String {
        let mut out = String::from("| i |");
        for i in 0..self.betti.len() {
            write!(out, " {i} |").unwrap();
        }
        out.push_str(" e |\n|---|");
        out.push_str(&"---|".repeat(self.betti.len() + 1));
        write!(out, "\n| {label} |").unwrap();
        for b in &self.betti {
            write!(out, " {b} |").unwrap();
        }
        writeln!(out, " {} |", self.euler).unwrap();
        out
    }
}

/// Count normal-form monomials by codimension and re-index by dimension.
pub fn betti_from_ring(ring: &RewriteRing, dim: usize) -> Result<BettiTable, ChowError> {
    let basis = ring.basis().ok_or(ChowError::InfiniteBasis)?;
    let mut ranks = vec![0u64; dim + 1];
    for m in basis {
        let codim = m.iter().sum::<u32>() as usize;
        if codim > dim {
            return Err(ChowError::DegreeExceedsDimension { degree: codim, dim });
        }
        ranks[dim - codim] += 1;
    }
    Ok(BettiTable::new(ranks))
}

/// Betti numbers of a projective bundle with fibre `P^fiber_dim`.
pub fn pbundle_betti(base: &BettiTable, fiber_dim: usize) -> BettiTable {
    let mut ranks = vec![0u64; base.betti.len() + fiber_dim];
    for (i, b) in base.betti.iter().enumerate() {
        for k in 0..=fiber_dim {
            ranks[i + k] += b;
        }
    }
    BettiTable::new(ranks)
}

fn combine(plus: &[&BettiTable], minus: &BettiTable) -> Result<BettiTable, ChowError> {
    let len = plus.iter().map(|t| t.betti.len()).chain([minus.betti.len()]).max().unwrap_or(0);
    let mut ranks = Vec::with_capacity(len);
    for i in 0..len {
        let v = plus.iter().map(|t| t.rank(i) as i64).sum::<i64>() - minus.rank(i) as i64;
        if v < 0 {
            return Err(ChowError::NegativeRank { index: i, value: v });
        }
        ranks.push(v as u64);
    }
    while ranks.len() > 1 && ranks.last() == Some(&0) {
        ranks.pop();
    }
    Ok(BettiTable::new(ranks))
}

/// `b_i(Bl) = b_i(E) + b_i(N) − b_i(N1)`.
pub fn blowup_betti(b_n: &BettiTable, b_n1: &BettiTable, b_e: &BettiTable) -> Result<BettiTable, ChowError> {
    combine(&[b_e, b_n], b_n1)
}

/// `b_i(X) = b_i(X0) + b_i(X1) − b_i(X0 ∩ X1)`.
pub fn mayer_vietoris_betti(b0: &BettiTable, b1: &BettiTable, b01: &BettiTable) -> Result<BettiTable, ChowError> {
    combine(&[b0, b1], b01)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::Elem;

    #[test]
    fn bundles() {
        let p3 = BettiTable::new(vec![1, 1, 1, 1]);
        assert_eq!(pbundle_betti(&p3, 2).betti, vec![1, 2, 3, 3, 2, 1]);
        assert_eq!(pbundle_betti(&BettiTable::point(), 2).betti, vec![1, 1, 1]);
        let flag = BettiTable::new(vec![1, 2, 3, 3, 2, 1]);
        let e = pbundle_betti(&flag, 6);
        assert_eq!(e.betti, vec![1, 3, 6, 9, 11, 12, 12, 11, 9, 6, 3, 1]);
        assert_eq!(e.euler, 84);
    }

    #[test]
    fn plane_ring() {
        let ring = RewriteRing::free(&["u"]).with_relation(0, &Elem::parse("u^3", &["u"]).unwrap()).unwrap();
        assert_eq!(betti_from_ring(&ring, 2).unwrap().betti, vec![1, 1, 1]);
        assert_eq!(betti_from_ring(&ring, 1), Err(ChowError::DegreeExceedsDimension { degree: 2, dim: 1 }));
        assert_eq!(betti_from_ring(&RewriteRing::free(&["u"]), 2), Err(ChowError::InfiniteBasis));
    }

    #[test]
    fn degenerate_combinations() {
        let a = BettiTable::new(vec![1, 2, 1]);
        let b = BettiTable::new(vec![1, 1]);
        let empty = BettiTable::new(vec![0]);
        assert_eq!(blowup_betti(&a, &empty, &b).unwrap().betti, vec![2, 3, 1]);
        assert_eq!(blowup_betti(&a, &b, &b).unwrap(), a);
        assert_eq!(mayer_vietoris_betti(&a, &b, &a).unwrap(), b);
        assert!(matches!(mayer_vietoris_betti(&b, &b, &a), Err(ChowError::NegativeRank { .. })));
        assert!(a.is_palindromic());
        assert!(a.markdown("b_i").contains("| b_i | 1 | 2 | 1 | 4 |"));
    }
}
