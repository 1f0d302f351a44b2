use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ChowError, Elem, RewriteRing};

/// A total Chern class `1 + c1 + c2 + ...` truncated at a fixed degree;
/// `parts[k]` is the degree-`k` component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernClass {
    parts: Vec<Elem>,
}

impl ChernClass {
    /// From components `c1, c2, ...`; the truncation degree is `parts.len()`.
    pub fn from_components(nvars: usize, components: &[Elem]) -> Self {
        let mut parts = vec![Elem::one(nvars)];
        parts.extend(components.iter().cloned());
        ChernClass { parts }
    }

    pub fn one(nvars: usize, truncation: usize) -> Self {
        let mut parts = vec![Elem::one(nvars)];
        parts.extend((0..truncation).map(|_| Elem::zero(nvars)));
        ChernClass { parts }
    }

    /// Split a total class into homogeneous parts up to `truncation`.
    pub fn from_total(total: &Elem, truncation: usize) -> Result<Self, ChowError> {
        let parts: Vec<Elem> = (0..=truncation as u32).map(|d| total.part(d)).collect();
        if parts[0] != Elem::one(total.nvars()) {
            return Err(ChowError::NotUnit(total.format(&default_names(total.nvars()))));
        }
        Ok(ChernClass { parts })
    }

    pub fn nvars(&self) -> usize {
        self.parts[0].nvars()
    }

    pub fn truncation(&self) -> usize {
        self.parts.len() - 1
    }

    /// `c_k`, zero beyond the truncation.
    pub fn c(&self, k: usize) -> Elem {
        self.parts.get(k).cloned().unwrap_or_else(|| Elem::zero(self.nvars()))
    }

    pub fn total(&self) -> Elem {
        self.parts.iter().fold(Elem::zero(self.nvars()), |acc, p| acc.add(p))
    }

    pub fn truncate(&self, truncation: usize) -> ChernClass {
        ChernClass { parts: (0..=truncation).map(|k| self.c(k)).collect() }
    }

    pub fn extend(&self, nvars: usize) -> ChernClass {
        ChernClass { parts: self.parts.iter().map(|p| p.extend(nvars)).collect() }
    }

    /// Product, truncated at the smaller truncation degree.
    pub fn product(&self, other: &ChernClass) -> ChernClass {
        let n = self.truncation().min(other.truncation());
        let parts = (0..=n)
            .map(|k| (0..=k).fold(Elem::zero(self.nvars()), |acc, i| acc.add(&self.c(i).mul(&other.c(k - i)))))
            .collect();
        ChernClass { parts }
    }

    /// Reduce every component in `ring`.
    pub fn reduce(&self, ring: &RewriteRing) -> ChernClass {
        ChernClass { parts: self.parts.iter().map(|p| ring.reduce(p)).collect() }
    }

    /// Highest `k` with `c_k ≠ 0`.
    pub fn top_degree(&self) -> usize {
        (0..self.parts.len()).rev().find(|&k| !self.parts[k].is_zero()).unwrap_or(0)
    }

    pub fn format(&self, names: &[String]) -> String {
        self.total().format(names)
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Truncated inverse by the recursion `d_k = −Σ_{i≥1} c_i·d_{k−i}`.
pub fn chern_inverse(c: &ChernClass) -> ChernClass {
    let n = c.nvars();
    let mut parts = vec![Elem::one(n)];
    for k in 1..=c.truncation() {
        let mut acc = Elem::zero(n);
        for i in 1..=k {
            acc = acc.add(&c.c(i).mul(&parts[k - i]));
        }
        parts.push(acc.scale(&BigInt::from(-1)));
    }
    ChernClass { parts }
}

type Sym = BTreeMap<[u32; 3], BigInt>;

fn sym_mul(a: &Sym, b: &Sym, max_deg: u32) -> Sym {
    let mut out = Sym::new();
    for (m1, c1) in a {
        for (m2, c2) in b {
            let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
            if m.iter().sum::<u32>() > max_deg {
                continue;
            }
            *out.entry(m).or_default() += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn elementary(k: usize) -> Sym {
    let mut e = Sym::new();
    match k {
        1 => {
            for i in 0..3 {
                let mut m = [0; 3];
                m[i] = 1;
                e.insert(m, 1.into());
            }
        }
        2 => {
            for m in [[1, 1, 0], [1, 0, 1], [0, 1, 1]] {
                e.insert(m, 1.into());
            }
        }
        _ => {
            e.insert([1, 1, 1], 1.into());
        }
    }
    e
}

/// Write a symmetric polynomial in three roots as a polynomial in
/// `e1, e2, e3`; keys are exponents `(a, b, c)` of `e1^a e2^b e3^c`.
pub(crate) fn to_elementary(p: &Sym) -> Result<BTreeMap<[u32; 3], BigInt>, ChowError> {
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    let max_deg = p.keys().map(|m| m.iter().sum()).max().unwrap_or(0);
    while let Some((lead, c)) = rest.iter().next_back().map(|(m, c)| (*m, c.clone())) {
        let [a, b, g] = lead;
        if a < b || b < g {
            return Err(ChowError::SymmetricReduction(format!("leading exponent {lead:?} is not a partition")));
        }
        let e = [a - b, b - g, g];
        let mut term = Sym::from([([0, 0, 0], BigInt::from(1))]);
        for (k, &pow) in e.iter().enumerate() {
            for _ in 0..pow {
                term = sym_mul(&term, &elementary(k + 1), max_deg);
            }
        }
        for (m, tc) in term {
            let slot = rest.entry(m).or_default();
            *slot -= &c * tc;
        }
        rest.retain(|_, v| !v.is_zero());
        out.insert(e, c);
    }
    Ok(out)
}

/// Total Chern class of `S³E` for a rank-3 bundle `E` with Chern classes
/// `c1, c2, c3` (homogeneous of degrees 1, 2, 3), truncated at `truncation`.
pub fn chern_sym3_rank3(c1: &Elem, c2: &Elem, c3: &Elem, truncation: usize) -> Result<ChernClass, ChowError> {
    let n = c1.nvars();
    let max_deg = truncation as u32;
    let mut prod = Sym::from([([0, 0, 0], BigInt::from(1))]);
    for i in 0..=3u32 {
        for j in 0..=3 - i {
            let k = 3 - i - j;
            let mut factor = Sym::from([([0, 0, 0], BigInt::from(1))]);
            for (idx, w) in [i, j, k].into_iter().enumerate() {
                if w > 0 {
                    let mut m = [0; 3];
                    m[idx] = 1;
                    factor.insert(m, w.into());
                }
            }
            prod = sym_mul(&prod, &factor, max_deg);
        }
    }
    let in_e = to_elementary(&prod)?;
    let mut parts = vec![Elem::zero(n); truncation + 1];
    let cs = [c1, c2, c3];
    for (e, coeff) in in_e {
        let weight = (e[0] + 2 * e[1] + 3 * e[2]) as usize;
        let mut value = Elem::constant(n, coeff);
        for (k, &pow) in e.iter().enumerate() {
            value = value.mul(&cs[k].pow(pow));
        }
        parts[weight] = parts[weight].add(&value);
    }
    Ok(ChernClass { parts })
}
