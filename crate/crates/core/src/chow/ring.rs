use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ChowError;
use crate::polyring::{parse_poly, NUM_X};

/// An integer polynomial in the generators of a [`RewriteRing`]; all
/// generators have degree 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Elem {
    pub fn zero(nvars: usize) -> Self {
        Elem { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Elem::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Elem::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Elem::monomial(nvars, e, 1)
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        let mut out = Elem::zero(nvars);
        out.add_term(exps, c.into());
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Elem) -> Elem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> Elem {
        let mut out = Elem::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        let mut out = Elem::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Vec<u32> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Elem {
        (0..e).fold(Elem::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// The homogeneous component of degree `d`.
    pub fn part(&self, d: u32) -> Elem {
        let mut out = Elem::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.iter().sum::<u32>() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// The same element in a ring with `nvars ≥ self.nvars` generators.
    pub fn extend(&self, nvars: usize) -> Elem {
        let mut out = Elem::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = m.clone();
            e.resize(nvars, 0);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Render with the given generator names, highest degree first.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.iter().rev().cmp(a.iter().rev()))
        });
        let mut out = String::new();
        for (k, m) in keys.into_iter().enumerate() {
            let c = &self.terms[m];
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            if factors.is_empty() {
                write!(out, "{abs}").unwrap();
            } else if abs.is_one() {
                out.push_str(&factors.join("*"));
            } else {
                write!(out, "{abs}*{}", factors.join("*")).unwrap();
            }
        }
        out
    }

    /// Parse an integer polynomial in the given names (at most four).
    pub fn parse(text: &str, names: &[&str]) -> Result<Elem, ChowError> {
        assert!(names.len() <= NUM_X);
        let mut mapped = text.to_string();
        for (i, n) in names.iter().enumerate() {
            mapped = mapped.replace(n, &format!("x{i}"));
        }
        let p = parse_poly(&mapped).map_err(|e| ChowError::Parse(format!("`{text}`: {e}")))?;
        let mut out = Elem::zero(names.len());
        for (m, c) in p.terms() {
            if !c.is_integer() || m.exponents()[names.len()..].iter().any(|e| *e > 0) {
                return Err(ChowError::Parse(format!("`{text}` is not an integer polynomial in {names:?}")));
            }
            out.add_term(m.exponents()[..names.len()].iter().map(|e| *e as u32).collect(), c.to_integer());
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Relation {
    power: u32,
    tail: Elem,
}

/// `Z[v0, v1, ...]` modulo relations `v_k^{p_k} + tail_k`, where `tail_k`
/// has `v_k`-degree below `p_k` and involves no `v_j` with `j > k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRing {
    names: Vec<String>,
    relations: Vec<Option<Relation>>,
}

impl RewriteRing {
    pub fn free(names: &[&str]) -> Self {
        RewriteRing { names: names.iter().map(|s| s.to_string()).collect(), relations: vec![None; names.len()] }
    }

    /// The Chow ring of a point.
    pub fn point() -> Self {
        RewriteRing::free(&[])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(|i| Elem::var(self.nvars(), i))
    }

    /// Adjoin a new generator without relation.
    pub fn adjoin(&self, name: &str) -> RewriteRing {
        let mut out = self.clone();
        out.names.push(name.to_string());
        out.relations.push(None);
        for r in out.relations.iter_mut().flatten() {
            r.tail = r.tail.extend(out.names.len());
        }
        out
    }

    /// Install the relation for generator `k`; `relation` must be monic in
    /// a pure power of `v_k`.
    pub fn with_relation(&self, k: usize, relation: &Elem) -> Result<RewriteRing, ChowError> {
        let n = self.nvars();
        let bad = |m: &str| Err(ChowError::BadRelation(format!("{}: {m}", relation.format(&self.names))));
        let Some(power) = relation.terms().map(|(m, _)| m[k]).max() else {
            return bad("zero relation");
        };
        let mut lead = vec![0; n];
        lead[k] = power;
        if power == 0 || relation.coeff(&lead) != BigInt::one() {
            return bad("leading term is not a monic pure power");
        }
        let tail = relation.sub(&Elem::monomial(n, lead, 1));
        if tail.terms().any(|(m, _)| m[k] >= power || m[k + 1..].iter().any(|e| *e > 0)) {
            return bad("tail involves later generators or the leading power");
        }
        let mut out = self.clone();
        out.relations[k] = Some(Relation { power, tail });
        Ok(out)
    }

    /// The relation polynomial of generator `k`.
    pub fn relation(&self, k: usize) -> Option<Elem> {
        self.relations[k].as_ref().map(|r| {
            let mut lead = vec![0; self.nvars()];
            lead[k] = r.power;
            r.tail.add(&Elem::monomial(self.nvars(), lead, 1))
        })
    }

    pub fn relations(&self) -> Vec<Elem> {
        (0..self.nvars()).filter_map(|k| self.relation(k)).collect()
    }

    /// Normal form: rewrite `v_k^{p_k} → −tail_k` until no monomial is
    /// divisible by a leading power.
    pub fn reduce(&self, e: &Elem) -> Elem {
        let mut out = Elem::zero(self.nvars());
        let mut work: Vec<(Vec<u32>, BigInt)> = e.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = work.pop() {
            let hit = (0..self.nvars())
                .rev()
                .find_map(|k| self.relations[k].as_ref().filter(|r| m[k] >= r.power).map(|r| (k, r)));
            match hit {
                None => out.add_term(m, c),
                Some((k, r)) => {
                    let mut rest = m.clone();
                    rest[k] -= r.power;
                    for (tm, tc) in r.tail.terms() {
                        let nm: Vec<u32> = rest.iter().zip(tm).map(|(a, b)| a + b).collect();
                        work.push((nm, -(&c * tc)));
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&a.mul(b))
    }

    /// Normal-form monomials, or `None` when some generator is free.
    pub fn basis(&self) -> Option<Vec<Vec<u32>>> {
        let powers: Vec<u32> = self.relations.iter().map(|r| r.as_ref().map(|r| r.power)).collect::<Option<_>>()?;
        let mut out = vec![Vec::new()];
        for p in powers {
            out = out
                .into_iter()
                .flat_map(|m: Vec<u32>| {
                    (0..p).map(move |e| {
                        let mut n = m.clone();
                        n.push(e);
                        n
                    })
                })
                .collect();
        }
        Some(out)
    }

    pub fn format(&self, e: &Elem) -> String {
        e.format(&self.names)
    }

    /// Presentation `Z[s, t]/(r1, r2)`.
    pub fn presentation(&self) -> String {
        let rels: Vec<String> = self.relations().iter().map(|r| self.format(r)).collect();
        format!("Z[{}]/({})", self.names.join(", "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let e = Elem::parse("t^3 - s*t^2 + s^2*t - s^3", &["s", "t"]).unwrap();
        assert_eq!(e.format(&["s".into(), "t".into()]), "t^3 - s*t^2 + s^2*t - s^3");
        assert!(Elem::parse("s/2", &["s"]).is_err());
    }

    #[test]
    fn reduction_in_projective_bundle() {
        let r = RewriteRing::free(&["s", "t"]);
        let r = r.with_relation(0, &Elem::parse("s^4", &["s", "t"]).unwrap()).unwrap();
        let r = r.with_relation(1, &Elem::parse("t^3 - s*t^2 + s^2*t - s^3", &["s", "t"]).unwrap()).unwrap();
        let t = r.var("t").unwrap();
        assert_eq!(r.format(&r.reduce(&t.pow(3))), "s*t^2 - s^2*t + s^3");
        assert!(r.reduce(&t.pow(4)).is_zero());
        assert_eq!(r.basis().unwrap().len(), 12);
    }

    #[test]
    fn bad_relations() {
        let r = RewriteRing::free(&["s", "t"]);
        assert!(r.with_relation(0, &Elem::parse("s^4 + t", &["s", "t"]).unwrap()).is_err());
        assert!(r.with_relation(1, &Elem::parse("2*t^3", &["s", "t"]).unwrap()).is_err());
        assert!(r.basis().is_none());
    }
}
