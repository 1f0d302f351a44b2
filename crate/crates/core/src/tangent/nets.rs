use serde::Serialize;

use super::TangentError;
use crate::moduli::NetQ;
use crate::polyring::{span_rank, wedge_rank, Poly, QMatrix, Rational, NUM_X};

/// Dimensions at a normal-form net `((l1, w, 0), (l2, 0, w))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NetTangentCheck {
    pub dim_fq: usize,
    pub dim_tq_prime: usize,
    pub dim_intersection: usize,
    /// `24 − dim F_Q`.
    pub dim_tqn: usize,
}

fn net_vector(rows: &[[Poly; 3]; 2]) -> Vec<Rational> {
    rows.iter().flatten().flat_map(|p| p.linear_coeffs().expect("linear entries").to_vec()).collect()
}

pub fn net_tangent_check(q: &NetQ, l3: &Poly) -> Result<NetTangentCheck, TangentError> {
    let e = |r, c| q.entry(r, c).clone();
    let (l1, w, l2) = (e(0, 0), e(0, 1), e(1, 0));
    if !e(0, 2).is_zero() || !e(1, 1).is_zero() || e(1, 2) != w {
        return Err(TangentError::MalformedNormalForm(q.to_string()));
    }
    if wedge_rank(&[w.clone(), l1.clone(), l2.clone(), l3.clone()]).map_err(crate::moduli::ModuliError::from)? != NUM_X
    {
        return Err(TangentError::DependentForms);
    }

    // F_Q = {S·Q − Q·R}.
    let mut fq = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let mut s = QMatrix::zeros(2, 2);
            s.set(i, j, Rational::from_integer(1.into()));
            fq.push(net_vector(&mul_left(&s, q)));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let mut r = QMatrix::zeros(3, 3);
            r.set(i, j, Rational::from_integer(1.into()));
            let rows = mul_right(q, &r);
            fq.push(net_vector(&rows).into_iter().map(|c| -c).collect());
        }
    }

    // T'_Q: (ρ l3, λ·l, 0 | σ l3, 0, λ·l).
    let z = Poly::zero();
    let mut tq = vec![
        net_vector(&[[l3.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), z.clone()]]),
        net_vector(&[[z.clone(), z.clone(), z.clone()], [l3.clone(), z.clone(), z.clone()]]),
    ];
    for l in [&l1, &l2, l3] {
        tq.push(net_vector(&[[z.clone(), l.clone(), z.clone()], [z.clone(), z.clone(), l.clone()]]));
    }

    let dim_fq = span_rank(&fq);
    let dim_tq_prime = span_rank(&tq);
    let both = span_rank(&[fq, tq].concat());
    Ok(NetTangentCheck {
        dim_fq,
        dim_tq_prime,
        dim_intersection: dim_fq + dim_tq_prime - both,
        dim_tqn: 2 * 3 * NUM_X - dim_fq,
    })
}

fn mul_left(s: &QMatrix, q: &NetQ) -> [[Poly; 3]; 2] {
    std::array::from_fn(|i| {
        std::array::from_fn(|c| {
            let mut acc = Poly::zero();
            for k in 0..2 {
                acc += q.entry(k, c).scale(s.get(i, k));
            }
            acc
        })
    })
}

fn mul_right(q: &NetQ, r: &QMatrix) -> [[Poly; 3]; 2] {
    std::array::from_fn(|i| {
        std::array::from_fn(|c| {
            let mut acc = Poly::zero();
            for k in 0..3 {
                acc += q.entry(i, k).scale(r.get(k, c));
            }
            acc
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn normal_form_net() {
        let q = NetQ::parse(&[["x1", "x3", "0"], ["x2", "0", "x3"]]).unwrap();
        let c = net_tangent_check(&q, &p("x0")).unwrap();
        assert_eq!((c.dim_fq, c.dim_tq_prime, c.dim_intersection, c.dim_tqn), (12, 5, 0, 12));
        let q = NetQ::parse(&[["x0 + x2", "x1", "0"], ["x3", "0", "x1"]]).unwrap();
        let c = net_tangent_check(&q, &p("x2")).unwrap();
        assert_eq!((c.dim_fq, c.dim_tq_prime, c.dim_intersection), (12, 5, 0));
    }

    #[test]
    fn degenerate_inputs() {
        let q = NetQ::parse(&[["x1", "x3", "0"], ["x1", "0", "x3"]]).unwrap();
        assert_eq!(net_tangent_check(&q, &p("x0")), Err(TangentError::DependentForms));
        let q = NetQ::parse(&[["x1", "x3", "x0"], ["x2", "0", "x3"]]).unwrap();
        assert!(matches!(net_tangent_check(&q, &p("x0")), Err(TangentError::MalformedNormalForm(_))));
    }
}
