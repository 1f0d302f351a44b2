//! One-shot run of every reference check, as a list of reports.

use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chow::{
    chern_h_dual, chern_sym3_rank3, m1_chow_computation, p3_ring, pbundle_betti, space_betti, BettiTable, Elem, Space,
    PRINTED_F,
};
use crate::complexes::{check_exact_e, compose, hilbert_function, hilbert_polynomial, HilbertPoly};
use crate::deform::{build_family, fiber_at, verify_transform_diagram, FamilyData};
use crate::moduli::{
    classify, fitting_ideal, ideal_piece_rank, ideals_equal, is_pair_stable, net_in_n1, net_is_stable, normal_form,
    sample, Fixture, NetQ, PairBA, Stratum,
};
use crate::polyring::{parse_poly, rat, Poly};
use crate::tangent::{net_tangent_check, stabilizer_dim, tangent_dim_m};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    /// Wall-clock time; left out of JSON so that output is reproducible.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Fixture JSON texts; defaults to the shipped files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureSet {
    texts: Vec<(Fixture, String)>,
}

impl Default for FixtureSet {
    fn default() -> Self {
        FixtureSet { texts: Fixture::ALL.iter().map(|f| (*f, f.json().to_string())).collect() }
    }
}

impl FixtureSet {
    pub fn with_override(mut self, fixture: Fixture, json: String) -> Self {
        for (f, text) in &mut self.texts {
            if *f == fixture {
                *text = json.clone();
            }
        }
        self
    }

    pub fn load(&self, fixture: Fixture) -> Result<PairBA, String> {
        let text = &self.texts.iter().find(|(f, _)| *f == fixture).expect("all fixtures present").1;
        PairBA::from_json(text).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproduceConfig {
    pub fixtures: FixtureSet,
    pub seed: u64,
    /// Random pairs per stratum and random group elements per fixture.
    pub samples: usize,
}

impl Default for ReproduceConfig {
    fn default() -> Self {
        ReproduceConfig { fixtures: FixtureSet::default(), seed: 2718, samples: 10 }
    }
}

type Outcome = Result<(Status, String), String>;

fn verdict(ok: bool, actual: String) -> Outcome {
    Ok((if ok { Status::Pass } else { Status::Fail }, actual))
}

fn run(check: String, expected: impl Into<String>, f: impl FnOnce() -> Outcome) -> Report {
    let start = Instant::now();
    let (status, actual) = f().unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
    Report { check, status, expected: expected.into(), actual, elapsed_ms: start.elapsed().as_millis() }
}

fn expected_stratum(f: Fixture) -> Stratum {
    match f {
        Fixture::TwistedCubic => Stratum::NonPlanar,
        Fixture::PlanarSmooth => Stratum::PlanarNonSingular,
        Fixture::PlanarNodal => Stratum::PlanarSingular,
    }
}

/// `dim T[F] M`: 12, 13, 14 on the three strata.
pub fn expected_tangent_dim(s: Stratum) -> usize {
    match s {
        Stratum::NonPlanar => 12,
        Stratum::PlanarNonSingular => 13,
        Stratum::PlanarSingular => 14,
    }
}

fn p(s: &str) -> Poly {
    parse_poly(s).expect("literal polynomial")
}

fn pair_summary(pair: &PairBA) -> Result<String, String> {
    let exact = check_exact_e(pair.b(), pair.a()).map_err(|e| e.to_string())?;
    let stable = is_pair_stable(pair.a());
    let h = hilbert_polynomial(pair.a()).map_err(|e| e.to_string())?;
    let h0 = hilbert_function(pair.a(), 0).map_err(|e| e.to_string())?;
    Ok(format!(
        "{}, {}, {}, Hilbert {h}, h(0) = {h0}",
        if exact { "exact" } else { "not exact" },
        if stable { "stable" } else { "unstable" },
        classify(pair).stratum().name()
    ))
}

const HILBERT_3M1: HilbertPoly = HilbertPoly { multiplicity: 3, constant: 1 };

fn fixture_checks(cfg: &ReproduceConfig, out: &mut Vec<Report>) {
    for f in Fixture::ALL {
        let name = f.name();
        let load = || cfg.fixtures.load(f);
        let stratum = expected_stratum(f);
        out.push(run(
            format!("{name}: exactness and Hilbert polynomial"),
            format!("exact, stable, {}, Hilbert 3m+1, h(0) = 1", stratum.name()),
            || {
                let pair = load()?;
                let ok = check_exact_e(pair.b(), pair.a()).map_err(|e| e.to_string())?
                    && is_pair_stable(pair.a())
                    && hilbert_polynomial(pair.a()).map_err(|e| e.to_string())? == HILBERT_3M1
                    && hilbert_function(pair.a(), 0).map_err(|e| e.to_string())? == 1
                    && classify(&pair).stratum() == stratum;
                verdict(ok, pair_summary(&pair)?)
            },
        ));
        out.push(run(format!("{name}: normal form"), "witness g with g·p = normal form; idempotent", || {
            let pair = load()?;
            let (nf, g) = normal_form(&pair).map_err(|e| e.to_string())?;
            let witness = g.act_on(&pair).map_err(|e| e.to_string())? == nf;
            let (again, _) = normal_form(&nf).map_err(|e| e.to_string())?;
            let shape = if stratum.is_planar() { nf.is_planar_normal_form() } else { nf.is_non_planar_normal_form() };
            verdict(
                witness && again == nf && shape,
                format!("witness {witness}, idempotent {}, shape {shape}", again == nf),
            )
        }));
        out.push(run(format!("{name}: tangent dimension"), expected_tangent_dim(stratum).to_string(), || {
            let d = tangent_dim_m(&load()?).map_err(|e| e.to_string())?;
            verdict(d == expected_tangent_dim(stratum), d.to_string())
        }));
        out.push(run(format!("{name}: stabilizer dimension"), "2", || {
            let d = stabilizer_dim(&load()?).map_err(|e| e.to_string())?;
            verdict(d == 2, d.to_string())
        }));
    }
}

fn ideal_diff(left: &[Poly], right: &[Poly], max_degree: i64) -> String {
    let mut parts = Vec::new();
    for d in 0..=max_degree {
        let (l, r) = (ideal_piece_rank(left, d), ideal_piece_rank(right, d));
        let both = ideal_piece_rank(&[left, right].concat(), d);
        if l != both || r != both {
            parts.push(format!("degree {d}: minors {l}, expected {r}, sum {both}"));
        }
    }
    if parts.is_empty() {
        "equal".into()
    } else {
        parts.join("; ")
    }
}

fn fitting_checks(cfg: &ReproduceConfig, out: &mut Vec<Report>) {
    out.push(run("FIX-TC: Fitting ideal".into(), "(q1, q2, q3)", || {
        let pair = cfg.fixtures.load(Fixture::TwistedCubic)?;
        let minors = fitting_ideal(pair.a()).nonzero_generators();
        let q = pair.qcol();
        verdict(ideals_equal(&minors, &q, 4), ideal_diff(&minors, &q, 4))
    }));
    out.push(run("FIX-PN: Fitting ideal".into(), "(w^2, w*l1, w*l2, l1*q2 - l2*q1)", || {
        let pair = cfg.fixtures.load(Fixture::PlanarNodal)?;
        let minors = fitting_ideal(pair.a()).nonzero_generators();
        let (w, l1, l2, q1, q2) = (p("x3"), p("x1"), p("x2"), p("x0*x2"), p("x1^2 + x0*x1"));
        let expected = [&w * &w, &w * &l1, &w * &l2, &l1 * &q2 - &l2 * &q1];
        verdict(ideals_equal(&minors, &expected, 4), ideal_diff(&minors, &expected, 4))
    }));
}

fn random_checks(cfg: &ReproduceConfig, out: &mut Vec<Report>) {
    for stratum in Stratum::ALL {
        let expected = expected_tangent_dim(stratum);
        out.push(run(
            format!("random {}: tangent and stabilizer dimensions", stratum.name()),
            format!("{} pairs, all with dim {expected}, stabilizer 2, Hilbert 3m+1", cfg.samples),
            || {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                let mut bad = Vec::new();
                for i in 0..cfg.samples {
                    let pair = sample::random_pair(&mut rng, stratum);
                    let d = tangent_dim_m(&pair).map_err(|e| e.to_string())?;
                    let s = stabilizer_dim(&pair).map_err(|e| e.to_string())?;
                    let h = hilbert_polynomial(pair.a()).map_err(|e| e.to_string())?;
                    let c = classify(&pair).stratum();
                    if d != expected || s != 2 || h != HILBERT_3M1 || c != stratum {
                        bad.push(format!("#{i}: dim {d}, stab {s}, {h}, {}", c.name()));
                    }
                }
                verdict(
                    bad.is_empty(),
                    if bad.is_empty() { format!("{} pairs agree", cfg.samples) } else { bad.join("; ") },
                )
            },
        ));
    }
    out.push(run(
        "group invariance of classification, stability and Hilbert data".into(),
        format!("{} random group elements per fixture preserve all data", cfg.samples),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
            let mut bad = Vec::new();
            for f in Fixture::ALL {
                let pair = cfg.fixtures.load(f)?;
                let before = pair_summary(&pair)?;
                for i in 0..cfg.samples {
                    let g = sample::random_group_element(&mut rng);
                    let moved = g.act_on(&pair).map_err(|e| e.to_string())?;
                    let after = pair_summary(&moved)?;
                    if after != before {
                        bad.push(format!("{} #{i}: {after}", f.name()));
                    }
                }
            }
            verdict(bad.is_empty(), if bad.is_empty() { "invariant".into() } else { bad.join("; ") })
        },
    ));
}

fn deform_checks(out: &mut Vec<Report>) {
    let family = || build_family(FamilyData::planar_nodal()).map_err(|e| e.to_string());
    out.push(run("deformation: B_t*A_t = 0".into(), "identically zero in t", || {
        let fam = family()?;
        let prod = compose(&fam.b_t(), &fam.a_t()).map_err(|e| e.to_string())?;
        match prod.first_nonzero() {
            None => verdict(true, "identically zero".into()),
            Some((i, j, q)) => verdict(false, format!("entry ({i}, {j}) = {q}")),
        }
    }));
    out.push(run("deformation: fibers".into(), "t = 1, -1, 2, 7: non-planar, 3m+1; t = 0: planar, singular", || {
        let fam = family()?;
        let mut parts = Vec::new();
        let mut ok = true;
        for (t0, want) in [
            (1, Stratum::NonPlanar),
            (-1, Stratum::NonPlanar),
            (2, Stratum::NonPlanar),
            (7, Stratum::NonPlanar),
            (0, Stratum::PlanarSingular),
        ] {
            let fiber = fiber_at(&fam, &rat(t0)).map_err(|e| e.to_string())?;
            let s = classify(&fiber).stratum();
            let h = hilbert_polynomial(fiber.a()).map_err(|e| e.to_string())?;
            ok &= s == want && h == HILBERT_3M1;
            parts.push(format!("t = {t0}: {}, {h}", s.name()));
        }
        verdict(ok, parts.join("; "))
    }));
    out.push(run("deformation: transform diagram".into(), "commutes at t = 1, -1", || {
        let fam = family()?;
        let mut parts = Vec::new();
        let mut ok = true;
        for t0 in [1, -1] {
            let c = verify_transform_diagram(&fam, &rat(t0)).map_err(|e| e.to_string())?;
            ok &= c;
            parts.push(format!("t = {t0}: {}", if c { "commutes" } else { "does not commute" }));
        }
        verdict(ok, parts.join("; "))
    }));
}

fn net_checks(out: &mut Vec<Report>) {
    let net = || NetQ::parse(&[["x1", "x3", "0"], ["x2", "0", "x3"]]).map_err(|e| e.to_string());
    out.push(run(
        "nets: tangent check at the N1 normal form".into(),
        "dim F_Q = 12, dim T'_Q = 5, intersection 0, 24 - 12 = 12",
        || {
            let c = net_tangent_check(&net()?, &p("x0")).map_err(|e| e.to_string())?;
            verdict(
                (c.dim_fq, c.dim_tq_prime, c.dim_intersection, c.dim_tqn) == (12, 5, 0, 12),
                format!(
                    "dim F_Q = {}, dim T'_Q = {}, intersection {}, 24 - {} = {}",
                    c.dim_fq, c.dim_tq_prime, c.dim_intersection, c.dim_fq, c.dim_tqn
                ),
            )
        },
    ));
    out.push(run("nets: stability and N1 membership".into(), "stable, in N1", || {
        let q = net()?;
        let stable = net_is_stable(&q).map_err(|e| e.to_string())?;
        let line = net_in_n1(&q).map_err(|e| e.to_string())?;
        verdict(
            stable && line.is_some(),
            format!(
                "{}, {}",
                if stable { "stable" } else { "unstable" },
                match line {
                    Some(l) => format!("in N1 (common factor {l})"),
                    None => "not in N1".into(),
                }
            ),
        )
    }));
}

fn betti_line(t: &BettiTable) -> String {
    let ranks: Vec<String> = t.betti.iter().map(u64::to_string).collect();
    format!("({}), e = {}", ranks.join(","), t.euler)
}

/// Reference Betti rows.
pub fn expected_betti(space: Space) -> BettiTable {
    let ranks: &[u64] = match space {
        Space::N => &crate::chow::N_BETTI,
        Space::N1 => &[1, 2, 3, 3, 2, 1],
        Space::E | Space::M0capM1 => &[1, 3, 6, 9, 11, 12, 12, 11, 9, 6, 3, 1],
        Space::M0 => &[1, 2, 6, 10, 16, 19, 22, 19, 16, 10, 6, 2, 1],
        Space::M1 => &[1, 3, 6, 9, 11, 12, 12, 12, 12, 11, 9, 6, 3, 1],
        Space::M => &[1, 2, 6, 10, 16, 19, 22, 20, 19, 15, 12, 7, 4, 1],
    };
    BettiTable::new(ranks.to_vec())
}

fn chow_checks(out: &mut Vec<Report>) {
    out.push(run("chow: c(S^3 H*)".into(), "220*s^3 + 55*s^2 + 10*s + 1", || {
        let h = chern_h_dual();
        let c = chern_sym3_rank3(&h.c(1), &h.c(2), &h.c(3), 3).map_err(|e| e.to_string())?.reduce(&p3_ring());
        let s = c.format(&["s".to_string()]);
        verdict(s == "220*s^3 + 55*s^2 + 10*s + 1", s)
    }));
    for space in [Space::N1, Space::M0capM1, Space::M0, Space::M1, Space::M] {
        let expected = expected_betti(space);
        out.push(run(format!("chow: Betti numbers of {}", space.name()), betti_line(&expected), || {
            let t = space_betti(space).map_err(|e| e.to_string())?;
            verdict(t == expected, betti_line(&t))
        }));
    }
    out.push(run("chow: Betti numbers of M1 by two routes".into(), "ring count = iterated bundle", || {
        let ring = space_betti(Space::M1).map_err(|e| e.to_string())?;
        let bundle = pbundle_betti(&pbundle_betti(&BettiTable::new(vec![1, 1, 1, 1]), 2), 8);
        verdict(ring == bundle, format!("{} vs {}", betti_line(&ring), betti_line(&bundle)))
    }));
    let names = ["s", "t", "u"].map(String::from);
    let printed = Elem::parse(PRINTED_F, &["s", "t", "u"]).map(|f| f.format(&names)).unwrap_or_default();
    out.push(run("chow: relation of A*(M1)".into(), printed, || {
        let comp = m1_chow_computation().map_err(|e| e.to_string())?;
        let names = comp.ring.names().to_vec();
        if comp.matches_printed() {
            verdict(true, comp.relation.format(&names))
        } else {
            verdict(
                false,
                format!("{} (difference {})", comp.relation.format(&names), comp.difference().format(&names)),
            )
        }
    }));
}

/// Run every check in a fixed order.
pub fn reproduce(cfg: &ReproduceConfig) -> Vec<Report> {
    let mut out = Vec::new();
    fixture_checks(cfg, &mut out);
    fitting_checks(cfg, &mut out);
    random_checks(cfg, &mut out);
    deform_checks(&mut out);
    net_checks(&mut out);
    chow_checks(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_nodal_fixture_fails_fitting() {
        let corrupted = r#"{
          "B": [["-x0*x2", "-x1", "x3", "0"], ["-x1^2", "-x2", "0", "x3"]],
          "A": [["x3", "0"], ["0", "x3"], ["x0*x2", "x1"], ["x1^2", "x2"]]
        }"#;
        let cfg = ReproduceConfig {
            fixtures: FixtureSet::default().with_override(Fixture::PlanarNodal, corrupted.into()),
            samples: 0,
            ..Default::default()
        };
        let mut out = Vec::new();
        fitting_checks(&cfg, &mut out);
        assert!(out[0].passed());
        assert_eq!(out[1].status, Status::Fail);
        assert!(out[1].actual.starts_with("degree 3:"), "{}", out[1].actual);
    }
}
