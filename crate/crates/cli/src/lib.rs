//! Command-line surface for the `cubic-moduli` library.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubic_moduli::chow::{m1_chow_computation, space_betti, BettiTable, Space};
use cubic_moduli::complexes::{check_exact_e, hilbert_function, hilbert_polynomial, PairFile};
use cubic_moduli::deform::{
    build_family, family_hilbert_check, family_sample_points, fiber_at, verify_family_complex,
    verify_transform_diagram, FamilyData, FamilyFile,
};
use cubic_moduli::moduli::{
    classify, fitting_ideal, is_pair_stable, net_in_n1, net_is_stable, normal_form, Fixture, GroupElement, NetFile,
    NetQ, PairBA, SheafClass,
};
use cubic_moduli::polyring::rat;
use cubic_moduli::reproduce::{reproduce, FixtureSet, ReproduceConfig, Status};
use cubic_moduli::tangent::{net_tangent_check, tangent_report};
use cubic_moduli::{parse_poly, QMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Md,
}

#[derive(Debug, Parser)]
#[command(name = "cubic-moduli", version, about = "Sheaves with Hilbert polynomial 3m+1 on P3, by matrix pairs")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 2718, global = true)]
    pub seed: u64,
    /// Random samples per randomized check.
    #[arg(long, default_value_t = 10, global = true)]
    pub samples: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exactness, stability, stratum and Hilbert polynomial of a pair.
    Verify(Input),
    /// Stratum of a pair, with planar data where present.
    Classify(Input),
    /// Normal form of a pair and the group element reaching it.
    NormalForm(Input),
    /// 2×2 minors of A.
    Fitting(Input),
    /// Tangent space dimensions at a pair.
    Tangent(Input),
    /// The deformation family of a planar pair (default: the nodal fixture).
    Deform(OptionalInput),
    /// Stability, N1 membership and tangent dimensions of a net.
    Net(OptionalInput),
    /// Chow rings and Betti numbers.
    Chow {
        #[command(subcommand)]
        what: ChowCommand,
    },
    /// Run every check.
    Reproduce {
        /// Directory holding replacement FIX-*.json files.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Include timings in the output.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, clap::Args)]
pub struct Input {
    /// A pair file, or a shipped fixture name (FIX-TC, FIX-PS, FIX-PN).
    #[arg(long)]
    pub input: String,
}

#[derive(Debug, clap::Args)]
pub struct OptionalInput {
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ChowCommand {
    Betti {
        #[arg(long, value_parser = parse_space)]
        space: Space,
    },
    Ring {
        #[arg(long, value_parser = parse_space, default_value = "M1")]
        space: Space,
    },
}

fn parse_space(s: &str) -> Result<Space, String> {
    Space::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Space::ALL.iter().map(Space::name).collect();
        format!("unknown space `{s}`; expected one of {}", names.join(", "))
    })
}

/// Output of one command in all three formats.
struct Outcome {
    ok: bool,
    text: String,
    json: Value,
    md: String,
}

impl Outcome {
    fn plain(ok: bool, text: String, json: Value) -> Self {
        Outcome { ok, md: text.lines().map(|l| format!("{l}  \n")).collect(), text, json }
    }
}

/// Input that could not be read or parsed.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input_error(e: impl Into<anyhow::Error>) -> anyhow::Error {
    anyhow::Error::new(InputError(e.into()))
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(input_error)
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> anyhow::Result<T> {
    serde_json::from_str(text).with_context(|| format!("parsing {what}")).map_err(input_error)
}

fn load_pair(input: &str) -> anyhow::Result<PairBA> {
    let name = Path::new(input).file_stem().and_then(|s| s.to_str()).unwrap_or(input);
    let text = match (Path::new(input).exists(), Fixture::from_name(name)) {
        (true, _) => read(Path::new(input))?,
        (false, Some(f)) => f.json().to_string(),
        (false, None) => read(Path::new(input))?,
    };
    let file: PairFile = parse_json(&text, input)?;
    Ok(PairBA::from_file(&file)?)
}

fn matrix_rows(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|c| c.to_string()).collect()).collect()
}

fn group_json(g: &GroupElement) -> Value {
    json!({
        "g1": matrix_rows(&g.g1),
        "alpha": g.alpha.to_string(),
        "g": matrix_rows(&g.g),
        "u": g.u.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "beta": g.beta.to_string(),
        "gamma": g.gamma.to_string(),
        "shear": g.shear.to_string(),
    })
}

fn pair_text(file: &PairFile) -> String {
    let mut out = String::new();
    for (label, rows) in [("B", &file.b), ("A", &file.a)] {
        writeln!(out, "{label} =").unwrap();
        for row in rows {
            writeln!(out, "  [{}]", row.join(", ")).unwrap();
        }
    }
    out
}

fn verify(input: &str) -> anyhow::Result<Outcome> {
    let pair = load_pair(input)?;
    let exact = check_exact_e(pair.b(), pair.a())?;
    let stable = is_pair_stable(pair.a());
    let stratum = classify(&pair).stratum();
    let h = hilbert_polynomial(pair.a())?;
    let h0 = hilbert_function(pair.a(), 0)?;
    let ok = exact && stable && h.multiplicity == 3 && h.constant == 1 && h0 == 1;
    let summary = format!(
        "{}, {}, {}, Hilbert {h}",
        if exact { "exact" } else { "not exact" },
        if stable { "stable" } else { "unstable" },
        stratum.name()
    );
    let text = format!("{}: {summary}\n", if ok { "pass" } else { "fail" });
    let json = json!({ "exact": exact, "stable": stable, "stratum": stratum, "hilbert": h, "h0": h0, "pass": ok });
    Ok(Outcome::plain(ok, text, json))
}

fn classify_cmd(input: &str) -> anyhow::Result<Outcome> {
    let pair = load_pair(input)?;
    let class = classify(&pair);
    let mut text = format!("stratum: {}\n", class.stratum().name());
    let mut json = json!({ "stratum": class.stratum() });
    if let SheafClass::PlanarNonSingular(d) | SheafClass::PlanarSingular(d) = &class {
        let point: Vec<String> = d.point.iter().map(|c| c.to_string()).collect();
        for (k, v) in [("w", &d.w), ("l1", &d.l1), ("l2", &d.l2), ("q1", &d.q1), ("q2", &d.q2)] {
            writeln!(text, "{k} = {v}").unwrap();
            json[k] = json!(v.to_string());
        }
        writeln!(text, "point = ({})", point.join(" : ")).unwrap();
        json["point"] = json!(point);
    }
    Ok(Outcome::plain(true, text, json))
}

fn normal_form_cmd(input: &str) -> anyhow::Result<Outcome> {
    let pair = load_pair(input)?;
    let (nf, g) = normal_form(&pair)?;
    let file = nf.to_file();
    let text = format!("stratum: {}\n{}", classify(&nf).stratum().name(), pair_text(&file));
    let json = json!({ "stratum": classify(&nf).stratum(), "normal_form": file, "group_element": group_json(&g) });
    Ok(Outcome::plain(true, text, json))
}

fn fitting_cmd(input: &str) -> anyhow::Result<Outcome> {
    let pair = load_pair(input)?;
    let fit = fitting_ideal(pair.a());
    let mut text = String::new();
    let mut minors = Vec::new();
    for ((i, j), m) in &fit.minors {
        writeln!(text, "rows {i},{j}: {m}").unwrap();
        minors.push(json!({ "rows": [i, j], "minor": m.to_string() }));
    }
    Ok(Outcome::plain(true, text, json!({ "minors": minors })))
}

fn tangent_cmd(input: &str) -> anyhow::Result<Outcome> {
    let pair = load_pair(input)?;
    let r = tangent_report(&pair)?;
    let text = format!(
        "{}\ndim T X = {}, dim orbit = {}, dim stabilizer = {}\n",
        r.verdict(),
        r.dim_tx,
        r.dim_orbit,
        r.dim_stab
    );
    Ok(Outcome::plain(true, text, serde_json::to_value(&r)?))
}

fn deform_cmd(input: Option<&Path>) -> anyhow::Result<Outcome> {
    let data = match input {
        Some(p) => FamilyData::from_file(&parse_json::<FamilyFile>(&read(p)?, &p.display().to_string())?)?,
        None => FamilyData::planar_nodal(),
    };
    let fam = build_family(data)?;
    let complex = verify_family_complex(&fam)?;
    let hilbert = family_hilbert_check(&fam, &family_sample_points())?;
    let mut text = String::new();
    match &complex.first_nonzero {
        None => text.push_str("B_t*A_t = 0\n"),
        Some((i, j, p)) => writeln!(text, "B_t*A_t has entry ({i}, {j}) = {p}").unwrap(),
    }
    let mut fibers = Vec::new();
    for (t0, exact) in &complex.exact_at {
        let stratum = fiber_at(&fam, t0).ok().map(|f| classify(&f).stratum());
        let name = stratum.map_or("not a stable exact pair", |s| s.name());
        writeln!(text, "t = {t0}: {}, {name}", if *exact { "exact" } else { "not exact" }).unwrap();
        fibers.push(json!({ "t": t0.to_string(), "exact": exact, "stratum": stratum }));
    }
    let mut diagram = Vec::new();
    for t0 in [rat(1), rat(-1)] {
        let ok = verify_transform_diagram(&fam, &t0)?;
        writeln!(text, "diagram at t = {t0}: {}", if ok { "commutes" } else { "does not commute" }).unwrap();
        diagram.push(json!({ "t": t0.to_string(), "commutes": ok }));
    }
    writeln!(text, "Hilbert function 3m+1 at all samples: {hilbert}").unwrap();
    let ok = complex.passed() && hilbert && diagram.iter().all(|d| d["commutes"] == json!(true));
    let json = json!({ "product_zero": complex.first_nonzero.is_none(), "fibers": fibers, "diagram": diagram, "hilbert": hilbert, "pass": ok });
    Ok(Outcome::plain(ok, text, json))
}

fn net_cmd(input: Option<&Path>) -> anyhow::Result<Outcome> {
    let q = match input {
        Some(p) => NetQ::from_file(&parse_json::<NetFile>(&read(p)?, &p.display().to_string())?)?,
        None => NetQ::parse(&[["x1", "x3", "0"], ["x2", "0", "x3"]])?,
    };
    let stable = net_is_stable(&q)?;
    let line = net_in_n1(&q)?;
    let mut text = format!("net: {q}\n{}\n", if stable { "stable" } else { "unstable" });
    match &line {
        Some(l) => writeln!(text, "in N1, common linear factor {l}").unwrap(),
        None => text.push_str("not in N1\n"),
    }
    let mut json = json!({ "net": q.to_file(), "stable": stable, "n1_factor": line.as_ref().map(|l| l.to_string()) });
    let l3 = parse_poly("x0")?;
    if let Ok(c) = net_tangent_check(&q, &l3) {
        writeln!(
            text,
            "dim F_Q = {}, dim T'_Q = {}, intersection {}, dim T_Q N = {}",
            c.dim_fq, c.dim_tq_prime, c.dim_intersection, c.dim_tqn
        )
        .unwrap();
        json["tangent"] = serde_json::to_value(c)?;
    }
    Ok(Outcome::plain(stable, text, json))
}

fn betti_outcome(space: Space, table: &BettiTable, relation: Option<String>) -> Outcome {
    let ranks: Vec<String> = table.betti.iter().map(u64::to_string).collect();
    let mut text = String::new();
    if let Some(r) = &relation {
        writeln!(text, "relation: {r}").unwrap();
    }
    writeln!(text, "b_i({}) = ({}), euler {}", space.name(), ranks.join(", "), table.euler).unwrap();
    let mut md = String::new();
    if let Some(r) = &relation {
        writeln!(md, "relation: `{r}`\n").unwrap();
    }
    md.push_str(&table.markdown(&format!("b_i({})", space.name())));
    let json = json!({ "space": space.name(), "relation": relation, "betti": table.betti, "euler": table.euler });
    Outcome { ok: true, text, json, md }
}

fn chow_cmd(what: &ChowCommand) -> anyhow::Result<Outcome> {
    match what {
        ChowCommand::Betti { space } => Ok(betti_outcome(*space, &space_betti(*space)?, None)),
        ChowCommand::Ring { space: Space::M1 } => {
            let comp = m1_chow_computation()?;
            let table = space_betti(Space::M1)?;
            let names = comp.ring.names().to_vec();
            let mut out = betti_outcome(Space::M1, &table, Some(comp.relation.format(&names)));
            out.json["presentation"] = json!(comp.ring.presentation());
            out.json["matches_printed"] = json!(comp.matches_printed());
            Ok(out)
        }
        ChowCommand::Ring { space } => Err(anyhow!("no ring presentation stored for {}", space.name())),
    }
}

fn reproduce_cmd(cli: &Cli, fixtures: Option<&Path>, timings: bool) -> anyhow::Result<Outcome> {
    let mut set = FixtureSet::default();
    if let Some(dir) = fixtures {
        for f in Fixture::ALL {
            let path = dir.join(format!("{}.json", f.name()));
            if path.exists() {
                set = set.with_override(f, read(&path)?);
            }
        }
    }
    let cfg = ReproduceConfig { fixtures: set, seed: cli.seed, samples: cli.samples };
    let reports = reproduce(&cfg);
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    let mut text = String::new();
    let mut md = String::from("| check | status | expected | actual |\n|---|---|---|---|\n");
    let mut json = Vec::new();
    for r in &reports {
        let time = if timings { format!(" ({} ms)", r.elapsed_ms) } else { String::new() };
        writeln!(text, "[{}] {}{time}\n    expected: {}\n    actual:   {}", r.status, r.check, r.expected, r.actual)
            .unwrap();
        writeln!(md, "| {} | {} | {} | {} |", r.check, r.status, r.expected, r.actual.replace('|', "\\|")).unwrap();
        let mut v = serde_json::to_value(r)?;
        if timings {
            v["elapsed_ms"] = json!(r.elapsed_ms as u64);
        }
        json.push(v);
    }
    writeln!(text, "{} checks, {} failed", reports.len(), failed).unwrap();
    Ok(Outcome { ok: failed == 0, text, json: Value::Array(json), md })
}

fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Verify(i) => verify(&i.input),
        Command::Classify(i) => classify_cmd(&i.input),
        Command::NormalForm(i) => normal_form_cmd(&i.input),
        Command::Fitting(i) => fitting_cmd(&i.input),
        Command::Tangent(i) => tangent_cmd(&i.input),
        Command::Deform(i) => deform_cmd(i.input.as_deref()),
        Command::Net(i) => net_cmd(i.input.as_deref()),
        Command::Chow { what } => chow_cmd(what),
        Command::Reproduce { fixtures, timings } => reproduce_cmd(cli, fixtures.as_deref(), *timings),
    }
}

/// Parse `argv`, run, print to `out`/`err`, and return the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let body = match cli.format {
                Format::Text => o.text,
                Format::Md => o.md,
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&o.json).expect("json values serialize")),
            };
            if out.write_all(body.as_bytes()).is_err() {
                return EXIT_IO;
            }
            if o.ok {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                EXIT_IO
            } else {
                EXIT_CHECK_FAILED
            }
        }
    }
}
