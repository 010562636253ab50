//! The `homeolab` command line.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bicomplex::{build, build_relative, Variant};
use crate::blocks::{block_complex_from_json, BlockComplex};
use crate::chains::{chain_complex, cochain_complex, homology, relative_complex, Direction};
use crate::complex::{complex_from_json, complex_from_text, generate, Generator, SimplicialComplex};
use crate::exact_algebra::{AbelianGroupPresentation, Coefficients, IntMatrix};
use crate::harness;
use crate::morphisms::{graph_map, induced_page_map_between, parse_map_json, check_solid, Pages, SolidMap};
use crate::spectral::{CheckReport, SpectralSequence};
use crate::{fixtures, Error};

#[derive(Debug, Parser)]
#[command(name = "homeolab", version, about = "Homeology and cohomeology spectral sequences of simplicial complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the groups of one theory.
    Compute(ComputeArgs),
    /// Run a verification harness.
    Verify(VerifyArgs),
    /// Induced page maps of a simplicial map.
    Map(MapArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theory {
    Homology,
    Cohomology,
    Homeology,
    Cohomeology,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Built-in complex, e.g. `disk:3`, `sphere:2`, `cycle:5`, `point`.
    #[arg(long = "gen", value_name = "NAME[:N]")]
    pub generator: Option<String>,
    /// Complex file: JSON (`.json`) or one facet per line.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Named example complex: square, annulus, graph-x, graph-y, wedge-ss1, c3-s1, glued:m,n,k.
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "cohomeology")]
    pub theory: Theory,
    #[arg(long)]
    pub reduced: bool,
    /// Subcomplex file for relative groups.
    #[arg(long, value_name = "PATH")]
    pub relative: Option<PathBuf>,
    /// Block complex JSON; replaces the simplicial input.
    #[arg(long, value_name = "PATH")]
    pub block: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub page: usize,
    #[arg(long, default_value = "Z")]
    pub coeff: String,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Include page differentials in JSON output.
    #[arg(long)]
    pub differentials: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Harness {
    Invariance,
    Convergence,
    Page0,
    Cm,
    Blocks,
    Sequences,
    Lefschetz,
    Fixtures,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub harness: Harness,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value = "Z")]
    pub coeff: String,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Map JSON `{"source": .., "target": .., "vertex_map": {..}}`.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Second map; checks the composite law against `--input` followed by this one.
    #[arg(long, value_name = "PATH")]
    pub then: Option<PathBuf>,
    /// Replace the map by its graph `K → K × L`.
    #[arg(long)]
    pub graph: bool,
    #[arg(long, value_enum, default_value = "homeology")]
    pub theory: Theory,
    #[arg(long)]
    pub reduced: bool,
    #[arg(long, default_value_t = 1)]
    pub page: usize,
    #[arg(long, default_value = "Z")]
    pub coeff: String,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("verification failed")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownVertex(_) | Error::DuplicateVertex(_) => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first) and runs the command. Returns the exit code and everything to print
/// on stdout and stderr; stdout stays empty on failure.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (1, String::new(), text) };
        }
    };
    match execute(&cli) {
        Ok(out) => (0, out, String::new()),
        Err(CliError::Mismatch(out)) => (3, out, "verification failed\n".into()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}

pub fn execute(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Map(a) => map(a),
    }
}

fn coefficients(s: &str) -> CliResult<Coefficients> {
    s.parse::<Coefficients>().map_err(|e| CliError::Parse(e.to_string()))
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> CliResult<SimplicialComplex> {
    let text = read(path)?;
    let k = if path.extension().is_some_and(|e| e == "json") { complex_from_json(&text) } else { complex_from_text(&text) };
    k.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn input_complex(a: &InputArgs) -> CliResult<Option<SimplicialComplex>> {
    let given = [a.generator.is_some(), a.input.is_some(), a.fixture.is_some()].iter().filter(|x| **x).count();
    if given > 1 {
        return Err(CliError::Parse("give only one of --gen, --input, --fixture".into()));
    }
    if let Some(g) = &a.generator {
        let g: Generator = g.parse().map_err(|e: Error| CliError::Parse(e.to_string()))?;
        return Ok(Some(generate(g)?));
    }
    if let Some(p) = &a.input {
        return load_complex(p).map(Some);
    }
    if let Some(name) = &a.fixture {
        return Ok(Some(fixtures::named(name)?));
    }
    Ok(None)
}

fn require_complex(a: &InputArgs) -> CliResult<SimplicialComplex> {
    input_complex(a)?.ok_or_else(|| CliError::Parse("an input complex is required (--gen, --input or --fixture)".into()))
}

/// `Z^a ⊕ Z/d ⊕ …` over `Z`; vector spaces over fields.
pub fn render(g: &AbelianGroupPresentation, coeff: Coefficients) -> String {
    match coeff {
        Coefficients::Z => g.to_string(),
        _ if g.is_zero() => "0".into(),
        Coefficients::Q => power("Q", g.free_rank),
        Coefficients::Zp(p) => power(&format!("(Z/{p})"), g.free_rank),
    }
}

fn power(base: &str, n: usize) -> String {
    let base = if n == 1 { base.trim_start_matches('(').trim_end_matches(')') } else { base };
    if n == 1 {
        base.to_string()
    } else {
        format!("{base}^{n}")
    }
}

fn variant_of(t: Theory) -> CliResult<Variant> {
    match t {
        Theory::Homeology => Ok(Variant::Homeology),
        Theory::Cohomeology => Ok(Variant::Cohomeology),
        _ => Err(CliError::Precondition("maps are reported on homeology or cohomeology pages".into())),
    }
}

fn theory_name(t: Theory) -> &'static str {
    match t {
        Theory::Homology => "homology",
        Theory::Cohomology => "cohomology",
        Theory::Homeology => "homeology",
        Theory::Cohomeology => "cohomeology",
    }
}

fn compute(a: &ComputeArgs) -> CliResult<String> {
    let coeff = coefficients(&a.coeff)?;
    let block: Option<BlockComplex> = match &a.block {
        Some(p) => Some(block_complex_from_json(&read(p)?)?),
        None => None,
    };
    let k = match (&block, input_complex(&a.input)?) {
        (Some(_), Some(_)) => return Err(CliError::Parse("--block replaces the input complex".into())),
        (Some(b), None) => b.host.clone(),
        (None, Some(k)) => k,
        (None, None) => return Err(CliError::Parse("an input complex is required (--gen, --input, --fixture or --block)".into())),
    };
    let sub = match &a.relative {
        Some(p) if block.is_some() => return Err(CliError::Parse(format!("--relative {} cannot be combined with --block", p.display()))),
        Some(p) => Some(load_complex(p)?),
        None => None,
    };
    let mut out = String::new();
    match a.theory {
        Theory::Homology | Theory::Cohomology => {
            let direction = if a.theory == Theory::Homology { Direction::Homological } else { Direction::Cohomological };
            let c = match (&block, &sub) {
                (Some(b), _) if direction == Direction::Homological => b.chain_complex(a.reduced)?,
                (Some(b), _) => b.cochain_complex(a.reduced)?,
                (None, Some(l)) => relative_complex(&k, l, direction)?,
                (None, None) if direction == Direction::Homological => chain_complex(&k, a.reduced),
                (None, None) => cochain_complex(&k, a.reduced),
            };
            let groups = homology(&c, coeff)?;
            match a.format {
                Format::Table => {
                    let _ = writeln!(out, "# {} over {coeff}", theory_name(a.theory));
                    for (d, g) in groups.iter().filter(|(_, g)| !g.is_zero()) {
                        let _ = writeln!(out, "{d}\t{}", render(g, coeff));
                    }
                }
                Format::Json => {
                    let groups: serde_json::Map<String, Value> =
                        groups.iter().map(|(d, g)| (d.to_string(), serde_json::to_value(g).expect("serializable"))).collect();
                    out = json_text(&json!({ "theory": theory_name(a.theory), "coeff": coeff.to_string(), "groups": groups }));
                }
            }
        }
        Theory::Homeology | Theory::Cohomeology => {
            let variant = variant_of(a.theory)?;
            let b = match (&block, &sub) {
                (Some(b), _) => b.bicomplex(variant, a.reduced)?,
                (None, Some(l)) => build_relative(&k, l, variant, a.reduced)?,
                (None, None) => build(&k, variant, a.reduced),
            };
            let page = SpectralSequence::new(&b, coeff).page(a.page)?;
            match a.format {
                Format::Table => {
                    let red = if a.reduced { "reduced " } else { "" };
                    let _ = writeln!(out, "# {red}{} page {} over {coeff}", theory_name(a.theory), a.page);
                    for (bd, g) in page.nonzero() {
                        let _ = writeln!(out, "{}\t{}\t{}", bd.0, bd.1, render(g, coeff));
                    }
                }
                Format::Json => out = json_text(&page.to_json(a.differentials)),
            }
        }
    }
    Ok(out)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn report_text(report: &CheckReport, format: Format) -> String {
    match format {
        Format::Json => json_text(&serde_json::to_value(report).expect("serializable")),
        Format::Table => {
            let mut out = String::new();
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    let _ = writeln!(out, "{tag} {}", c.name);
                } else {
                    let _ = writeln!(out, "{tag} {}: {}", c.name, c.detail);
                }
            }
            let _ = writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" });
            out
        }
    }
}

fn verify(a: &VerifyArgs) -> CliResult<String> {
    let coeff = coefficients(&a.coeff)?;
    if a.harness == Harness::Invariance {
        let logs = harness::verify_invariance(a.seed, a.trials, harness::thread_cap())?;
        let passed = logs.iter().all(|l| l.passed());
        let out = match a.format {
            Format::Json => json_text(&json!({ "seed": a.seed, "passed": passed, "trials": logs })),
            Format::Table => {
                let mut out = String::new();
                for l in &logs {
                    let tag = if l.passed() { "PASS" } else { "FAIL" };
                    let _ = writeln!(
                        out,
                        "{tag} trial {}: {} vertices, dim {}, subdivided {} ({} checks)",
                        l.trial,
                        l.vertices,
                        l.dim,
                        l.subdivided.join(" "),
                        l.report.checks.len()
                    );
                    for c in l.report.failures() {
                        let _ = writeln!(out, "  FAIL {}: {}", c.name, c.detail);
                    }
                }
                let _ = writeln!(out, "{}", if passed { "PASS" } else { "FAIL" });
                out
            }
        };
        return if passed { Ok(out) } else { Err(CliError::Mismatch(out)) };
    }
    let report = if a.harness == Harness::Fixtures {
        harness::verify_fixtures()?
    } else {
        let k = require_complex(&a.input)?;
        match a.harness {
            Harness::Convergence => harness::check_convergence(&k, coeff)?,
            Harness::Page0 => harness::check_page0(&k, coeff)?,
            Harness::Cm => harness::check_cm(&k, coeff)?,
            Harness::Blocks => harness::check_blocks(&k, coeff)?,
            Harness::Sequences => harness::check_sequences(&k, coeff)?,
            Harness::Lefschetz => harness::check_lefschetz(&k, coeff)?,
            Harness::Invariance | Harness::Fixtures => unreachable!(),
        }
    };
    let out = report_text(&report, a.format);
    if report.passed() {
        Ok(out)
    } else {
        Err(CliError::Mismatch(out))
    }
}

fn load_map(path: &Path, graph: bool) -> CliResult<SolidMap> {
    let (source, target, vm) = parse_map_json(&read(path)?).map_err(|e| match e {
        Error::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        e => e.into(),
    })?;
    Ok(if graph { graph_map(&source, &target, &vm)? } else { check_solid(&source, &target, vm)? })
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_dense_with(Default::default()).into_iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn map(a: &MapArgs) -> CliResult<String> {
    let coeff = coefficients(&a.coeff)?;
    let variant = variant_of(a.theory)?;
    let f = load_map(&a.input, a.graph)?;
    let pages = |k: &SimplicialComplex| Pages::new(k, variant, a.reduced, coeff);
    let (src, tgt) = (pages(&f.source), pages(&f.target));
    let (dom, cod) = match variant {
        Variant::Homeology => (&src, &tgt),
        Variant::Cohomeology => (&tgt, &src),
    };
    let m = induced_page_map_between(&f, dom, cod, a.page)?;
    let mut report = CheckReport::default();
    report.push("solid", true, format!("{} vertices to {}", f.source.num_vertices(), f.target.num_vertices()));
    report.push("commutes with the page differential", m.commutes(dom, cod)?, "");
    for (name, p) in [("source", &src), ("target", &tgt)] {
        let k = &p.complex;
        let id = induced_page_map_between(&SolidMap::identity(k), p, p, a.page)?;
        report.push(format!("identity law on the {name}"), id.is_identity(p)?, "");
    }
    if let Some(path) = &a.then {
        let g = load_map(path, false)?;
        let gf = f.then(&g)?;
        let third = pages(&g.target);
        let (ok, mgf) = match variant {
            Variant::Homeology => {
                let mg = induced_page_map_between(&g, &tgt, &third, a.page)?;
                let mgf = induced_page_map_between(&gf, &src, &third, a.page)?;
                (mgf.same_as(&mg.after(&m, &src, &tgt, &third)?, &src, &third)?, mgf)
            }
            Variant::Cohomeology => {
                let mg = induced_page_map_between(&g, &third, &tgt, a.page)?;
                let mgf = induced_page_map_between(&gf, &third, &src, a.page)?;
                (mgf.same_as(&m.after(&mg, &third, &tgt, &src)?, &third, &src)?, mgf)
            }
        };
        report.push("composite law", ok, "");
        if g.target == f.source {
            report.push("composite is the identity", mgf.is_identity(&src)?, "");
        }
    }
    let page = dom.page(a.page)?;
    let mut mats = BTreeMap::new();
    for (b, _) in page.nonzero() {
        mats.insert(b, m.matrix(b, dom, cod)?);
    }
    let out = match a.format {
        Format::Json => {
            let matrices: serde_json::Map<String, Value> =
                mats.iter().map(|(b, x)| (format!("{},{}", b.0, b.1), json!(matrix_rows(x)))).collect();
            let vertex_map: serde_json::Map<String, Value> = (0..f.source.num_vertices() as u32)
                .map(|v| (f.source.vertex_name(v).to_string(), json!(f.target.vertex_name(f.vertex_map[v as usize]))))
                .collect();
            json_text(&json!({
                "page": a.page,
                "theory": theory_name(a.theory),
                "vertex_map": vertex_map,
                "matrices": matrices,
                "checks": report,
            }))
        }
        Format::Table => {
            let mut out = String::new();
            if a.graph {
                let _ = writeln!(out, "# graph map");
                for v in 0..f.source.num_vertices() as u32 {
                    let _ = writeln!(out, "{} -> {}", f.source.vertex_name(v), f.target.vertex_name(f.vertex_map[v as usize]));
                }
            }
            let _ = writeln!(out, "# induced {} page {} over {coeff}", theory_name(a.theory), a.page);
            for (b, x) in &mats {
                let _ = writeln!(out, "{}\t{}", b.0, b.1);
                for row in matrix_rows(x) {
                    let _ = writeln!(out, "  [{}]", row.join(" "));
                }
            }
            out.push_str(&report_text(&report, Format::Table));
            out
        }
    };
    if report.passed() {
        Ok(out)
    } else {
        Err(CliError::Mismatch(out))
    }
}
