//! Argument model and command implementations for the `fqvar` binary.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fqvar::analysis::{cone_analysis, covered_by_lines, linear_components, section_spectrum, singular_points};
use fqvar::bounds::{bounds_table_csv, classify, BoundReport};
use fqvar::constructions::{
    gamma_curve, hermitian, hermitian_cone, hyperbolic_quadric, hyperplane_pencil_union, quadric_pencil,
    space_filling, AntisymmetricSpec,
};
use fqvar::equivalence::{fingerprint, pgl_search, DEFAULT_BUDGET};
use fqvar::gf::parse_field_spec;
use fqvar::projgeo::{count_points, count_points_ext};
use fqvar::scan::{scan, Family, ScanConfig};
use fqvar::verify::{verify, Grid, VerifyOptions};
use fqvar::{make_field, ClassifyOptions, Elem, EquivalenceVerdict, Error, Field, Hypersurface, SearchOptions};

pub const SCHEMA: u32 = 1;

pub mod exit {
    pub const OK: i32 = 0;
    pub const PROPERTY_FAILURE: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
    pub const ALARM: i32 = 3;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub s: u32,
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}^{}", self.p, self.s)
    }
}

fn parse_field_arg(s: &str) -> Result<FieldSpec, String> {
    parse_field_spec(s).map(|(p, s)| FieldSpec { p, s }).map_err(|e| e.to_string())
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    };
    r.map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construct {
    SpaceFilling,
    Hermitian,
    HermitianCone,
    Hyperbolic,
    QuadricPencil,
    PencilUnion,
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    Small,
    Medium,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Dense,
    Antisymmetric,
}

/// Where the hypersurface comes from: literal text or a named construction.
#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct Source {
    /// Homogeneous form in x0, x1, ..., e.g. "x0*x1 - x2*x3".
    #[arg(long, conflicts_with = "construct", required_unless_present = "construct")]
    pub poly: Option<String>,
    #[arg(long, value_enum)]
    pub construct: Option<Construct>,
    /// Ambient dimension N; inferred when omitted.
    #[arg(long)]
    pub ambient: Option<usize>,
    /// Antisymmetric entries for space-filling: "i-j:c,..." with i < j.
    #[arg(long)]
    pub antisym: Option<String>,
    /// First pencil vector for quadric-pencil: "a0,a1,...".
    #[arg(long)]
    pub a: Option<String>,
    /// Second pencil vector for quadric-pencil: "b0,b1,...".
    #[arg(long)]
    pub b: Option<String>,
    /// Linear forms for pencil-union: "c0,c1,...;c0,c1,...".
    #[arg(long)]
    pub forms: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Count rational points and compare with the bounds.
    Count {
        #[command(flatten)]
        source: Source,
        /// Count over the degree-t extension instead.
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Decide which extremal case, if any, the hypersurface falls into.
    Classify {
        #[command(flatten)]
        source: Source,
    },
    /// Singularities, linear components, cone structure, line coverage.
    Analyze {
        #[command(flatten)]
        source: Source,
    },
    /// Bound values for a degree and ambient dimension.
    Bounds {
        #[arg(long)]
        degree: u64,
        #[arg(long, default_value_t = 3)]
        ambient: u32,
    },
    /// Search for a projective equivalence between two hypersurfaces.
    Equiv {
        #[command(flatten)]
        source: Source,
        /// The second hypersurface, in the same variables.
        #[arg(long)]
        with: String,
    },
    /// Run the identity battery over a grid of fields.
    Verify {
        #[arg(long, value_enum, default_value_t = GridArg::Small)]
        grid: GridArg,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Sample random hypersurfaces and classify those reaching the bound.
    Scan {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 3)]
        ambient: usize,
        /// Number of samples without linear components.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, value_enum, default_value_t = FamilyArg::Dense)]
        family: FamilyArg,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "fqvar", version, about = "Hypersurfaces over finite fields: counts, bounds and extremal cases")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Field order as p^s.
    #[arg(long, global = true, value_parser = parse_field_arg)]
    pub field: Option<FieldSpec>,
    /// Highest extension degree searched for singular points.
    #[arg(long, global = true, default_value_t = 2)]
    pub t_max: u32,
    /// Candidate budget for equivalence searches; 0 disables them.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, global = true, default_value = "0xc0ffee", value_parser = parse_u64)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

impl Source {
    fn push_flags(&self, out: &mut Vec<String>) {
        let mut opt = |name: &str, v: &Option<String>| {
            if let Some(v) = v {
                out.push(format!("--{name}"));
                out.push(v.clone());
            }
        };
        opt("poly", &self.poly);
        opt("construct", &self.construct.as_ref().map(value_name));
        opt("ambient", &self.ambient.map(|a| a.to_string()));
        opt("antisym", &self.antisym);
        opt("a", &self.a);
        opt("b", &self.b);
        opt("forms", &self.forms);
    }
}

impl RunConfig {
    /// Flags with every default written out, in a fixed order.
    pub fn canonical_args(&self) -> Vec<String> {
        let mut out = Vec::new();
        match &self.command {
            Command::Count { source, ext } => {
                out.push("count".into());
                source.push_flags(&mut out);
                out.extend(["--ext".into(), ext.to_string()]);
            }
            Command::Classify { source } => {
                out.push("classify".into());
                source.push_flags(&mut out);
            }
            Command::Analyze { source } => {
                out.push("analyze".into());
                source.push_flags(&mut out);
            }
            Command::Bounds { degree, ambient } => {
                out.extend(["bounds".into(), "--degree".into(), degree.to_string()]);
                out.extend(["--ambient".into(), ambient.to_string()]);
            }
            Command::Equiv { source, with } => {
                out.push("equiv".into());
                source.push_flags(&mut out);
                out.extend(["--with".into(), with.clone()]);
            }
            Command::Verify { grid, inject_fault } => {
                out.extend(["verify".into(), "--grid".into(), value_name(grid)]);
                if *inject_fault {
                    out.push("--inject-fault".into());
                }
            }
            Command::Scan { degree, ambient, samples, family } => {
                out.extend(["scan".into(), "--degree".into(), degree.to_string()]);
                out.extend(["--ambient".into(), ambient.to_string()]);
                out.extend(["--samples".into(), samples.to_string()]);
                out.extend(["--family".into(), value_name(family)]);
            }
        }
        if let Some(f) = self.field {
            out.extend(["--field".into(), f.to_string()]);
        }
        out.extend(["--t-max".into(), self.t_max.to_string()]);
        out.extend(["--budget".into(), self.budget.to_string()]);
        out.extend(["--seed".into(), format!("{:#x}", self.seed)]);
        out.extend(["--format".into(), value_name(&self.format)]);
        if let Some(j) = self.jobs {
            out.extend(["--jobs".into(), j.to_string()]);
        }
        out
    }

    /// Shell-quoted form of [`canonical_args`](Self::canonical_args).
    pub fn canonical_string(&self) -> String {
        let args = self.canonical_args();
        shlex::try_join(args.iter().map(String::as_str)).expect("arguments contain no NUL")
    }

    pub fn from_flag_string(s: &str) -> Result<Self, String> {
        let words = shlex::split(s).ok_or_else(|| "unbalanced quotes".to_string())?;
        RunConfig::try_parse_from(std::iter::once("fqvar".to_string()).chain(words)).map_err(|e| e.to_string())
    }
}

/// Rendered report plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, stderr: String::new(), code: exit::OK }
    }
}

#[derive(Debug)]
pub struct InputError(pub String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        let debug = format!("{e:?}");
        let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        InputError(format!("{kind}: {e}"))
    }
}

type CmdResult = Result<Output, InputError>;

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

fn field_of(cfg: &RunConfig) -> Result<Arc<Field>, InputError> {
    let f = cfg.field.ok_or_else(|| bad("--field p^s is required"))?;
    Ok(make_field(f.p, f.s)?)
}

fn parse_vec(s: &str) -> Result<Vec<Elem>, InputError> {
    s.split(',').map(|t| t.trim().parse::<Elem>().map_err(|_| bad(format!("bad element {t:?}")))).collect()
}

fn parse_antisym(s: &str) -> Result<Vec<(usize, usize, Elem)>, InputError> {
    let err = || bad(format!("antisymmetric entries are written i-j:c, got {s:?}"));
    s.split(',')
        .map(|item| {
            let (ij, c) = item.trim().split_once(':').ok_or_else(err)?;
            let (i, j) = ij.split_once('-').ok_or_else(err)?;
            Ok((i.parse().map_err(|_| err())?, j.parse().map_err(|_| err())?, c.parse().map_err(|_| err())?))
        })
        .collect()
}

fn infer_nvars(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut top = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' || bytes[i] == b'X' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if let Ok(k) = text[start..end].parse::<usize>() {
                top = top.max(k + 1);
            }
            i = end;
        } else {
            i += 1;
        }
    }
    top.max(2)
}

pub fn build(source: &Source, field: &Arc<Field>) -> Result<Hypersurface, InputError> {
    if let Some(text) = &source.poly {
        let nvars = source.ambient.map_or_else(|| infer_nvars(text), |a| a + 1);
        return Ok(Hypersurface::parse(text, field, nvars)?);
    }
    let ambient = source.ambient;
    let fixed = |n: usize, name: &str| match ambient {
        Some(a) if a != n => Err(bad(format!("{name} lives in P^{n}"))),
        _ => Ok(()),
    };
    let x = match source.construct.expect("clap requires poly or construct") {
        Construct::SpaceFilling => {
            let size = ambient.unwrap_or(3) + 1;
            let entries = match &source.antisym {
                Some(s) => parse_antisym(s)?,
                None => (0..size / 2).map(|k| (2 * k, 2 * k + 1, 1)).collect(),
            };
            space_filling(&AntisymmetricSpec::new(size, &entries)?, field)?
        }
        Construct::Hermitian => hermitian(None, field, ambient.unwrap_or(3))?,
        Construct::HermitianCone => {
            let n = ambient.unwrap_or(4);
            if n < 4 {
                return Err(bad("hermitian-cone needs ambient at least 4"));
            }
            hermitian_cone(field, n - 1)?
        }
        Construct::Hyperbolic => {
            fixed(3, "the hyperbolic quadric")?;
            hyperbolic_quadric(field)?
        }
        Construct::QuadricPencil => {
            let a = parse_vec(source.a.as_deref().ok_or_else(|| bad("quadric-pencil needs --a and --b"))?)?;
            let b = parse_vec(source.b.as_deref().ok_or_else(|| bad("quadric-pencil needs --a and --b"))?)?;
            fixed(a.len().saturating_sub(1), "this pencil")?;
            quadric_pencil(&a, &b, field)?.hypersurface
        }
        Construct::PencilUnion => {
            let text = source.forms.as_deref().ok_or_else(|| bad("pencil-union needs --forms"))?;
            let forms = text.split(';').map(parse_vec).collect::<Result<Vec<_>, _>>()?;
            fixed(forms[0].len().saturating_sub(1), "this union")?;
            hyperplane_pencil_union(&forms, field)?
        }
        Construct::Gamma => {
            fixed(2, "the curve")?;
            gamma_curve(field)?
        }
    };
    Ok(x)
}

fn field_json(f: &Field) -> Value {
    json!({ "p": f.p(), "s": f.s(), "q": f.q(), "modulus": f.modulus() })
}

fn render(format: Format, value: Value, csv: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => csv(),
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v
}

fn cmd_count(cfg: &RunConfig, source: &Source, ext: u32) -> CmdResult {
    let field = field_of(cfg)?;
    let x = build(source, &field)?;
    let (count, q, linear_free) = if ext == 1 {
        let lf = linear_components(&x).is_empty();
        (count_points(&x), field.q() as u64, Some(lf))
    } else {
        let q = (field.q() as u64).checked_pow(ext).ok_or_else(|| bad("extension too large"))?;
        (count_points_ext(&x, ext)?, q, None)
    };
    let report = BoundReport::compute(x.ambient() as u32, x.degree() as u64, q, count, linear_free.unwrap_or(false))?;
    let value = envelope(
        "count",
        json!({
            "field": field_json(&field),
            "extension": ext,
            "polynomial": x.render(),
            "ambient": x.ambient(),
            "degree": x.degree(),
            "count": count,
            "linear_free": linear_free,
            "theta": report.theta.map(|t| t.to_string()),
            "achieves_theta": report.achieves_theta,
            "bounds": report,
        }),
    );
    let csv = || {
        let th = report.theta.map_or(String::new(), |t| t.to_string());
        format!(
            "q,ext,ambient,degree,count,theta,serre,achieves_theta\n{},{ext},{},{},{count},{th},{},{}\n",
            field.q(),
            x.ambient(),
            x.degree(),
            report.serre,
            report.achieves_theta
        )
    };
    Ok(Output::ok(render(cfg.format, value, csv)))
}

fn classify_options(cfg: &RunConfig) -> ClassifyOptions {
    ClassifyOptions {
        t_max: cfg.t_max,
        equivalence_budget: (cfg.budget > 0).then_some(cfg.budget),
        seed: cfg.seed,
    }
}

fn cmd_classify(cfg: &RunConfig, source: &Source) -> CmdResult {
    let field = field_of(cfg)?;
    let x = build(source, &field)?;
    let c = classify(&x, classify_options(cfg))?;
    let alarm = c.verdict.is_alarm();
    let verdict = serde_json::to_value(&c.verdict).expect("serializable");
    let value = envelope(
        "classify",
        json!({ "field": field_json(&field), "polynomial": x.render(), "classification": c }),
    );
    let csv = || {
        let name = verdict["verdict"].as_str().unwrap_or_default();
        let case = verdict.get("case").and_then(Value::as_str).unwrap_or_default();
        let th = c.report.theta.map_or(String::new(), |t| t.to_string());
        format!("verdict,case,count,theta\n{name},{case},{},{th}\n", c.report.measured)
    };
    let mut out = Output::ok(render(cfg.format, value, csv));
    if alarm {
        out.code = exit::ALARM;
        out.stderr = format!("alarm: {} reaches the bound outside every known case\n", x.render());
    }
    Ok(out)
}

fn cmd_analyze(cfg: &RunConfig, source: &Source) -> CmdResult {
    let field = field_of(cfg)?;
    let x = build(source, &field)?;
    let sing = singular_points(&x, cfg.t_max)?;
    let comps = linear_components(&x);
    let cone = cone_analysis(&x)?;
    let coverage = if x.ambient() == 3 { Some(covered_by_lines(&x)?) } else { None };
    let spectrum = section_spectrum(&x)?;
    let fp = fingerprint(&x)?;
    let value = envelope(
        "analyze",
        json!({
            "field": field_json(&field),
            "polynomial": x.render(),
            "count": count_points(&x),
            "singularities": sing,
            "linear_components": comps,
            "cone": cone,
            "coverage": coverage,
            "section_spectrum": spectrum,
            "fingerprint": fp,
        }),
    );
    let csv = || {
        let mut s = String::from("key,value\n");
        writeln!(s, "count,{}", count_points(&x)).unwrap();
        for e in &sing.by_extension {
            writeln!(s, "singular_points_t{},{}", e.t, e.points.len()).unwrap();
        }
        writeln!(s, "linear_components,{}", comps.len()).unwrap();
        writeln!(s, "vertex_dim,{}", cone.vertex_dim).unwrap();
        if let Some(c) = &coverage {
            writeln!(s, "covered_by_lines,{}", c.covered).unwrap();
        }
        s
    };
    Ok(Output::ok(render(cfg.format, value, csv)))
}

fn cmd_bounds(cfg: &RunConfig, degree: u64, ambient: u32) -> CmdResult {
    let field = field_of(cfg)?;
    let q = field.q() as u64;
    let r = BoundReport::compute(ambient, degree, q, 0, true)?;
    let value = envelope(
        "bounds",
        json!({
            "q": q,
            "ambient": ambient,
            "degree": degree,
            "theta": r.theta.map(|t| t.to_string()),
            "serre": r.serre.to_string(),
            "sziklai": r.sziklai.map(|t| t.to_string()),
            "aubry_perret": r.aubry_perret.map(|t| t.to_string()),
            "proj_space": r.proj_space.to_string(),
        }),
    );
    if cfg.format == Format::Csv && ambient < 3 {
        return Err(bad("the CSV table covers ambient at least 3"));
    }
    let table = if cfg.format == Format::Csv { bounds_table_csv(&[ambient - 1], &[degree], &[q])? } else { String::new() };
    Ok(Output::ok(render(cfg.format, value, || table)))
}

fn cmd_equiv(cfg: &RunConfig, source: &Source, with: &str) -> CmdResult {
    let field = field_of(cfg)?;
    let x = build(source, &field)?;
    let y = Hypersurface::parse(with, &field, x.ambient() + 1)?;
    let budget = if cfg.budget == 0 { DEFAULT_BUDGET } else { cfg.budget };
    let v = pgl_search(&x, &y, SearchOptions { budget, seed: cfg.seed })?;
    let value = envelope(
        "equiv",
        json!({ "field": field_json(&field), "x": x.render(), "y": y.render(), "result": v }),
    );
    let csv = || {
        let (status, scalar) = match &v {
            EquivalenceVerdict::Equivalent { scalar, .. } => ("equivalent", scalar.to_string()),
            EquivalenceVerdict::Inequivalent { .. } => ("inequivalent", String::new()),
            EquivalenceVerdict::Inconclusive { .. } => ("inconclusive", String::new()),
        };
        format!("status,scalar\n{status},{scalar}\n")
    };
    Ok(Output::ok(render(cfg.format, value, csv)))
}

fn cmd_verify(cfg: &RunConfig, grid: GridArg, inject_fault: bool) -> CmdResult {
    let grid = match grid {
        GridArg::Small => Grid::Small,
        GridArg::Medium => Grid::Medium,
    };
    let r = verify(grid, VerifyOptions { theta_fault: inject_fault })?;
    let value = envelope("verify", json!({ "passed": r.passed(), "checks": r.checks }));
    let csv = || {
        let mut s = String::from("check,q,passed,detail\n");
        for c in &r.checks {
            let q = c.q.map_or(String::new(), |q| q.to_string());
            let detail = c.detail.as_deref().unwrap_or("").replace(',', ";");
            writeln!(s, "{},{q},{},{detail}", c.name, c.passed).unwrap();
        }
        s
    };
    let mut out = Output::ok(render(cfg.format, value, csv));
    if let Some(f) = r.first_failure() {
        out.code = exit::PROPERTY_FAILURE;
        let at = f.q.map_or(String::new(), |q| format!(" at q = {q}"));
        out.stderr = format!("check {} failed{at}: {}\n", f.name, f.detail.as_deref().unwrap_or(""));
    }
    Ok(out)
}

fn cmd_scan(cfg: &RunConfig, degree: u32, ambient: usize, samples: u64, family: FamilyArg) -> CmdResult {
    let field = field_of(cfg)?;
    let family = match family {
        FamilyArg::Dense => Family::Dense,
        FamilyArg::Antisymmetric => Family::Antisymmetric,
    };
    let sc = ScanConfig { ambient, degree, samples, seed: cfg.seed, family };
    let r = scan(&field, &sc, classify_options(cfg))?;
    let value = envelope("scan", json!({ "field": field_json(&field), "report": r }));
    let mut out = Output::ok(render(cfg.format, value, || r.histogram_csv()));
    if r.accepted < samples {
        out.stderr.push_str(&format!("note: only {} of {samples} samples were free of linear components\n", r.accepted));
    }
    if r.has_alarm() {
        out.code = exit::ALARM;
        for a in &r.alarms {
            writeln!(out.stderr, "alarm: sample {} {}", a.sample, a.polynomial).unwrap();
        }
    }
    Ok(out)
}

/// Runs one command. Input problems come back as exit code 2.
pub fn run(cfg: &RunConfig) -> Output {
    let result = match &cfg.command {
        Command::Count { source, ext } => cmd_count(cfg, source, *ext),
        Command::Classify { source } => cmd_classify(cfg, source),
        Command::Analyze { source } => cmd_analyze(cfg, source),
        Command::Bounds { degree, ambient } => cmd_bounds(cfg, *degree, *ambient),
        Command::Equiv { source, with } => cmd_equiv(cfg, source, with),
        Command::Verify { grid, inject_fault } => cmd_verify(cfg, *grid, *inject_fault),
        Command::Scan { degree, ambient, samples, family } => cmd_scan(cfg, *degree, *ambient, *samples, *family),
    };
    result.unwrap_or_else(|e| Output { stdout: String::new(), stderr: format!("error: {}\n", e.0), code: exit::INPUT_ERROR })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fqvar::equivalence::DEFAULT_SEED;

    #[test]
    fn infers_variables() {
        assert_eq!(infer_nvars("x0*x1 - x2*x3"), 4);
        assert_eq!(infer_nvars("X0^2"), 2);
        assert_eq!(infer_nvars("x10"), 11);
    }

    #[test]
    fn default_seed_matches_library() {
        let cfg = RunConfig::try_parse_from(["fqvar", "verify"]).unwrap();
        assert_eq!(cfg.seed, DEFAULT_SEED);
        assert_eq!(cfg.budget, DEFAULT_BUDGET);
        assert_eq!(cfg.t_max, 2);
        assert_eq!(cfg.format, Format::Json);
    }

    #[test]
    fn antisym_grammar() {
        assert_eq!(parse_antisym("0-1:1, 2-3:2").unwrap(), vec![(0, 1, 1), (2, 3, 2)]);
        assert!(parse_antisym("0:1").is_err());
    }
}
