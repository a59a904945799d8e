//! Command-line front end. `run` returns the text to print and the exit code
//! so the binary stays a one-liner and tests can drive it directly.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::adet::{
    conjecture_check, conjecture_lhs, lhs_properties, principal_a_det_univariate, EaFixture,
};
use crate::dessin::{constellation_from_list, cycles_text, superpotential, DessinData};
use crate::error::{Error, Result};
use crate::gkz::{gkz_info, vol_a};
use crate::kasteleyn::{kasteleyn_det, newton_polygon, WeightSpec};
use crate::lattice::{factor_antisymmetric, parse_b_json, parse_c_json, LatticeEmbedding, Quiver};
use crate::polyring::LaurentPoly;
use crate::secondary::{
    area_and_interior, delta_polygon, lattice_from_polygon, psi_vertices, reflexive_factorization,
    secondary_fan,
};
use crate::surface::{
    check_cell_counts, enumerate_surfaces, initial_surface, offset_from_seed, DiscreteSurface,
    Quotient, DEFAULT_CAP,
};
use crate::svg;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;
pub const EXIT_CAP: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "gkz-dessins",
    version,
    about = "Lattices, zigzag surfaces, dessins and A-determinants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the whole pipeline and print one JSON report
    Analyze(AnalyzeArgs),
    /// Secondary fan, secondary polygon and Delta
    Fan(FanArgs),
    /// Discrete surfaces in R^N
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Perfect dessins with their constellations and superpotentials
    Dessin(DessinArgs),
    /// Kasteleyn matrices
    #[command(subcommand)]
    Kasteleyn(KasteleynCmd),
    /// Compare det K with the principal A-determinant
    #[command(subcommand)]
    Adet(AdetCmd),
    /// Draw a rhombus tiling, the fan or Delta
    Svg(SvgArgs),
    /// The A-sequence and its invariants
    #[command(subcommand)]
    Gkz(GkzCmd),
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCmd {
    /// Enumerate surfaces reachable by elementary transformations
    Enumerate(SurfaceArgs),
}

#[derive(Debug, Subcommand)]
pub enum KasteleynCmd {
    /// Determinant of the weighted bi-adjacency matrix
    Det(KasteleynArgs),
}

#[derive(Debug, Subcommand)]
pub enum AdetCmd {
    /// Compare the critical determinant with the principal A-determinant
    Check(AdetArgs),
}

#[derive(Debug, Subcommand)]
pub enum GkzCmd {
    /// A-sequence, volume, torsion and relations
    Info(InputArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false, id = "source")]
pub struct InputSource {
    /// B as JSON, `[[..],[..]]` or `{"B": ..}`, inline or a file path
    #[arg(long = "B", value_name = "JSON")]
    pub b: Option<String>,
    /// Plücker form as JSON, `[[..]..]` or `{"C": ..}`
    #[arg(long = "C", value_name = "JSON")]
    pub c: Option<String>,
    /// Quiver arrows `[[s,t],..]`, 1-based
    #[arg(long, value_name = "JSON")]
    pub quiver: Option<String>,
    /// Convex lattice polygon `[[x,y],..]`, counterclockwise
    #[arg(long, value_name = "JSON")]
    pub polygon: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    #[command(flatten)]
    pub source: InputSource,
    /// Factor for C when gcd > 1: `[[a,b],[c,d]]` or `reflexive`
    #[arg(long, value_name = "G")]
    pub g: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Seed for the grid offset
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Maximum number of surfaces to enumerate
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// unit, critical, symbolic or a comma list of integers
    #[arg(long, default_value = "critical")]
    pub weights: String,
    /// Principal A-determinant fixture (JSON with `poly` or `factors`)
    #[arg(long, value_name = "FILE")]
    pub ea_fixture: Option<PathBuf>,
    /// Directory for fan, Delta and tiling drawings
    #[arg(long, value_name = "DIR")]
    pub svg: Option<PathBuf>,
    /// Use the mirror orientation of every dessin
    #[arg(long)]
    pub mirror: bool,
}

#[derive(Debug, Args)]
pub struct FanArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Write the fan drawing here
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// Write the tiling of the first perfect surface here
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
    /// Overlay zigzag loops on the drawing
    #[arg(long)]
    pub zigzag: bool,
    /// Only report the starting surfaces of a few seeds (no enumeration)
    #[arg(long)]
    pub first_step_only: bool,
    /// Number of seeds tried with --first-step-only
    #[arg(long, default_value_t = 32)]
    pub trials: u64,
    /// Print every surface as a vertex list
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct DessinArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// 1-based index of a single dessin
    #[arg(long)]
    pub dessin: Option<usize>,
    /// Use the mirror orientation
    #[arg(long)]
    pub mirror: bool,
}

#[derive(Debug, Args)]
pub struct KasteleynArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// unit, critical, symbolic or a comma list of integers
    #[arg(long, default_value = "critical")]
    pub weights: String,
    /// 1-based index of the dessin
    #[arg(long, default_value_t = 1)]
    pub dessin: usize,
    /// Use the mirror orientation
    #[arg(long)]
    pub mirror: bool,
}

#[derive(Debug, Args)]
pub struct AdetArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// unit, critical, symbolic or a comma list of integers
    #[arg(long, default_value = "critical")]
    pub weights: String,
    /// Principal A-determinant fixture (JSON with `poly` or `factors`)
    #[arg(long, value_name = "FILE")]
    pub ea_fixture: Option<PathBuf>,
    /// 1-based index of the dessin
    #[arg(long, default_value_t = 1)]
    pub dessin: usize,
    /// Use the mirror orientation
    #[arg(long)]
    pub mirror: bool,
}

#[derive(Debug, Args)]
pub struct SvgArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// Output file
    #[arg(long, value_name = "FILE")]
    pub svg: PathBuf,
    /// Overlay zigzag loops
    #[arg(long)]
    pub zigzag: bool,
    /// Draw the secondary fan instead of a tiling
    #[arg(long, conflicts_with = "delta")]
    pub fan: bool,
    /// Draw Delta instead of a tiling
    #[arg(long)]
    pub delta: bool,
    /// 1-based index of the perfect surface
    #[arg(long, default_value_t = 1)]
    pub dessin: usize,
}

/// A failure tagged with the pipeline stage it came from.
#[derive(Debug, thiserror::Error)]
#[error("{stage}: {source}")]
pub struct StageError {
    pub stage: &'static str,
    pub source: Error,
}

impl StageError {
    pub fn exit_code(&self) -> u8 {
        match self.source {
            Error::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INVALID,
        }
    }
}

type StageResult<T> = std::result::Result<T, StageError>;

trait Stage<T> {
    fn at(self, stage: &'static str) -> StageResult<T>;
}

impl<T> Stage<T> for Result<T> {
    fn at(self, stage: &'static str) -> StageResult<T> {
        self.map_err(|source| StageError { stage, source })
    }
}

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }
}

/// Inline JSON or the contents of a file.
fn read_arg(s: &str) -> Result<String> {
    let t = s.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok(s.to_string())
    } else {
        Ok(fs::read_to_string(s)?)
    }
}

pub fn parse_weights(s: &str) -> Result<WeightSpec> {
    if s.chars()
        .next()
        .is_some_and(|c| c.is_ascii_digit() || c == '-')
    {
        let v: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|x| x.trim().parse::<i64>()).collect();
        return v
            .map(WeightSpec::Numeric)
            .map_err(|e| Error::Parse(format!("weights: {}", e)));
    }
    WeightSpec::parse(s)
}

fn parse_g(s: &str) -> Result<[[i64; 2]; 2]> {
    let v: Vec<Vec<i64>> = serde_json::from_str(s)?;
    if v.len() != 2 || v.iter().any(|r| r.len() != 2) {
        return Err(Error::Parse("G must be a 2 x 2 matrix".into()));
    }
    Ok([[v[0][0], v[0][1]], [v[1][0], v[1][1]]])
}

fn from_form(c: &[Vec<i64>], g: Option<&str>) -> Result<LatticeEmbedding> {
    match g {
        Some("reflexive") => reflexive_factorization(&c.to_vec())?
            .map(|(l, _)| l)
            .ok_or_else(|| Error::InvalidForm("no G gives a reflexive Delta".into())),
        Some(g) => factor_antisymmetric(&c.to_vec(), Some(parse_g(g)?)),
        None => factor_antisymmetric(&c.to_vec(), None),
    }
}

pub fn load_lattice(input: &InputArgs) -> Result<LatticeEmbedding> {
    let src = &input.source;
    let g = input.g.as_deref();
    if let Some(b) = &src.b {
        parse_b_json(&read_arg(b)?)
    } else if let Some(c) = &src.c {
        from_form(&parse_c_json(&read_arg(c)?)?, g)
    } else if let Some(q) = &src.quiver {
        let v: Value = serde_json::from_str(&read_arg(q)?)?;
        let v = v.get("arrows").cloned().unwrap_or(v);
        from_form(&Quiver::from_json(&v, None)?.to_plucker()?.c, g)
    } else if let Some(p) = &src.polygon {
        let pts: Vec<(i64, i64)> = serde_json::from_str(&read_arg(p)?)?;
        lattice_from_polygon(&pts)
    } else {
        Err(Error::Parse("no input given".into()))
    }
}

fn pairs1(v: &[(usize, usize)]) -> Vec<[usize; 2]> {
    v.iter().map(|&(i, j)| [i + 1, j + 1]).collect()
}

fn idx1(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn json_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    Ok(fs::write(path, contents)?)
}

pub fn fan_report(l: &LatticeEmbedding) -> Value {
    let cones = secondary_fan(l);
    let sp = psi_vertices(l, &cones);
    let d = delta_polygon(l);
    let (twice, interior) = area_and_interior(l, &cones[0]);
    json!({
        "B": l.rows(),
        "plucker": l.plucker().c,
        "cones": cones.iter().map(|c| json!({
            "right": idx1(&c.right),
            "left": idx1(&c.left),
            "L_C": pairs1(&c.lc),
            "psi": c.psi,
        })).collect::<Vec<_>>(),
        "secondary_polygon": sp.vertices,
        "delta": {
            "order": idx1(&d.perm),
            "points": d.polygon.points,
            "vertices": d.polygon.vertices,
            "twice_area": twice,
            "interior_points": interior,
        },
    })
}

fn dessin_json(m: &DessinData) -> Result<Value> {
    let c = constellation_from_list(m)?;
    Ok(json!({
        "black": m.nb,
        "white": m.nw,
        "edges": m.len(),
        "genus": m.genus(),
        "M": m.to_json(),
        "sigma0": cycles_text(&c.sigma0),
        "sigma1": cycles_text(&c.sigma1),
        "superpotential": superpotential(&c).to_string(),
    }))
}

fn perfect_list(
    l: &LatticeEmbedding,
    run: &RunArgs,
) -> StageResult<(Quotient, Vec<DiscreteSurface>, usize)> {
    let q = Quotient::new(l);
    let e = enumerate_surfaces(l, run.seed, run.cap).at("surface")?;
    let total = e.surfaces.len();
    Ok((q.clone(), e.perfect(&q), total))
}

fn dessins(l: &LatticeEmbedding, run: &RunArgs, mirror: bool) -> StageResult<Vec<DessinData>> {
    let (q, perfect, _) = perfect_list(l, run)?;
    perfect
        .iter()
        .map(|s| DessinData::from_surface(&q, s).map(|m| if mirror { m.mirror() } else { m }))
        .collect::<Result<Vec<_>>>()
        .at("dessin")
}

fn pick<T: Clone>(v: &[T], index: usize) -> Result<T> {
    if index == 0 || index > v.len() {
        return Err(Error::DimensionMismatch(format!(
            "index {} outside 1..={}",
            index,
            v.len()
        )));
    }
    Ok(v[index - 1].clone())
}

fn load_fixture(path: &Path, n: usize) -> Result<LaurentPoly> {
    EaFixture::parse(&fs::read_to_string(path)?)?.to_poly(n)
}

pub fn run(cli: &Cli) -> StageResult<Outcome> {
    match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Fan(a) => {
            let l = load_lattice(&a.input).at("lattice")?;
            if let Some(p) = &a.svg {
                write_file(p, &svg::fan_svg(&l)).at("svg")?;
            }
            Ok(Outcome::ok(json_string(&fan_report(&l))))
        }
        Command::Surface(SurfaceCmd::Enumerate(a)) => surface_enumerate(a),
        Command::Dessin(a) => {
            let l = load_lattice(&a.input).at("lattice")?;
            let all = dessins(&l, &a.run, a.mirror)?;
            let chosen: Vec<DessinData> = match a.dessin {
                Some(k) => vec![pick(&all, k).at("dessin")?],
                None => all,
            };
            let v = chosen
                .iter()
                .map(dessin_json)
                .collect::<Result<Vec<_>>>()
                .at("dessin")?;
            Ok(Outcome::ok(json_string(&v)))
        }
        Command::Kasteleyn(KasteleynCmd::Det(a)) => {
            let l = load_lattice(&a.input).at("lattice")?;
            let w = parse_weights(&a.weights).at("kasteleyn")?;
            let m = pick(&dessins(&l, &a.run, a.mirror)?, a.dessin).at("dessin")?;
            let d = kasteleyn_det(&m, &w).at("kasteleyn")?;
            Ok(Outcome::ok(format!("{}\n", d)))
        }
        Command::Adet(AdetCmd::Check(a)) => {
            let l = load_lattice(&a.input).at("lattice")?;
            let w = parse_weights(&a.weights).at("kasteleyn")?;
            let m = pick(&dessins(&l, &a.run, a.mirror)?, a.dessin).at("dessin")?;
            let ea = a
                .ea_fixture
                .as_ref()
                .map(|p| load_fixture(p, l.n()))
                .transpose()
                .at("adet")?;
            let r = conjecture_check(&l, &m, &w, ea.as_ref()).at("adet")?;
            let code = if r.holds() { EXIT_OK } else { EXIT_MISMATCH };
            Ok(Outcome {
                stdout: json_string(&r),
                code,
            })
        }
        Command::Svg(a) => {
            let l = load_lattice(&a.input).at("lattice")?;
            let text = if a.fan {
                svg::fan_svg(&l)
            } else if a.delta {
                svg::polygon_svg(&delta_polygon(&l).polygon)
            } else {
                let (q, perfect, _) = perfect_list(&l, &a.run)?;
                let s = pick(&perfect, a.dessin).at("surface")?;
                svg::tiling_svg(&q, &s, a.zigzag).at("svg")?
            };
            write_file(&a.svg, &text).at("svg")?;
            Ok(Outcome::ok(format!("wrote {}\n", a.svg.display())))
        }
        Command::Gkz(GkzCmd::Info(input)) => {
            let l = load_lattice(input).at("lattice")?;
            Ok(Outcome::ok(json_string(&gkz_info(&l).at("gkz")?)))
        }
    }
}

fn surface_enumerate(a: &SurfaceArgs) -> StageResult<Outcome> {
    let l = load_lattice(&a.input).at("lattice")?;
    let q = Quotient::new(&l);
    if a.first_step_only {
        // starting surfaces only; which perfect ones occur depends on lambda
        let mut found = std::collections::BTreeMap::new();
        for seed in a.run.seed..a.run.seed + a.trials {
            let lam = offset_from_seed(&l, seed).at("surface")?;
            let s = initial_surface(&q, &lam).at("surface")?.canonical(&q);
            if s.is_perfect(&q) {
                found.entry(s.canonical_key(&q)).or_insert(seed);
            }
        }
        let v = json!({
            "trials": a.trials,
            "perfect_first_steps": found.len(),
            "seeds": found.values().collect::<Vec<_>>(),
        });
        return Ok(Outcome::ok(json_string(&v)));
    }
    let e = enumerate_surfaces(&l, a.run.seed, a.run.cap).at("surface")?;
    for s in &e.surfaces {
        check_cell_counts(&q, s).at("surface")?;
    }
    let perfect = e.perfect(&q);
    if let Some(p) = &a.svg {
        let s = perfect
            .first()
            .ok_or(Error::NotPerfect("no perfect surface found".into()))
            .at("surface")?;
        write_file(p, &svg::tiling_svg(&q, s, a.zigzag).at("svg")?).at("svg")?;
    }
    let mut v = json!({
        "seed": a.run.seed,
        "offset": e.offset,
        "surfaces": e.surfaces.len(),
        "perfect": perfect.len(),
    });
    if a.list {
        v["list"] = e
            .surfaces
            .iter()
            .map(|s| json!({"perfect": s.is_perfect(&q), "vertices": s.vertices()}))
            .collect();
    }
    Ok(Outcome::ok(json_string(&v)))
}

fn analyze(a: &AnalyzeArgs) -> StageResult<Outcome> {
    let l = load_lattice(&a.input).at("lattice")?;
    let w = parse_weights(&a.weights).at("kasteleyn")?;
    let mut report = fan_report(&l);
    let info = gkz_info(&l).at("gkz")?;
    report["gkz"] = serde_json::to_value(&info).expect("serializable");
    report["vol_a"] = json!(vol_a(&l).at("gkz")?);

    let q = Quotient::new(&l);
    let e = enumerate_surfaces(&l, a.run.seed, a.run.cap).at("surface")?;
    for s in &e.surfaces {
        check_cell_counts(&q, s).at("surface")?;
    }
    let perfect = e.perfect(&q);
    report["surfaces"] = json!({
        "seed": a.run.seed,
        "offset": e.offset,
        "found": e.surfaces.len(),
        "perfect": perfect.len(),
    });

    let ea = match &a.ea_fixture {
        Some(p) => Some(load_fixture(p, l.n()).at("adet")?),
        None => principal_a_det_univariate(&l).ok(),
    };
    let mut any_mismatch = false;
    let mut out = Vec::new();
    for (k, s) in perfect.iter().enumerate() {
        let mut m = DessinData::from_surface(&q, s).at("dessin")?;
        if a.mirror {
            m = m.mirror();
        }
        let mut d = dessin_json(&m).at("dessin")?;
        let det = kasteleyn_det(&m, &w).at("kasteleyn")?;
        d["index"] = json!(k + 1);
        d["det"] = json!(det.to_string());
        d["newton_equal"] = json!(newton_polygon(&det, &l).at("kasteleyn")?.equal);
        let conj = match &ea {
            Some(p) => {
                let r = conjecture_check(&l, &m, &w, Some(p)).at("adet")?;
                any_mismatch |= !r.holds();
                serde_json::to_value(&r).expect("serializable")
            }
            None => {
                let lhs = conjecture_lhs(&l, &m, &w).at("adet")?;
                let (newton_ok, vertex_ok) = lhs_properties(&l, &lhs).at("adet")?;
                json!({
                    "status": "unavailable",
                    "lhs": lhs.normalize_sign().to_string(),
                    "newton_ok": newton_ok,
                    "vertex_coefficients_ok": vertex_ok,
                })
            }
        };
        d["conjecture"] = conj;
        out.push(d);
        if let Some(dir) = &a.svg {
            let t = svg::tiling_svg(&q, s, true).at("svg")?;
            write_file(&dir.join(format!("tiling_{}.svg", k + 1)), &t).at("svg")?;
        }
    }
    if let Some(dir) = &a.svg {
        write_file(&dir.join("fan.svg"), &svg::fan_svg(&l)).at("svg")?;
        write_file(
            &dir.join("delta.svg"),
            &svg::polygon_svg(&delta_polygon(&l).polygon),
        )
        .at("svg")?;
    }
    report["weights"] = json!(a.weights);
    report["dessins"] = Value::Array(out);
    report["conjecture_status"] = json!(match (&ea, any_mismatch) {
        (None, _) => "unavailable",
        (Some(_), true) => "mismatch",
        (Some(_), false) => "holds",
    });
    let code = if any_mismatch { EXIT_MISMATCH } else { EXIT_OK };
    Ok(Outcome {
        stdout: json_string(&report),
        code,
    })
}
