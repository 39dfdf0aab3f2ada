//! `hyptrig`: JSON/CSV front end to the hyptrig library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error, 3 precondition violation.

mod output;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use hyptrig::lorentz::{classify, gram};
use hyptrig::objects::ObjectJson;
use hyptrig::pairings::{
    dist_point_point, plane_pair_relation_with, sdist_horosphere_horosphere,
    sdist_plane_horosphere, sdist_point_horosphere, sdist_point_plane,
};
use hyptrig::polygons::{pent_arc, pent_build, pent_sides, quad_arcs, quad_build, quad_side};
use hyptrig::sampling::{edge_matrix, instance_rng};
use hyptrig::tetra::{transversal_bound, OPPOSITE_PAIRS};
use hyptrig::verify::{run_suite, RunConfig, Suite};
use hyptrig::{
    EdgeMatrix, EdgePair, GeomError, HPoint, HalfSpace, Horoball, LVec, PlanePairRelation,
    Tolerances, Transversal, TruncatedTetrahedron,
};

use output::{g17, render, Format, Report};

#[derive(Parser)]
#[command(name = "hyptrig", version, about = "Hyperboloid-model hyperbolic geometry")]
#[command(after_help = "Tolerances can be overridden with --tol.<name> <value> \
    (names: class, obj, parallel, deg, quad, signature, independent).")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Omit the timestamp field from generated reports.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Causal type of a vector, e.g. `classify [1,1,0]`.
    Classify { vector: String },
    /// Signed distance between two objects: `dist point [1,0,0] horoball [1,1,0]`, or two
    /// JSON objects `{"kind": ..., "coords": [...]}`.
    #[command(allow_negative_numbers = true)]
    Dist {
        #[arg(num_args = 2..=4, required = true)]
        args: Vec<String>,
    },
    /// Quadrilateral report from `{"quad": {"x0": [...], "x1": [...], "y": [...]}}`.
    Quad { input: Option<PathBuf> },
    /// Pentagon report from `{"pent": {"x": [...], "y0": [...], "y1": [...]}}`.
    Pent { input: Option<PathBuf> },
    /// Truncated tetrahedra from `{"L": [[...], ...]}` or `{"normals": [[...], ...]}`.
    Tetra {
        #[command(subcommand)]
        cmd: TetraCmd,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum TetraCmd {
    /// Realize an edge matrix by four normals.
    Realize { input: Option<PathBuf> },
    /// Transversals of opposite edge pairs.
    Transversal {
        input: Option<PathBuf>,
        /// Edge pair such as `12,34` (1-based); all three pairs when omitted.
        #[arg(long)]
        pair: Option<String>,
    },
    /// The lower bound `2L/sqrt((x-1)(y-1))`, from flags or per pair of an input matrix.
    Bound {
        input: Option<PathBuf>,
        #[arg(long, requires_all = ["y", "l"])]
        x: Option<f64>,
        #[arg(long)]
        y: Option<f64>,
        #[arg(long)]
        l: Option<f64>,
    },
    /// Seeded random realizable matrices and their transversals.
    Random {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "12,34")]
        pair: String,
        /// Off-diagonal entries are cosh of a uniform draw from [lo, hi].
        #[arg(long, default_value_t = 0.1)]
        lo: f64,
        #[arg(long, default_value_t = 5.0)]
        hi: f64,
    },
}

enum CliError {
    Parse(String),
    Geom(GeomError),
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Geom(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Ctx {
    tol: Tolerances,
    timestamp: bool,
}

fn main() -> ExitCode {
    let (args, tol) = match split_tolerances(std::env::args().collect()) {
        Ok(x) => x,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Ctx { tol, timestamp: !cli.no_timestamp };
    match dispatch(&cli.cmd, &ctx) {
        Ok((report, passed)) => {
            print!("{}", render(&report, cli.format));
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Geom(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

/// Pulls `--tol.<name> <value>` and `--tol.<name>=<value>` out of the argument list.
fn split_tolerances(args: Vec<String>) -> std::result::Result<(Vec<String>, Tolerances), String> {
    let mut tol = Tolerances::default();
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let Some(opt) = a.strip_prefix("--tol.") else {
            rest.push(a);
            continue;
        };
        let (name, value) = match opt.split_once('=') {
            Some((n, v)) => (n.to_string(), v.to_string()),
            None => {
                let v = it.next().ok_or_else(|| format!("--tol.{opt} needs a value"))?;
                (opt.to_string(), v)
            }
        };
        let v: f64 = value.parse().map_err(|_| format!("--tol.{name}: invalid number {value:?}"))?;
        if !tol.set(&name, v) {
            return Err(format!(
                "--tol.{name}: unknown tolerance or non-positive value (known: {})",
                Tolerances::NAMES.join(", ")
            ));
        }
    }
    Ok((rest, tol))
}

fn dispatch(cmd: &Cmd, ctx: &Ctx) -> CliResult<(Report, bool)> {
    let single = |v: Value| Ok((Report::Single(v), true));
    match cmd {
        Cmd::Classify { vector } => single(cmd_classify(vector, ctx)?),
        Cmd::Dist { args } => single(cmd_dist(args, ctx)?),
        Cmd::Quad { input } => single(cmd_quad(&read_input(input)?)?),
        Cmd::Pent { input } => single(cmd_pent(&read_input(input)?)?),
        Cmd::Tetra { cmd } => Ok((cmd_tetra(cmd, ctx)?, true)),
        Cmd::Verify { suite, count, seed } => cmd_verify(suite, *count, *seed, ctx),
    }
}

// ---------------------------------------------------------------- input

fn read_input(path: &Option<PathBuf>) -> CliResult<String> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn parse_json<T: for<'de> Deserialize<'de>>(s: &str) -> CliResult<T> {
    serde_json::from_str(s).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))
}

/// `[1, 0, 0]`, `1,0,0` or `(1,0,0)`.
fn parse_coords(s: &str) -> CliResult<Vec<f64>> {
    if let Ok(v) = serde_json::from_str::<Vec<f64>>(s) {
        return Ok(v);
    }
    s.trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| CliError::Parse(format!("cannot parse coordinates {s:?}")))
}

/// Coordinates given either bare or as a `{"kind": ..., "coords": ...}` object.
#[derive(Deserialize)]
#[serde(untagged)]
enum CoordsIn {
    Bare(Vec<f64>),
    Object(ObjectJson),
}

impl CoordsIn {
    fn coords(self) -> Vec<f64> {
        match self {
            CoordsIn::Bare(c) => c,
            CoordsIn::Object(
                ObjectJson::Vector { coords }
                | ObjectJson::Point { coords }
                | ObjectJson::Horoball { coords }
                | ObjectJson::Halfspace { coords }
                | ObjectJson::Geodesic { coords, .. },
            ) => coords,
        }
    }
}

enum Obj {
    Point(HPoint),
    Horoball(Horoball),
    HalfSpace(HalfSpace),
}

fn make_object(kind: &str, coords: Vec<f64>, tol: &Tolerances) -> CliResult<Obj> {
    let v = LVec::new(coords)?;
    Ok(match kind {
        "point" => Obj::Point(HPoint::new_with(v, tol.obj)?),
        "horoball" | "horosphere" => Obj::Horoball(Horoball::new_with(v, tol.obj)?),
        "halfspace" | "plane" => Obj::HalfSpace(HalfSpace::new_with(v, tol.obj)?),
        other => {
            return Err(CliError::Parse(format!(
                "unknown object kind {other:?}; expected point, horoball or halfspace"
            )))
        }
    })
}

fn object_from_json(s: &str, tol: &Tolerances) -> CliResult<Obj> {
    match parse_json::<ObjectJson>(s)? {
        ObjectJson::Point { coords } => make_object("point", coords, tol),
        ObjectJson::Horoball { coords } => make_object("horoball", coords, tol),
        ObjectJson::Halfspace { coords } => make_object("halfspace", coords, tol),
        other => Err(CliError::Parse(format!("no distance is defined for {other:?}"))),
    }
}

fn coords(p: &HPoint) -> Value {
    json!(p.vec().coords())
}

// ---------------------------------------------------------------- commands

fn cmd_classify(vector: &str, ctx: &Ctx) -> CliResult<Value> {
    let v = LVec::new(parse_coords(vector)?)?;
    let c = classify(&v, ctx.tol.class);
    Ok(json!({
        "class": c.to_string(),
        "kind": c.kind,
        "positive": c.positive,
        "self_pairing": v.norm_squared(),
    }))
}

fn cmd_dist(args: &[String], ctx: &Ctx) -> CliResult<Value> {
    let (a, b) = match args.len() {
        2 => (object_from_json(&args[0], &ctx.tol)?, object_from_json(&args[1], &ctx.tol)?),
        4 => (
            make_object(&args[0], parse_coords(&args[1])?, &ctx.tol)?,
            make_object(&args[2], parse_coords(&args[3])?, &ctx.tol)?,
        ),
        _ => return Err(CliError::Parse("expected KIND COORDS KIND COORDS or two JSON objects".into())),
    };
    let signed = |value: f64, label: &str, extra: Value| {
        let mut m = json!({
            "summary": format!("d = {}, {label}", g17(value)),
            "convention": label,
            "distance": value,
        });
        if let (Value::Object(m), Value::Object(e)) = (&mut m, extra) {
            m.extend(e);
        }
        m
    };
    Ok(match (&a, &b) {
        (Obj::Point(p), Obj::Point(q)) => signed(dist_point_point(p, q), "point–point", json!({})),
        (Obj::Point(p), Obj::Horoball(h)) | (Obj::Horoball(h), Obj::Point(p)) => {
            let r = sdist_point_horosphere(p, h)?;
            signed(r.distance.value, r.distance.convention.label(), json!({"foot": coords(&r.foot)}))
        }
        (Obj::Horoball(h0), Obj::Horoball(h1)) => {
            let r = sdist_horosphere_horosphere(h0, h1)?;
            let feet = json!([coords(&r.feet.0), coords(&r.feet.1)]);
            signed(r.distance.value, r.distance.convention.label(), json!({ "feet": feet }))
        }
        (Obj::Point(p), Obj::HalfSpace(y)) | (Obj::HalfSpace(y), Obj::Point(p)) => {
            let r = sdist_point_plane(p, y)?;
            signed(r.value, r.convention.label(), json!({}))
        }
        (Obj::HalfSpace(y), Obj::Horoball(h)) | (Obj::Horoball(h), Obj::HalfSpace(y)) => {
            let r = sdist_plane_horosphere(y, h)?;
            signed(
                r.distance.value,
                r.distance.convention.label(),
                json!({"foot_on_plane": coords(&r.foot_on_plane)}),
            )
        }
        (Obj::HalfSpace(y0), Obj::HalfSpace(y1)) => {
            let rel = plane_pair_relation_with(y0, y1, ctx.tol.parallel)?;
            let summary = match rel {
                PlanePairRelation::Intersecting { angle } => format!("intersecting, angle {}", g17(angle)),
                PlanePairRelation::Ultraparallel { distance, .. } => {
                    format!("ultraparallel, distance {}", g17(distance))
                }
                PlanePairRelation::Parallel => "parallel".to_string(),
            };
            let mut v = serde_json::to_value(rel).expect("serializable");
            v.as_object_mut().expect("tagged enum").insert("summary".into(), summary.into());
            v
        }
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadIn {
    quad: QuadArgs,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadArgs {
    x0: CoordsIn,
    x1: CoordsIn,
    y: CoordsIn,
}

fn cmd_quad(input: &str) -> CliResult<Value> {
    let q: QuadIn = parse_json(input)?;
    let x0 = Horoball::new(LVec::new(q.quad.x0.coords())?)?;
    let x1 = Horoball::new(LVec::new(q.quad.x1.coords())?)?;
    let y = HalfSpace::new(LVec::new(q.quad.y.coords())?)?;
    let data = quad_build(&x0, &x1, &y)?;
    let res = data.residuals()?;
    let (t0, t1) = quad_arcs(data.ell, data.d, data.a0, data.a1);
    Ok(json!({
        "measured": {
            "ell": data.ell, "a0": data.a0, "a1": data.a1, "d": data.d,
            "theta0": data.theta0, "theta1": data.theta1,
        },
        "law": {"ell": quad_side(data.d, data.a0, data.a1), "theta0": t0, "theta1": t1},
        "residuals": res,
        "vertices": {
            "v0": coords(&data.v0), "v1": coords(&data.v1),
            "u0": coords(&data.u0), "u0p": coords(&data.u0p),
            "u1": coords(&data.u1), "u1p": coords(&data.u1p),
        },
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PentIn {
    pent: PentArgs,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PentArgs {
    x: CoordsIn,
    y0: CoordsIn,
    y1: CoordsIn,
}

fn cmd_pent(input: &str) -> CliResult<Value> {
    let p: PentIn = parse_json(input)?;
    let x = Horoball::new(LVec::new(p.pent.x.coords())?)?;
    let y0 = HalfSpace::new(LVec::new(p.pent.y0.coords())?)?;
    let y1 = HalfSpace::new(LVec::new(p.pent.y1.coords())?)?;
    let data = pent_build(&x, &y0, &y1)?;
    let res = data.residuals()?;
    let (l0, l1) = pent_sides(data.d, data.a0, data.a1)?;
    let theta = pent_arc(data.d, data.a0, data.a1, data.ell0, data.ell1)?;
    Ok(json!({
        "measured": {
            "d": data.d, "ell0": data.ell0, "ell1": data.ell1, "a0": data.a0, "a1": data.a1,
            "theta": data.theta, "cosh_ell0": data.ell0.cosh(), "cosh_ell1": data.ell1.cosh(),
        },
        "law": {"ell0": l0, "ell1": l1, "theta": theta},
        "residuals": res,
        "vertices": {
            "w0": coords(&data.w0), "w1": coords(&data.w1),
            "v0": coords(&data.v0), "v1": coords(&data.v1),
            "u0": coords(&data.u0), "u1": coords(&data.u1),
        },
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TetraIn {
    #[serde(rename = "L")]
    l: Option<Vec<Vec<f64>>>,
    normals: Option<Vec<CoordsIn>>,
}

fn edge_matrix_from(rows: &[Vec<f64>], tol: &Tolerances) -> CliResult<EdgeMatrix> {
    let shape_ok = rows.len() == 4 && rows.iter().all(|r| r.len() == 4);
    if !shape_ok {
        return Err(CliError::Parse("\"L\" must be a 4x4 array".into()));
    }
    let mut m = [[0.0; 4]; 4];
    for (i, r) in rows.iter().enumerate() {
        m[i].copy_from_slice(r);
    }
    Ok(EdgeMatrix::new_with(m, tol)?)
}

fn tetra_from_input(input: &str, tol: &Tolerances) -> CliResult<TruncatedTetrahedron> {
    match parse_json::<TetraIn>(input)? {
        TetraIn { l: Some(rows), normals: None } => {
            Ok(TruncatedTetrahedron::from_edge_lengths_with(&edge_matrix_from(&rows, tol)?, *tol)?)
        }
        TetraIn { l: None, normals: Some(ns) } => {
            if ns.len() != 4 {
                return Err(CliError::Parse("\"normals\" must list four vectors".into()));
            }
            let hs = ns
                .into_iter()
                .map(|c| Ok(HalfSpace::new_with(LVec::new(c.coords())?, tol.obj)?))
                .collect::<CliResult<Vec<_>>>()?;
            let hs: [HalfSpace; 4] = hs.try_into().map_err(|_| CliError::Parse("four normals".into()))?;
            Ok(TruncatedTetrahedron::from_normals_with(hs, *tol)?)
        }
        _ => Err(CliError::Parse("give exactly one of \"L\" or \"normals\"".into())),
    }
}

fn parse_pair(s: &str) -> CliResult<EdgePair> {
    let bad = || CliError::Parse(format!("edge pair {s:?} should look like 12,34"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let edge = |e: &str| -> CliResult<(usize, usize)> {
        let d: Vec<usize> = e
            .trim()
            .chars()
            .filter(|c| *c != '-')
            .map(|c| c.to_digit(10).map(|x| x as usize))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        match d[..] {
            [i, j] if (1..=4).contains(&i) && (1..=4).contains(&j) => Ok((i - 1, j - 1)),
            _ => Err(bad()),
        }
    };
    let pair = (edge(a)?, edge(b)?);
    hyptrig::tetra::check_pair(pair)?;
    Ok(pair)
}

fn pair_json(p: EdgePair) -> Value {
    let ((i, j), (k, l)) = p;
    json!([[i + 1, j + 1], [k + 1, l + 1]])
}

fn transversal_json(t: &Transversal) -> Value {
    json!({
        "pair": pair_json(t.pair),
        "s0": t.s0,
        "t0": t.t0,
        "coshT": t.cosh_t,
        "T": t.length,
        "degenerate": t.degenerate,
        "within_edges": t.within_edges,
        "endpoints": [coords(&t.endpoints.0), coords(&t.endpoints.1)],
    })
}

fn degeneracy_note(tol: &Tolerances) -> String {
    format!(
        "degenerate when coshT - 1 <= {:e}; lengths below about {:.2e} are not resolved",
        tol.deg,
        (2.0 * tol.deg).sqrt()
    )
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn meta(entries: Value, ctx: &Ctx) -> Map<String, Value> {
    let mut m = match entries {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    if ctx.timestamp {
        m.insert("timestamp".into(), timestamp().into());
    }
    m
}

fn cmd_tetra(cmd: &TetraCmd, ctx: &Ctx) -> CliResult<Report> {
    let tol = &ctx.tol;
    match cmd {
        TetraCmd::Realize { input } => {
            let t = tetra_from_input(&read_input(input)?, tol)?;
            let ns: Vec<LVec> = t.normals().iter().map(|h| h.vec().clone()).collect();
            let regram = gram(&ns)?.max_abs_diff(&t.edges().normal_gram());
            let mut edges = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push(json!({"edge": [i + 1, j + 1], "length": t.internal_edge(i, j)?.length}));
                }
            }
            let hats = (0..4)
                .map(|i| t.hat_plane(i).map(|h| h.orthogonal_to_pi))
                .collect::<hyptrig::Result<Vec<_>>>()?;
            Ok(Report::Single(json!({
                "normals": ns.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
                "L": t.edges().rows(),
                "det": t.edges().normal_gram_det(),
                "regram_error": regram,
                "internal_edges": edges,
                "hat_orthogonal": hats,
                "degenerate": t.is_degenerate(),
            })))
        }
        TetraCmd::Transversal { input, pair } => {
            let t = tetra_from_input(&read_input(input)?, tol)?;
            let pairs = match pair {
                Some(p) => vec![parse_pair(p)?],
                None => OPPOSITE_PAIRS.to_vec(),
            };
            let rows = pairs
                .into_iter()
                .map(|p| t.transversal(p).map(|x| transversal_json(&x)))
                .collect::<hyptrig::Result<Vec<_>>>()?;
            Ok(Report::Rows {
                meta: meta(json!({"degeneracy": degeneracy_note(tol)}), &Ctx { tol: *tol, timestamp: false }),
                key: "transversals",
                rows,
            })
        }
        TetraCmd::Bound { input, x, y, l } => {
            if let (Some(x), Some(y), Some(l)) = (x, y, l) {
                return Ok(Report::Single(json!({
                    "x": x, "y": y, "L": l, "bound": transversal_bound(*x, *y, *l)?,
                })));
            }
            let t = tetra_from_input(&read_input(input)?, tol)?;
            let rows = OPPOSITE_PAIRS
                .iter()
                .map(|&p| -> CliResult<Value> {
                    let (x, y, abcd) = t.edges().args(p);
                    let lo = abcd.iter().copied().fold(f64::INFINITY, f64::min);
                    let b = transversal_bound(x, y, lo)?;
                    let tr = t.transversal(p)?;
                    Ok(json!({
                        "pair": pair_json(p), "x": x, "y": y, "L": lo,
                        "bound": b, "coshT": tr.cosh_t, "excess": tr.cosh_t - b,
                    }))
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Report::Rows { meta: Map::new(), key: "bounds", rows })
        }
        TetraCmd::Random { count, seed, pair, lo, hi } => {
            if !(0.0 < *lo && lo < hi && hi.is_finite()) {
                return Err(CliError::Parse(format!("need 0 < lo < hi, got lo = {lo}, hi = {hi}")));
            }
            let p = parse_pair(pair)?;
            let mut rows = Vec::with_capacity(*count);
            for i in 0..*count {
                let l = edge_matrix(&mut instance_rng(*seed, i as u64), *lo, *hi);
                let t = TruncatedTetrahedron::from_edge_lengths_with(&l, *tol)?;
                let tr = t.transversal(p)?;
                let u = l.upper_triangle();
                rows.push(json!({
                    "seed": seed, "index": i,
                    "l12": u[0], "l13": u[1], "l14": u[2], "l23": u[3], "l24": u[4], "l34": u[5],
                    "s0": tr.s0, "t0": tr.t0, "coshT": tr.cosh_t, "T": tr.length,
                    "degenerate": tr.degenerate,
                }));
            }
            Ok(Report::Rows {
                meta: meta(
                    json!({"seed": seed, "count": count, "pair": pair_json(p), "prng": "xoshiro256++"}),
                    ctx,
                ),
                key: "rows",
                rows,
            })
        }
    }
}

fn cmd_verify(suite: &str, count: Option<usize>, seed: u64, ctx: &Ctx) -> CliResult<(Report, bool)> {
    let s: Suite = suite.parse().map_err(CliError::Parse)?;
    let cfg = RunConfig { seed, count, tol: ctx.tol };
    let reports = run_suite(s, &cfg);
    let passed = reports.iter().all(|r| r.passed());
    let mut rows = Vec::new();
    for r in &reports {
        eprintln!("{} {}", if r.passed() { "PASS" } else { "FAIL" }, r.suite);
        for c in &r.checks {
            eprintln!("  {c}");
            let mut v = serde_json::to_value(c).expect("serializable");
            if let Value::Object(m) = &mut v {
                let mut row = Map::new();
                row.insert("suite".into(), r.suite.clone().into());
                row.extend(std::mem::take(m));
                *m = row;
            }
            rows.push(v);
        }
    }
    let meta = meta(json!({"suite": s.name(), "seed": seed, "count": count, "passed": passed}), ctx);
    Ok((Report::Rows { meta, key: "checks", rows }, passed))
}
