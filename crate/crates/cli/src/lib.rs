//! Command line front end: every verb writes a JSON-lines report (header,
//! one record per check, footer) and exits 0 if all checks pass, 1 if any
//! fails and 2 on usage errors.

pub mod args;
pub mod checks;
pub mod report;
pub mod suites;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use teich_core::combinatorics::{EdgeRef, TriangleRef, Triangulation};
use teich_core::curves::{alpha_holonomy_check, fiber_equivalent, free_edges, length_from_x, ZeroLocusPoint};
use teich_core::sl2::{Rational, Scalar};
use teich_core::teich::{sample_point, CoordinatePoint, DecoratedRep};

use args::{Cli, Command, Common, Scope};
use checks::{boundary_records, euler_record, flip_step, roundtrip_records, values_json};
use report::{Record, Report};
use suites::{rationalize, Settings};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    match execute(&cli) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            eprintln!("teich: {e}");
            match e {
                Failure::Usage(_) => EXIT_USAGE,
                Failure::Io(_) => EXIT_FAIL,
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, Failure> {
    let c = &cli.common;
    let input = prepare(cli)?;
    let out: Box<dyn Write> = match &c.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let args = json!({ "common": c, "command": &cli.command });
    let mut report = Report::start(out, cli.command.name(), c.seed, args)?;
    if let Command::Verify { scope } = &cli.command {
        verify(c, *scope, &mut report);
    } else {
        dispatch(cli, input, &mut |r| report.emit(r))?;
    }
    Ok(report.finish()?)
}

/// Coordinate input of a command, by backend.
enum Point {
    Float(CoordinatePoint),
    Exact(CoordinatePoint<Rational>),
}

impl Point {
    fn triangulation(&self) -> &Triangulation {
        match self {
            Point::Float(p) => p.triangulation(),
            Point::Exact(p) => p.triangulation(),
        }
    }
}

/// Inputs resolved before the report starts, so that usage errors leave no
/// partial report behind.
enum Input {
    None,
    Point(Point),
    Triangulation(Triangulation),
    Zero(Box<ZeroLocusPoint>),
    Pair(Box<ZeroLocusPoint>, Box<ZeroLocusPoint>),
}

fn genus(c: &Common) -> usize {
    c.genus as usize
}

fn canonical(c: &Common) -> Result<Triangulation, Failure> {
    Triangulation::build_canonical(genus(c)).map_err(|e| usage(e.to_string()))
}

fn read_point(path: &Path, exact: bool) -> Result<Point, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let dir = path.parent();
    let parsed = if exact {
        CoordinatePoint::from_json_exact(&text, dir).map(Point::Exact)
    } else {
        CoordinatePoint::from_json(&text, dir).map(Point::Float)
    };
    parsed.map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_float_point(path: &Path) -> Result<CoordinatePoint, Failure> {
    match read_point(path, false)? {
        Point::Float(p) => Ok(p),
        Point::Exact(_) => unreachable!("float parse requested"),
    }
}

/// Loads `path` or samples a chart point from the common flags.
fn point_or_sample(c: &Common, path: Option<&PathBuf>, neg: Option<usize>) -> Result<Point, Failure> {
    if let Some(path) = path {
        return read_point(path, c.exact);
    }
    let p = sampled(c, neg)?;
    Ok(if c.exact { Point::Exact(rationalize(&p)) } else { Point::Float(p) })
}

fn sampled(c: &Common, neg: Option<usize>) -> Result<CoordinatePoint, Failure> {
    let tau = canonical(c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let t = match neg {
        Some(t) if t < tau.num_triangles() => t,
        Some(t) => return Err(usage(format!("--neg-triangle {t} out of range 0..{}", tau.num_triangles()))),
        None => rng.gen_range(0..tau.num_triangles()),
    };
    sample_point(&tau, TriangleRef(t), &mut rng).map_err(|e| usage(format!("sampler: {e}")))
}

fn float_only(c: &Common, verb: &str) -> Result<(), Failure> {
    if c.exact {
        return Err(usage(format!("{verb} needs irrational functions and has no exact mode")));
    }
    Ok(())
}

fn check_edge(tau: &Triangulation, edge: usize) -> Result<EdgeRef, Failure> {
    if edge < tau.num_edges() {
        Ok(EdgeRef(edge))
    } else {
        Err(usage(format!("edge {edge} out of range 0..{}", tau.num_edges())))
    }
}

fn read_zero(c: &Common, path: &Path, edge: usize) -> Result<ZeroLocusPoint, Failure> {
    let p = read_float_point(path)?;
    let alpha = check_edge(p.triangulation(), edge)?;
    ZeroLocusPoint::from_point(&p, alpha, c.tolerance.max(1e-9)).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn prepare(cli: &Cli) -> Result<Input, Failure> {
    let c = &cli.common;
    Ok(match &cli.command {
        Command::Gen { .. } => Input::Triangulation(canonical(c)?),
        Command::Sample { neg_triangle, .. } => {
            float_only(c, "sample")?;
            Input::Point(Point::Float(sampled(c, *neg_triangle)?))
        }
        Command::Verify { scope } => {
            if c.exact && suites::is_float_only(*scope) {
                return Err(usage(format!("scope {} has no exact mode", format!("{scope:?}").to_lowercase())));
            }
            Input::None
        }
        Command::Flip { point, edge, .. } => {
            let p = point_or_sample(c, point.as_ref(), None)?;
            check_edge(p.triangulation(), *edge)?;
            Input::Point(p)
        }
        Command::Pipeline { point, edges } => {
            let p = point_or_sample(c, point.as_ref(), None)?;
            for &edge in edges {
                check_edge(p.triangulation(), edge)?;
            }
            Input::Point(p)
        }
        Command::Euler { point } | Command::Roundtrip { point } => Input::Point(point_or_sample(c, point.as_ref(), None)?),
        Command::Boundary { point } => {
            if c.exact && point.is_none() {
                return Err(usage("boundary --exact needs a coordinate file; sampled chart points are not rational"));
            }
            Input::Point(point_or_sample(c, point.as_ref(), None)?)
        }
        Command::ZeroLocus { edge, x, neg_triangle, .. } => {
            float_only(c, "zero-locus")?;
            Input::Zero(Box::new(build_zero(c, *edge, *x, *neg_triangle)?))
        }
        Command::Length { edge, point } => {
            float_only(c, "length")?;
            Input::Zero(Box::new(read_zero(c, point, *edge)?))
        }
        Command::FiberCheck { edge, first, second } => {
            float_only(c, "fiber-check")?;
            Input::Pair(Box::new(read_zero(c, first, *edge)?), Box::new(read_zero(c, second, *edge)?))
        }
    })
}

fn build_zero(c: &Common, edge: usize, x: f64, neg: Option<usize>) -> Result<ZeroLocusPoint, Failure> {
    let tau = canonical(c)?;
    let alpha = check_edge(&tau, edge)?;
    let sides = tau.edge_sides(alpha).map(|h| tau.triangle_of(h));
    let t = match neg {
        None => sides[0],
        Some(t) if sides.contains(&TriangleRef(t)) => TriangleRef(t),
        Some(t) => return Err(usage(format!("triangle {t} does not have edge {edge} as a side"))),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let rest = free_edges(&tau, t)
        .into_iter()
        .map(|e| (e, 2f64.powf(rng.gen_range(-1.0..=1.0))))
        .collect();
    ZeroLocusPoint::build(&tau, alpha, t, x, &rest).map_err(|e| usage(e.to_string()))
}

fn save(path: &Option<PathBuf>, value: &Value) -> Result<(), Failure> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(value).expect("serializable");
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn verify<W: Write>(c: &Common, scope: Scope, report: &mut Report<W>) {
    let settings = Settings {
        genus: genus(c),
        seed: c.seed,
        samples: c.samples as usize,
        tolerance: c.tolerance,
        exact: c.exact,
    };
    let scopes: Vec<Scope> = if scope == Scope::All { suites::ALL_SCOPES.to_vec() } else { vec![scope] };
    for s in scopes {
        if c.exact && suites::is_float_only(s) {
            report.note(format!("{s:?} skipped: no exact mode").to_lowercase());
            continue;
        }
        suites::run(s, &settings, &mut |r| report.emit(r));
    }
}

fn dispatch(cli: &Cli, input: Input, emit: &mut dyn FnMut(Record)) -> Result<(), Failure> {
    let c = &cli.common;
    let tol = c.tolerance;
    match (&cli.command, input) {
        (Command::Gen { save: path }, Input::Triangulation(tau)) => {
            let value: Value = serde_json::from_str(&tau.to_json()).expect("valid json");
            let ok = tau.validate().is_ok();
            emit(Record::new(
                "triangulation",
                json!({ "genus": tau.genus(), "edges": 6 * tau.genus() - 3, "triangles": 4 * tau.genus() - 2, "vertices": 1 }),
                json!({ "genus": tau.genus(), "edges": tau.num_edges(), "triangles": tau.num_triangles(), "vertices": tau.vertex_count() }),
                None,
                ok,
            ));
            emit(Record::new("triangulation json", Value::Null, value.clone(), None, true));
            save(path, &value)?;
        }
        (Command::Sample { save: path, .. }, Input::Point(Point::Float(p))) => {
            let value = p.to_json();
            let residual = p.chart_residual();
            emit(Record::new("chart point", json!({ "psi": 0 }), json!({ "psi": residual }), residual, p.is_on_chart(tol.max(1e-10))));
            emit(Record::new("coordinates", Value::Null, value.clone(), None, true));
            save(path, &value)?;
        }
        (Command::Flip { edge, save: path, .. }, Input::Point(p)) => match p {
            Point::Float(p) => flip_cmd(&p, *edge, tol, path, emit)?,
            Point::Exact(p) => flip_cmd(&p, *edge, tol, path, emit)?,
        },
        (Command::Euler { .. }, Input::Point(p)) => emit(match p {
            Point::Float(p) => euler_record("euler", &p),
            Point::Exact(p) => euler_record("euler", &p),
        }),
        (Command::Roundtrip { .. }, Input::Point(p)) => match p {
            Point::Float(p) => roundtrip_records("roundtrip", &p, tol),
            Point::Exact(p) => roundtrip_records("roundtrip", &p, tol),
        }
        .into_iter()
        .for_each(&mut *emit),
        (Command::Boundary { .. }, Input::Point(p)) => match p {
            Point::Float(p) => boundary_records(&p, tol),
            Point::Exact(p) => boundary_records(&p, tol),
        }
        .into_iter()
        .for_each(&mut *emit),
        (Command::Pipeline { edges, .. }, Input::Point(p)) => match p {
            Point::Float(p) => pipeline(&p, edges, tol, emit),
            Point::Exact(p) => pipeline(&p, edges, tol, emit),
        },
        (Command::ZeroLocus { save: path, .. }, Input::Zero(z)) => {
            curve_records(&z, tol, emit);
            let value = z.point.to_json();
            emit(Record::new("coordinates", Value::Null, value.clone(), None, true));
            save(path, &value)?;
        }
        (Command::Length { .. }, Input::Zero(z)) => curve_records(&z, tol, emit),
        (Command::FiberCheck { .. }, Input::Pair(p, q)) => {
            let (lp, lq) = (p.l_coordinates(), q.l_coordinates());
            emit(Record::new(
                "same length",
                json!(lp.length),
                json!(lq.length),
                Some((lp.length - lq.length).abs()),
                (lp.length - lq.length).abs() <= tol * lp.length.max(1.0),
            ));
            emit(match fiber_equivalent(&p, &q, tol) {
                Ok(f) => Record::new(
                    "fiber",
                    json!({ "traces_agree_if_proportional": true }),
                    json!({ "equivalent": f.equivalent, "ratio": f.ratio }),
                    Some(f.trace_deviation),
                    true,
                ),
                Err(e) => Record::error("fiber", json!({ "traces_agree_if_proportional": true }), e),
            });
        }
        _ => unreachable!("inputs are prepared per command"),
    }
    Ok(())
}

fn flip_cmd<S: Scalar>(
    p: &CoordinatePoint<S>,
    edge: usize,
    tol: f64,
    path: &Option<PathBuf>,
    emit: &mut dyn FnMut(Record),
) -> Result<(), Failure> {
    let e = EdgeRef(edge);
    let mut records = Vec::new();
    let step = flip_step(&format!("flip {e}"), p, &DecoratedRep::from_point(p), e, tol, &mut records);
    records.into_iter().for_each(&mut *emit);
    if let Some(step) = step {
        let value = step.point.to_json();
        emit(Record::new("coordinates", Value::Null, value.clone(), None, true));
        save(path, &value)?;
    }
    Ok(())
}

/// Flips in sequence, carrying coordinates by the Ptolemy rule and the
/// representation by transfer; every step compares the two.
fn pipeline<S: Scalar>(p: &CoordinatePoint<S>, edges: &[usize], tol: f64, emit: &mut dyn FnMut(Record)) {
    let mut records = roundtrip_records("start", p, tol);
    let mut point = p.clone();
    let mut rep = DecoratedRep::from_point(p);
    let mut worst = max_rel_diff_of(&records);
    for (i, &edge) in edges.iter().enumerate() {
        let before = records.len();
        let step = flip_step(&format!("step {i} flip {edge}"), &point, &rep, EdgeRef(edge), tol, &mut records);
        worst = worst.max(max_rel_diff_of(&records[before..]));
        match step {
            Some(s) => {
                point = s.point;
                rep = s.rep;
            }
            None => break,
        }
    }
    let ok = records.iter().all(|r| r.pass);
    records.into_iter().for_each(&mut *emit);
    emit(Record::new("pipeline", json!(0), json!(worst), Some(worst), ok && worst <= tol));
    emit(Record::new("final coordinates", Value::Null, values_json(point.f()), None, true));
}

fn max_rel_diff_of(records: &[Record]) -> f64 {
    records.iter().filter_map(|r| r.residual).fold(0.0, f64::max)
}

fn curve_records(z: &ZeroLocusPoint, tol: f64, emit: &mut dyn FnMut(Record)) {
    let residual = z.point.chart_residual();
    emit(Record::new(
        "chart constraint",
        json!({ "psi": 0 }),
        json!({ "psi": residual }),
        residual,
        z.point.is_on_chart(tol.max(1e-10)),
    ));
    let expected = length_from_x(z.x).expect("x in (0, 1)");
    emit(match alpha_holonomy_check(z) {
        Ok(check) => Record::new(
            format!("curve across {}", z.alpha()),
            json!({ "x": z.x, "length": expected, "trace": z.x + 1.0 / z.x }),
            json!({ "x": check.x, "length": check.length, "trace": check.trace, "holonomy": check.holonomy }),
            Some((check.length - expected).abs()),
            (check.length - expected).abs() <= tol.max(1e-9) * expected.max(1.0),
        ),
        Err(e) => Record::error(format!("curve across {}", z.alpha()), json!({ "x": z.x, "length": expected }), e),
    });
}
