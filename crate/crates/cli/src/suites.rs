//! Randomized verification suites behind `verify`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use teich_core::combinatorics::{quad_at, EdgeRef, TriangleRef, Triangulation};
use teich_core::curves::{alpha_holonomy_check, fiber_equivalent, free_edges, length_from_x, ZeroLocusPoint};
use teich_core::lifting::{
    hex_regime, hexagon_expected_class, hexagon_word, solve_hex, edge_loop_class, tetrahedron_loop_class, hexagon_loop_class, HexRegime,
    LiftClass,
};
use teich_core::sl2::{
    gen_u, gen_v, gen_w, rational_from_f64, star_triangle, tetrahedron_sides, Mat2, Rational, Scalar, Sign,
};
use teich_core::teich::{ptolemy_flip, sample_point, CoordinatePoint, DecoratedRep};
use teich_core::Result;

use crate::args::Scope;
use crate::checks::{all_close, euler_record, flip_step, max_rel_diff, roundtrip_records, scalar_json, values_json};
use crate::report::Record;

pub struct Settings {
    pub genus: usize,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub exact: bool,
}

impl Settings {
    /// Independent stream per scope so scopes can run in any combination.
    fn rng(&self, scope: Scope) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (scope as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

pub const ALL_SCOPES: [Scope; 6] =
    [Scope::Lemmas, Scope::Identities, Scope::Euler, Scope::Roundtrip, Scope::Ptolemy, Scope::Theorem2];

/// Scopes that need irrational functions and have no exact variant.
pub fn is_float_only(scope: Scope) -> bool {
    scope == Scope::Theorem2
}

pub fn run(scope: Scope, s: &Settings, emit: &mut dyn FnMut(Record)) {
    let mut rng = s.rng(scope);
    match scope {
        Scope::Lemmas => model_loops(s, &mut rng, emit),
        Scope::Identities => identities(s, &mut rng, emit),
        Scope::Euler => euler(s, &mut rng, emit),
        Scope::Roundtrip => roundtrip(s, &mut rng, emit),
        Scope::Ptolemy => ptolemy(s, &mut rng, emit),
        Scope::Theorem2 => zero_locus(s, &mut rng, emit),
        Scope::All => unreachable!("expanded by the caller"),
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from_ratio(rng.gen_range(1..40), rng.gen_range(1..40))
}

fn class_record(name: String, expected: i64, class: Result<LiftClass>) -> Record {
    match class {
        Ok(c) => Record::new(name, json!(expected), json!(c.n), Some(c.residual), c.n == expected && c.residual < 0.01),
        Err(e) => Record::error(name, json!(expected), e),
    }
}

fn model_loops(s: &Settings, rng: &mut ChaCha8Rng, emit: &mut dyn FnMut(Record)) {
    for _ in 0..s.samples {
        let x = small_rational(rng);
        let class = if s.exact { edge_loop_class(x.clone()) } else { edge_loop_class(x.to_f64()) };
        emit(class_record(format!("edge loop x={x}"), 1, class));
    }
    for _ in 0..s.samples {
        let x = [0; 3].map(|_| small_rational(rng));
        let class = if s.exact { tetrahedron_loop_class(&x) } else { tetrahedron_loop_class(&x.clone().map(|v| v.to_f64())) };
        emit(class_record(format!("tetrahedron loop x=({}, {}, {})", x[0], x[1], x[2]), 0, class));
    }
    let regimes = [HexRegime::Strict, HexRegime::Violated, HexRegime::Degenerate, HexRegime::Equilateral];
    for i in 0..s.samples {
        let regime = regimes[i % regimes.len()];
        let x = hex_instance(rng, regime);
        for eps in [Sign::Plus, Sign::Minus] {
            let class = if s.exact { hexagon_loop_class(&x, eps) } else { hexagon_loop_class(&x.clone().map(|v| v.to_f64()), eps) };
            let name = format!("hexagon loop x=({}, {}, {}) eps={eps} {regime:?}", x[0], x[1], x[2]);
            emit(class_record(name, hexagon_expected_class(eps), class));
        }
    }
}

fn hex_instance(rng: &mut ChaCha8Rng, regime: HexRegime) -> [Rational; 3] {
    loop {
        let mut x = [0; 3].map(|_| small_rational(rng));
        match regime {
            HexRegime::Strict => {}
            HexRegime::Violated => x[0] = x[1].clone() + x[2].clone() + small_rational(rng),
            HexRegime::Degenerate => x[0] = x[1].clone() + x[2].clone(),
            HexRegime::Equilateral => x = [x[0].clone(), x[0].clone(), x[0].clone()],
        }
        x.shuffle(rng);
        if hex_regime(&x) == regime {
            return x;
        }
    }
}

/// Rational identities; exact regardless of `--exact`.
fn identities(s: &Settings, rng: &mut ChaCha8Rng, emit: &mut dyn FnMut(Record)) {
    for _ in 0..s.samples {
        let [x, y, z] = [0; 3].map(|_| small_rational(rng));
        let name = format!("star-triangle ({x}, {y}, {z})");
        match star_triangle(x.clone(), y.clone(), z.clone()) {
            Ok((a, b, c)) => {
                let lhs = gen_v(x.clone()) * gen_u(y.clone()) * gen_v(z.clone());
                let rhs = gen_u(c.clone()) * gen_v(b.clone()) * gen_u(a.clone());
                let back = star_triangle(a.clone(), b.clone(), c.clone());
                let involution = back.as_ref().ok() == Some(&(x.clone(), y.clone(), z.clone()));
                emit(Record::new(
                    name,
                    json!({ "matrix_identity": true, "involution": true }),
                    json!({ "matrix_identity": lhs == rhs, "involution": involution, "image": [a.to_string(), b.to_string(), c.to_string()] }),
                    Some(0.0),
                    lhs == rhs && involution,
                ));
            }
            Err(e) => emit(Record::error(name, json!("defined"), e)),
        }
    }
    for _ in 0..s.samples {
        let tuple = [0; 6].map(|_| small_rational(rng));
        let name = format!("tetrahedron {}", tuple.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
        match tetrahedron_sides(&tuple) {
            Ok((lhs, rhs)) => emit(Record::new(name, json!(true), json!(lhs == rhs), Some(0.0), lhs == rhs)),
            Err(e) => emit(Record::error(name, json!(true), e)),
        }
    }
    for _ in 0..s.samples {
        let x = [0; 3].map(|_| small_rational(rng));
        let eps = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let name = format!("hexagon ({}, {}, {}) eps={eps}", x[0], x[1], x[2]);
        let target: Mat2<Rational> = match eps {
            Sign::Plus => Mat2::identity(),
            Sign::Minus => -Mat2::identity(),
        };
        match solve_hex(&x, eps) {
            Ok(bar) => {
                let ok = hexagon_word(&x, &bar).product() == target;
                emit(Record::new(name, json!(eps.to_i8()), json!(bar.iter().map(|v| v.to_string()).collect::<Vec<_>>()), Some(0.0), ok));
            }
            Err(e) => emit(Record::error(name, json!(eps.to_i8()), e)),
        }
    }
    for _ in 0..s.samples {
        let a = small_rational(rng);
        let inv = -a.recip();
        let ok = gen_w(a.clone()).map(|w| w == gen_u(inv.clone()) * gen_v(a.clone()) * gen_u(inv)).unwrap_or(false);
        emit(Record::new(format!("w factorization {a}"), json!(true), json!(ok), Some(0.0), ok));
    }
}

fn random_signs(rng: &mut ChaCha8Rng, tau: &Triangulation, n_minus: usize) -> Vec<Sign> {
    let mut ids: Vec<usize> = (0..tau.num_triangles()).collect();
    ids.shuffle(rng);
    let mut eps = vec![Sign::Plus; tau.num_triangles()];
    for &t in &ids[..n_minus] {
        eps[t] = Sign::Minus;
    }
    eps
}

fn euler(s: &Settings, rng: &mut ChaCha8Rng, emit: &mut dyn FnMut(Record)) {
    let tau = canonical(s.genus);
    for n_minus in 0..=tau.num_triangles() {
        for i in 0..s.samples {
            let eps = random_signs(rng, &tau, n_minus);
            let name = format!("euler N-={n_minus} #{i}");
            let record = if s.exact {
                let f: Vec<Rational> = tau.edges().map(|_| small_rational(rng)).collect();
                CoordinatePoint::new(tau.clone(), f, eps).map(|p| euler_record(&name, &p))
            } else {
                let f: Vec<f64> = tau.edges().map(|_| log_uniform(rng, 0.5, 2.0)).collect();
                CoordinatePoint::new(tau.clone(), f, eps).map(|p| euler_record(&name, &p))
            };
            emit(record.unwrap_or_else(|e| Record::error(name, json!(null), e)));
        }
    }
}

fn canonical(genus: usize) -> Triangulation {
    Triangulation::build_canonical(genus).expect("genus validated by the parser")
}

fn chart_point(tau: &Triangulation, rng: &mut ChaCha8Rng) -> Result<CoordinatePoint> {
    let t = TriangleRef(rng.gen_range(0..tau.num_triangles()));
    sample_point(tau, t, rng)
}

pub fn rationalize(p: &CoordinatePoint) -> CoordinatePoint<Rational> {
    p.map_values(|x| rational_from_f64(*x).expect("finite coordinates"))
}

fn roundtrip(s: &Settings, rng: &mut ChaCha8Rng, emit: &mut dyn FnMut(Record)) {
    let tau = canonical(s.genus);
    for i in 0..s.samples {
        let name = format!("roundtrip #{i}");
        let records = match chart_point(&tau, rng) {
            Ok(p) if s.exact => roundtrip_records(&name, &rationalize(&p), s.tolerance),
            Ok(p) => roundtrip_records(&name, &p, s.tolerance),
            Err(e) => vec![Record::error(name, json!("chart point"), e)],
        };
        records.into_iter().for_each(&mut *emit);
    }
}

fn ptolemy(s: &Settings, rng: &mut ChaCha8Rng, emit: &mut dyn FnMut(Record)) {
    let tau = canonical(s.genus);
    for i in 0..s.samples {
        let p = match chart_point(&tau, rng) {
            Ok(p) => p,
            Err(e) => {
                emit(Record::error(format!("ptolemy #{i}"), json!("chart point"), e));
                continue;
            }
        };
        let e = EdgeRef(rng.gen_range(0..tau.num_edges()));
        if s.exact {
            ptolemy_point(&format!("ptolemy #{i} {e}"), &rationalize(&p), e, s.tolerance, emit);
        } else {
            ptolemy_point(&format!("ptolemy #{i} {e}"), &p, e, s.tolerance, emit);
        }
    }
}

/// One flip by both routes, then the double flip back to the start.
fn ptolemy_point<S: Scalar>(name: &str, p: &CoordinatePoint<S>, e: EdgeRef, tol: f64, emit: &mut dyn FnMut(Record)) {
    let mut records = Vec::new();
    let step = flip_step(name, p, &DecoratedRep::from_point(p), e, tol, &mut records);
    records.into_iter().for_each(&mut *emit);
    let Some(step) = step else { return };
    let name = format!("{name} double flip");
    match ptolemy_flip(&step.point, step.result.flipped) {
        Ok((back, q)) => {
            let tau = p.triangulation();
            let composed: Vec<EdgeRef> = tau.edges().map(|x| back.edge_map[step.result.edge_map[x.0].0]).collect();
            let iso = tau.is_isomorphic_via(&back.triangulation, &composed);
            let values: Vec<S> = tau.edges().map(|x| q.value(composed[x.0]).clone()).collect();
            emit(Record::new(
                name,
                values_json(p.f()),
                values_json(&values),
                Some(max_rel_diff(p.f(), &values)),
                iso && all_close(p.f(), &values, tol) && q.n_minus() == p.n_minus(),
            ));
        }
        Err(err) => emit(Record::error(name, values_json(p.f()), err)),
    }
}

fn zero_locus(s: &Settings, rng: &mut ChaCha8Rng, emit: &mut dyn FnMut(Record)) {
    let tau = canonical(s.genus);
    let mut kinds = BTreeMap::new();
    for h in tau.half_edges() {
        if let Ok(q) = quad_at(&tau, h) {
            let c = q.coincidences;
            if c.a_eq_d || c.b_eq_c || (c.b_eq_d && c.a_eq_c) {
                continue;
            }
            kinds.entry((c.b_eq_d, c.a_eq_c)).or_insert(h);
        }
    }
    for h in kinds.into_values() {
        let (alpha, t) = (tau.edge_of(h), tau.triangle_of(h));
        for _ in 0..s.samples {
            let x = rng.gen_range(0.05..0.95);
            let rest: BTreeMap<EdgeRef, f64> =
                free_edges(&tau, t).into_iter().map(|e| (e, log_uniform(rng, 0.5, 2.0))).collect();
            let name = format!("zero locus {alpha} in {t} x={x:.6}");
            let p = match ZeroLocusPoint::build(&tau, alpha, t, x, &rest) {
                Ok(p) => p,
                Err(e) => {
                    emit(Record::error(name, json!(x), e));
                    continue;
                }
            };
            emit(match alpha_holonomy_check(&p) {
                Ok(c) => {
                    let expected_length = length_from_x(x).expect("x in (0, 1)");
                    let residual = (c.x - x).abs().max((c.length - expected_length).abs());
                    Record::new(
                        format!("{name} holonomy"),
                        json!({ "x": x, "length": expected_length, "quad_sign_product": -1 }),
                        json!({ "x": c.x, "length": c.length, "quad_sign_product": p.quad_sign_product().to_i8() }),
                        Some(residual),
                        residual <= s.tolerance.max(1e-9) && p.quad_sign_product() == Sign::Minus,
                    )
                }
                Err(e) => Record::error(format!("{name} holonomy"), json!(x), e),
            });
            let c = log_uniform(rng, 0.25, 4.0);
            let scaled: BTreeMap<EdgeRef, f64> = rest.iter().map(|(e, v)| (*e, c * v)).collect();
            emit(match ZeroLocusPoint::build(&tau, alpha, t, x, &scaled).and_then(|q| fiber_equivalent(&p, &q, s.tolerance)) {
                Ok(f) => Record::new(
                    format!("{name} fiber"),
                    json!({ "equivalent": true, "ratio": c }),
                    json!({ "equivalent": f.equivalent, "ratio": f.ratio.map(|r| scalar_json(&r)) }),
                    Some(f.trace_deviation),
                    f.equivalent && f.ratio.is_some_and(|r| (r - c).abs() <= 1e-9 * c),
                ),
                Err(e) => Record::error(format!("{name} fiber"), json!({ "equivalent": true }), e),
            });
        }
    }
}
