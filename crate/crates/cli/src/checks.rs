//! Checks on a single coordinate point, generic over the scalar backend.

use serde_json::{json, Value};

use teich_core::combinatorics::{EdgeRef, FlipResult};
use teich_core::sl2::{Mat2, Scalar, Sign};
use teich_core::teich::{
    euler_breakdown, euler_formula, ptolemy_flip, recover_coordinates, transfer_through_flip, CoordinatePoint,
    DecoratedRep,
};
use teich_core::Error;

use crate::report::Record;

pub fn scalar_json<S: Scalar>(x: &S) -> Value {
    if S::EXACT {
        Value::String(x.to_string())
    } else {
        json!(x.to_f64())
    }
}

pub fn values_json<S: Scalar>(xs: &[S]) -> Value {
    Value::Array(xs.iter().map(scalar_json).collect())
}

pub fn signs_json(eps: &[Sign]) -> Value {
    json!(eps.iter().map(|s| s.to_i8()).collect::<Vec<_>>())
}

/// Largest relative difference, as a float.
pub fn max_rel_diff<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let (x, y) = (x.to_f64(), y.to_f64());
            (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

/// Entrywise agreement: exact on rationals, relative `tol` on floats.
pub fn all_close<S: Scalar>(a: &[S], b: &[S], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.close_to(y, tol))
}

/// Distance of a matrix from the nearer of `I` and `-I`.
pub fn identity_deviation<S: Scalar>(m: &Mat2<S>) -> f64 {
    let [[a, b], [c, d]] = m.to_array();
    [1.0, -1.0]
        .iter()
        .map(|s| (a - s).abs().max(b.abs()).max(c.abs()).max((d - s).abs()))
        .fold(f64::INFINITY, f64::min)
}

pub fn euler_record<S: Scalar>(name: &str, p: &CoordinatePoint<S>) -> Record {
    let expected = match euler_formula(p.triangulation().genus(), p.n_minus()) {
        Ok(v) => v,
        Err(e) => return Record::error(name, Value::Null, e),
    };
    match euler_breakdown(p) {
        Ok(b) => Record::new(
            name,
            json!(expected),
            json!(b.total),
            Some(b.max_residual),
            b.total == expected && b.max_residual < 0.01,
        ),
        Err(e) => Record::error(name, json!(expected), e),
    }
}

pub fn roundtrip_records<S: Scalar>(name: &str, p: &CoordinatePoint<S>, tol: f64) -> Vec<Record> {
    match recover_coordinates(&DecoratedRep::from_point(p)) {
        Ok((f, eps)) => compare_records(name, p, &f, &eps, tol),
        Err(e) => vec![Record::error(format!("{name} values"), values_json(p.f()), e)],
    }
}

/// Records comparing recovered values and signs with those of `p`.
pub fn compare_records<S: Scalar>(name: &str, p: &CoordinatePoint<S>, f: &[S], eps: &[Sign], tol: f64) -> Vec<Record> {
    vec![
        Record::new(
            format!("{name} values"),
            values_json(p.f()),
            values_json(f),
            Some(max_rel_diff(p.f(), f)),
            all_close(p.f(), f, tol),
        ),
        Record::new(format!("{name} signs"), signs_json(p.eps()), signs_json(eps), None, p.eps() == eps),
    ]
}

pub fn boundary_records<S: Scalar>(p: &CoordinatePoint<S>, tol: f64) -> Vec<Record> {
    let m = DecoratedRep::from_point(p).boundary_holonomy();
    let deviation = identity_deviation(&m);
    let holonomy = Record::new(
        "boundary holonomy",
        json!("±I"),
        serde_json::to_value(&m).expect("serializable"),
        Some(deviation),
        m.is_plus_minus_identity(tol),
    );
    let residual = p.chart_residual();
    let chart = Record::new(
        "chart constraint",
        json!({ "negative_triangles": 1, "psi": 0 }),
        json!({
            "negative_triangles": p.negative_triangles().iter().map(|t| t.0).collect::<Vec<_>>(),
            "psi": residual,
        }),
        residual,
        p.is_on_chart(tol),
    );
    vec![holonomy, chart]
}

/// One flip applied to both the coordinates and the representation.
pub struct FlipStep<S: Scalar> {
    pub result: FlipResult,
    pub point: CoordinatePoint<S>,
    pub rep: DecoratedRep<S>,
}

/// Flips `e`, records the agreement of the two routes and returns the new
/// state, or `None` if the flip failed.
pub fn flip_step<S: Scalar>(
    name: &str,
    p: &CoordinatePoint<S>,
    rep: &DecoratedRep<S>,
    e: EdgeRef,
    tol: f64,
    out: &mut Vec<Record>,
) -> Option<FlipStep<S>> {
    let (result, point) = match ptolemy_flip(p, e) {
        Ok(v) => v,
        Err(err @ Error::FlipDegenerate { .. }) => {
            out.push(Record::error(name, json!("nondegenerate flip"), err));
            return None;
        }
        Err(err) => {
            out.push(Record::error(name, json!("flippable edge"), err));
            return None;
        }
    };
    let rep = transfer_through_flip(rep, &result);
    match recover_coordinates(&rep) {
        Ok((f, eps)) => out.extend(compare_records(name, &point, &f, &eps, tol)),
        Err(err) => {
            out.push(Record::error(name, values_json(point.f()), err));
            return None;
        }
    }
    Some(FlipStep { result, point, rep })
}
