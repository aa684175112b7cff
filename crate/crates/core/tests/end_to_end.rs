use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use teich_core::combinatorics::{EdgeRef, TriangleRef, Triangulation};
use teich_core::sl2::{rational_from_f64, Rational, Sign};
use teich_core::teich::{
    euler_formula, euler_via_windings, ptolemy_flip, recover_coordinates, sample_point, transfer_through_flip,
    CoordinatePoint, DecoratedRep,
};
use teich_core::Error;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

#[test]
fn flip_walk_keeps_both_routes_in_step() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for g in [2, 3] {
        let tau = Triangulation::build_canonical(g).unwrap();
        let mut point = sample_point(&tau, TriangleRef(1), &mut rng).unwrap();
        let mut rep = DecoratedRep::from_point(&point);
        for _ in 0..12 {
            let e = EdgeRef(rng.gen_range(0..point.triangulation().num_edges()));
            let (result, next) = match ptolemy_flip(&point, e) {
                Ok(v) => v,
                Err(Error::FlipDegenerate { .. } | Error::FlipNotDefined { .. }) => continue,
                Err(other) => panic!("{other}"),
            };
            rep = transfer_through_flip(&rep, &result);
            point = next;
            let (f, eps) = recover_coordinates(&rep).unwrap();
            for (a, b) in f.iter().zip(point.f()) {
                assert!(rel(*a, *b) < 1e-8, "{a} vs {b}");
            }
            assert_eq!(eps, point.eps());
            assert_eq!(point.n_minus(), 1);
            assert!(point.is_on_chart(1e-8));
            assert_eq!(euler_via_windings(&point).unwrap(), euler_formula(g, 1).unwrap());
        }
    }
}

#[test]
fn exact_walk_matches_the_transferred_representation() {
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    let tau = Triangulation::build_canonical(2).unwrap();
    let float = sample_point(&tau, TriangleRef(0), &mut rng).unwrap();
    let mut point: CoordinatePoint<Rational> = float.map_values(|x| rational_from_f64(*x).unwrap());
    let mut rep = DecoratedRep::from_point(&point);
    for e in [0, 4, 7, 4] {
        let (result, next) = ptolemy_flip(&point, EdgeRef(e)).unwrap();
        rep = transfer_through_flip(&rep, &result);
        point = next;
        let (f, eps) = recover_coordinates(&rep).unwrap();
        assert_eq!(f, point.f());
        assert_eq!(eps, point.eps());
    }
}

#[test]
fn coordinate_files_with_a_triangulation_path() {
    let dir = tempfile::tempdir().unwrap();
    let tau = Triangulation::build_canonical(3).unwrap();
    std::fs::write(dir.path().join("tau.json"), tau.to_json()).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(79);
    let p = sample_point(&tau, TriangleRef(5), &mut rng).unwrap();
    let mut doc = p.to_json();
    doc["triangulation"] = "tau.json".into();
    let text = doc.to_string();
    let back = CoordinatePoint::from_json(&text, Some(dir.path())).unwrap();
    assert_eq!(back.triangulation(), &tau);
    assert_eq!(back.f(), p.f());
    assert_eq!(back.sign(TriangleRef(5)), Sign::Minus);

    let exact = CoordinatePoint::from_json_exact(&text, Some(dir.path())).unwrap();
    for (a, b) in exact.to_f64().f().iter().zip(p.f()) {
        assert!(rel(*a, *b) <= 2.0 * f64::EPSILON);
    }
    assert!(CoordinatePoint::from_json(&text, None).is_err());
}

#[test]
fn malformed_inputs_are_rejected() {
    let tau = Triangulation::build_canonical(2).unwrap();
    let mut raw: serde_json::Value = serde_json::from_str(&tau.to_json()).unwrap();
    raw["pairing"][0] = 0.into();
    match Triangulation::from_json(&raw.to_string()) {
        Err(Error::InvalidTriangulation { .. }) => {}
        other => panic!("unexpected {other:?}"),
    }
    let mut extra: serde_json::Value = serde_json::from_str(&tau.to_json()).unwrap();
    extra["colour"] = "red".into();
    assert!(matches!(Triangulation::from_json(&extra.to_string()), Err(Error::Parse(_))));

    let mut rng = ChaCha8Rng::seed_from_u64(80);
    let p = sample_point(&tau, TriangleRef(2), &mut rng).unwrap();
    let mut doc = p.to_json();
    doc["eps"]["0"] = 2.into();
    assert!(CoordinatePoint::from_json(&doc.to_string(), None).is_err());
    let mut doc = p.to_json();
    doc["f"]["3"] = (-1.0).into();
    assert!(CoordinatePoint::from_json(&doc.to_string(), None).is_err());
    let mut doc = p.to_json();
    doc["f"]["42"] = 1.0.into();
    assert!(CoordinatePoint::from_json(&doc.to_string(), None).is_err());
}

#[test]
fn euler_number_off_the_chart() {
    let tau = Triangulation::build_canonical(3).unwrap();
    let f = vec![1.0; tau.num_edges()];
    for n in 0..=tau.num_triangles() {
        let eps = (0..tau.num_triangles()).map(|t| if t < n { Sign::Minus } else { Sign::Plus }).collect();
        let p = CoordinatePoint::new(tau.clone(), f.clone(), eps).unwrap();
        assert_eq!(euler_via_windings(&p).unwrap(), 1 + n as i64 - 6);
    }
}
