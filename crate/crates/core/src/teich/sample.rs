use rand::Rng;

use super::point::{psi, triangle_terms, CoordinatePoint};
use crate::combinatorics::{EdgeRef, TriangleRef, Triangulation};
use crate::error::{Error, Result};

pub const SAMPLER_ATTEMPTS: usize = 50;

/// Accepted `|ψ_t|` relative to the sum of the absolute triangle terms.
pub const CHART_TOL: f64 = 1e-10;

/// Draws a point with `t` the only negative triangle and `ψ_t = 0`.
///
/// All edges but one side `e` of `t` get log-uniform values in `[1/2, 2]`.
/// With `y = f(e)`, `y ψ_t` is the quadratic `A y^2 + B y + C` where `B` is
/// the sum of the terms of the triangles away from `e`; its largest
/// positive root is taken. Draws without a positive root are discarded.
pub fn sample_point<R: Rng + ?Sized>(tau: &Triangulation, t: TriangleRef, rng: &mut R) -> Result<CoordinatePoint> {
    if !tau.contains_triangle(t) {
        return Err(Error::Domain(format!("triangle {t} is not in the triangulation")));
    }
    let e = solve_edge(tau, t)?;
    let [h, o] = tau.edge_sides(e);
    let (inner, outer) = if tau.triangle_of(h) == t { (h, o) } else { (o, h) };
    let s = tau.triangle_of(outer);
    let mut last = String::new();
    for _ in 0..SAMPLER_ATTEMPTS {
        let mut f: Vec<f64> = tau.edges().map(|_| 2f64.powf(rng.gen_range(-1.0..=1.0))).collect();
        let val = |f: &[f64], x| f[tau.edge_of(x).0];
        let (bt, ct) = (val(&f, tau.next(inner)), val(&f, tau.prev(inner)));
        let (bs, cs) = (val(&f, tau.next(outer)), val(&f, tau.prev(outer)));
        let terms = triangle_terms(tau, &f);
        let rest: f64 = terms.iter().enumerate().filter(|(i, _)| *i != t.0 && *i != s.0).map(|(_, x)| x).sum();
        let a = 1.0 / (bs * cs) - 1.0 / (bt * ct);
        let c = (bs * bs + cs * cs) / (bs * cs) - (bt * bt + ct * ct) / (bt * ct);
        let Some(y) = largest_positive_root(a, rest, c) else {
            last = format!("no positive root for A = {a:.3e}, B = {rest:.3e}, C = {c:.3e}");
            continue;
        };
        f[e.0] = y;
        let point = CoordinatePoint::with_negative(tau.clone(), f, t)?;
        let scale: f64 = triangle_terms(tau, point.f()).iter().map(|x| x.abs()).sum();
        let residual = psi(tau, t, point.f()).abs();
        if residual <= CHART_TOL * scale {
            return Ok(point);
        }
        last = format!("residual {residual:.3e} above tolerance");
    }
    Err(Error::SamplerFailed { attempts: SAMPLER_ATTEMPTS, detail: last })
}

/// A side of `t` whose edge occurs once in `t`, preferring the smallest.
fn solve_edge(tau: &Triangulation, t: TriangleRef) -> Result<EdgeRef> {
    let edges = tau.triangle_edges(t);
    edges
        .iter()
        .copied()
        .filter(|e| edges.iter().filter(|x| *x == e).count() == 1)
        .min()
        .ok_or_else(|| Error::SamplerFailed { attempts: 0, detail: format!("every side of {t} is repeated") })
}

fn largest_positive_root(a: f64, b: f64, c: f64) -> Option<f64> {
    if a.abs() <= 1e-14 * (b.abs() + c.abs()) {
        let y = -c / b;
        return (y > 0.0).then_some(y);
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let roots = [q / a, c / q];
    roots.into_iter().filter(|y| y.is_finite() && *y > 0.0).reduce(f64::max)
}
