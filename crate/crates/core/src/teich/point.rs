use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::combinatorics::{EdgeRef, TriangleRef, Triangulation, TriangulationJson};
use crate::error::{Error, Result};
use crate::sl2::{Scalar, Sign};

/// Positive λ-lengths on the edges and a sign on each triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinatePoint<S = f64> {
    tau: Triangulation,
    f: Vec<S>,
    eps: Vec<Sign>,
}

impl<S: Scalar> CoordinatePoint<S> {
    pub fn new(tau: Triangulation, f: Vec<S>, eps: Vec<Sign>) -> Result<Self> {
        if f.len() != tau.num_edges() {
            return Err(Error::Domain(format!(
                "expected {} edge values, got {}",
                tau.num_edges(),
                f.len()
            )));
        }
        if eps.len() != tau.num_triangles() {
            return Err(Error::Domain(format!(
                "expected {} triangle signs, got {}",
                tau.num_triangles(),
                eps.len()
            )));
        }
        if let Some(i) = f.iter().position(|x| !x.is_positive()) {
            return Err(Error::Domain(format!("edge value f[{i}] = {} is not positive", f[i])));
        }
        Ok(Self { tau, f, eps })
    }

    /// All triangles positive except `negative`.
    pub fn with_negative(tau: Triangulation, f: Vec<S>, negative: TriangleRef) -> Result<Self> {
        let eps = tau
            .triangles()
            .map(|t| if t == negative { Sign::Minus } else { Sign::Plus })
            .collect();
        Self::new(tau, f, eps)
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tau
    }

    pub fn f(&self) -> &[S] {
        &self.f
    }

    pub fn eps(&self) -> &[Sign] {
        &self.eps
    }

    pub fn value(&self, e: EdgeRef) -> &S {
        &self.f[e.0]
    }

    pub fn sign(&self, t: TriangleRef) -> Sign {
        self.eps[t.0]
    }

    pub fn negative_triangles(&self) -> Vec<TriangleRef> {
        self.tau.triangles().filter(|t| self.eps[t.0] == Sign::Minus).collect()
    }

    pub fn n_minus(&self) -> usize {
        self.negative_triangles().len()
    }

    pub fn map_values<T: Scalar>(&self, map: impl Fn(&S) -> T) -> CoordinatePoint<T> {
        CoordinatePoint { tau: self.tau.clone(), f: self.f.iter().map(map).collect(), eps: self.eps.clone() }
    }

    pub fn to_f64(&self) -> CoordinatePoint<f64> {
        self.map_values(Scalar::to_f64)
    }

    /// `ψ_t` at this point, for the unique negative triangle `t`, relative to
    /// the sum of absolute terms. `None` unless exactly one triangle is negative.
    pub fn chart_residual(&self) -> Option<f64> {
        match self.negative_triangles().as_slice() {
            [t] => {
                let scale: f64 = triangle_terms(&self.tau, &self.f).iter().map(|x| x.to_f64().abs()).sum();
                Some(psi(&self.tau, *t, &self.f).to_f64().abs() / scale)
            }
            _ => None,
        }
    }

    /// Exactly one negative triangle `t` and `ψ_t = 0` up to `tol` relative.
    pub fn is_on_chart(&self, tol: f64) -> bool {
        match self.chart_residual() {
            Some(_) if S::EXACT => psi_is_zero(self),
            Some(r) => r <= tol,
            None => false,
        }
    }

    pub fn rescaled(&self, c: S) -> Result<Self> {
        Ok(Self { tau: self.tau.clone(), f: rescale_decoration(&self.f, c)?, eps: self.eps.clone() })
    }

    pub fn to_json(&self) -> Value {
        CoordinateJson::from_point(self).to_value()
    }
}

fn psi_is_zero<S: Scalar>(point: &CoordinatePoint<S>) -> bool {
    let t = point.negative_triangles()[0];
    psi(&point.tau, t, &point.f) == S::zero()
}

/// `p / q = (a^2 + b^2 + c^2) / (a b c)` for the sides of each triangle,
/// counted with multiplicity.
pub fn triangle_terms<S: Scalar>(tau: &Triangulation, f: &[S]) -> Vec<S> {
    tau.triangles()
        .map(|t| {
            let [a, b, c] = tau.triangle_edges(t).map(|e| f[e.0].clone());
            (a.square() + b.square() + c.square()) / (a * b * c)
        })
        .collect()
}

/// `ψ_t(f) = -p_t/q_t + Σ_{s != t} p_s/q_s`.
pub fn psi<S: Scalar>(tau: &Triangulation, t: TriangleRef, f: &[S]) -> S {
    triangle_terms(tau, f)
        .into_iter()
        .enumerate()
        .fold(S::zero(), |acc, (s, term)| if s == t.0 { acc - term } else { acc + term })
}

/// `Σ_t ε_t p_t / q_t`, the parameter of the boundary holonomy.
pub fn boundary_parameter<S: Scalar>(tau: &Triangulation, f: &[S], eps: &[Sign]) -> S {
    triangle_terms(tau, f)
        .into_iter()
        .zip(eps)
        .fold(S::zero(), |acc, (term, s)| acc + s.apply(term))
}

pub fn rescale_decoration<S: Scalar>(f: &[S], c: S) -> Result<Vec<S>> {
    if !c.is_positive() {
        return Err(Error::Domain(format!("rescale factor must be positive, got {c}")));
    }
    Ok(f.iter().map(|x| x.clone() * c.clone()).collect())
}

/// JSON form of a coordinate point. Keys of `f` and `eps` are edge and
/// triangle indices; `triangulation` is inline or a path.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoordinateJson {
    pub triangulation: Value,
    pub f: BTreeMap<String, Value>,
    pub eps: BTreeMap<String, i8>,
}

impl CoordinateJson {
    pub fn from_point<S: Scalar>(point: &CoordinatePoint<S>) -> Self {
        let f = point
            .f
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let v = if S::EXACT {
                    Value::String(x.to_string())
                } else {
                    serde_json::json!(x.to_f64())
                };
                (i.to_string(), v)
            })
            .collect();
        let eps = point.eps.iter().enumerate().map(|(i, s)| (i.to_string(), s.to_i8())).collect();
        Self {
            triangulation: serde_json::to_value(TriangulationJson::from(&point.tau)).expect("serializable"),
            f,
            eps,
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// Resolves the triangulation; relative paths are taken from `dir`.
    pub fn triangulation(&self, dir: Option<&Path>) -> Result<Triangulation> {
        match &self.triangulation {
            Value::String(path) => {
                let path = Path::new(path);
                let full = match dir {
                    Some(d) if path.is_relative() => d.join(path),
                    _ => path.to_path_buf(),
                };
                Triangulation::load(&full)
            }
            inline => {
                let raw: TriangulationJson = serde_json::from_value(inline.clone())
                    .map_err(|e| Error::Parse(format!("triangulation: {e}")))?;
                raw.try_into()
            }
        }
    }

    pub fn into_point<S: Scalar>(
        &self,
        dir: Option<&Path>,
        parse: impl Fn(&Value) -> Option<S>,
    ) -> Result<CoordinatePoint<S>> {
        let tau = self.triangulation(dir)?;
        let mut f = Vec::with_capacity(tau.num_edges());
        for e in tau.edges() {
            let raw = self
                .f
                .get(&e.0.to_string())
                .ok_or_else(|| Error::Parse(format!("missing value for edge {}", e.0)))?;
            f.push(parse(raw).ok_or_else(|| Error::Parse(format!("bad value for edge {}: {raw}", e.0)))?);
        }
        let mut eps = Vec::with_capacity(tau.num_triangles());
        for t in tau.triangles() {
            let raw = *self
                .eps
                .get(&t.0.to_string())
                .ok_or_else(|| Error::Parse(format!("missing sign for triangle {}", t.0)))?;
            eps.push(Sign::try_from(raw)?);
        }
        let extra_f = self.f.keys().find(|k| k.parse::<usize>().map_or(true, |i| i >= tau.num_edges()));
        let extra_t = self.eps.keys().find(|k| k.parse::<usize>().map_or(true, |i| i >= tau.num_triangles()));
        if let Some(k) = extra_f.or(extra_t) {
            return Err(Error::Parse(format!("unknown key {k:?}")));
        }
        CoordinatePoint::new(tau, f, eps)
    }
}

impl CoordinatePoint<f64> {
    pub fn from_json(text: &str, dir: Option<&Path>) -> Result<Self> {
        let raw: CoordinateJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("coordinates: {e}")))?;
        raw.into_point(dir, |v| match v {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => crate::sl2::parse_rational(s).map(|q| q.to_f64()),
            _ => None,
        })
    }
}

impl CoordinatePoint<crate::sl2::Rational> {
    pub fn from_json_exact(text: &str, dir: Option<&Path>) -> Result<Self> {
        let raw: CoordinateJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("coordinates: {e}")))?;
        raw.into_point(dir, |v| match v {
            Value::Number(n) => crate::sl2::parse_rational(&n.to_string()),
            Value::String(s) => crate::sl2::parse_rational(s),
            _ => None,
        })
    }
}
