use std::fmt;

use serde::Serialize;

use super::triangulation::{EdgeRef, HalfEdge, Triangulation};
use crate::error::{Error, Result};

/// One step of a path in the 1-skeleton of the truncated complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    /// Long edge of `h`, from `v(h)` to `v(opp h)`.
    Long(HalfEdge),
    /// Short edge of corner `corner`: forward runs `v(corner)` to
    /// `v(sigma corner)`, backward the other way.
    Short { corner: HalfEdge, forward: bool },
}

impl Step {
    pub fn inverse(self, tau: &Triangulation) -> Step {
        match self {
            Step::Long(h) => Step::Long(tau.opp(h)),
            Step::Short { corner, forward } => Step::Short { corner, forward: !forward },
        }
    }

    pub fn start(self, tau: &Triangulation) -> HalfEdge {
        match self {
            Step::Long(h) => h,
            Step::Short { corner, forward: true } => corner,
            Step::Short { corner, forward: false } => tau.sigma(corner),
        }
    }

    pub fn end(self, tau: &Triangulation) -> HalfEdge {
        self.inverse(tau).start(tau)
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Long(h) => write!(f, "L{}", h.0),
            Step::Short { corner, forward: true } => write!(f, "S{}", corner.0),
            Step::Short { corner, forward: false } => write!(f, "S{}'", corner.0),
        }
    }
}

/// A path of steps starting at the vertex `v(base)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeWord {
    pub base: HalfEdge,
    pub steps: Vec<Step>,
}

impl EdgeWord {
    pub fn empty(base: HalfEdge) -> Self {
        Self { base, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn inverse(&self, tau: &Triangulation) -> EdgeWord {
        let end = self.steps.last().map_or(self.base, |s| s.end(tau));
        EdgeWord {
            base: end,
            steps: self.steps.iter().rev().map(|s| s.inverse(tau)).collect(),
        }
    }

    pub fn concat(&self, other: &EdgeWord) -> EdgeWord {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        EdgeWord { base: self.base, steps }
    }

    /// Free reduction: cancels adjacent mutually inverse steps.
    pub fn reduce(&self, tau: &Triangulation) -> EdgeWord {
        let mut out: Vec<Step> = Vec::with_capacity(self.steps.len());
        for &step in &self.steps {
            if out.last().is_some_and(|&last| last.inverse(tau) == step) {
                out.pop();
            } else {
                out.push(step);
            }
        }
        EdgeWord { base: self.base, steps: out }
    }

    /// Walks the word and returns its end vertex, checking contiguity.
    pub fn walk(&self, tau: &Triangulation) -> Result<HalfEdge> {
        let mut at = self.base;
        for (i, step) in self.steps.iter().enumerate() {
            if step.start(tau) != at {
                return Err(Error::Precondition(format!(
                    "step {i} ({step}) does not start at v({at})"
                )));
            }
            at = step.end(tau);
        }
        Ok(at)
    }

    pub fn is_closed(&self, tau: &Triangulation) -> bool {
        self.walk(tau).is_ok_and(|end| end == self.base)
    }
}

impl fmt::Display for EdgeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(Step::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Forward boundary path from `v(from)` to `v(to)`.
pub fn boundary_path(tau: &Triangulation, from: HalfEdge, to: HalfEdge) -> Vec<Step> {
    let mut steps = Vec::new();
    let mut at = from;
    while at != to {
        steps.push(Step::Short { corner: at, forward: true });
        at = tau.sigma(at);
    }
    steps
}

/// Loop at `v(base)` crossing the long edge of `h` once, routed along the
/// forward boundary before and after the crossing.
pub fn crossing_word(tau: &Triangulation, h: HalfEdge, base: HalfEdge) -> EdgeWord {
    let mut steps = boundary_path(tau, base, h);
    steps.push(Step::Long(h));
    steps.extend(boundary_path(tau, tau.opp(h), base));
    EdgeWord { base, steps }
}

/// Loop word of edge `e`, crossing from its smaller half-edge to the larger.
/// The opposite crossing direction is the inverse word.
pub fn edge_loop_word(tau: &Triangulation, e: EdgeRef, base: HalfEdge) -> EdgeWord {
    crossing_word(tau, tau.edge_sides(e)[0], base)
}

/// The base corner used throughout: the corner of half-edge 0.
pub const BASE_CORNER: HalfEdge = HalfEdge(0);
