use std::fmt;

use serde::Serialize;

use crate::sl2::{gen_u, gen_v, Mat2, Scalar};

/// A segment `t -> u(x t)` or `t -> v(x t)`, `t` in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Atom<S = f64> {
    U(S),
    V(S),
}

impl<S: Scalar> Atom<S> {
    pub fn param(&self) -> &S {
        match self {
            Atom::U(x) | Atom::V(x) => x,
        }
    }

    pub fn matrix(&self) -> Mat2<S> {
        match self {
            Atom::U(x) => gen_u(x.clone()),
            Atom::V(x) => gen_v(x.clone()),
        }
    }

    pub fn inverse(&self) -> Atom<S> {
        match self {
            Atom::U(x) => Atom::U(-x.clone()),
            Atom::V(x) => Atom::V(-x.clone()),
        }
    }

    pub fn to_f64(&self) -> Atom<f64> {
        match self {
            Atom::U(x) => Atom::U(x.to_f64()),
            Atom::V(x) => Atom::V(x.to_f64()),
        }
    }
}

impl<S: Scalar> fmt::Display for Atom<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::U(x) => write!(f, "U({x})"),
            Atom::V(x) => write!(f, "V({x})"),
        }
    }
}

/// A path in `SL(2,R)` from the identity, concatenating atoms left to right.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorWord<S = f64> {
    pub atoms: Vec<Atom<S>>,
}

impl<S: Scalar> GeneratorWord<S> {
    pub fn new(atoms: Vec<Atom<S>>) -> Self {
        Self { atoms }
    }

    pub fn empty() -> Self {
        Self { atoms: Vec::new() }
    }

    /// Endpoint of the path.
    pub fn product(&self) -> Mat2<S> {
        self.atoms
            .iter()
            .fold(Mat2::identity(), |acc, atom| &acc * &atom.matrix())
    }

    /// The reversed path, traversed backwards.
    pub fn inverse(&self) -> Self {
        Self { atoms: self.atoms.iter().rev().map(Atom::inverse).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Self { atoms }
    }

    /// Moves the first `k` atoms to the end.
    pub fn rotate(&self, k: usize) -> Self {
        let mut atoms = self.atoms.clone();
        if !atoms.is_empty() {
            let k = k % atoms.len();
            atoms.rotate_left(k);
        }
        Self { atoms }
    }

    /// Drops atoms with zero parameter.
    pub fn pruned(&self) -> Self {
        Self { atoms: self.atoms.iter().filter(|a| *a.param() != S::zero()).cloned().collect() }
    }

    pub fn to_f64(&self) -> GeneratorWord<f64> {
        GeneratorWord { atoms: self.atoms.iter().map(Atom::to_f64).collect() }
    }
}

impl<S: Scalar> fmt::Display for GeneratorWord<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}
