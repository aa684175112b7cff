use std::f64::consts::PI;

use serde::Serialize;

use super::word::{Atom, GeneratorWord};
use crate::error::{Error, Result};
use crate::sl2::{Mat2, Scalar};

/// Homotopy class of a loop in `PSL(2,R)`: the loop is homotopic to `n`
/// half-turns of the rotation subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LiftClass {
    pub n: i64,
    /// Distance of the accumulated angle from `n π`, in units of `π`.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct WindingOptions {
    /// Largest accepted angle increment per subdivided step.
    pub max_step: f64,
    /// Accepted residual, in units of `π`.
    pub residual_gate: f64,
    /// Tolerance of the `±1` endpoint test, relative to the largest partial product.
    pub loop_tol: f64,
    pub max_depth: u32,
    /// Start directions, as angles.
    pub starts: Vec<f64>,
}

impl Default for WindingOptions {
    fn default() -> Self {
        Self {
            max_step: PI / 4.0,
            residual_gate: 0.01,
            loop_tol: 1e-8,
            max_depth: 60,
            starts: vec![0.3, 1.7, 2.9],
        }
    }
}

pub fn winding<S: Scalar>(word: &GeneratorWord<S>) -> Result<LiftClass> {
    winding_with(word, &WindingOptions::default())
}

pub fn winding_with<S: Scalar>(word: &GeneratorWord<S>, opts: &WindingOptions) -> Result<LiftClass> {
    let word = word.to_f64().pruned();
    check_loop(&word, opts.loop_tol)?;
    let mut result: Option<LiftClass> = None;
    for &start in &opts.starts {
        let class = winding_from(&word, start, opts)?;
        match result {
            None => result = Some(class),
            Some(prev) if prev.n != class.n => {
                return Err(Error::InternalAssertion(format!(
                    "winding depends on the start direction: {} vs {}",
                    prev.n, class.n
                )))
            }
            Some(prev) => {
                if class.residual > prev.residual {
                    result = Some(class);
                }
            }
        }
    }
    Ok(result.unwrap_or(LiftClass { n: 0, residual: 0.0 }))
}

/// Accumulated direction angle `θ(1) - θ(0)` for one start direction, in
/// radians. The path need not be a loop.
pub fn sweep(word: &GeneratorWord<f64>, start: f64, opts: &WindingOptions) -> Result<f64> {
    let d = [start.cos(), start.sin()];
    let mut prefix = Mat2::<f64>::identity();
    let mut total = 0.0;
    for atom in &word.atoms {
        total += atom_sweep(&prefix, atom, d, opts)?;
        prefix = &prefix * &atom.matrix();
    }
    Ok(total)
}

fn winding_from(word: &GeneratorWord<f64>, start: f64, opts: &WindingOptions) -> Result<LiftClass> {
    let turns = -sweep(word, start, opts)? / PI;
    let n = turns.round();
    let residual = (turns - n).abs();
    if residual >= opts.residual_gate {
        return Err(Error::StepTooCoarse { residual });
    }
    Ok(LiftClass { n: n as i64, residual })
}

fn check_loop(word: &GeneratorWord<f64>, tol: f64) -> Result<()> {
    let mut prefix = Mat2::<f64>::identity();
    let mut scale: f64 = 1.0;
    for atom in &word.atoms {
        prefix = &prefix * &atom.matrix();
        scale = scale.max(prefix.max_abs());
    }
    if prefix.is_plus_minus_identity(tol * scale) {
        Ok(())
    } else {
        Err(Error::NotALoop { endpoint: prefix.to_array() })
    }
}

fn direction(m: &Mat2<f64>, d: [f64; 2]) -> f64 {
    let x = m.a * d[0] + m.b * d[1];
    let y = m.c * d[0] + m.d * d[1];
    y.atan2(x)
}

/// Signed angle from `a` to `b` on `RP^1`, in `(-π/2, π/2]`.
fn wrap(delta: f64) -> f64 {
    let r = (delta + PI / 2.0).rem_euclid(PI) - PI / 2.0;
    if r <= -PI / 2.0 {
        r + PI
    } else {
        r
    }
}

fn atom_sweep(prefix: &Mat2<f64>, atom: &Atom<f64>, d: [f64; 2], opts: &WindingOptions) -> Result<f64> {
    let x = *atom.param();
    // u(x) turns directions clockwise for x > 0 and v(x) counterclockwise;
    // the orientation-preserving prefix keeps the sense. An increment of the
    // wrong sign is a half-turn alias.
    let sense = match atom {
        Atom::U(_) => -x.signum(),
        Atom::V(_) => x.signum(),
    };
    let aliased = |delta: f64| delta * sense < -1e-12;
    let at = |t: f64| {
        let seg = match atom {
            Atom::U(_) => crate::sl2::gen_u(x * t),
            Atom::V(_) => crate::sl2::gen_v(x * t),
        };
        direction(&(prefix * &seg), d)
    };
    let mut total = 0.0;
    let mut stack = vec![(0.0, 1.0, at(0.0), at(1.0), 0u32)];
    while let Some((t0, t1, a0, a1, depth)) = stack.pop() {
        let tm = 0.5 * (t0 + t1);
        let am = at(tm);
        let whole = wrap(a1 - a0);
        let left = wrap(am - a0);
        let right = wrap(a1 - am);
        let coarse = whole.abs() >= opts.max_step
            || aliased(whole)
            || aliased(left)
            || aliased(right)
            || (left + right - whole).abs() > 1e-9;
        if coarse {
            if depth >= opts.max_depth {
                return Err(Error::StepTooCoarse { residual: (left + right - whole).abs() / PI });
            }
            // Right half first so the left half is popped next.
            stack.push((tm, t1, am, a1, depth + 1));
            stack.push((t0, tm, a0, am, depth + 1));
        } else {
            total += left + right;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::model_loops::{edge_model_word, hexagon_word, solve_hex};
    use crate::sl2::{Rational, Scalar, Sign};
    use proptest::prelude::*;

    #[test]
    fn empty_word_is_trivial() {
        assert_eq!(winding(&GeneratorWord::<f64>::empty()).unwrap().n, 0);
    }

    #[test]
    fn rejects_open_paths() {
        let w = GeneratorWord::new(vec![Atom::U(1.0), Atom::V(1.0)]);
        assert!(matches!(winding(&w), Err(Error::NotALoop { .. })));
    }

    #[test]
    fn backtracking_cancels() {
        let w = GeneratorWord::new(vec![Atom::U(3.0), Atom::V(-0.2), Atom::U(1.5)]);
        let lp = w.concat(&w.inverse());
        assert_eq!(winding(&lp).unwrap().n, 0);
        let hex = hexagon_word(&[2.0, 3.0, 4.0], &solve_hex(&[2.0, 3.0, 4.0], Sign::Plus).unwrap());
        let conj = w.concat(&hex).concat(&w.inverse());
        assert_eq!(winding(&conj).unwrap().n, winding(&hex).unwrap().n);
    }

    #[test]
    fn edge_loop_example() {
        let w = GeneratorWord::new(vec![Atom::V(-2.0), Atom::U(1.0), Atom::V(-2.0), Atom::U(1.0)]);
        assert_eq!(winding(&w).unwrap().n, 1);
        let exact: GeneratorWord<Rational> = edge_model_word(Rational::from_i64(2));
        assert_eq!(winding(&exact).unwrap().n, 1);
    }

    #[test]
    fn wrap_range() {
        assert!(wrap(PI).abs() < 1e-12);
        assert!((wrap(0.1) - 0.1).abs() < 1e-15);
        assert!((wrap(PI - 0.1) + 0.1).abs() < 1e-12);
        assert!((wrap(-PI + 0.1) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn single_atoms_sweep_less_than_half_turn() {
        let opts = WindingOptions::default();
        for x in [0.01, 1.0, 50.0, 1e4] {
            for start in [0.3, 1.7, 2.9] {
                let up = sweep(&GeneratorWord::new(vec![Atom::U(x)]), start, &opts).unwrap();
                let vp = sweep(&GeneratorWord::new(vec![Atom::V(x)]), start, &opts).unwrap();
                assert!(up < 0.0 && up > -PI, "{up} {x} {start}");
                assert!(vp > 0.0 && vp < PI, "{vp} {x} {start}");
            }
        }
    }

    fn hex_word(x: [f64; 3], plus: bool) -> GeneratorWord<f64> {
        let eps = if plus { Sign::Plus } else { Sign::Minus };
        hexagon_word(&x, &solve_hex(&x, eps).unwrap())
    }

    proptest! {
        #[test]
        fn additive_under_concatenation(
            x in prop::array::uniform3(0.2f64..5.0),
            y in prop::array::uniform3(0.2f64..5.0),
            px in any::<bool>(),
            py in any::<bool>(),
        ) {
            let a = hex_word(x, px);
            let b = hex_word(y, py);
            let na = winding(&a).unwrap().n;
            let nb = winding(&b).unwrap().n;
            prop_assert_eq!(winding(&a.concat(&b)).unwrap().n, na + nb);
        }

        #[test]
        fn invariant_under_rotation(
            x in prop::array::uniform3(0.2f64..5.0),
            plus in any::<bool>(),
            k in 0usize..6,
        ) {
            let w = hex_word(x, plus);
            prop_assert_eq!(winding(&w.rotate(k)).unwrap().n, winding(&w).unwrap().n);
        }

        #[test]
        fn invariant_under_subdivision(x in 0.1f64..10.0, cut in 0.05f64..0.95) {
            let w = edge_model_word(x);
            let split: Vec<Atom<f64>> = w.atoms.iter().flat_map(|a| match a {
                Atom::U(p) => vec![Atom::U(p * cut), Atom::U(p * (1.0 - cut))],
                Atom::V(p) => vec![Atom::V(p * cut), Atom::V(p * (1.0 - cut))],
            }).collect();
            prop_assert_eq!(winding(&GeneratorWord::new(split)).unwrap().n, 1);
        }
    }
}
