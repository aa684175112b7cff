//! The star-triangle map `R(x, y, z) = (x', y', z')` defined by
//! `v(x) u(y) v(z) = u(z') v(y') u(x')`.

use super::scalar::Scalar;
use crate::error::{Error, Result};

pub fn star_triangle<S: Scalar>(x: S, y: S, z: S) -> Result<(S, S, S)> {
    if !(x.is_positive() && y.is_positive() && z.is_positive()) {
        return Err(Error::Domain(format!(
            "star-triangle map needs positive arguments, got ({x}, {y}, {z})"
        )));
    }
    let s = x.clone() + x.clone() * y.clone() * z.clone() + z.clone();
    let xp = x * y.clone() / s.clone();
    let zp = y * z / s.clone();
    Ok((xp, s, zp))
}

/// Applies `R` to components `(i, j, k)` (1-based) of a 6-tuple in place.
pub fn apply_r<S: Scalar>(tuple: &mut [S; 6], (i, j, k): (usize, usize, usize)) -> Result<()> {
    let (x, y, z) = star_triangle(
        tuple[i - 1].clone(),
        tuple[j - 1].clone(),
        tuple[k - 1].clone(),
    )?;
    tuple[i - 1] = x;
    tuple[j - 1] = y;
    tuple[k - 1] = z;
    Ok(())
}

/// Both sides of `R123 ∘ R145 ∘ R246 ∘ R356 = R356 ∘ R246 ∘ R145 ∘ R123`
/// evaluated at `tuple` (rightmost factor applied first).
pub fn tetrahedron_sides<S: Scalar>(tuple: &[S; 6]) -> Result<([S; 6], [S; 6])> {
    let order = [(3, 5, 6), (2, 4, 6), (1, 4, 5), (1, 2, 3)];
    let mut lhs = tuple.clone();
    for ijk in order {
        apply_r(&mut lhs, ijk)?;
    }
    let mut rhs = tuple.clone();
    for ijk in order.iter().rev() {
        apply_r(&mut rhs, *ijk)?;
    }
    Ok((lhs, rhs))
}
