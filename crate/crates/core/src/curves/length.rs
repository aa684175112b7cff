use crate::error::{Error, Result};

/// `ℓ = -2 ln x` for the holonomy eigenvalue `x` in `(0, 1)`.
pub fn length_from_x(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("x must lie in (0, 1), got {x}")));
    }
    Ok(-2.0 * x.ln())
}

/// `x = exp(-ℓ/2)` for `ℓ > 0`.
pub fn x_from_length(length: f64) -> Result<f64> {
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::Domain(format!("length must be positive, got {length}")));
    }
    Ok((-length / 2.0).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_pair() {
        assert!((length_from_x(0.5).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-15);
        for x in [0.1, 0.5, 0.9] {
            assert!((x_from_length(length_from_x(x).unwrap()).unwrap() - x).abs() < 1e-15);
        }
        let xs: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
        let ls: Vec<f64> = xs.iter().map(|&x| length_from_x(x).unwrap()).collect();
        assert!(ls.windows(2).all(|w| w[1] < w[0]));
        assert!(*ls.last().unwrap() > 0.0);
        assert!(length_from_x(1.0).is_err());
        assert!(length_from_x(0.0).is_err());
        assert!(x_from_length(0.0).is_err());
        assert!(x_from_length(-1.0).is_err());
    }
}
