use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A sign `±1`, serialized as the integer `1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of<S: Scalar>(value: &S) -> Option<Sign> {
        if value.is_positive() {
            Some(Sign::Plus)
        } else if *value < S::zero() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_scalar<S: Scalar>(self) -> S {
        S::from_i64(self.to_i8() as i64)
    }

    pub fn apply<S: Scalar>(self, value: S) -> S {
        match self {
            Sign::Plus => value,
            Sign::Minus => -value,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = Error;

    fn try_from(value: i8) -> Result<Self> {
        match value {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("sign must be 1 or -1, got {other}"))),
        }
    }
}

impl From<Sign> for i8 {
    fn from(value: Sign) -> Self {
        value.to_i8()
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}
