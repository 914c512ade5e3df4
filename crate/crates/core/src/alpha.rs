use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// Interference regime. `alpha == 1` is weak.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Weak,
    Strong,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Weak => "weak",
            Regime::Strong => "strong",
        })
    }
}

/// Interference exponent: INR = SNR^alpha.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alpha(Rational);

impl Alpha {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() {
            Err(Error::NegativeAlpha(value))
        } else {
            Ok(Self(value))
        }
    }

    pub fn value(&self) -> Rational {
        self.0
    }

    pub fn regime(&self) -> Regime {
        if self.0 <= Rational::one() {
            Regime::Weak
        } else {
            Regime::Strong
        }
    }

    pub fn is_weak(&self) -> bool {
        self.regime() == Regime::Weak
    }
}

impl TryFrom<Rational> for Alpha {
    type Error = Error;
    fn try_from(r: Rational) -> Result<Self> {
        Alpha::new(r)
    }
}

impl FromStr for Alpha {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Alpha::new(parse_rational(s)?)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
