//! Exact rational arithmetic helpers.
//!
//! Every region, bound and allocation in this crate is an exact rational.
//! Inputs are accepted either as `num/den` or as decimal strings; decimals are
//! converted digit by digit, never through a float.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Integer as a rational.
#[inline]
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n as i128)
}

/// `n / d` as a rational. Panics if `d == 0`.
#[inline]
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n as i128, d as i128)
}

/// `(x)^+ = max(x, 0)`.
#[inline]
pub fn pos(x: Rational) -> Rational {
    if x.is_negative() {
        Rational::zero()
    } else {
        x
    }
}

pub fn min(a: Rational, b: Rational) -> Rational {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

/// Parses `"num/den"`, `"-3"`, `"0.4"` or `"1.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::InvalidRational(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if frac.len() > 30 {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num: i128 = if digits.is_empty() {
        0
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = 10i128.pow(frac.len() as u32);
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Renders as `"num/den"` (always with a denominator, e.g. `"2/1"`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Lossy conversion for plotting and Monte Carlo comparison only.
pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A strictly increasing list of non-negative rationals.
///
/// Parsed from `start:stop:step` (inclusive of `stop` when it lies on the
/// grid) or from a comma-separated list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaGrid(Vec<Rational>);

impl AlphaGrid {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        let desc = || {
            values
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(",")
        };
        if values.is_empty() {
            return Err(Error::InvalidGrid(desc(), "grid is empty"));
        }
        if values.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidGrid(desc(), "values must be non-negative"));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(desc(), "values must be strictly increasing"));
        }
        Ok(Self(values))
    }

    /// `{start, start+step, ...}` up to and including `stop`.
    pub fn range(start: Rational, stop: Rational, step: Rational) -> Result<Self> {
        if !step.is_positive() {
            return Err(Error::InvalidGrid(
                format!("{start}:{stop}:{step}"),
                "step must be positive",
            ));
        }
        let mut v = Vec::new();
        let mut x = start;
        while x <= stop {
            v.push(x);
            x += step;
        }
        Self::new(v)
    }

    /// `{k / den : k = 0..=k_max}`.
    pub fn multiples(den: i64, k_max: i64) -> Self {
        Self((0..=k_max).map(|k| ratio(k, den)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter()
    }
}

impl std::str::FromStr for AlphaGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [start, stop, step] => Self::range(
                parse_rational(start)?,
                parse_rational(stop)?,
                parse_rational(step)?,
            ),
            [single] => Self::new(
                single
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()?,
            ),
            _ => Err(Error::InvalidGrid(
                s.to_string(),
                "expected start:stop:step or a comma-separated list",
            )),
        }
    }
}
