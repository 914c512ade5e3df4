use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Antenna counts of the two-user MIMO Z-interference channel.
///
/// Transmitter `i` has `m_i` antennas and receiver `i` has `n_i`. Only the
/// cross-link from transmitter 2 to receiver 1 is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct AntennaConfig {
    m1: u32,
    m2: u32,
    n1: u32,
    n2: u32,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    m1: u32,
    m2: u32,
    n1: u32,
    n2: u32,
}

impl TryFrom<RawConfig> for AntennaConfig {
    type Error = Error;
    fn try_from(r: RawConfig) -> Result<Self> {
        AntennaConfig::new(r.m1, r.m2, r.n1, r.n2)
    }
}

impl From<AntennaConfig> for RawConfig {
    fn from(c: AntennaConfig) -> Self {
        RawConfig {
            m1: c.m1,
            m2: c.m2,
            n1: c.n1,
            n2: c.n2,
        }
    }
}

impl AntennaConfig {
    /// Rejects zero antenna counts.
    pub fn new(m1: u32, m2: u32, n1: u32, n2: u32) -> Result<Self> {
        if m1 == 0 || m2 == 0 || n1 == 0 || n2 == 0 {
            return Err(Error::ZeroAntenna([m1, m2, n1, n2]));
        }
        Ok(Self { m1, m2, n1, n2 })
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }
    pub fn m2(&self) -> u32 {
        self.m2
    }
    pub fn n1(&self) -> u32 {
        self.n1
    }
    pub fn n2(&self) -> u32 {
        self.n2
    }

    /// Effective cross-link dimension `min(m2, n1)`.
    pub fn n1_prime(&self) -> u32 {
        self.m2.min(self.n1)
    }

    /// `min(m2, n1 + n2)`.
    pub fn p(&self) -> u32 {
        self.m2.min(self.n1 + self.n2)
    }

    /// `min(m2, n1)`, identical to [`n1_prime`](Self::n1_prime).
    pub fn q(&self) -> u32 {
        self.n1_prime()
    }

    pub fn is_canonical(&self) -> bool {
        self.m1 <= self.n1
            && self.n1 <= self.m1 + self.m2
            && self.n2 <= self.m2
            && self.m2 <= self.n1 + self.n2
    }

    /// Caps `m2` at `n1 + n2`; other dimensions are left untouched.
    pub fn canonicalize(&self) -> Self {
        Self {
            m2: self.m2.min(self.n1 + self.n2),
            ..*self
        }
    }

    pub fn require_canonical(&self) -> Result<()> {
        if self.is_canonical() {
            Ok(())
        } else {
            Err(Error::NonCanonical(*self))
        }
    }

    /// Every canonical tuple with all entries in `1..=k`, in lexicographic
    /// `(m1, m2, n1, n2)` order.
    pub fn canonical_up_to(k: u32) -> Vec<Self> {
        Self::all_up_to(k)
            .into_iter()
            .filter(|c| c.is_canonical())
            .collect()
    }

    /// Every tuple with all entries in `1..=k`.
    pub fn all_up_to(k: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for m1 in 1..=k {
            for m2 in 1..=k {
                for n1 in 1..=k {
                    for n2 in 1..=k {
                        out.push(Self { m1, m2, n1, n2 });
                    }
                }
            }
        }
        out
    }

    pub(crate) fn r(&self) -> [Rational; 4] {
        [
            int(self.m1 as i64),
            int(self.m2 as i64),
            int(self.n1 as i64),
            int(self.n2 as i64),
        ]
    }
}

impl fmt::Display for AntennaConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.m1, self.m2, self.n1, self.n2)
    }
}

impl FromStr for AntennaConfig {
    type Err = Error;

    /// Accepts `M1,M2,N1,N2`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(s.to_string());
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v: Vec<u32> = t
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match v.as_slice() {
            [m1, m2, n1, n2] => Self::new(*m1, *m2, *n1, *n2),
            _ => Err(bad()),
        }
    }
}
