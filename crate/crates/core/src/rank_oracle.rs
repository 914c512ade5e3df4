//! Exhaustive check that the weighted outer bound is maximized when the
//! interfering transmitter uses a full-rank covariance.
//!
//! `g(r)` is the weighted bound when transmitter 2 sends along `m2 - r`
//! dimensions only. The claim under test is `g(0) >= g(r)` for every
//! integer `0 <= r <= m2`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::alpha::Alpha;
use crate::antenna::AntennaConfig;
use crate::error::{Error, Result};
use crate::fterm::f;
use crate::io::rational_str;
use crate::rational::{int, Rational};

/// `g(r)`; `m2` is used as given, without capping.
pub fn g_of_r(cfg: &AntennaConfig, alpha: Alpha, r: u32) -> Result<Rational> {
    if r > cfg.m2() {
        return Err(Error::RankOutOfRange { r, m2: cfg.m2() });
    }
    let a = alpha.value();
    let one = Rational::one();
    let rest = cfg.m2() - r;
    let q = int(cfg.m2().min(cfg.n1()) as i64);
    let p = int(cfg.m2().min(cfg.n1() + cfg.n2()) as i64);
    Ok(f(cfg.n1(), (one, cfg.m1()), (a, rest)) / q
        + f(rest, (a, cfg.n1()), (one, cfg.n2())) / p
        - a * int(rest.min(cfg.n1()) as i64) / q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankSweep {
    pub cfg: AntennaConfig,
    #[serde(with = "rational_str")]
    pub alpha: Rational,
    /// `(r, g(r))` for `r = 0..=m2`.
    #[serde(serialize_with = "values_as_strings")]
    pub values: Vec<(u32, Rational)>,
}

fn values_as_strings<S: serde::Serializer>(v: &[(u32, Rational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (r, g) in v {
        seq.serialize_element(&(r, crate::rational::format_rational(g)))?;
    }
    seq.end()
}

impl RankSweep {
    /// Ranks `r > 0` with `g(r) == g(0)`.
    pub fn ties(&self) -> Vec<u32> {
        let g0 = self.values[0].1;
        self.values[1..]
            .iter()
            .filter(|(_, g)| *g == g0)
            .map(|(r, _)| *r)
            .collect()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1].1 <= w[0].1)
    }
}

/// Smallest maximizing `r` together with the full sweep.
pub fn argmax_g(cfg: &AntennaConfig, alpha: Alpha) -> (u32, RankSweep) {
    let values: Vec<(u32, Rational)> = (0..=cfg.m2())
        .map(|r| (r, g_of_r(cfg, alpha, r).expect("r within range")))
        .collect();
    let mut best = values[0];
    for &(r, g) in &values[1..] {
        if g > best.1 {
            best = (r, g);
        }
    }
    (
        best.0,
        RankSweep {
            cfg: *cfg,
            alpha: alpha.value(),
            values,
        },
    )
}

/// Which of the four antenna orderings the weak-regime split falls in,
/// after capping `m2` at `n1 + n2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TupleCase {
    /// `m2 <= n1`, `m2 <= n2`
    One,
    /// `n2 < m2 <= n1`
    Two,
    /// `n1 < m2 <= n2`
    Three,
    /// `n1 < m2`, `n2 < m2`
    Four,
}

/// `g(r) = x(r) + l3(r) - l2(r)` with `l2` the loss in the second term and
/// `l3` the gain in the third.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LossDecomposition {
    #[serde(with = "rational_str")]
    pub x: Rational,
    #[serde(with = "rational_str")]
    pub l2: Rational,
    #[serde(with = "rational_str")]
    pub l3: Rational,
    pub case: TupleCase,
}

/// Weak-interference decomposition of `g(r)`. Checks the identity against
/// [`g_of_r`] and that `l3 <= l2`.
pub fn loss_decomposition(cfg: &AntennaConfig, alpha: Alpha, r: u32) -> Result<LossDecomposition> {
    if !alpha.is_weak() {
        return Err(Error::WrongRegime {
            expected: "weak",
            alpha: alpha.value(),
        });
    }
    let g = g_of_r(cfg, alpha, r)?;
    let capped = cfg.canonicalize();
    let shift = cfg.m2() - capped.m2();
    let r_in = r;
    let r = r.saturating_sub(shift);

    let a = alpha.value();
    let one = Rational::one();
    let (m1, m2, n1, n2) = (capped.m1(), capped.m2(), capped.n1(), capped.n2());
    let [_, m2r, n1r, n2r] = capped.r();
    let rr = int(r as i64);
    let q = int(m2.min(n1) as i64);

    let l2 = if m2 <= n2 {
        rr / m2r
    } else if r <= m2 - n2 {
        rr * a / m2r
    } else {
        ((m2r - n2r) * a + (n2r - (m2r - rr))) / m2r
    };
    let l3 = if m2 <= n1 {
        a * rr / m2r
    } else if r <= m2 - n1 {
        Rational::zero()
    } else {
        (n1r - m2r + rr) * a / n1r
    };
    let x = f(n1, (one, m1), (a, m2 - r)) / q + f(m2, (a, n1), (one, n2)) / m2r - a;
    let case = match (m2 <= n1, m2 <= n2) {
        (true, true) => TupleCase::One,
        (true, false) => TupleCase::Two,
        (false, true) => TupleCase::Three,
        (false, false) => TupleCase::Four,
    };

    let mismatch = |detail: String| Error::DecompositionMismatch {
        config: *cfg,
        alpha: a,
        r: r_in,
        detail,
    };
    if x + l3 - l2 != g {
        return Err(mismatch(format!("x + l3 - l2 = {} but g = {g}", x + l3 - l2)));
    }
    if l3 > l2 {
        return Err(mismatch(format!("l3 = {l3} exceeds l2 = {l2}")));
    }
    Ok(LossDecomposition { x, l2, l3, case })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleFailure {
    pub config: AntennaConfig,
    #[serde(with = "rational_str")]
    pub alpha: Rational,
    pub detail: String,
}

/// Totals of an exhaustive rank sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    /// `(cfg, alpha)` pairs evaluated.
    pub checked: usize,
    pub failures: Vec<OracleFailure>,
    /// Pairs where some `r > 0` ties with `r = 0`.
    pub ties: usize,
    /// Weak-regime `(cfg, alpha, r)` triples whose decomposition was checked.
    pub decompositions: usize,
}

/// Runs [`argmax_g`] and, for weak `alpha`, [`loss_decomposition`] on every
/// listed configuration and exponent.
pub fn rank_oracle_sweep(configs: &[AntennaConfig], alphas: &[Rational]) -> Result<OracleSummary> {
    let mut s = OracleSummary::default();
    for cfg in configs {
        for &a in alphas {
            let alpha = Alpha::new(a)?;
            let (r_star, sweep) = argmax_g(cfg, alpha);
            s.checked += 1;
            if r_star != 0 {
                s.failures.push(OracleFailure {
                    config: *cfg,
                    alpha: a,
                    detail: format!("g is maximized at r = {r_star}, not 0"),
                });
            }
            if !sweep.ties().is_empty() {
                s.ties += 1;
            }
            if alpha.is_weak() {
                for r in 0..=cfg.m2() {
                    s.decompositions += 1;
                    if let Err(e) = loss_decomposition(cfg, alpha, r) {
                        s.failures.push(OracleFailure {
                            config: *cfg,
                            alpha: a,
                            detail: e.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(s)
}

/// Every tuple with `m1, n1, n2 <= k` and `m2 <= m2_max`.
pub fn oracle_configs(k: u32, m2_max: u32) -> Vec<AntennaConfig> {
    let mut v = Vec::new();
    for m1 in 1..=k {
        for m2 in 1..=m2_max {
            for n1 in 1..=k {
                for n2 in 1..=k {
                    v.push(AntennaConfig::new(m1, m2, n1, n2).expect("positive"));
                }
            }
        }
    }
    v
}
