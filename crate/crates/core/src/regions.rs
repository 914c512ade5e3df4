//! Outer bound and baseline GDoF regions, plus sum-GDoF formulas.

use num_traits::One;

use crate::alpha::Alpha;
use crate::antenna::AntennaConfig;
use crate::error::Result;
use crate::fterm::f;
use crate::geometry::{HalfPlane, Region2D};
use crate::rational::{int, max, min, pos, Rational};

/// Which CSIT model a region belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Csit {
    Delayed,
    Perfect,
    Dof,
}

impl std::str::FromStr for Csit {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "delayed" => Ok(Csit::Delayed),
            "perfect" => Ok(Csit::Perfect),
            "dof" => Ok(Csit::Dof),
            other => Err(format!("unknown CSIT model {other:?} (expected delayed, perfect or dof)")),
        }
    }
}

impl std::fmt::Display for Csit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Csit::Delayed => "delayed",
            Csit::Perfect => "perfect",
            Csit::Dof => "dof",
        })
    }
}

/// Region for the given CSIT model. `alpha` is ignored for [`Csit::Dof`].
pub fn region(cfg: &AntennaConfig, alpha: Alpha, csit: Csit) -> Result<Region2D> {
    match csit {
        Csit::Delayed => Ok(delayed_region(cfg, alpha)),
        Csit::Perfect => perfect_csit_region(cfg, alpha),
        Csit::Dof => dof_region_delayed(cfg),
    }
}

fn build(planes: Vec<HalfPlane>) -> Region2D {
    Region2D::intersect(&planes).expect("GDoF regions are bounded boxes containing the origin")
}

fn boxed(d1_max: Rational, d2_max: Rational) -> Vec<HalfPlane> {
    vec![
        HalfPlane::d1_nonneg(),
        HalfPlane::d2_nonneg(),
        HalfPlane::d1_le(d1_max),
        HalfPlane::d2_le(d2_max),
    ]
}

/// Right-hand side of `d1/q + d2/p <= rhs` in the delayed-CSIT outer bound.
pub fn weighted_bound_rhs(cfg: &AntennaConfig, alpha: Alpha) -> Rational {
    let a = alpha.value();
    let (q, p) = (int(cfg.q() as i64), int(cfg.p() as i64));
    f(cfg.n1(), (a, cfg.m2()), (Rational::one(), cfg.m1())) / q
        + f(cfg.m2(), (a, cfg.n1()), (Rational::one(), cfg.n2())) / p
        - a
}

/// The weighted delayed-CSIT bound `d1/q + d2/p <= rhs` as a half-plane.
pub fn weighted_bound(cfg: &AntennaConfig, alpha: Alpha) -> HalfPlane {
    let (q, p) = (int(cfg.q() as i64), int(cfg.p() as i64));
    HalfPlane::new(q.recip(), p.recip(), weighted_bound_rhs(cfg, alpha)).expect("nonzero normal")
}

/// Delayed-CSIT GDoF region; valid for any antenna counts.
pub fn delayed_region(cfg: &AntennaConfig, alpha: Alpha) -> Region2D {
    let mut h = boxed(
        int(cfg.m1().min(cfg.n1()) as i64),
        int(cfg.m2().min(cfg.n2()) as i64),
    );
    h.push(weighted_bound(cfg, alpha));
    build(h)
}

/// Sum bound of the perfect-CSIT region.
pub fn perfect_sum_bound(cfg: &AntennaConfig, alpha: Alpha) -> Rational {
    let a = alpha.value();
    let n1p = cfg.n1_prime();
    f(cfg.n1(), (a, cfg.m2()), (Rational::one(), cfg.m1()))
        + f(cfg.n2(), (Rational::one() - a, n1p), (Rational::one(), cfg.m2() - n1p))
}

/// Perfect-CSIT GDoF region; canonical configs only.
pub fn perfect_csit_region(cfg: &AntennaConfig, alpha: Alpha) -> Result<Region2D> {
    cfg.require_canonical()?;
    let mut h = boxed(int(cfg.m1() as i64), int(cfg.n2() as i64));
    h.push(HalfPlane::new(Rational::one(), Rational::one(), perfect_sum_bound(cfg, alpha))?);
    Ok(build(h))
}

/// Delayed-CSIT DoF region; canonical configs only.
pub fn dof_region_delayed(cfg: &AntennaConfig) -> Result<Region2D> {
    cfg.require_canonical()?;
    let [m1, m2, n1, n2] = cfg.r();
    let n1p = int(cfg.n1_prime() as i64);
    let mut h = boxed(m1, n2);
    h.push(HalfPlane::new(Rational::one(), Rational::one(), max(m2, n1))?);
    h.push(HalfPlane::new(n1p.recip(), m2.recip(), n1 / n1p)?);
    Ok(build(h))
}

/// Rectangle reached by treating interference as noise at receiver 1 while
/// both transmitters use full power.
pub fn tin_region(cfg: &AntennaConfig, alpha: Alpha) -> Region2D {
    let a = alpha.value();
    let d1 = f(cfg.n1(), (Rational::one(), cfg.m1()), (a, cfg.m2()))
        - a * int(cfg.n1().min(cfg.m2()) as i64);
    build(boxed(pos(d1), int(cfg.m2().min(cfg.n2()) as i64)))
}

/// Weak-interference branch of the sum-GDoF formula, evaluated at any alpha.
pub fn sum_gdof_weak_branch(cfg: &AntennaConfig, alpha: Alpha) -> Rational {
    let [m1, m2, n1, n2] = cfg.r();
    let n1p = int(cfg.n1_prime() as i64);
    let a = alpha.value();
    min(m1 + n2, m1 + n2 - a * (m1 - n1 + n2 * n1p / m2))
}

/// Strong-interference branch of the sum-GDoF formula, evaluated at any alpha.
pub fn sum_gdof_strong_branch(cfg: &AntennaConfig, alpha: Alpha) -> Rational {
    let [m1, m2, n1, n2] = cfg.r();
    let n1p = int(cfg.n1_prime() as i64);
    let a = alpha.value();
    min(m1 + n2, n2 + n1 - (n2 + n1p) * n1p / m2 + n1p * n1p * a / m2)
}

/// Closed-form delayed-CSIT sum-GDoF; canonical configs only.
pub fn sum_gdof_closed_form(cfg: &AntennaConfig, alpha: Alpha) -> Result<Rational> {
    cfg.require_canonical()?;
    Ok(if alpha.is_weak() {
        sum_gdof_weak_branch(cfg, alpha)
    } else {
        sum_gdof_strong_branch(cfg, alpha)
    })
}

/// Closed-form perfect-CSIT sum-GDoF; canonical configs only. For
/// `m2 <= n1` the perfect and delayed regions coincide and the delayed
/// formula is returned.
pub fn perfect_sum_gdof(cfg: &AntennaConfig, alpha: Alpha) -> Result<Rational> {
    cfg.require_canonical()?;
    if cfg.m2() <= cfg.n1() {
        return sum_gdof_closed_form(cfg, alpha);
    }
    let [m1, m2, n1, n2] = cfg.r();
    let a = alpha.value();
    let one = Rational::one();
    Ok(if alpha.is_weak() {
        if m1 + n2 <= m2 {
            m1 + n2
        } else {
            m1 * (one - a) + m2 * a + n2 * (one - a)
        }
    } else if a >= one + n2 / n1 - (m2 - m1) / n1 {
        m1 + n2
    } else {
        m2 + (a - one) * n1
    })
}

/// LP maximum of `d1 + d2` over a region.
pub fn lp_sum(region: &Region2D) -> Rational {
    region.maximize(Rational::one(), Rational::one()).0
}
