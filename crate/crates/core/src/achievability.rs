//! Achievable GDoF tuples of the block-Markov scheme.
//!
//! Transmitter 2 backs its private message off to power `rho^-a2` and,
//! one block later, multicasts a quantized description of the interference
//! it caused at receiver 1. The quantization index carries `d_eta` GDoF.
//! Per block, the scheme achieves `(d1, d2)` whenever
//!
//! | label      | constraint                                   |
//! |------------|----------------------------------------------|
//! | `eta`      | `d_eta <= min(alpha n1', min(m2, n2))`       |
//! | `d1`       | `d1 <= m1`                                   |
//! | `eta+d1`   | `d_eta + d1 <= f(n1,(alpha,m2),(1,m1))`      |
//! | `d2`       | `d2 <= f(m2,(1-a2,n2),(alpha-a2,n1))`        |
//! | `eta+d2`   | `d_eta + d2 <= (alpha-a2) n1' + n2`          |

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::alpha::{Alpha, Regime};
use crate::antenna::AntennaConfig;
use crate::error::{Error, Result};
use crate::fterm::f;
use crate::geometry::{GdofPoint, Region2D};
use crate::io::rational_str;
use crate::rational::{int, min, pos, ratio, Rational};
use crate::regions::{delayed_region, weighted_bound};

/// Right-hand sides of the five achievability constraints for fixed
/// `(cfg, alpha, a2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AchievabilityConditions {
    #[serde(with = "rational_str")]
    pub eta_max: Rational,
    #[serde(with = "rational_str")]
    pub d1_max: Rational,
    #[serde(with = "rational_str")]
    pub eta_plus_d1_max: Rational,
    #[serde(with = "rational_str")]
    pub d2_max: Rational,
    #[serde(with = "rational_str")]
    pub eta_plus_d2_max: Rational,
}

impl AchievabilityConditions {
    /// Names the first violated constraint, if any.
    pub fn check(&self, p: &GdofPoint, d_eta: Rational) -> std::result::Result<(), String> {
        let rows = [
            ("eta", d_eta, self.eta_max),
            ("d1", p.d1, self.d1_max),
            ("eta+d1", d_eta + p.d1, self.eta_plus_d1_max),
            ("d2", p.d2, self.d2_max),
            ("eta+d2", d_eta + p.d2, self.eta_plus_d2_max),
        ];
        for (name, lhs, rhs) in rows {
            if lhs > rhs {
                return Err(format!("{name}: {lhs} > {rhs}"));
            }
        }
        for (name, v) in [("d1", p.d1), ("d2", p.d2), ("eta", d_eta)] {
            if v < Rational::zero() {
                return Err(format!("{name} = {v} is negative"));
            }
        }
        Ok(())
    }

    pub fn satisfied(&self, p: &GdofPoint, d_eta: Rational) -> bool {
        self.check(p, d_eta).is_ok()
    }
}

pub fn conditions(cfg: &AntennaConfig, alpha: Alpha, a2: Rational) -> Result<AchievabilityConditions> {
    cfg.require_canonical()?;
    let a = alpha.value();
    let one = Rational::one();
    let n1p = int(cfg.n1_prime() as i64);
    Ok(AchievabilityConditions {
        eta_max: min(a * n1p, int(cfg.m2().min(cfg.n2()) as i64)),
        d1_max: int(cfg.m1() as i64),
        eta_plus_d1_max: f(cfg.n1(), (a, cfg.m2()), (one, cfg.m1())),
        d2_max: f(cfg.m2(), (one - a2, cfg.n2()), (a - a2, cfg.n1())),
        eta_plus_d2_max: (a - a2) * n1p + int(cfg.n2() as i64),
    })
}

/// `min(n2, (alpha - a2) n1')`: GDoF of the interference description.
pub fn quantizer_rate(cfg: &AntennaConfig, alpha: Alpha, a2: Rational) -> Rational {
    min(
        int(cfg.n2() as i64),
        (alpha.value() - a2) * int(cfg.n1_prime() as i64),
    )
}

/// Power back-off, multicast rate and the tuple they reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerAllocation {
    #[serde(with = "rational_str")]
    pub a2: Rational,
    #[serde(with = "rational_str")]
    pub d_eta: Rational,
    pub regime: Regime,
    pub target: GdofPoint,
    /// Strong regime only: largest `a2` at which `d2` still equals `n2`.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rational_str")]
    pub d2_threshold: Option<Rational>,
}

mod opt_rational_str {
    use serde::Serializer;

    use crate::rational::{format_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_rational(r)),
            None => s.serialize_none(),
        }
    }
}

/// Admissible `a2` range `[(alpha - n2/n1')^+, alpha]` in weak interference.
pub fn weak_a2_range(cfg: &AntennaConfig, alpha: Alpha) -> (Rational, Rational) {
    let a = alpha.value();
    let lo = pos(a - int(cfg.n2() as i64) / int(cfg.n1_prime() as i64));
    (lo, a)
}

pub fn weak_allocation(cfg: &AntennaConfig, alpha: Alpha, a2: Rational) -> Result<(GdofPoint, PowerAllocation)> {
    cfg.require_canonical()?;
    if alpha.regime() != Regime::Weak {
        return Err(Error::WrongRegime {
            expected: "weak",
            alpha: alpha.value(),
        });
    }
    let (lo, hi) = weak_a2_range(cfg, alpha);
    if a2 < lo || a2 > hi {
        return Err(Error::A2OutOfRange { a2, lo, hi });
    }
    let [m1, m2, n1, n2] = cfg.r();
    let n1p = int(cfg.n1_prime() as i64);
    let a = alpha.value();
    let d1 = min(m1, m1 - a * (m1 + n1p - n1) + n1p * a2);
    let d2 = min(n2, n2 + a * (m2 - n2) - m2 * a2);
    let target = GdofPoint::new(d1, d2);
    Ok((
        target,
        PowerAllocation {
            a2,
            d_eta: (a - a2) * n1p,
            regime: Regime::Weak,
            target,
            d2_threshold: None,
        },
    ))
}

/// Largest `a2` at which the strong-regime `d2` stays at `n2`.
pub fn strong_d2_threshold(cfg: &AntennaConfig, alpha: Alpha) -> Rational {
    let [_, m2, _, n2] = cfg.r();
    let n1p = int(cfg.n1_prime() as i64);
    let a = alpha.value();
    let one = Rational::one();
    if a < one + n2 / n1p {
        one + ((a - one) * n1p - n2) / m2
    } else {
        a - n2 / n1p
    }
}

pub fn strong_allocation(cfg: &AntennaConfig, alpha: Alpha, a2: Rational) -> Result<(GdofPoint, PowerAllocation)> {
    cfg.require_canonical()?;
    if alpha.regime() != Regime::Strong {
        return Err(Error::WrongRegime {
            expected: "strong",
            alpha: alpha.value(),
        });
    }
    let a = alpha.value();
    if a2 < Rational::zero() || a2 > a {
        return Err(Error::A2OutOfRange {
            a2,
            lo: Rational::zero(),
            hi: a,
        });
    }
    let [m1, m2, n1, n2] = cfg.r();
    let n1p = int(cfg.n1_prime() as i64);
    let one = Rational::one();
    let (d1, d2, d_eta) = if a2 < a - n2 / n1p {
        (min(m1, (a - one) * n1p + n1 - n2), n2, n2)
    } else {
        (
            min(m1, n1 - n1p + n1p * a2),
            min(n2, (a - a2) * n1p + pos(one - a2) * (m2 - n1p)),
            (a - a2) * n1p,
        )
    };
    let target = GdofPoint::new(d1, d2);
    Ok((
        target,
        PowerAllocation {
            a2,
            d_eta,
            regime: Regime::Strong,
            target,
            d2_threshold: Some(strong_d2_threshold(cfg, alpha)),
        },
    ))
}

/// Allocation for whichever regime `alpha` falls in.
pub fn allocation(cfg: &AntennaConfig, alpha: Alpha, a2: Rational) -> Result<(GdofPoint, PowerAllocation)> {
    match alpha.regime() {
        Regime::Weak => weak_allocation(cfg, alpha, a2),
        Regime::Strong => strong_allocation(cfg, alpha, a2),
    }
}

/// Case I: the weighted outer bound is inactive and `(m1, n2)` is reachable.
/// Case II: it cuts the box and two corners `P1`, `P2` appear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseId {
    I,
    II,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseId::I => "I",
            CaseId::II => "II",
        })
    }
}

/// Case classification; the boundary counts as Case I, and so does
/// `alpha = 0`, where the weighted bound only touches `(m1, n2)`.
pub fn case_id(cfg: &AntennaConfig, alpha: Alpha) -> Result<CaseId> {
    cfg.require_canonical()?;
    if alpha.value().is_zero() {
        return Ok(CaseId::I);
    }
    let [m1, m2, n1, n2] = cfg.r();
    let n1p = int(cfg.n1_prime() as i64);
    let a = alpha.value();
    let case_one = match alpha.regime() {
        Regime::Weak => (n1 - m1) / n1p >= n2 / m2,
        Regime::Strong => a >= Rational::one() + n2 / n1p - m2 * (n1 - m1) / (n1p * n1p),
    };
    Ok(if case_one { CaseId::I } else { CaseId::II })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerPointSet {
    pub case_id: CaseId,
    /// Closed-form corner and the allocation prescribed for it.
    pub points: Vec<(GdofPoint, PowerAllocation)>,
}

pub fn corner_points(cfg: &AntennaConfig, alpha: Alpha) -> Result<CornerPointSet> {
    let case = case_id(cfg, alpha)?;
    let [m1, m2, n1, n2] = cfg.r();
    let n1p = int(cfg.n1_prime() as i64);
    let a = alpha.value();
    let one = Rational::one();

    let mut specs: Vec<(GdofPoint, Rational)> = Vec::new();
    match (alpha.regime(), case) {
        (Regime::Weak, CaseId::I) => {
            specs.push((GdofPoint::new(m1, n2), (one - n2 / m2) * a));
        }
        (Regime::Weak, CaseId::II) => {
            let p1 = GdofPoint::new(m1 - a * (m1 + n1p - n1) + (n1p / m2) * (m2 - n2) * a, n2);
            let p2 = GdofPoint::new(m1, n2 + a * (m2 - n2) - (m2 / n1p) * (n1p - n1 + m1) * a);
            specs.push((p1, (one - n2 / m2) * a));
            specs.push((p2, (one - (n1 - m1) / n1p) * a));
        }
        (Regime::Strong, CaseId::I) => {
            specs.push((GdofPoint::new(m1, n2), one - (n1 - m1) / n1p));
        }
        (Regime::Strong, CaseId::II) => {
            let p1 = GdofPoint::new(n1 + (n1p / m2) * ((a - one) * n1p - n2), n2);
            let p2 = GdofPoint::new(m1, (a - one) * n1p + (m2 / n1p) * (n1 - m1));
            specs.push((p1, one - (n2 - (a - one) * n1p) / m2));
            specs.push((p2, one - (n1 - m1) / n1p));
        }
    }
    let points = specs
        .into_iter()
        .map(|(p, a2)| allocation(cfg, alpha, a2).map(|(_, alloc)| (p, alloc)))
        .collect::<Result<_>>()?;
    Ok(CornerPointSet {
        case_id: case,
        points,
    })
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub config: AntennaConfig,
    #[serde(with = "rational_str")]
    pub alpha: Rational,
    pub case: CaseId,
    pub corners: Vec<(GdofPoint, PowerAllocation)>,
    pub pass: bool,
}

/// Checks that the convex hull of the origin, the two axis points and the
/// corner points equals the outer bound, and that every corner allocation
/// reaches its corner while meeting the achievability constraints.
pub fn verify_inner_equals_outer(cfg: &AntennaConfig, alpha: Alpha) -> Result<VerificationRecord> {
    let corners = corner_points(cfg, alpha)?;
    let fail = |constraint: String| Error::VerificationFailure {
        config: *cfg,
        alpha: alpha.value(),
        constraint,
    };
    for (p, alloc) in &corners.points {
        if alloc.target != *p {
            return Err(fail(format!("allocation a2 = {} reaches {} instead of corner {}", alloc.a2, alloc.target, p)));
        }
        conditions(cfg, alpha, alloc.a2)?
            .check(&alloc.target, alloc.d_eta)
            .map_err(|c| fail(format!("corner {p} with a2 = {}: {c}", alloc.a2)))?;
    }
    let inner = inner_region(cfg, &corners)?;
    let outer = delayed_region(cfg, alpha);
    if !inner.equals(&outer) {
        return Err(fail(format!(
            "inner hull vertices {:?} differ from outer bound vertices {:?}",
            inner.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            outer.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        )));
    }
    Ok(VerificationRecord {
        config: *cfg,
        alpha: alpha.value(),
        case: corners.case_id,
        corners: corners.points,
        pass: true,
    })
}

/// Convex hull of the origin, the single-user axis points and the corners.
pub fn inner_region(cfg: &AntennaConfig, corners: &CornerPointSet) -> Result<Region2D> {
    let mut pts = vec![
        GdofPoint::origin(),
        GdofPoint::new(int(cfg.m1().min(cfg.n1()) as i64), Rational::zero()),
        GdofPoint::new(Rational::zero(), int(cfg.m2().min(cfg.n2()) as i64)),
    ];
    pts.extend(corners.points.iter().map(|(p, _)| *p));
    Region2D::hull_of(&pts)
}

/// Whether the weighted outer bound is an irredundant facet of the region.
pub fn weighted_bound_active(cfg: &AntennaConfig, alpha: Alpha) -> bool {
    delayed_region(cfg, alpha).has_facet(&weighted_bound(cfg, alpha))
}

/// Largest `d1 + d2` found by scanning `a2` over `{k/den} ∩ [0, alpha]` with
/// `d_eta` fixed to the quantizer rate and each of `d1`, `d2` pushed to its
/// tightest constraint. Returns the sum and the first `a2` attaining it.
///
/// `d2` is also held to the single-user bound `min(m2, n2)`. The five
/// constraints alone do not imply it once the quantizer saturates at `n2`.
pub fn brute_force_sum(cfg: &AntennaConfig, alpha: Alpha, den: i64) -> Result<(Rational, Rational)> {
    let a = alpha.value();
    let mut best: Option<(Rational, Rational)> = None;
    let mut k = 0;
    loop {
        let a2 = ratio(k, den);
        if a2 > a {
            break;
        }
        if let Some(s) = sum_at(cfg, alpha, a2)? {
            if best.map_or(true, |(b, _)| s > b) {
                best = Some((s, a2));
            }
        }
        k += 1;
    }
    Ok(best.unwrap_or((Rational::zero(), Rational::zero())))
}

/// `d1 + d2` reached at one `a2` by the scan in [`brute_force_sum`], or
/// `None` if the constraints leave nothing.
pub fn sum_at(cfg: &AntennaConfig, alpha: Alpha, a2: Rational) -> Result<Option<Rational>> {
    let c = conditions(cfg, alpha, a2)?;
    let eta = quantizer_rate(cfg, alpha, a2);
    if eta > c.eta_max || eta < Rational::zero() {
        return Ok(None);
    }
    let d1 = min(c.d1_max, c.eta_plus_d1_max - eta);
    let d2 = min(
        int(cfg.m2().min(cfg.n2()) as i64),
        min(c.d2_max, c.eta_plus_d2_max - eta),
    );
    if d1 < Rational::zero() || d2 < Rational::zero() {
        return Ok(None);
    }
    Ok(Some(d1 + d2))
}
