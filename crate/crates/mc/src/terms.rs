//! The five log-det rate terms of the two receivers' multiple-access
//! channels under the delayed-CSIT scheme.
//!
//! Transmit covariances: common message `I_{M2}` at full power, user 1
//! `I_{M1}`, user 2's private message `rho^{-A2} I_{M2}`. Receiver 2 also sees
//! the quantized interference `eta = sqrt(rho^alpha) H12 x2p`.

use std::fmt;
use std::str::FromStr;

use gdof_core::rational::{int, pos, to_f64};
use gdof_core::{f, Alpha, AntennaConfig, Rational};
use serde::{Deserialize, Serialize};

use crate::logdet::Block;
use crate::sampling::{CMatrix, ChannelSample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateTerm {
    /// Common message at receiver 1 given user 1's signal:
    /// `log|I + rho^alpha H12 H12^H|`.
    CommonAtR1,
    /// Common message at receiver 2 given the private signal:
    /// `log|I + rho H22 H22^H|`.
    CommonAtR2,
    /// Common plus user-1 message at receiver 1:
    /// `log|I + rho^alpha H12 H12^H + rho H11 H11^H|`.
    CommonPlusPrivate1,
    /// User 2's private message at receiver 2 given the common message:
    /// `log|I + rho^{1-A2} H22^H H22 + rho^{alpha-A2} H12^H H12|`.
    Private2,
    /// Common plus private message at receiver 2, from `[y2; eta]`.
    CommonPlusPrivate2,
}

impl RateTerm {
    pub const ALL: [RateTerm; 5] = [
        RateTerm::CommonAtR1,
        RateTerm::CommonAtR2,
        RateTerm::CommonPlusPrivate1,
        RateTerm::Private2,
        RateTerm::CommonPlusPrivate2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RateTerm::CommonAtR1 => "common-r1",
            RateTerm::CommonAtR2 => "common-r2",
            RateTerm::CommonPlusPrivate1 => "common-plus-private-r1",
            RateTerm::Private2 => "private-r2",
            RateTerm::CommonPlusPrivate2 => "common-plus-private-r2",
        }
    }

    /// Predicted pre-log of the term.
    pub fn prediction(&self, cfg: &AntennaConfig, alpha: Alpha, a2: Rational) -> Rational {
        let a = alpha.value();
        let (m1, m2, n1, n2) = (cfg.m1(), cfg.m2(), cfg.n1(), cfg.n2());
        match self {
            RateTerm::CommonAtR1 => a * int(m2.min(n1) as i64),
            RateTerm::CommonAtR2 => int(m2.min(n2) as i64),
            RateTerm::CommonPlusPrivate1 => f(n1, (a, m2), (int(1), m1)),
            RateTerm::Private2 => f(m2, (int(1) - a2, n2), (a - a2, n1)),
            RateTerm::CommonPlusPrivate2 => {
                pos(a - a2) * int(cfg.n1_prime() as i64) + int(m2.min(n2) as i64)
            }
        }
    }

    /// Receive dimension and blocks of the log-det argument at `rho = 2^log2_rho`.
    pub fn blocks(&self, s: &ChannelSample, alpha: Alpha, a2: Rational, log2_rho: f64) -> (usize, Vec<Block>) {
        let a = to_f64(&alpha.value());
        let a2 = to_f64(&a2);
        match self {
            RateTerm::CommonAtR1 => (s.h12.nrows(), vec![Block::new(a, s.h12.clone())]),
            RateTerm::CommonAtR2 => (s.h22.nrows(), vec![Block::new(1.0, s.h22.clone())]),
            RateTerm::CommonPlusPrivate1 => (
                s.h12.nrows(),
                vec![Block::new(a, s.h12.clone()), Block::new(1.0, s.h11.clone())],
            ),
            RateTerm::Private2 => (
                s.h22.ncols(),
                vec![
                    Block::new(1.0 - a2, s.h22.adjoint()),
                    Block::new(a - a2, s.h12.adjoint()),
                ],
            ),
            RateTerm::CommonPlusPrivate2 => {
                // det(I + G G^H) = det(I + G^H G) with G the stacked channel
                // from (x_c, x_2p) to [y2; eta]. Columns of G^H split into the
                // y2 part, [H22^H; rho^{-A2/2} H22^H] at rho^1, and the eta
                // part, [0; H12^H] at rho^{alpha-A2}.
                let m2 = s.h22.ncols();
                let h22h = s.h22.adjoint();
                let mut c1 = CMatrix::zeros(2 * m2, s.h22.nrows());
                c1.rows_mut(0, m2).copy_from(&h22h);
                c1.rows_mut(m2, m2)
                    .copy_from(&(h22h * num_complex::Complex64::new((-a2 * log2_rho / 2.0).exp2(), 0.0)));
                let mut c2 = CMatrix::zeros(2 * m2, s.h12.nrows());
                c2.rows_mut(m2, m2).copy_from(&s.h12.adjoint());
                (2 * m2, vec![Block::new(1.0, c1), Block::new(a - a2, c2)])
            }
        }
    }
}

impl fmt::Display for RateTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RateTerm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RateTerm::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = RateTerm::ALL.iter().map(|t| t.name()).collect();
                format!("unknown rate term {s:?}; expected one of {}", names.join(", "))
            })
    }
}
