//! High-SNR pre-log of a two-component MIMO MAC log-det.
//!
//! `log det(I_u + rho^a1 H1 H1^H + rho^a2 H2 H2^H) = f(u,(a1,u1),(a2,u2)) log rho + O(1)`
//! where `H_i` is `u x u_i` with generic entries. The stronger component
//! claims up to `u` receive dimensions first; the weaker one gets what is
//! left.

use serde::{Deserialize, Serialize};

use crate::rational::{int, pos, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FTermSpec {
    pub u: u32,
    #[serde(with = "crate::io::rational_str")]
    pub a1: Rational,
    pub u1: u32,
    #[serde(with = "crate::io::rational_str")]
    pub a2: Rational,
    pub u2: u32,
}

impl FTermSpec {
    pub fn new(u: u32, (a1, u1): (Rational, u32), (a2, u2): (Rational, u32)) -> Self {
        Self { u, a1, u1, a2, u2 }
    }

    pub fn value(&self) -> Rational {
        f_term(self)
    }
}

/// `min(u,u_s) a_s^+ + min((u-u_s)^+, u_w) a_w^+` with `s` the component of
/// larger exponent (component 1 on ties).
pub fn f_term(spec: &FTermSpec) -> Rational {
    let ((as_, us), (aw, uw)) = if spec.a1 >= spec.a2 {
        ((spec.a1, spec.u1), (spec.a2, spec.u2))
    } else {
        ((spec.a2, spec.u2), (spec.a1, spec.u1))
    };
    let first = spec.u.min(us);
    let rest = spec.u.saturating_sub(us).min(uw);
    int(first as i64) * pos(as_) + int(rest as i64) * pos(aw)
}

/// Shorthand for `f_term(&FTermSpec::new(u, c1, c2))`.
pub fn f(u: u32, c1: (Rational, u32), c2: (Rational, u32)) -> Rational {
    f_term(&FTermSpec::new(u, c1, c2))
}
