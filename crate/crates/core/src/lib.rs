//! Exact generalized-degrees-of-freedom (GDoF) machinery for the two-user
//! MIMO Z-interference channel with delayed channel state at the
//! transmitters.
//!
//! All region arithmetic is done in exact rationals, so regions can be
//! compared for equality rather than within a tolerance.
//!
//! ```
//! use gdof_core::{delayed_region, AntennaConfig, Alpha};
//!
//! let cfg: AntennaConfig = "2,2,3,2".parse().unwrap();
//! let alpha: Alpha = "0.4".parse().unwrap();
//! let region = delayed_region(&cfg, alpha);
//! assert_eq!(region.vertices().len(), 5);
//! ```

pub mod achievability;
pub mod alpha;
pub mod antenna;
pub mod error;
pub mod fterm;
pub mod geometry;
pub mod io;
pub mod rank_oracle;
pub mod rational;
pub mod regions;
pub mod svg;

pub use achievability::{
    corner_points, quantizer_rate, strong_allocation, verify_inner_equals_outer, weak_allocation,
    AchievabilityConditions, CaseId, CornerPointSet, PowerAllocation,
};
pub use alpha::{Alpha, Regime};
pub use antenna::AntennaConfig;
pub use error::{Error, Result};
pub use fterm::{f, f_term, FTermSpec};
pub use geometry::{GdofPoint, HalfPlane, Region2D};
pub use rank_oracle::{argmax_g, g_of_r, loss_decomposition, RankSweep};
pub use rational::{parse_rational, AlphaGrid, Rational};
pub use regions::{
    delayed_region, dof_region_delayed, perfect_csit_region, perfect_sum_gdof,
    sum_gdof_closed_form, tin_region, Csit,
};
