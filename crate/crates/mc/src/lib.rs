//! Monte Carlo check that finite-SNR log-det rates grow with the pre-log
//! slopes the exact GDoF calculus predicts.
//!
//! ```
//! use gdof_core::rational::{int, ratio};
//! use gdof_core::FTermSpec;
//! use gdof_mc::{estimate_fterm_slope, McOptions};
//!
//! let spec = FTermSpec::new(3, (ratio(3, 5), 4), (int(1), 2));
//! let mut opts = McOptions::new(1);
//! opts.samples_per_point = 50;
//! let est = estimate_fterm_slope(spec, &opts).unwrap();
//! assert!(est.within_tolerance(), "slope {} vs 2.6", est.slope);
//! ```

pub mod error;
pub mod estimate;
pub mod logdet;
pub mod sampling;
pub mod terms;

pub use error::{McError, Result};
pub use estimate::{
    estimate_fterm_slope, estimate_slope, estimate_with, ls_slope, Ladder, McOptions, Sampling,
    SlopeEstimate, MIN_SAMPLES,
};
pub use logdet::{log2det, logdet_term, Block, FTermSample};
pub use sampling::{CMatrix, ChannelSample, GaussianStream};
pub use terms::RateTerm;
