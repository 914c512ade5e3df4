//! Slope of the mean log-det against `log2 rho` over an SNR ladder.

use gdof_core::fterm::FTermSpec;
use gdof_core::rational::to_f64;
use gdof_core::{Alpha, AntennaConfig, Rational};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{McError, Result};
use crate::logdet::{log2det, logdet_term, FTermSample};
use crate::sampling::ChannelSample;
use crate::terms::RateTerm;

pub const MIN_SAMPLES: usize = 50;

/// How channel draws relate across ladder points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    /// Sample `i` uses the same channel at every SNR. The per-sample slopes
    /// then carry no channel-to-channel offset, which shrinks the variance.
    #[default]
    Common,
    /// Fresh channels at every ladder point.
    Independent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ladder {
    points: Vec<f64>,
    fit_top: usize,
}

impl Ladder {
    /// Fits on the top half of the points, rounded up.
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.len() < 4 {
            return Err(McError::InvalidLadder(format!(
                "need at least 4 points, got {}",
                points.len()
            )));
        }
        if points.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(McError::InvalidLadder("log2(rho) values must be positive".into()));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(McError::InvalidLadder("log2(rho) values must strictly increase".into()));
        }
        let fit_top = points.len() - points.len() / 2;
        Ok(Self { points, fit_top })
    }

    pub fn with_fit_top(mut self, k: usize) -> Result<Self> {
        if k < 2 || k > self.points.len() {
            return Err(McError::InvalidLadder(format!(
                "fit must use between 2 and {} points, got {k}",
                self.points.len()
            )));
        }
        self.fit_top = k;
        Ok(self)
    }

    /// `log2 rho` in `{16, 20, ..., 40}`, fitted on the top 4 points.
    pub fn standard() -> Self {
        Self::new((4..=10).map(|k| 4.0 * k as f64).collect())
            .and_then(|l| l.with_fit_top(4))
            .expect("standard ladder is valid")
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn fit_top(&self) -> usize {
        self.fit_top
    }
}

impl Default for Ladder {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McOptions {
    pub ladder: Ladder,
    pub samples_per_point: usize,
    pub seed: u64,
    pub sampling: Sampling,
}

impl McOptions {
    pub fn new(seed: u64) -> Self {
        Self {
            ladder: Ladder::standard(),
            samples_per_point: 200,
            seed,
            sampling: Sampling::Common,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeEstimate {
    pub snr_exponents: Vec<f64>,
    /// Mean log-det in bits at each ladder point.
    pub mean_rates: Vec<f64>,
    pub slope: f64,
    pub stderr: f64,
    pub fit_top: usize,
    pub samples: usize,
    #[serde(with = "gdof_core::io::rational_str")]
    pub prediction: Rational,
}

impl SlopeEstimate {
    /// Least-squares slope through the top `k` ladder points.
    pub fn refit(&self, k: usize) -> f64 {
        let n = self.snr_exponents.len();
        let k = k.clamp(2, n);
        ls_slope(&self.snr_exponents[n - k..], &self.mean_rates[n - k..])
    }

    /// `max(5% of prediction, 0.05)`.
    pub fn tolerance(&self) -> f64 {
        (0.05 * to_f64(&self.prediction)).max(0.05)
    }

    pub fn error(&self) -> f64 {
        (self.slope - to_f64(&self.prediction)).abs()
    }

    pub fn within_tolerance(&self) -> bool {
        self.error() <= self.tolerance()
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    regression_weights(xs).iter().zip(ys).map(|(w, y)| w * y).sum()
}

/// `w` with `slope = sum w_i y_i`.
fn regression_weights(xs: &[f64]) -> Vec<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    xs.iter().map(|x| (x - mx) / sxx).collect()
}

/// Core estimator. `eval(index, log2_rho)` returns one log-det for the
/// sample drawn from stream `index`.
pub fn estimate_with<F>(opts: &McOptions, prediction: Rational, eval: F) -> Result<SlopeEstimate>
where
    F: Fn(u64, f64) -> Result<f64> + Sync,
{
    let n = opts.samples_per_point;
    if n < MIN_SAMPLES {
        return Err(McError::TooFewSamples { got: n, min: MIN_SAMPLES });
    }
    let xs = opts.ladder.points();
    let p = xs.len();
    let sampling = opts.sampling;
    let per_sample: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| {
            xs.iter()
                .enumerate()
                .map(|(i, &t)| {
                    let index = match sampling {
                        Sampling::Common => s as u64,
                        Sampling::Independent => (i * n + s) as u64,
                    };
                    eval(index, t)
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let nf = n as f64;
    let mut means = vec![0.0; p];
    for row in &per_sample {
        for (m, v) in means.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut means {
        *m /= nf;
    }

    let top = opts.ladder.fit_top();
    let w = regression_weights(&xs[p - top..]);
    let slope: f64 = w.iter().zip(&means[p - top..]).map(|(w, y)| w * y).sum();
    let stderr = match sampling {
        Sampling::Common => {
            let slopes: Vec<f64> = per_sample
                .iter()
                .map(|row| w.iter().zip(&row[p - top..]).map(|(w, y)| w * y).sum())
                .collect();
            let var = slopes.iter().map(|s| (s - slope) * (s - slope)).sum::<f64>() / (nf - 1.0);
            (var / nf).sqrt()
        }
        Sampling::Independent => {
            let var: f64 = (p - top..p)
                .zip(&w)
                .map(|(i, wi)| {
                    let v = per_sample.iter().map(|r| (r[i] - means[i]).powi(2)).sum::<f64>() / (nf - 1.0);
                    wi * wi * v / nf
                })
                .sum();
            var.sqrt()
        }
    };

    Ok(SlopeEstimate {
        snr_exponents: xs.to_vec(),
        mean_rates: means,
        slope,
        stderr,
        fit_top: top,
        samples: n,
        prediction,
    })
}

/// Slope of one of the named rate terms on channels drawn for `cfg`.
pub fn estimate_slope(
    cfg: &AntennaConfig,
    term: RateTerm,
    alpha: Alpha,
    a2: Rational,
    opts: &McOptions,
) -> Result<SlopeEstimate> {
    cfg.require_canonical()?;
    if a2 < Rational::from_integer(0) {
        return Err(McError::NegativeA2(to_f64(&a2)));
    }
    let prediction = term.prediction(cfg, alpha, a2);
    let seed = opts.seed;
    estimate_with(opts, prediction, |index, t| {
        let sample = ChannelSample::draw(cfg, seed, index);
        let (u, blocks) = term.blocks(&sample, alpha, a2, t);
        log2det(u, &blocks, t)
    })
}

/// Slope of a generic two-component term, predicted by `f`.
pub fn estimate_fterm_slope(spec: FTermSpec, opts: &McOptions) -> Result<SlopeEstimate> {
    let seed = opts.seed;
    estimate_with(opts, spec.value(), |index, t| {
        logdet_term(&FTermSample::draw(spec, seed, index), t)
    })
}
