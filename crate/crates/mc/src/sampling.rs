//! Seeded circularly-symmetric complex Gaussian draws.
//!
//! Every sample index owns two ChaCha streams under the run seed: stream
//! `2i` feeds real parts and `2i+1` imaginary parts. A sample is therefore
//! a pure function of `(seed, index)`, independent of thread scheduling.

use gdof_core::AntennaConfig;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub type CMatrix = DMatrix<Complex64>;

pub struct GaussianStream {
    re: ChaCha8Rng,
    im: ChaCha8Rng,
}

impl GaussianStream {
    pub fn new(seed: u64, index: u64) -> Self {
        let mut re = ChaCha8Rng::seed_from_u64(seed);
        let mut im = ChaCha8Rng::seed_from_u64(seed);
        re.set_stream(2 * index);
        im.set_stream(2 * index + 1);
        Self { re, im }
    }

    /// One CN(0,1) draw.
    pub fn next(&mut self) -> Complex64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x: f64 = StandardNormal.sample(&mut self.re);
        let y: f64 = StandardNormal.sample(&mut self.im);
        Complex64::new(s * x, s * y)
    }

    /// `rows x cols` matrix of CN(0,1) entries, filled column-major.
    pub fn matrix(&mut self, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| self.next())
    }
}

/// Channel matrices of one Z-IC realization: `H11` is `N1 x M1`, `H12` is
/// `N1 x M2`, `H22` is `N2 x M2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSample {
    pub h11: CMatrix,
    pub h12: CMatrix,
    pub h22: CMatrix,
}

impl ChannelSample {
    pub fn draw(cfg: &AntennaConfig, seed: u64, index: u64) -> Self {
        let (m1, m2, n1, n2) = (
            cfg.m1() as usize,
            cfg.m2() as usize,
            cfg.n1() as usize,
            cfg.n2() as usize,
        );
        let mut g = GaussianStream::new(seed, index);
        let h11 = g.matrix(n1, m1);
        let h12 = g.matrix(n1, m2);
        let h22 = g.matrix(n2, m2);
        Self { h11, h12, h22 }
    }
}
