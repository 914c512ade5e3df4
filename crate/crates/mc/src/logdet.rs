//! `log2 det(I_u + sum_i rho^{e_i} B_i B_i^H)` for widely separated exponents.
//!
//! Forming the sum and factoring it directly loses the unit-scale part of
//! the spectrum once `rho^{e_max} * eps` exceeds one (about `2^52`). Instead
//! each block, strongest first, is rotated by a unitary so that it occupies
//! only the leading rows not yet claimed by a stronger block. The resulting
//! matrix is graded: its diagonal blocks scale like `rho^{e_1}, rho^{e_2}, ...,
//! 1` and the couplings are no larger than the geometric mean of the
//! adjacent scales. After diagonal equilibration the Cholesky factor then
//! carries only the O(1) condition number of the channel itself.

use gdof_core::rational::to_f64;
use gdof_core::FTermSpec;
use nalgebra::Cholesky;
use num_complex::Complex64;

use crate::error::{McError, Result};
use crate::sampling::{CMatrix, GaussianStream};

/// One term `rho^exponent * B B^H` of the log-det argument.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub exponent: f64,
    pub matrix: CMatrix,
}

impl Block {
    pub fn new(exponent: f64, matrix: CMatrix) -> Self {
        Self { exponent, matrix }
    }
}

/// `log2 det(I_u + sum rho^{e_i} B_i B_i^H)` with `rho = 2^log2_rho`.
///
/// Every block must have `u` rows.
pub fn log2det(u: usize, blocks: &[Block], log2_rho: f64) -> Result<f64> {
    for b in blocks {
        assert_eq!(b.matrix.nrows(), u, "block has {} rows, expected {u}", b.matrix.nrows());
    }
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by(|&i, &j| blocks[j].exponent.total_cmp(&blocks[i].exponent));
    let mut mats: Vec<(f64, CMatrix)> = order
        .iter()
        .map(|&i| (blocks[i].exponent, blocks[i].matrix.clone()))
        .collect();

    let mut offset = 0;
    for i in 0..mats.len() {
        let m = u - offset;
        let k = mats[i].1.ncols();
        if m == 0 {
            break;
        }
        if k == 0 {
            continue;
        }
        // Full m x m unitary whose leading columns span the block's rows.
        let mut aug = CMatrix::zeros(m, k + m);
        aug.columns_mut(0, k).copy_from(&mats[i].1.rows(offset, m));
        aug.columns_mut(k, m).fill_with_identity();
        let qh = aug.qr().q().adjoint();
        for (_, mat) in mats.iter_mut().skip(i) {
            let rotated = &qh * mat.rows(offset, m);
            mat.rows_mut(offset, m).copy_from(&rotated);
        }
        let r = m.min(k);
        mats[i].1.rows_mut(offset + r, m - r).fill(Complex64::new(0.0, 0.0));
        offset += r;
    }

    let mut a = CMatrix::identity(u, u);
    for (e, mat) in &mats {
        let g = mat * Complex64::new((e * log2_rho / 2.0).exp2(), 0.0);
        a += &g * g.adjoint();
    }
    let a = (&a + a.adjoint()) * Complex64::new(0.5, 0.0);

    let d: Vec<f64> = (0..u).map(|i| a[(i, i)].re.sqrt()).collect();
    if d.iter().any(|x| !x.is_finite() || *x <= 0.0) {
        return Err(McError::NumericalFailure(format!(
            "non-finite diagonal at log2(rho) = {log2_rho}"
        )));
    }
    let s = CMatrix::from_fn(u, u, |i, j| a[(i, j)] / (d[i] * d[j]));
    let chol = Cholesky::new(s).ok_or_else(|| {
        McError::NumericalFailure(format!(
            "matrix not positive definite at log2(rho) = {log2_rho}"
        ))
    })?;
    let l = chol.l_dirty();
    let total: f64 = (0..u).map(|i| 2.0 * d[i].log2() + 2.0 * l[(i, i)].re.log2()).sum();
    if !total.is_finite() {
        return Err(McError::NumericalFailure(format!(
            "non-finite log-det at log2(rho) = {log2_rho}"
        )));
    }
    Ok(total)
}

/// Random matrices for a generic `f(u,(a1,u1),(a2,u2))` term: `H1` is
/// `u x u1`, `H2` is `u x u2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FTermSample {
    pub spec: FTermSpec,
    pub h1: CMatrix,
    pub h2: CMatrix,
}

impl FTermSample {
    pub fn draw(spec: FTermSpec, seed: u64, index: u64) -> Self {
        let mut g = GaussianStream::new(seed, index);
        let h1 = g.matrix(spec.u as usize, spec.u1 as usize);
        let h2 = g.matrix(spec.u as usize, spec.u2 as usize);
        Self { spec, h1, h2 }
    }

    /// All-zero channels; the log-det is then exactly zero.
    pub fn zero(spec: FTermSpec) -> Self {
        Self {
            spec,
            h1: CMatrix::zeros(spec.u as usize, spec.u1 as usize),
            h2: CMatrix::zeros(spec.u as usize, spec.u2 as usize),
        }
    }
}

/// `log2 det(I + rho^{a1} H1 H1^H + rho^{a2} H2 H2^H)` at `rho = 2^log2_rho`.
pub fn logdet_term(sample: &FTermSample, log2_rho: f64) -> Result<f64> {
    let blocks = [
        Block::new(to_f64(&sample.spec.a1), sample.h1.clone()),
        Block::new(to_f64(&sample.spec.a2), sample.h2.clone()),
    ];
    log2det(sample.spec.u as usize, &blocks, log2_rho)
}
