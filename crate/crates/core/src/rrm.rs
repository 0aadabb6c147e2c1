//! Rayleigh-Ritz harness.
//!
//! A run at truncation `N` projects `H` onto the oscillator states
//! `b_0, ..., b_N` (dimension `N + 1`) and takes the smallest eigenpair.
//! The family is reflection symmetric, so by default the two parity
//! sectors are solved separately and the lower of the two ground values is
//! reported, which is the smallest eigenvalue of the full projection.

use rug::Float;
use thiserror::Error;

use crate::eig::{apply_sign_convention, default_tolerance, eigen_smallest, EigError, SpectralPair};
use crate::exact::{normalized_coefficients, ExactError};
use crate::model::{ModelParams, Sign};
use crate::oscillator::{hamiltonian_block, Assembly};
use crate::specfun::{PrecisionContext, SpecfunError};

/// Largest truncation accepted.
pub const MAX_TRUNCATION: usize = 350;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RrmError {
    #[error("truncation N = {0} is below the minimum of 2")]
    TruncationTooSmall(usize),
    #[error("truncation N = {n} exceeds the cap of {cap}")]
    TruncationTooLarge { n: usize, cap: usize },
    #[error("truncations must be strictly ascending")]
    NotAscending,
    #[error("the studied branch has sigma = +1")]
    NegativeSigma,
    #[error(transparent)]
    Eig(#[from] EigError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Precision(#[from] SpecfunError),
}

/// How the projected Hamiltonian is diagonalised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub enum Solver {
    /// Even and odd sectors separately, keeping the lower ground value.
    #[default]
    ParitySplit,
    /// The full `(N+1) × (N+1)` matrix in one piece.
    FullMatrix,
}

/// Working precision used when none is given: 256 bits up to `N = 200`,
/// 320 bits beyond.
pub fn default_bits(n: usize) -> u32 {
    if n <= 200 {
        256
    } else {
        320
    }
}

/// Smallest eigenpair of one block, lifted back to the full basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorSolution {
    pub sector: Assembly,
    pub pair: SpectralPair,
    /// The eigenvector on `b_0, ..., b_N`, zeros outside the sector.
    pub embedded: Vec<Float>,
    pub tolerance: Float,
    /// `‖H‖∞` of the block.
    pub h_norm: Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RRMResult {
    pub params: ModelParams,
    /// Truncation label `N`; the basis is `b_0, ..., b_N`.
    pub truncation: usize,
    pub lambda0: Float,
    /// `⟨b_n, e_0⟩` for `n = 0..=N`.
    pub coeffs: Vec<Float>,
    /// Sector holding the reported ground value.
    pub sector: Assembly,
    pub residual: Float,
    pub tolerance: Float,
    pub noise_floor: Float,
    /// `‖H‖∞` of the block holding `lambda0`.
    pub h_norm: Float,
    pub precision: PrecisionContext,
    /// Per-sector ground pairs, the even sector first.
    pub sectors: Vec<SectorSolution>,
}

impl RRMResult {
    pub fn dim(&self) -> usize {
        self.truncation + 1
    }

    pub fn sector_solution(&self, sector: Assembly) -> Option<&SectorSolution> {
        self.sectors.iter().find(|s| s.sector == sector)
    }

    /// Ground-state candidate of the even sector, where the exact ground
    /// state lives.
    pub fn even_coeffs(&self) -> &[Float] {
        match self.sector_solution(Assembly::Even) {
            Some(s) => &s.embedded,
            None => &self.coeffs,
        }
    }

    pub fn below_noise_floor(&self) -> bool {
        Float::with_val(self.lambda0.prec(), self.lambda0.abs_ref()) <= self.noise_floor
    }

    /// `2^{-53} ‖H‖∞`: the size of rounding errors in an eigenvalue when
    /// the matrix is built and diagonalised in IEEE double precision.
    pub fn double_precision_noise(&self) -> Float {
        Float::with_val(self.h_norm.prec(), &self.h_norm) >> 53i32
    }

    /// Largest `|coeff|` at odd `n` in the reported vector.
    pub fn max_odd_coeff(&self) -> Float {
        max_abs(self.coeffs.iter().skip(1).step_by(2), self.precision.bits)
    }
}

fn max_abs<'a>(values: impl Iterator<Item = &'a Float>, prec: u32) -> Float {
    let mut m = Float::with_val(prec, 0);
    for v in values {
        let a = Float::with_val(prec, v.abs_ref());
        if a > m {
            m = a;
        }
    }
    m
}

fn check_truncation(params: &ModelParams, n: usize) -> Result<(), RrmError> {
    if params.sigma() != Sign::Plus {
        return Err(RrmError::NegativeSigma);
    }
    if n < 2 {
        return Err(RrmError::TruncationTooSmall(n));
    }
    if n > MAX_TRUNCATION {
        return Err(RrmError::TruncationTooLarge { n, cap: MAX_TRUNCATION });
    }
    Ok(())
}

fn solve_sector(params: &ModelParams, n: usize, sector: Assembly, ctx: &PrecisionContext) -> Result<SectorSolution, RrmError> {
    let dim = n + 1;
    let h = hamiltonian_block(params, dim, sector, ctx);
    let tolerance = default_tolerance(&h, ctx);
    let h_norm = h.norm_inf();
    let pair = eigen_smallest(&h, ctx, &tolerance)?;
    let mut embedded = vec![Float::with_val(ctx.bits, 0); dim];
    for (value, &state) in pair.vector.iter().zip(h.basis()) {
        embedded[state] = value.clone();
    }
    apply_sign_convention(&mut embedded, ctx.bits);
    Ok(SectorSolution { sector, pair, embedded, tolerance, h_norm })
}

/// Rayleigh-Ritz ground pair at truncation `n` using the default solver.
pub fn run_point(params: &ModelParams, n: usize, ctx: &PrecisionContext) -> Result<RRMResult, RrmError> {
    run_point_with(params, n, ctx, Solver::ParitySplit)
}

pub fn run_point_with(params: &ModelParams, n: usize, ctx: &PrecisionContext, solver: Solver) -> Result<RRMResult, RrmError> {
    check_truncation(params, n)?;
    let sectors = match solver {
        Solver::ParitySplit => vec![
            solve_sector(params, n, Assembly::Even, ctx)?,
            solve_sector(params, n, Assembly::Odd, ctx)?,
        ],
        Solver::FullMatrix => vec![solve_sector(params, n, Assembly::Full, ctx)?],
    };
    let best = sectors
        .iter()
        .min_by(|a, b| a.pair.value.partial_cmp(&b.pair.value).expect("eigenvalues are finite"))
        .expect("at least one sector");
    Ok(RRMResult {
        params: params.clone(),
        truncation: n,
        lambda0: best.pair.value.clone(),
        coeffs: best.embedded.clone(),
        sector: best.sector,
        residual: best.pair.residual.clone(),
        tolerance: best.tolerance.clone(),
        noise_floor: best.pair.noise_floor.clone(),
        h_norm: best.h_norm.clone(),
        precision: *ctx,
        sectors: sectors.clone(),
    })
}

/// One run per truncation in `dims`, which must be strictly ascending.
pub fn sweep(params: &ModelParams, dims: &[usize], ctx: &PrecisionContext) -> Result<Vec<RRMResult>, RrmError> {
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(RrmError::NotAscending);
    }
    dims.iter().map(|&n| run_point(params, n, ctx)).collect()
}

/// Exact and Ritz coefficient at one even index.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub n: usize,
    pub exact: Float,
    pub approx: Float,
}

impl ComparisonRow {
    pub fn abs_error(&self) -> Float {
        Float::with_val(self.exact.prec(), &self.exact - &self.approx).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub params: ModelParams,
    pub truncation: usize,
    pub rows: Vec<ComparisonRow>,
    /// `|‖c_exact‖ − ‖c_approx‖|`, both norms over `n ≤ N`.
    pub norm_error: Float,
    /// `|1 − ‖c_approx‖|`, the alternative reading of the norm error.
    pub norm_error_unit: Float,
    /// `‖c_exact‖` over `n ≤ N`.
    pub partial_norm_exact: Float,
    /// `‖c_approx‖` over `n ≤ N`.
    pub partial_norm_approx: Float,
    pub lambda0: Float,
    /// Sector of `lambda0`; the rows always use the even-sector vector.
    pub lambda0_sector: Assembly,
    /// Largest odd-index Ritz entry of the even-sector vector.
    pub max_odd_approx: Float,
    pub residual: Float,
    pub noise_floor: Float,
    pub precision: PrecisionContext,
}

impl ComparisonReport {
    pub fn row(&self, n: usize) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

fn norm(values: &[Float], prec: u32) -> Float {
    let mut s = Float::with_val(prec, 0);
    for v in values {
        s += v * v;
    }
    s.sqrt()
}

/// Pairs the even-index Ritz coefficients at truncation `n` with the exact
/// normalized Fourier coefficients.
pub fn compare_exact(params: &ModelParams, n: usize, ctx: &PrecisionContext) -> Result<ComparisonReport, RrmError> {
    let run = run_point(params, n, ctx)?;
    compare_with_run(&run, ctx)
}

/// As [`compare_exact`], reusing an existing run.
pub fn compare_with_run(run: &RRMResult, ctx: &PrecisionContext) -> Result<ComparisonReport, RrmError> {
    let n = run.truncation;
    let exact = normalized_coefficients(&run.params, n + 1, ctx)?;
    let approx = run.even_coeffs();
    let wp = ctx.bits;
    let rows = (0..=n)
        .step_by(2)
        .map(|i| ComparisonRow {
            n: i,
            exact: exact.normalized[i].clone(),
            approx: approx[i].clone(),
        })
        .collect();
    let partial_norm_exact = norm(&exact.normalized, wp);
    let partial_norm_approx = norm(approx, wp);
    let norm_error = Float::with_val(wp, &partial_norm_exact - &partial_norm_approx).abs();
    let norm_error_unit = Float::with_val(wp, 1u32 - &partial_norm_approx).abs();
    let even = run.sector_solution(Assembly::Even);
    Ok(ComparisonReport {
        params: run.params.clone(),
        truncation: n,
        rows,
        norm_error,
        norm_error_unit,
        partial_norm_exact,
        partial_norm_approx,
        lambda0: run.lambda0.clone(),
        lambda0_sector: run.sector,
        max_odd_approx: max_abs(approx.iter().skip(1).step_by(2), wp),
        residual: even.map_or_else(|| run.residual.clone(), |s| s.pair.residual.clone()),
        noise_floor: run.noise_floor.clone(),
        precision: *ctx,
    })
}
