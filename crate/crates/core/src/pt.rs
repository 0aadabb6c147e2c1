//! Second-order stationary perturbation theory for `k = 2`, `σ = +1`.
//!
//! The Hamiltonian is split as `H = H_0 + δ H_1` with
//! `H_0 = ½(p² + y² + 1)`, whose levels are `E_l = l + 1`, and
//! `H_1 = -(3/2) y² - y⁴ + (δ/2) y⁶`. `H_1` keeps its own `δ` term, and
//! "order" counts only the explicit prefactors. Intermediate sums run over
//! `l, m = 1..=N`.

use rug::{Float, Rational};
use thiserror::Error;

use crate::model::{ModelParams, Sign};
use crate::oscillator::{polynomial_matrix, Assembly, SymMatrix};
use crate::rrm::{compare_exact, ComparisonReport, RrmError};
use crate::specfun::{PrecisionContext, GUARD_BITS};

/// Highest power of `y` in `H_1`; `⟨l|H_1|0⟩ = 0` for `l` above it.
pub const PERTURBATION_DEGREE: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PtError {
    #[error("truncation must be at least 1")]
    EmptyTruncation,
    #[error("expansion parameter must be nonnegative")]
    NegativeDelta,
    #[error(transparent)]
    Rrm(#[from] RrmError),
}

/// `δ = ε⁴`, the expansion parameter of the quartic family.
pub fn delta_for_epsilon(epsilon: &Rational) -> Rational {
    let sq = Rational::from(epsilon.square_ref());
    Rational::from(sq.square_ref())
}

/// Coefficients of `H_1` on `y², y⁴, y⁶`.
pub fn perturbation_terms(delta: &Rational) -> Vec<(u32, Rational)> {
    vec![
        (2, Rational::from((-3, 2))),
        (4, Rational::from(-1)),
        (6, Rational::from(delta / 2u32)),
    ]
}

/// `⟨l|H_1|m⟩` for `l, m = 0..=n`.
pub fn perturbation_matrix(delta: &Rational, n: usize, prec: u32) -> SymMatrix {
    polynomial_matrix(&perturbation_terms(delta), &Assembly::Full.basis(n + 1), prec).with_label("H1")
}

/// Ground-state energy through second order.
#[derive(Debug, Clone, PartialEq)]
pub struct PtEnergy {
    pub delta: Rational,
    pub truncation: usize,
    /// `E^{(1)} = ⟨0|H_1|0⟩`.
    pub first_order: Float,
    /// `E^{(2)} = Σ_{l=1..N} |⟨l|H_1|0⟩|² / (-l)`.
    pub second_order: Float,
    /// `1 + δ E^{(1)} + δ² E^{(2)}`.
    pub energy: Float,
    pub precision: PrecisionContext,
}

/// Energy and state at second order.
#[derive(Debug, Clone, PartialEq)]
pub struct PTResult {
    pub energy: PtEnergy,
    /// Perturbed ground state on `b_0, ..., b_N`, unit weight on `b_0`.
    pub state_coeffs: Vec<Float>,
    /// `‖e_0(δ)‖` over the truncated basis.
    pub norm: Float,
    /// `|‖e_0(δ)‖ − 1|`.
    pub norm_deviation: Float,
    /// `|‖e_0(δ)‖² − 1|`, the other reading of the deviation.
    pub norm_sq_deviation: Float,
}

fn check(delta: &Rational, n: usize) -> Result<(), PtError> {
    if n == 0 {
        return Err(PtError::EmptyTruncation);
    }
    if *delta < 0 {
        return Err(PtError::NegativeDelta);
    }
    Ok(())
}

fn energy_from(h: &SymMatrix, delta: &Rational, n: usize, ctx: &PrecisionContext) -> PtEnergy {
    let wp = h.prec();
    let first_order = h.get(0, 0).clone();
    let mut second_order = Float::with_val(wp, 0);
    for l in 1..=n {
        let h_l0 = h.get(l, 0);
        if h_l0.is_zero() {
            continue;
        }
        second_order -= Float::with_val(wp, h_l0 * h_l0) / l as u32;
    }
    let d = Float::with_val(wp, delta);
    let mut energy = Float::with_val(wp, 1);
    energy += &d * &first_order;
    energy += Float::with_val(wp, d.square_ref()) * &second_order;
    PtEnergy {
        delta: delta.clone(),
        truncation: n,
        first_order: Float::with_val(ctx.bits, first_order),
        second_order: Float::with_val(ctx.bits, second_order),
        energy: Float::with_val(ctx.bits, energy),
        precision: *ctx,
    }
}

/// `E_0(δ)` with the second-order sum truncated at `n`.
pub fn pt_energy(delta: &Rational, n: usize, ctx: &PrecisionContext) -> Result<PtEnergy, PtError> {
    check(delta, n)?;
    let h = perturbation_matrix(delta, n, ctx.bits + GUARD_BITS);
    Ok(energy_from(&h, delta, n, ctx))
}

/// `e_0(δ)` through second order:
///
/// ```text
/// v_0 = 1
/// v_l = -δ h_l0 / l + δ² Σ_{m=1..N} h_lm h_m0 / (l m) - δ² E^{(1)} h_l0 / l²
/// ```
pub fn pt_state(delta: &Rational, n: usize, ctx: &PrecisionContext) -> Result<PTResult, PtError> {
    check(delta, n)?;
    let wp = ctx.bits + GUARD_BITS;
    let h = perturbation_matrix(delta, n, wp);
    let energy = energy_from(&h, delta, n, ctx);
    let d = Float::with_val(wp, delta);
    let d2 = Float::with_val(wp, d.square_ref());
    let e1 = h.get(0, 0).clone();

    let mut coeffs = vec![Float::with_val(wp, 0); n + 1];
    coeffs[0] = Float::with_val(wp, 1);
    for (l, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let h_l0 = h.get(l, 0);
        let mut v = Float::with_val(wp, 0);
        if !h_l0.is_zero() {
            v -= Float::with_val(wp, &d * h_l0) / l as u32;
            let l_sq = (l * l) as u32;
            v -= Float::with_val(wp, &d2 * &e1) * h_l0 / l_sq;
        }
        let mut double = Float::with_val(wp, 0);
        for m in 1..=n.min(PERTURBATION_DEGREE) {
            let h_lm = h.get(l, m);
            if h_lm.is_zero() {
                continue;
            }
            double += Float::with_val(wp, h_lm * h.get(m, 0)) / (l * m) as u32;
        }
        v += &d2 * &double;
        *slot = v;
    }

    let mut norm_sq = Float::with_val(wp, 0);
    for c in &coeffs {
        norm_sq += c * c;
    }
    let norm = Float::with_val(wp, norm_sq.sqrt_ref());
    let norm_deviation = Float::with_val(ctx.bits, &norm - 1u32).abs();
    let norm_sq_deviation = Float::with_val(ctx.bits, &norm_sq - 1u32).abs();
    Ok(PTResult {
        energy,
        state_coeffs: coeffs.into_iter().map(|c| Float::with_val(ctx.bits, c)).collect(),
        norm: Float::with_val(ctx.bits, norm),
        norm_deviation,
        norm_sq_deviation,
    })
}

/// Perturbation theory and Rayleigh-Ritz at the same truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct PtComparison {
    pub epsilon: Rational,
    pub truncation: usize,
    pub pt: PTResult,
    pub rrm: ComparisonReport,
}

impl PtComparison {
    pub fn pt_energy(&self) -> &Float {
        &self.pt.energy.energy
    }

    pub fn rrm_energy(&self) -> &Float {
        &self.rrm.lambda0
    }

    pub fn pt_norm_deviation(&self) -> &Float {
        &self.pt.norm_deviation
    }

    /// `|1 − ‖c_exact‖|` over `n ≤ N`, the truncated-norm deviation of the
    /// Fourier coefficients the Ritz vector approximates.
    pub fn rrm_norm_deviation(&self) -> Float {
        let p = self.rrm.partial_norm_exact.prec();
        Float::with_val(p, 1u32 - &self.rrm.partial_norm_exact).abs()
    }
}

/// PT at `δ = ε⁴` against the Rayleigh-Ritz run of the `k = 2` family.
pub fn pt_vs_rrm(epsilon: &Rational, n: usize, ctx: &PrecisionContext) -> Result<PtComparison, PtError> {
    let delta = delta_for_epsilon(epsilon);
    let pt = pt_state(&delta, n.max(1), ctx)?;
    let params = ModelParams::new(2, Sign::Plus, epsilon.clone()).map_err(|_| PtError::NegativeDelta)?;
    let rrm = compare_exact(&params, n, ctx)?;
    Ok(PtComparison {
        epsilon: epsilon.clone(),
        truncation: n,
        pt,
        rrm,
    })
}
