//! The exact ground state `Ω = e^S` of the family (σ = +1) expanded in the
//! Hermite-function basis.
//!
//! With the weight `w(y) = e^{-δ y^{2k}/(2k)}` and full-line moments
//! `J_p = ∫ y^p w dy`,
//!
//! ```text
//! I_n = ⟨b_n, Ω⟩ = π^{-1/4} (2^n n!)^{-1/2} n! Σ_{m=0}^{n/2} (-1)^{n/2-m} 2^{2m} J_{2m} / ((2m)! (n/2-m)!)
//! J_{2m} = (1/k) (2k/δ)^{(2m+1)/(2k)} Γ((2m+1)/(2k)),     J_{p+2k-1} = (p/δ) J_{p-1}
//! ```
//!
//! for even `n`; odd coefficients vanish identically. The normalization is
//! `‖Ω‖² = ∫ e^{-δ y^{2k}/k + y²} dy`.

use std::sync::OnceLock;

use rug::float::Constant;
use rug::{Float, Integer, Rational};
use thiserror::Error;

use crate::model::{ModelParams, Sign};
use crate::specfun::{
    airy_ai_bi, bessel_i, gamma_ratio, hyp1f3, log2_abs, quad_de, PrecisionContext, SpecfunError, GUARD_BITS,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("closed forms need sigma = +1")]
    NegativeSigma,
    #[error("no closed-form norm for k = {0}")]
    UnsupportedK(u32),
    #[error("harmonic limit has no anharmonic ground state")]
    HarmonicLimit,
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error("cancellation in coefficient {n} exceeds {bits} working bits")]
    Cancellation { n: usize, bits: u32 },
    #[error("printed prefactor disagrees with the moment form at k={k}, epsilon={epsilon}, n={n}")]
    PrefactorMismatch { k: u32, epsilon: String, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum NormMethod {
    Closed,
    Quadrature,
}

/// Exact Fourier data of the ground state for `n < count`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactGroundState {
    pub params: ModelParams,
    /// `I_n`, with structural zeros at odd `n`.
    pub unnormalized: Vec<Float>,
    pub norm_sq: Float,
    /// `c_n = I_n / ‖Ω‖`.
    pub normalized: Vec<Float>,
    /// `Σ_{n<count} c_n²`.
    pub partial_norm_sq: Float,
}

impl ExactGroundState {
    pub fn len(&self) -> usize {
        self.normalized.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normalized.is_empty()
    }

    /// `1 - Σ c_n²`, the weight outside the computed coefficients.
    pub fn deficit(&self) -> Float {
        Float::with_val(self.partial_norm_sq.prec(), 1u32 - &self.partial_norm_sq)
    }

    /// `Σ_{n<count} c_n²` for a shorter prefix.
    pub fn partial_norm_sq_upto(&self, count: usize) -> Float {
        let prec = self.partial_norm_sq.prec();
        let mut s = Float::with_val(prec, 0);
        for c in self.normalized.iter().take(count) {
            s += c * c;
        }
        s
    }
}

fn check_params(params: &ModelParams) -> Result<(), ExactError> {
    if params.sigma() != Sign::Plus {
        return Err(ExactError::NegativeSigma);
    }
    if params.is_harmonic_limit() {
        return Err(ExactError::HarmonicLimit);
    }
    Ok(())
}

/// `M_p = ∫_0^∞ y^p e^{-δ y^{2k}/(2k)} dy = (1/(2k)) (2k/δ)^{(p+1)/(2k)} Γ((p+1)/(2k))`.
pub fn moment(params: &ModelParams, p: u32, ctx: &PrecisionContext) -> Result<Float, ExactError> {
    check_params(params)?;
    let wp = ctx.guarded_bits();
    let k = params.k();
    let two_k = 2 * k;
    let base = Float::with_val(wp, Rational::from(two_k) / params.delta_exact());
    let exponent = Float::with_val(wp, Rational::from((p + 1, two_k)));
    let power = Float::with_val(wp, base.ln() * exponent).exp();
    let g = gamma_ratio((p + 1) as i64, two_k as i64, &ctx.widened(GUARD_BITS))?;
    Ok(Float::with_val(ctx.bits, power * g / two_k))
}

/// Full-line moment `J_p`: twice the half-line moment for even `p`, zero
/// for odd `p`.
pub fn full_line_moment(params: &ModelParams, p: u32, ctx: &PrecisionContext) -> Result<Float, ExactError> {
    if p % 2 == 1 {
        check_params(params)?;
        return Ok(Float::with_val(ctx.bits, 0));
    }
    Ok(moment(params, p, ctx)? * 2u32)
}

/// Even full-line moments `J_0, J_2, ..., J_{2·count-2}`: the first `k`
/// from the closed form, the rest by `J_{p+2k-1} = (p/δ) J_{p-1}`.
pub fn even_moment_table(params: &ModelParams, count: usize, ctx: &PrecisionContext) -> Result<Vec<Float>, ExactError> {
    check_params(params)?;
    let k = params.k() as usize;
    let delta = params.delta_exact();
    let mut table: Vec<Float> = Vec::with_capacity(count);
    for m in 0..count {
        if m < k {
            table.push(full_line_moment(params, 2 * m as u32, ctx)?);
        } else {
            // J_{2m} with 2m = p + 2k - 1, p = 2m - 2k + 1
            let p = 2 * (m - k) + 1;
            let factor = Float::with_val(ctx.bits, Rational::from(p as u32) / &delta);
            let prev = &table[m - k];
            table.push(Float::with_val(ctx.bits, prev * &factor));
        }
    }
    Ok(table)
}

/// Hermite-moment sum for even `n` at the precision of `moments`, together
/// with the base-2 log of the largest term for cancellation accounting.
fn hermite_sum(n: usize, moments: &[Float]) -> (Float, f64) {
    let prec = moments[0].prec();
    let half = n / 2;
    let mut sum = Float::with_val(prec, 0);
    let mut max_term = f64::NEG_INFINITY;
    for m in 0..=half {
        let denom = Integer::from(Integer::factorial(2 * m as u32)) * Integer::from(Integer::factorial((half - m) as u32));
        let coeff = Rational::from((Integer::from(1) << (2 * m as u32), denom));
        let mut term = Float::with_val(prec, &coeff) * &moments[m];
        if (half - m) % 2 == 1 {
            term = -term;
        }
        max_term = max_term.max(log2_abs(&term));
        sum += term;
    }
    (sum, max_term)
}

/// `π^{-1/4} n! / √(2^n n!) = π^{-1/4} √(n! / 2^n)`.
fn hermite_prefactor(n: usize, prec: u32) -> Float {
    let ratio = Rational::from((Integer::from(Integer::factorial(n as u32)), Integer::from(1) << n as u32));
    let root = Float::with_val(prec, &ratio).sqrt();
    let pi = Float::with_val(prec, Constant::Pi);
    root / pi.sqrt().sqrt()
}

fn extra_bits_for(n: usize) -> u32 {
    (1.5 * n as f64).ceil() as u32 + 32
}

/// `I_n = ⟨b_n, Ω⟩`, exactly zero for odd `n`.
pub fn fourier_coefficient(params: &ModelParams, n: usize, ctx: &PrecisionContext) -> Result<Float, ExactError> {
    check_params(params)?;
    if n % 2 == 1 {
        return Ok(Float::with_val(ctx.bits, 0));
    }
    let mut extra = extra_bits_for(n);
    for _ in 0..4 {
        let wctx = ctx.widened(extra);
        let moments = even_moment_table(params, n / 2 + 1, &wctx)?;
        match coefficient_from_moments(n, &moments, ctx.bits) {
            Ok(v) => return Ok(v),
            Err(needed) => extra = needed,
        }
    }
    Err(ExactError::Cancellation { n, bits: ctx.bits + extra })
}

/// Evaluates `I_n` from a moment table, or reports the extra bits needed.
fn coefficient_from_moments(n: usize, moments: &[Float], bits: u32) -> Result<Float, u32> {
    let wp = moments[0].prec();
    let (sum, max_term) = hermite_sum(n, &moments[..=n / 2]);
    let loss = (max_term - log2_abs(&sum)).max(0.0);
    if loss + bits as f64 + GUARD_BITS as f64 > wp as f64 {
        return Err((loss.ceil() as u32) + 2 * GUARD_BITS + 32);
    }
    Ok(Float::with_val(bits, sum * hermite_prefactor(n, wp)))
}

/// The printed closed form of `I_n`,
///
/// ```text
/// π^{-1/4} n!/√(2^n n!) Σ (-1)^{n/2-m} 2^{(4km+2m+1)/(2k)} k^{(2m-2k+1)/(2k)} Γ((2m+1)/(2k)) / ((2m)! (n/2-m)! ε^{2m+1})
/// ```
///
/// evaluated term by term; kept only to cross-check the moment form.
pub fn fourier_coefficient_printed(params: &ModelParams, n: usize, ctx: &PrecisionContext) -> Result<Float, ExactError> {
    check_params(params)?;
    if n % 2 == 1 {
        return Ok(Float::with_val(ctx.bits, 0));
    }
    let wp = ctx.bits + extra_bits_for(n) + GUARD_BITS;
    let wctx = ctx.widened(wp - ctx.bits);
    let k = params.k() as i64;
    let eps = params.epsilon(wp);
    let ln2 = Float::with_val(wp, Constant::Log2);
    let lnk = Float::with_val(wp, k).ln();
    let half = n / 2;
    let mut sum = Float::with_val(wp, 0);
    for m in 0..=half {
        let mi = m as i64;
        let e2 = Float::with_val(wp, Rational::from((4 * k * mi + 2 * mi + 1, 2 * k)));
        let ek = Float::with_val(wp, Rational::from((2 * mi - 2 * k + 1, 2 * k)));
        let scale = Float::with_val(wp, &ln2 * &e2) + Float::with_val(wp, &lnk * &ek);
        let g = gamma_ratio(2 * mi + 1, 2 * k, &wctx)?;
        let denom = Integer::from(Integer::factorial(2 * m as u32)) * Integer::from(Integer::factorial((half - m) as u32));
        let eps_pow = Float::with_val(wp, rug::ops::Pow::pow(&eps, 2 * m as u32 + 1));
        let mut term = scale.exp() * g / Float::with_val(wp, &denom) / eps_pow;
        if (half - m) % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    Ok(Float::with_val(ctx.bits, sum * hermite_prefactor(n, wp)))
}

/// Compares the moment form with the printed prefactor form at ten fixed
/// pseudo-random points.
pub fn verify_printed_prefactor(ctx: &PrecisionContext) -> Result<(), ExactError> {
    let mut state: u64 = 0x5DEE_CE66_D1CE_4E5B;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 33
    };
    for _ in 0..10 {
        let k = 2 + (next() % 4) as u32;
        let eps_num = 25 + next() % 200;
        let n = 2 * (next() % 21) as usize;
        let params = ModelParams::new(k, Sign::Plus, Rational::from((eps_num, 100))).expect("valid parameters");
        let a = fourier_coefficient(&params, n, ctx)?;
        let b = fourier_coefficient_printed(&params, n, ctx)?;
        let scale = Float::with_val(ctx.bits, a.abs_ref()).max(&Float::with_val(ctx.bits, 1e-30));
        let diff = Float::with_val(ctx.bits, &a - &b).abs();
        if diff > scale * ctx.rel_eps(24) {
            return Err(ExactError::PrefactorMismatch {
                k,
                epsilon: params.epsilon_label(),
                n,
            });
        }
    }
    Ok(())
}

fn printed_prefactor_checked(ctx: &PrecisionContext) -> Result<(), ExactError> {
    static CHECK: OnceLock<Result<(), ExactError>> = OnceLock::new();
    CHECK
        .get_or_init(|| verify_printed_prefactor(&PrecisionContext::new(ctx.bits.max(128)).expect("valid precision")))
        .clone()
}

/// `‖Ω‖² = ∫ e^{-δ y^{2k}/k + y²} dy`.
pub fn norm_sq(params: &ModelParams, method: NormMethod, ctx: &PrecisionContext) -> Result<Float, ExactError> {
    check_params(params)?;
    match method {
        NormMethod::Closed => match params.k() {
            2 => norm_sq_k2(params, ctx),
            3 => norm_sq_k3(params, ctx),
            4 => norm_sq_k4(params, ctx),
            k => Err(ExactError::UnsupportedK(k)),
        },
        NormMethod::Quadrature => norm_sq_quadrature(params, ctx),
    }
}

/// Closed form where one exists, quadrature otherwise.
pub fn norm_sq_auto(params: &ModelParams, ctx: &PrecisionContext) -> Result<Float, ExactError> {
    match norm_sq(params, NormMethod::Closed, ctx) {
        Err(ExactError::UnsupportedK(_)) => norm_sq(params, NormMethod::Quadrature, ctx),
        other => other,
    }
}

fn norm_sq_quadrature(params: &ModelParams, ctx: &PrecisionContext) -> Result<Float, ExactError> {
    let k = 2 * params.k();
    let delta_over_k = Rational::from(params.delta_exact() / params.k());
    let q = quad_de(
        |x: &Float| {
            let prec = x.prec();
            let x2 = Float::with_val(prec, x.square_ref());
            let top = Float::with_val(prec, rug::ops::Pow::pow(x, k)) * Float::with_val(prec, &delta_over_k);
            Float::with_val(prec, x2 - top).exp()
        },
        ctx,
    )?;
    Ok(q.value)
}

/// `(π / (2ε²)) e^{1/(4ε⁴)} [I_{1/4}(1/(4ε⁴)) + I_{-1/4}(1/(4ε⁴))]`.
fn norm_sq_k2(params: &ModelParams, ctx: &PrecisionContext) -> Result<Float, ExactError> {
    let wctx = ctx.widened(GUARD_BITS);
    let wp = wctx.bits;
    let eps = params.epsilon(wp);
    let eps2 = Float::with_val(wp, eps.square_ref());
    let z = Float::with_val(wp, 1u32 / (Float::with_val(wp, &eps2 * &eps2) * 4u32));
    let quarter = Float::with_val(wp, Rational::from((1, 4)));
    let sum = bessel_i(&quarter, &z, &wctx)? + bessel_i(&Float::with_val(wp, -&quarter), &z, &wctx)?;
    let pi = Float::with_val(wp, Constant::Pi);
    let value = pi / (eps2 * 2u32) * z.exp() * sum;
    Ok(Float::with_val(ctx.bits, value))
}

/// `(π^{3/2} / (2^{1/3} ε)) [Ai(z)² + Bi(z)²]` with `z = 1/(2^{2/3} ε²)`.
fn norm_sq_k3(params: &ModelParams, ctx: &PrecisionContext) -> Result<Float, ExactError> {
    let wctx = ctx.widened(GUARD_BITS);
    let wp = wctx.bits;
    let eps = params.epsilon(wp);
    let two = Float::with_val(wp, 2u32);
    let cbrt2 = Float::with_val(wp, two.cbrt_ref());
    let z = Float::with_val(wp, 1u32 / (Float::with_val(wp, cbrt2.square_ref()) * Float::with_val(wp, eps.square_ref())));
    let (ai, bi) = airy_ai_bi(&z, &wctx)?;
    let pi = Float::with_val(wp, Constant::Pi);
    let pi32 = Float::with_val(wp, &pi * Float::with_val(wp, pi.sqrt_ref()));
    let value = pi32 / (cbrt2 * eps) * (ai.square() + bi.square());
    Ok(Float::with_val(ctx.bits, value))
}

/// Sum of four `₁F₃` series in `z = 1/(64 ε⁸)`:
///
/// ```text
/// π^{3/2}/(128√2 ε⁷) [ 128 ε² F(5/8; 3/4,5/4,3/2) / (Γ(1/8)Γ(3/4))
///                    + 128 ε⁶ F(1/8; 1/4,1/2,3/4) / (Γ(5/8)Γ(3/4))
///                    + 5 F(7/8; 5/4,3/2,7/4) / (Γ(11/8)Γ(9/4))
///                    - 256 ε⁴ F(3/8; 1/2,3/4,5/4) / (Γ(-1/8)Γ(5/4)) ]
/// ```
fn norm_sq_k4(params: &ModelParams, ctx: &PrecisionContext) -> Result<Float, ExactError> {
    let wctx = ctx.widened(GUARD_BITS);
    let wp = wctx.bits;
    let eps = params.epsilon(wp);
    let eps2 = Float::with_val(wp, eps.square_ref());
    let eps4 = Float::with_val(wp, eps2.square_ref());
    let eps6 = Float::with_val(wp, &eps4 * &eps2);
    let eps7 = Float::with_val(wp, &eps6 * &eps);
    let eps8 = Float::with_val(wp, eps4.square_ref());
    let z = Float::with_val(wp, 1u32 / (eps8 * 64u32));
    let q = |n: i64, d: i64| Float::with_val(wp, Rational::from((n, d)));
    let f = |a: (i64, i64), b1: (i64, i64), b2: (i64, i64), b3: (i64, i64)| {
        hyp1f3(&q(a.0, a.1), &q(b1.0, b1.1), &q(b2.0, b2.1), &q(b3.0, b3.1), &z, &wctx)
    };
    let g = |n: i64, d: i64| gamma_ratio(n, d, &wctx);

    let t1 = Float::with_val(wp, &eps2 * 128u32) * f((5, 8), (3, 4), (5, 4), (3, 2))? / (g(1, 8)? * g(3, 4)?);
    let t2 = Float::with_val(wp, &eps6 * 128u32) * f((1, 8), (1, 4), (1, 2), (3, 4))? / (g(5, 8)? * g(3, 4)?);
    let t3 = f((7, 8), (5, 4), (3, 2), (7, 4))? * 5u32 / (g(11, 8)? * g(9, 4)?);
    let t4 = Float::with_val(wp, &eps4 * 256u32) * f((3, 8), (1, 2), (3, 4), (5, 4))? / (g(-1, 8)? * g(5, 4)?);
    let bracket = t1 + t2 + t3 - t4;
    let pi = Float::with_val(wp, Constant::Pi);
    let pi32 = Float::with_val(wp, &pi * Float::with_val(wp, pi.sqrt_ref()));
    let sqrt2 = Float::with_val(wp, 2u32).sqrt();
    let value = pi32 / (sqrt2 * 128u32 * eps7) * bracket;
    Ok(Float::with_val(ctx.bits, value))
}

/// `I_n`, `‖Ω‖²` and `c_n` for `n < count`.
pub fn normalized_coefficients(params: &ModelParams, count: usize, ctx: &PrecisionContext) -> Result<ExactGroundState, ExactError> {
    check_params(params)?;
    printed_prefactor_checked(ctx)?;
    let norm_sq = norm_sq_auto(params, &ctx.widened(GUARD_BITS))?;
    let norm = Float::with_val(ctx.guarded_bits(), norm_sq.sqrt_ref());

    // One moment table at the precision the largest index needs.
    let top = count.saturating_sub(1) & !1;
    let mut extra = extra_bits_for(top);
    let mut unnormalized = Vec::with_capacity(count);
    'retry: for _ in 0..4 {
        let wctx = ctx.widened(extra);
        let moments = even_moment_table(params, top / 2 + 1, &wctx)?;
        unnormalized.clear();
        for n in 0..count {
            if n % 2 == 1 {
                unnormalized.push(Float::with_val(ctx.bits, 0));
                continue;
            }
            match coefficient_from_moments(n, &moments[..=n / 2], ctx.guarded_bits()) {
                Ok(v) => unnormalized.push(v),
                Err(needed) => {
                    extra = extra.max(needed);
                    continue 'retry;
                }
            }
        }
        break;
    }
    if unnormalized.len() != count {
        return Err(ExactError::Cancellation {
            n: unnormalized.len(),
            bits: ctx.bits + extra,
        });
    }
    let normalized: Vec<Float> = unnormalized
        .iter()
        .map(|i| Float::with_val(ctx.bits, i / &norm))
        .collect();
    let mut partial = Float::with_val(ctx.guarded_bits(), 0);
    for c in &normalized {
        partial += c * c;
    }
    Ok(ExactGroundState {
        params: params.clone(),
        unnormalized: unnormalized.into_iter().map(|x| Float::with_val(ctx.bits, x)).collect(),
        norm_sq: Float::with_val(ctx.bits, norm_sq),
        normalized,
        partial_norm_sq: Float::with_val(ctx.bits, partial),
    })
}
