//! Gamma function for real arguments.
//!
//! Integers and half-integers are evaluated exactly through factorials. Other
//! arguments are reduced to `[1, 2)` and evaluated from the lower incomplete
//! gamma series
//!
//! ```text
//! γ(f, T) = T^f e^{-T} Σ_{j≥0} T^j / (f (f+1) ... (f+j))
//! ```
//!
//! with `T` chosen so that the neglected tail `Γ(f, T) ≤ (T+1) e^{-T}` is
//! below the working precision. All terms are positive.

use rug::{Float, Integer, Rational};

use super::{PrecisionContext, SpecfunError, GUARD_BITS};

/// Integer arguments up to this size use the exact factorial.
const FACTORIAL_LIMIT: u32 = 20_000;

/// `Γ(x)` for `x > 0`, relative error below `2^(4 - bits)`.
pub fn gamma(x: &Float, ctx: &PrecisionContext) -> Result<Float, SpecfunError> {
    if !x.is_finite() || *x <= 0 {
        return Err(SpecfunError::GammaDomain(x.to_string_radix(10, Some(20))));
    }
    if let Some(exact) = exact_gamma(x, ctx.bits) {
        return Ok(exact);
    }
    let wp = ctx.bits + 2 * GUARD_BITS;
    let x = Float::with_val(wp, x);

    // Reduce to f in [1, 2).
    if x < 1 {
        let shifted = Float::with_val(wp, &x + 1u32);
        let core = gamma_unit_interval(&shifted, wp);
        return Ok(Float::with_val(ctx.bits, core / &x));
    }
    let shift = Float::with_val(wp, x.floor_ref()).to_integer().unwrap() - 1u32;
    let shift = shift.to_u64().expect("gamma argument too large");
    let f = Float::with_val(wp, &x - shift);
    let mut acc = gamma_unit_interval(&f, wp);
    let mut factor = f.clone();
    for _ in 0..shift {
        acc *= &factor;
        factor += 1u32;
    }
    Ok(Float::with_val(ctx.bits, acc))
}

/// `Γ(num / den)` for a positive ratio, exact argument.
pub fn gamma_ratio(num: i64, den: i64, ctx: &PrecisionContext) -> Result<Float, SpecfunError> {
    let wp = ctx.bits + 2 * GUARD_BITS;
    let x = Float::with_val(wp, Rational::from((num, den)));
    let mut value = if num * den > 0 {
        gamma(&x, &ctx.widened(2 * GUARD_BITS))?
    } else {
        gamma_reflected(&x, &ctx.widened(2 * GUARD_BITS))?
    };
    value.set_prec(ctx.bits);
    Ok(value)
}

/// `Γ(x)` for any real `x` that is not a nonpositive integer, via the
/// reflection `Γ(x) Γ(1-x) = π / sin(πx)` when `x < 0`.
pub fn gamma_reflected(x: &Float, ctx: &PrecisionContext) -> Result<Float, SpecfunError> {
    if *x > 0 {
        return gamma(x, ctx);
    }
    if x.is_integer() || !x.is_finite() {
        return Err(SpecfunError::GammaDomain(x.to_string_radix(10, Some(20))));
    }
    let wp = ctx.bits + 2 * GUARD_BITS;
    let one_minus = Float::with_val(wp, 1u32 - x);
    let g = gamma(&one_minus, &ctx.widened(2 * GUARD_BITS))?;
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let sin = Float::with_val(wp, &pi * x).sin();
    Ok(Float::with_val(ctx.bits, pi / (sin * g)))
}

/// `1/Γ(x)`, zero at the poles.
pub fn rgamma(x: &Float, ctx: &PrecisionContext) -> Result<Float, SpecfunError> {
    if *x <= 0 && x.is_integer() {
        return Ok(Float::with_val(ctx.bits, 0));
    }
    let g = gamma_reflected(x, &ctx.widened(GUARD_BITS))?;
    Ok(Float::with_val(ctx.bits, 1u32 / g))
}

fn exact_gamma(x: &Float, bits: u32) -> Option<Float> {
    if x.is_integer() {
        let n = x.to_integer()?.to_u32()?;
        if n > FACTORIAL_LIMIT {
            return None;
        }
        return Some(Float::with_val(bits, Integer::from(Integer::factorial(n - 1))));
    }
    let twice = Float::with_val(x.prec() + 1, x * 2u32);
    if twice.is_integer() {
        // Γ(n + 1/2) = (2n)! √π / (4^n n!)
        let n = (twice.to_integer()? - 1u32) / 2u32;
        let n = n.to_u32()?;
        if n > FACTORIAL_LIMIT {
            return None;
        }
        let num = Integer::from(Integer::factorial(2 * n));
        let den = Integer::from(Integer::factorial(n)) << (2 * n);
        let wp = bits + GUARD_BITS;
        let ratio = Float::with_val(wp, Rational::from((num, den)));
        let sqrt_pi = Float::with_val(wp, rug::float::Constant::Pi).sqrt();
        return Some(Float::with_val(bits, ratio * sqrt_pi));
    }
    None
}

/// Γ(f) for f in [1, 2) at `wp` bits.
fn gamma_unit_interval(f: &Float, wp: u32) -> Float {
    let target = wp as f64 * std::f64::consts::LN_2 + 2.0;
    // Solve T - ln(2.26 T) >= target.
    let mut t = target;
    for _ in 0..8 {
        t = target + (2.26 * t).ln();
    }
    let t = t.ceil() as u32;
    let eps = Float::with_val(wp, 1u32) >> (wp as i32);

    let mut sum = Float::with_val(wp, 0);
    let mut term = Float::with_val(wp, 1u32 / f);
    let mut denom = f.clone();
    let mut j: u32 = 0;
    loop {
        sum += &term;
        j += 1;
        denom += 1u32;
        term *= t;
        term /= &denom;
        if j > t && term < Float::with_val(wp, &sum * &eps) {
            break;
        }
    }
    // T^f e^{-T}
    let log_t = Float::with_val(wp, t).ln();
    let scale = Float::with_val(wp, log_t * f - t).exp();
    sum * scale
}
