use rug::Float;

use super::{rgamma, PrecisionContext, SpecfunError, GUARD_BITS};

/// Modified Bessel function of the first kind, `I_ν(z)` for `z > 0`.
///
/// Power series `Σ (z/2)^{2m+ν} / (m! Γ(m+ν+1))`. For `ν > -1` every term is
/// positive, so large arguments only cost more terms, never precision.
pub fn bessel_i(nu: &Float, z: &Float, ctx: &PrecisionContext) -> Result<Float, SpecfunError> {
    if *z <= 0 {
        return Err(SpecfunError::NonPositive(z.to_string_radix(10, Some(20))));
    }
    let wp = ctx.guarded_bits() + 16;
    let wctx = ctx.widened(GUARD_BITS + 16);
    let half_z = Float::with_val(wp, z / 2u32);
    let quarter_z2 = Float::with_val(wp, half_z.square_ref());

    // Skip leading terms that vanish at the poles of Γ(m+ν+1).
    let mut m: u32 = 0;
    let nu_plus_one = Float::with_val(wp, nu + 1u32);
    if nu_plus_one <= 0 && nu_plus_one.is_integer() {
        let skip = Float::with_val(wp, -&nu_plus_one) + 1u32;
        m = skip.to_integer().unwrap().to_u32().unwrap();
    }

    // First term: (z/2)^{2m+ν} / (m! Γ(m+ν+1))
    let exponent = Float::with_val(wp, nu + 2 * m);
    let power = Float::with_val(wp, half_z.ln_ref()) * &exponent;
    let mut term = power.exp();
    let shifted = Float::with_val(wp, &nu_plus_one + m);
    term *= rgamma(&shifted, &wctx)?;
    term /= Float::with_val(wp, rug::Integer::from(rug::Integer::factorial(m)));

    let eps = Float::with_val(wp, 1u32) >> (wp as i32);
    let mut sum = Float::with_val(wp, 0);
    let mut denom_b = shifted;
    loop {
        sum += &term;
        // ratio of successive terms: (z/2)^2 / ((m+1)(m+ν+1))
        m += 1;
        let denom = Float::with_val(wp, &denom_b * m);
        term *= &quarter_z2;
        term /= &denom;
        denom_b += 1u32;
        let decreasing = quarter_z2 < denom;
        if decreasing && Float::with_val(wp, term.abs_ref()) <= Float::with_val(wp, sum.abs_ref()) * &eps {
            break;
        }
    }
    Ok(Float::with_val(ctx.bits, sum))
}
