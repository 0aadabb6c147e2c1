use rug::Float;

use super::{PrecisionContext, SpecfunError, GUARD_BITS};

/// Generalized hypergeometric series `₁F₃(a; b1, b2, b3; z)`.
///
/// Entire in `z`. For negative `z` the alternating terms grow to roughly
/// `exp(4 |z|^{1/4})` before decaying; those bits are added to the working
/// precision.
pub fn hyp1f3(
    a: &Float,
    b1: &Float,
    b2: &Float,
    b3: &Float,
    z: &Float,
    ctx: &PrecisionContext,
) -> Result<Float, SpecfunError> {
    for b in [b1, b2, b3] {
        if *b <= 0 && b.is_integer() {
            return Err(SpecfunError::HypergeometricPole(b.to_string_radix(10, Some(10))));
        }
    }
    let zabs = Float::with_val(53, z.abs_ref()).to_f64();
    let mut extra = GUARD_BITS + 16;
    if *z < 0 {
        extra += (4.0 * zabs.powf(0.25) / std::f64::consts::LN_2).ceil() as u32;
    }
    let wp = ctx.bits + extra;
    let eps = Float::with_val(wp, 1u32) >> (wp as i32);

    let mut pa = Float::with_val(wp, a);
    let mut p1 = Float::with_val(wp, b1);
    let mut p2 = Float::with_val(wp, b2);
    let mut p3 = Float::with_val(wp, b3);
    let mut sum = Float::with_val(wp, 0);
    let mut term = Float::with_val(wp, 1u32);
    let mut m: u32 = 0;
    loop {
        sum += &term;
        if term.is_zero() {
            break;
        }
        m += 1;
        // t_{m} = t_{m-1} (a+m-1) z / ((b1+m-1)(b2+m-1)(b3+m-1) m)
        term *= &pa;
        term *= z;
        let mut denom = Float::with_val(wp, &p1 * &p2);
        denom *= &p3;
        denom *= m;
        term /= &denom;
        pa += 1u32;
        p1 += 1u32;
        p2 += 1u32;
        p3 += 1u32;

        let ratio_small = Float::with_val(wp, pa.abs_ref()) * zabs
            < Float::with_val(wp, &p1 * &p2).abs() * Float::with_val(wp, p3.abs_ref()) * (m + 1);
        if ratio_small && Float::with_val(wp, term.abs_ref()) <= Float::with_val(wp, sum.abs_ref()) * &eps {
            break;
        }
    }
    Ok(Float::with_val(ctx.bits, sum))
}
