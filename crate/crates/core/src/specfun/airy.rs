use rug::ops::Pow;
use rug::Float;

use super::{gamma_ratio, PrecisionContext, SpecfunError, GUARD_BITS};

/// Airy functions `(Ai(z), Bi(z))` from their Maclaurin series.
///
/// `Ai = c1 f - c2 g`, `Bi = √3 (c1 f + c2 g)` with
/// `f = Σ z^{3j} / ((2·3)(5·6)...((3j-1)(3j)))` and
/// `g = Σ z^{3j+1} / ((3·4)(6·7)...((3j)(3j+1)))`.
/// For `z > 0` the difference in `Ai` loses about `(4/3) z^{3/2} / ln 2`
/// bits, which are added to the working precision up front.
pub fn airy_ai_bi(z: &Float, ctx: &PrecisionContext) -> Result<(Float, Float), SpecfunError> {
    let zabs = Float::with_val(53, z.abs_ref()).to_f64();
    let cancellation = (4.0 / 3.0) * zabs.powf(1.5) / std::f64::consts::LN_2;
    let extra = GUARD_BITS + 16 + cancellation.ceil() as u32;
    let wp = ctx.bits + extra;
    let wctx = ctx.widened(extra);

    let z = Float::with_val(wp, z);
    let z3 = Float::with_val(wp, z.square_ref()) * &z;
    let eps = Float::with_val(wp, 1u32) >> (wp as i32);

    let mut f = Float::with_val(wp, 0);
    let mut g = Float::with_val(wp, 0);
    let mut tf = Float::with_val(wp, 1u32);
    let mut tg = z.clone();
    let mut j: u32 = 0;
    loop {
        f += &tf;
        g += &tg;
        let a = 3 * j;
        // f: divide by (3j+2)(3j+3); g: divide by (3j+3)(3j+4)
        tf *= &z3;
        tf /= ((a + 2) as u64) * ((a + 3) as u64);
        tg *= &z3;
        tg /= ((a + 3) as u64) * ((a + 4) as u64);
        j += 1;
        let decreasing = Float::with_val(53, z3.abs_ref()).to_f64() < ((a + 3) as f64) * ((a + 4) as f64);
        let small_f = Float::with_val(wp, tf.abs_ref()) <= Float::with_val(wp, f.abs_ref()) * &eps;
        let small_g = g.is_zero() || Float::with_val(wp, tg.abs_ref()) <= Float::with_val(wp, g.abs_ref()) * &eps;
        if decreasing && small_f && small_g {
            break;
        }
    }

    // c1 = Ai(0) = 3^{-2/3} / Γ(2/3), c2 = -Ai'(0) = 3^{-1/3} / Γ(1/3)
    let three = Float::with_val(wp, 3u32);
    let c1 = Float::with_val(wp, three.clone().pow(Float::with_val(wp, -2) / 3u32)) / gamma_ratio(2, 3, &wctx)?;
    let c2 = Float::with_val(wp, three.clone().pow(Float::with_val(wp, -1) / 3u32)) / gamma_ratio(1, 3, &wctx)?;
    let cf = Float::with_val(wp, &c1 * &f);
    let cg = Float::with_val(wp, &c2 * &g);
    let ai = Float::with_val(wp, &cf - &cg);
    let bi = Float::with_val(wp, cf + cg) * three.sqrt();
    Ok((Float::with_val(ctx.bits, ai), Float::with_val(ctx.bits, bi)))
}
