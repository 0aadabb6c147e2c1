//! Double-exponential quadrature over the whole real line.
//!
//! Uses the sinh-sinh map `x = sinh((π/2) sinh t)` and the trapezoidal rule
//! in `t`, halving the step until two successive levels agree.

use rug::float::Constant;
use rug::Float;

use super::{PrecisionContext, SpecfunError, GUARD_BITS};

/// Result of a quadrature run.
#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: Float,
    /// Difference between the last two levels.
    pub difference: Float,
    pub levels: u32,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Convergence when successive levels differ by at most
    /// `2^(tolerance_shift - bits)` relative.
    pub tolerance_shift: i32,
    pub max_level: u32,
    /// Initial step in `t`.
    pub initial_step_log2: i32,
    /// Hard cap on `|t|`.
    pub t_max: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            tolerance_shift: 8,
            max_level: 14,
            initial_step_log2: -1,
            t_max: 6.0,
        }
    }
}

/// `∫_ℝ f(x) dx` for smooth integrands with at least Gaussian decay.
///
/// The integrand receives its argument at the guarded working precision and
/// should compute at `x.prec()`.
pub fn quad_de<F>(f: F, ctx: &PrecisionContext) -> Result<QuadResult, SpecfunError>
where
    F: Fn(&Float) -> Float,
{
    quad_de_with(f, ctx, QuadOptions::default())
}

pub fn quad_de_with<F>(f: F, ctx: &PrecisionContext, opts: QuadOptions) -> Result<QuadResult, SpecfunError>
where
    F: Fn(&Float) -> Float,
{
    let wp = ctx.bits + GUARD_BITS;
    let half_pi = Float::with_val(wp, Constant::Pi) / 2u32;
    let tiny = Float::with_val(wp, 1u32) >> (wp as i32 + 8);
    let tolerance = Float::with_val(wp, 1u32) >> (ctx.bits as i32 - opts.tolerance_shift);

    let mut evaluations = 0usize;
    // weight * f at node t
    let mut node = |t: &Float| -> Float {
        evaluations += 1;
        let u = Float::with_val(wp, t.sinh_ref()) * &half_pi;
        let x = Float::with_val(wp, u.sinh_ref());
        let fx = f(&x);
        if fx.is_zero() || !fx.is_finite() {
            return fx;
        }
        let w = Float::with_val(wp, t.cosh_ref()) * &half_pi * Float::with_val(wp, u.cosh_ref());
        Float::with_val(wp, fx * w)
    };

    let mut h = Float::with_val(wp, 1u32);
    if opts.initial_step_log2 < 0 {
        h >>= -opts.initial_step_log2;
    } else {
        h <<= opts.initial_step_log2;
    }

    // Level 0: all nodes j*h.
    let mut raw = node(&Float::with_val(wp, 0));
    let center_scale = Float::with_val(wp, raw.abs_ref());
    raw += sweep(&mut node, &h, &h, &center_scale, &tiny, opts.t_max, wp);
    let mut estimate = Float::with_val(wp, &raw * &h);
    let mut last_difference = Float::with_val(wp, f64::INFINITY);
    let mut reached = 0;

    for level in 1..=opts.max_level {
        reached = level;
        // New nodes sit at odd multiples of h/2.
        h >>= 1;
        let stride = Float::with_val(wp, &h * 2u32);
        let scale = Float::with_val(wp, raw.abs_ref()) / 4u32;
        let added = sweep(&mut node, &h, &stride, &scale, &tiny, opts.t_max, wp);
        raw += added;
        let next = Float::with_val(wp, &raw * &h);
        last_difference = Float::with_val(wp, &next - &estimate).abs();
        estimate = next;
        if !estimate.is_finite() {
            break;
        }
        let bound = Float::with_val(wp, estimate.abs_ref()) * &tolerance;
        if level >= 2 && last_difference <= bound {
            let difference = last_difference;
            return Ok(QuadResult {
                value: Float::with_val(ctx.bits, &estimate),
                difference,
                levels: level,
                evaluations,
            });
        }
    }
    Err(SpecfunError::QuadratureDiverged {
        levels: reached,
        difference: last_difference.to_string_radix(10, Some(6)),
    })
}

/// Sum of `node(±t)` for `t = start, start + stride, ...` until three
/// consecutive nodes on each side are negligible against `scale`.
#[allow(clippy::too_many_arguments)]
fn sweep<N>(
    node: &mut N,
    start: &Float,
    stride: &Float,
    scale: &Float,
    tiny: &Float,
    t_max: f64,
    wp: u32,
) -> Float
where
    N: FnMut(&Float) -> Float,
{
    let mut total = Float::with_val(wp, 0);
    for sign in [1i32, -1] {
        let mut t = Float::with_val(wp, start * sign);
        let step = Float::with_val(wp, stride * sign);
        let mut quiet = 0;
        let mut side = Float::with_val(wp, 0);
        loop {
            if Float::with_val(53, t.abs_ref()).to_f64() > t_max {
                break;
            }
            let v = node(&t);
            let reference = Float::with_val(wp, side.abs_ref()).max(scale);
            if Float::with_val(wp, v.abs_ref()) <= Float::with_val(wp, &reference * tiny) {
                quiet += 1;
            } else {
                quiet = 0;
            }
            side += &v;
            if quiet >= 3 {
                break;
            }
            t += &step;
        }
        total += side;
    }
    total
}
