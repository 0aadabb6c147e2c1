//! Arbitrary-precision special functions and double-exponential quadrature.
//!
//! Every routine works on [`rug::Float`] values and takes a
//! [`PrecisionContext`] that fixes the binary working precision. Series are
//! summed with [`GUARD_BITS`] extra bits and stopped on a term-ratio test once
//! the terms are monotonically decreasing.

mod airy;
mod bessel;
mod gamma;
mod hyper;
mod quad;

pub use airy::airy_ai_bi;
pub use bessel::bessel_i;
pub use gamma::{gamma, gamma_ratio, gamma_reflected, rgamma};
pub use hyper::hyp1f3;
pub use quad::{quad_de, quad_de_with, QuadOptions, QuadResult};

use rug::Float;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Extra bits carried by every internal series summation.
pub const GUARD_BITS: u32 = 16;

/// Smallest working precision accepted by [`PrecisionContext`].
pub const MIN_BITS: u32 = 64;

/// Decimal digits reserved between the working precision and the reported
/// digits.
const RESERVED_DIGITS: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("argument {0} outside the domain of the gamma function")]
    GammaDomain(String),
    #[error("lower parameter {0} of the hypergeometric series is a nonpositive integer")]
    HypergeometricPole(String),
    #[error("quadrature did not converge after {levels} levels (last difference {difference})")]
    QuadratureDiverged { levels: u32, difference: String },
    #[error("invalid precision: {0}")]
    Precision(String),
    #[error("argument must be positive, got {0}")]
    NonPositive(String),
}

/// Working precision (binary) plus the number of decimal digits that results
/// are reported with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrecisionContext {
    pub bits: u32,
    pub target_digits: u32,
}

impl PrecisionContext {
    /// Context reporting 16 digits, or fewer when `bits` cannot support 16.
    pub fn new(bits: u32) -> Result<Self, SpecfunError> {
        if bits < MIN_BITS {
            return Self::with_digits(bits, 0);
        }
        Self::with_digits(bits, Self::max_digits_for(bits).min(16))
    }

    pub fn with_digits(bits: u32, target_digits: u32) -> Result<Self, SpecfunError> {
        if bits < MIN_BITS {
            return Err(SpecfunError::Precision(format!(
                "{bits} bits is below the minimum of {MIN_BITS}"
            )));
        }
        let max_digits = Self::max_digits_for(bits);
        if target_digits > max_digits {
            return Err(SpecfunError::Precision(format!(
                "{target_digits} digits requested but {bits} bits support at most {max_digits}"
            )));
        }
        Ok(Self { bits, target_digits })
    }

    /// `floor(bits * log10(2)) - 8`.
    pub fn max_digits_for(bits: u32) -> u32 {
        ((bits as f64) * std::f64::consts::LOG10_2).floor() as u32 - RESERVED_DIGITS
    }

    /// Same reporting digits, more working bits.
    pub fn widened(&self, extra_bits: u32) -> Self {
        Self {
            bits: self.bits + extra_bits,
            target_digits: self.target_digits,
        }
    }

    /// Precision used inside series and quadrature sums.
    pub fn guarded_bits(&self) -> u32 {
        self.bits + GUARD_BITS
    }

    pub fn float<T>(&self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits, value)
    }

    /// `2^exp`, at the working precision.
    pub fn pow2(&self, exp: i32) -> Float {
        Float::with_val(self.bits, 1) << exp
    }

    /// Relative tolerance `2^(shift - bits)`.
    pub fn rel_eps(&self, shift: i32) -> Float {
        self.pow2(shift - self.bits as i32)
    }
}

/// Base-2 logarithm of `|x|` as an `f64`, `-inf` for zero.
pub(crate) fn log2_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    match x.get_exp() {
        Some(exp) => {
            // x = m * 2^exp with 0.5 <= |m| < 1
            let mantissa = Float::with_val(53, x >> exp).abs().to_f64();
            exp as f64 + mantissa.log2()
        }
        None => f64::INFINITY,
    }
}
