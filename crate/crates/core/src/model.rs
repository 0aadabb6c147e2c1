//! Superpotentials, the potentials they induce and the two-parameter family
//! studied throughout the crate.
//!
//! Everything is dimensionless: `y = x/l` and energies are measured in
//! `ħ²/(m l²)`. For the family
//!
//! ```text
//! S(y) = σ y²/2 - δ y^{2k}/(2k),     δ = ε^{2k}
//! F(y) = (S')² + S'' = σ + y² - (2k-1) δ y^{2k-2} - 2σδ y^{2k} + δ² y^{4k-2}
//! ```
//!
//! and the Hamiltonian is `H = (p² + F(y)) / 2` with ground state `e^S`,
//! `H e^S = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::specfun::PrecisionContext;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("polynomial index k must be at least 2, got {0}")]
    InvalidK(u32),
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(String),
    #[error("cannot parse epsilon from {0:?}")]
    ParseEpsilon(String),
    #[error("superpotential has odd degree {0}; e^S is not normalizable")]
    OddDegree(usize),
    #[error("superpotential has degree {0}; at least 2 is required")]
    DegreeTooSmall(usize),
    #[error("superpotential top coefficient must be negative, got {0}")]
    NonNormalizable(String),
    #[error("polynomial has a nonzero coefficient at odd power {0}")]
    NotEven(usize),
}

/// The sign `σ` in front of the harmonic part of the superpotential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i32(v: i32) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Family parameters `(k, σ, ε)`.
///
/// `ε` is held as an exact rational so that `δ = ε^{2k}` is exact at every
/// working precision: a decimal input like `0.33` means exactly `33/100`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelParams {
    k: u32,
    sigma: Sign,
    epsilon: Rational,
}

impl ModelParams {
    pub fn new(k: u32, sigma: Sign, epsilon: Rational) -> Result<Self, ModelError> {
        if k < 2 {
            return Err(ModelError::InvalidK(k));
        }
        if epsilon <= 0 {
            return Err(ModelError::InvalidEpsilon(epsilon.to_string()));
        }
        Ok(Self { k, sigma, epsilon })
    }

    /// Parse `ε` from a decimal (`0.33`, `2`, `1e-1`) or a fraction (`1/3`).
    pub fn parse(k: u32, sigma: Sign, epsilon: &str) -> Result<Self, ModelError> {
        Self::new(k, sigma, parse_rational(epsilon)?)
    }

    /// The `δ → 0` limit: the shifted harmonic oscillator `H = n + 1/2 + σ/2`.
    pub fn harmonic_limit(k: u32, sigma: Sign) -> Result<Self, ModelError> {
        if k < 2 {
            return Err(ModelError::InvalidK(k));
        }
        Ok(Self {
            k,
            sigma,
            epsilon: Rational::new(),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn sigma(&self) -> Sign {
        self.sigma
    }

    pub fn epsilon_exact(&self) -> &Rational {
        &self.epsilon
    }

    pub fn delta_exact(&self) -> Rational {
        Rational::from((&self.epsilon).pow(2 * self.k))
    }

    pub fn epsilon(&self, prec: u32) -> Float {
        Float::with_val(prec, &self.epsilon)
    }

    /// `δ = ε^{2k}`, correctly rounded from the exact rational.
    pub fn delta(&self, prec: u32) -> Float {
        Float::with_val(prec, self.delta_exact())
    }

    pub fn is_harmonic_limit(&self) -> bool {
        self.epsilon == 0
    }

    /// Decimal form of `ε` for reports and cache keys.
    pub fn epsilon_label(&self) -> String {
        rational_label(&self.epsilon)
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}, sigma={}, epsilon={}", self.k, self.sigma, self.epsilon_label())
    }
}

fn rational_label(r: &Rational) -> String {
    // Terminating decimals print exactly; anything else as a fraction.
    let mut den = r.denom().clone();
    let mut digits = 0u32;
    while den.is_divisible_u(10) {
        den /= 10u32;
        digits += 1;
    }
    while den.is_divisible_u(2) {
        den /= 2u32;
        digits += 1;
    }
    while den.is_divisible_u(5) {
        den /= 5u32;
        digits += 1;
    }
    if den != 1 {
        return r.to_string();
    }
    if digits == 0 {
        return r.numer().to_string();
    }
    let scaled = Rational::from(r * rug::Integer::from(rug::Integer::u_pow_u(10, digits)));
    let n = scaled.numer().clone();
    let neg = n < 0;
    let s = n.abs().to_string();
    let s = format!("{:0>width$}", s, width = digits as usize + 1);
    let (int, frac) = s.split_at(s.len() - digits as usize);
    let frac = frac.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Exact rational from a decimal or `p/q` string.
pub fn parse_rational(text: &str) -> Result<Rational, ModelError> {
    let t = text.trim();
    let err = || ModelError::ParseEpsilon(text.to_string());
    if t.contains('/') {
        return Rational::from_str(t).map_err(|_| err());
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{int}{frac}");
    let numer = rug::Integer::from_str(&digits).map_err(|_| err())?;
    let scale = exponent - frac.len() as i32;
    let ten = rug::Integer::from(10);
    let mut value = Rational::from(numer);
    if scale >= 0 {
        value *= Rational::from(ten.pow(scale as u32));
    } else {
        value /= Rational::from(ten.pow((-scale) as u32));
    }
    if neg {
        value = -value;
    }
    Ok(value)
}

/// Dense polynomial; `coeffs[i]` multiplies `y^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Float>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Float>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_f64(coeffs: &[f64], prec: u32) -> Self {
        Self::new(coeffs.iter().map(|&c| Float::with_val(prec, c)).collect())
    }

    pub fn coeffs(&self) -> &[Float] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &Float {
        self.coeffs.last().expect("polynomial has at least one coefficient")
    }

    fn prec(&self) -> u32 {
        self.coeffs.iter().map(|c| c.prec()).max().unwrap_or(64)
    }

    pub fn derivative(&self) -> Polynomial {
        let prec = self.prec();
        if self.coeffs.len() <= 1 {
            return Polynomial::new(vec![Float::with_val(prec, 0)]);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Float::with_val(prec, c * i as u32))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let prec = self.prec().max(other.prec());
        let mut out = vec![Float::with_val(prec, 0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += Float::with_val(prec, a * b);
            }
        }
        Polynomial::new(out)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let prec = self.prec().max(other.prec());
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Float::with_val(prec, 0);
        Polynomial::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = other.coeffs.get(i).unwrap_or(&zero);
                    Float::with_val(prec, a + b)
                })
                .collect(),
        )
    }

    /// Horner evaluation at the precision of `x`.
    pub fn eval(&self, x: &Float) -> Float {
        let mut acc = Float::with_val(x.prec(), 0);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// View as an even polynomial, failing on any nonzero odd coefficient.
    pub fn to_even(&self) -> Result<EvenPolynomial, ModelError> {
        if let Some((i, _)) = self.coeffs.iter().enumerate().find(|(i, c)| i % 2 == 1 && !c.is_zero()) {
            return Err(ModelError::NotEven(i));
        }
        Ok(EvenPolynomial::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }
}

/// Polynomial in `y²`: `coeffs[j]` multiplies `y^{2j}`. Odd powers are
/// structurally absent.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenPolynomial {
    coeffs: Vec<Float>,
}

impl EvenPolynomial {
    pub fn new(coeffs: Vec<Float>) -> Self {
        Self {
            coeffs: Polynomial::new(coeffs).coeffs,
        }
    }

    /// Degree in `y`.
    pub fn degree(&self) -> usize {
        2 * self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `y^power` (zero for odd powers).
    pub fn coefficient(&self, power: usize) -> Float {
        let prec = self.coeffs[0].prec();
        if power % 2 == 1 {
            return Float::with_val(prec, 0);
        }
        self.coeffs
            .get(power / 2)
            .cloned()
            .unwrap_or_else(|| Float::with_val(prec, 0))
    }

    pub fn top_coefficient(&self) -> &Float {
        self.coeffs.last().expect("nonempty")
    }

    /// The same polynomial as a polynomial in `z = y²`.
    pub fn in_z(&self) -> Polynomial {
        Polynomial::new(self.coeffs.clone())
    }

    pub fn to_dense(&self) -> Polynomial {
        let prec = self.coeffs[0].prec();
        let mut dense = vec![Float::with_val(prec, 0); self.degree() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            dense[2 * j] = c.clone();
        }
        Polynomial::new(dense)
    }

    pub fn eval(&self, y: &Float) -> Float {
        let z = Float::with_val(y.prec(), y.square_ref());
        self.in_z().eval(&z)
    }

    /// A radius `R ≥ 1` with `F(y) > 0` for all `|y| > R`, from the top
    /// coefficient, the next-highest power and the sum of the rest.
    pub fn positivity_radius(&self) -> Float {
        let prec = self.coeffs[0].prec();
        let top = self.top_coefficient().clone();
        let d = self.degree();
        let lower: Vec<(usize, &Float)> = self
            .coeffs
            .iter()
            .enumerate()
            .take(self.coeffs.len() - 1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (2 * j, c))
            .collect();
        let one = Float::with_val(prec, 1);
        let Some(&(next_power, _)) = lower.last() else {
            return one;
        };
        // For |y| >= 1: Σ_{i<d} |a_i| y^i <= (Σ|a_i|) y^{next}, so positivity
        // holds once top * y^{d - next} > Σ|a_i|.
        let mut abs_sum = Float::with_val(prec, 0);
        for (_, c) in &lower {
            abs_sum += Float::with_val(prec, c.abs_ref());
        }
        let ratio = Float::with_val(prec, &abs_sum / &top);
        let gap = (d - next_power) as u32;
        let root = Float::with_val(prec, ratio.root_ref(gap));
        if root > one {
            root
        } else {
            one
        }
    }
}

/// `F = (S')² + S''` for a normalizable even superpotential.
pub fn potential_from_superpotential(s: &Polynomial) -> Result<EvenPolynomial, ModelError> {
    let degree = s.degree();
    if degree % 2 == 1 {
        return Err(ModelError::OddDegree(degree));
    }
    if degree < 2 {
        return Err(ModelError::DegreeTooSmall(degree));
    }
    if *s.leading() >= 0 {
        return Err(ModelError::NonNormalizable(s.leading().to_string_radix(10, Some(12))));
    }
    s.to_even()?;
    let ds = s.derivative();
    let potential = ds.mul(&ds).add(&ds.derivative());
    potential.to_even()
}

/// `S(y) = σ y²/2 - δ y^{2k}/(2k)` as a dense polynomial.
pub fn family_superpotential(params: &ModelParams, prec: u32) -> Polynomial {
    let k = params.k() as usize;
    let mut coeffs = vec![Float::with_val(prec, 0); 2 * k + 1];
    coeffs[2] = Float::with_val(prec, params.sigma().value()) / 2u32;
    coeffs[2 * k] = -params.delta(prec) / (2 * k as u32);
    Polynomial::new(coeffs)
}

/// The family potential from its closed coefficient formula: coefficients
/// `(σ, 1, -(2k-1)δ, -2σδ, δ²)` on powers `(0, 2, 2k-2, 2k, 4k-2)`.
pub fn family_potential(params: &ModelParams, prec: u32) -> EvenPolynomial {
    let k = params.k() as usize;
    let delta = params.delta(prec);
    let sigma = params.sigma().value();
    let mut coeffs = vec![Float::with_val(prec, 0); 2 * k];
    coeffs[0] += sigma;
    coeffs[1] += 1u32;
    coeffs[k - 1] -= Float::with_val(prec, &delta * (2 * k as u32 - 1));
    coeffs[k] -= Float::with_val(prec, &delta * (2 * sigma));
    coeffs[2 * k - 1] += Float::with_val(prec, delta.square_ref());
    EvenPolynomial::new(coeffs)
}

/// `F(y)` at the precision of `y`.
pub fn eval_potential(params: &ModelParams, y: &Float) -> Float {
    family_potential(params, y.prec()).eval(y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StationaryKind {
    Minimum,
    Maximum,
}

/// Positive stationary point of `F` in the variable `z = y²`.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryPoint {
    pub z: Float,
    pub kind: StationaryKind,
}

impl StationaryPoint {
    /// Position `y = √z > 0`; the mirror point `-y` is equivalent.
    pub fn y(&self) -> Float {
        Float::with_val(self.z.prec(), self.z.sqrt_ref())
    }
}

/// `F(z)` for the family, `z = y²`.
pub fn potential_in_z(params: &ModelParams, prec: u32) -> Polynomial {
    family_potential(params, prec).in_z()
}

/// Positive stationary points of `F(z)`, sorted by `z`.
///
/// For `k = 2` the roots of `F'(z) = 3δ² z² - 4σδ z + 1 - 3δ` are used in
/// closed form, `z = (2σ ± √(1+9δ)) / (3δ)`; for larger `k` the roots are
/// isolated numerically.
pub fn analyze_minima(params: &ModelParams, ctx: &PrecisionContext) -> Vec<StationaryPoint> {
    if params.is_harmonic_limit() {
        return Vec::new();
    }
    if params.k() == 2 {
        return closed_form_k2(params, ctx);
    }
    stationary_points_numeric(params, ctx)
}

fn closed_form_k2(params: &ModelParams, ctx: &PrecisionContext) -> Vec<StationaryPoint> {
    let prec = ctx.bits;
    let delta = params.delta(prec);
    let sigma = params.sigma().value();
    let root = Float::with_val(prec, Float::with_val(prec, &delta * 9u32) + 1u32).sqrt();
    let denom = Float::with_val(prec, &delta * 3u32);
    let second = potential_in_z(params, prec).derivative().derivative();
    let mut points: Vec<StationaryPoint> = [1i32, -1]
        .into_iter()
        .map(|pm| Float::with_val(prec, Float::with_val(prec, &root * pm) + 2 * sigma) / &denom)
        .filter(|z| *z > 0)
        .map(|z| {
            let curvature = second.eval(&z);
            let kind = if curvature > 0 {
                StationaryKind::Minimum
            } else {
                StationaryKind::Maximum
            };
            StationaryPoint { z, kind }
        })
        .collect();
    points.sort_by(|a, b| a.z.partial_cmp(&b.z).unwrap_or(Ordering::Equal));
    points
}

/// Sign-changing positive roots of `F'(z)`, each refined by bisection to
/// relative width `2^{-bits/2}` and classified by the sign change.
pub fn stationary_points_numeric(params: &ModelParams, ctx: &PrecisionContext) -> Vec<StationaryPoint> {
    let prec = ctx.bits;
    let deriv = potential_in_z(params, prec).derivative();
    let upper = cauchy_bound(&deriv);
    let tol = Float::with_val(prec, 1u32) >> (prec as i32 / 2);
    let roots = sign_change_roots(&deriv, &Float::with_val(prec, 0), &upper, &tol);
    roots
        .into_iter()
        .filter(|z| *z > 0)
        .map(|z| {
            let h = Float::with_val(prec, &z * &tol).max(&tol) * 4u32;
            let left = deriv.eval(&Float::with_val(prec, &z - &h));
            let kind = if left < 0 {
                StationaryKind::Minimum
            } else {
                StationaryKind::Maximum
            };
            StationaryPoint { z, kind }
        })
        .collect()
}

/// `1 + max |a_i / a_top|`, an upper bound on the modulus of every root.
fn cauchy_bound(p: &Polynomial) -> Float {
    let top = p.leading();
    let prec = top.prec();
    let mut best = Float::with_val(prec, 0);
    for c in &p.coeffs()[..p.degree()] {
        let r = Float::with_val(prec, c / top).abs();
        if r > best {
            best = r;
        }
    }
    best + 1u32
}

/// Roots of `p` in `(lo, hi)` at which `p` changes sign. The critical points
/// of `p` split the interval into monotone pieces, each holding at most one
/// root.
fn sign_change_roots(p: &Polynomial, lo: &Float, hi: &Float, tol: &Float) -> Vec<Float> {
    let prec = lo.prec();
    match p.degree() {
        0 => return Vec::new(),
        1 => {
            let z = -Float::with_val(prec, &p.coeffs()[0] / &p.coeffs()[1]);
            return if z > *lo && z < *hi { vec![z] } else { Vec::new() };
        }
        _ => {}
    }
    let mut knots = vec![lo.clone()];
    knots.extend(sign_change_roots(&p.derivative(), lo, hi, tol));
    knots.push(hi.clone());
    let mut roots = Vec::new();
    for pair in knots.windows(2) {
        let (mut a, mut b) = (pair[0].clone(), pair[1].clone());
        let mut fa = p.eval(&a);
        let fb = p.eval(&b);
        if fa.is_zero() {
            if a > *lo {
                roots.push(a);
            }
            continue;
        }
        if fb.is_zero() || (fa.is_sign_negative() == fb.is_sign_negative()) {
            continue;
        }
        loop {
            let width = Float::with_val(prec, &b - &a);
            let scale = Float::with_val(prec, b.abs_ref()).max(&Float::with_val(prec, 1));
            if width <= Float::with_val(prec, tol * &scale) {
                break;
            }
            let mid = Float::with_val(prec, &a + &b) / 2u32;
            let fm = p.eval(&mid);
            if fm.is_zero() {
                a = mid.clone();
                b = mid;
                break;
            }
            if fm.is_sign_negative() == fa.is_sign_negative() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        roots.push(Float::with_val(prec, &a + &b) / 2u32);
    }
    roots
}
