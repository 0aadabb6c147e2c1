//! Dense symmetric eigensolver at arbitrary precision.
//!
//! The matrix is reduced to tridiagonal form `T = Qᵀ H Q` by Householder
//! reflections. Eigenvalues of `T` are located by Sturm-count bisection,
//! eigenvectors by inverse iteration on `T - λI` with a pivoted tridiagonal
//! LU, and finally mapped back through `Q`.

use rug::Float;
use thiserror::Error;

use crate::oscillator::SymMatrix;
use crate::specfun::{PrecisionContext, GUARD_BITS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EigError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is empty")]
    Empty,
    #[error("tolerance {tol} is below the attainable floor {floor}")]
    ToleranceTooSmall { tol: String, floor: String },
    #[error("inverse iteration stagnated with residual {residual} (tolerance {tol})")]
    Stagnated { residual: String, tol: String },
}

/// Lowest eigenpair with its residual certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPair {
    pub value: Float,
    /// Unit eigenvector, first significant component positive.
    pub vector: Vec<Float>,
    /// `‖H v - λ v‖₂`.
    pub residual: Float,
    pub dim: usize,
    /// `2^{40-bits} ‖H‖`: eigenvalues below this carry magnitude only.
    pub noise_floor: Float,
}

impl SpectralPair {
    pub fn below_noise_floor(&self) -> bool {
        Float::with_val(self.value.prec(), self.value.abs_ref()) <= self.noise_floor
    }
}

/// `2^{32-bits} ‖H‖∞`, the smallest tolerance accepted.
pub fn default_tolerance(h: &SymMatrix, ctx: &PrecisionContext) -> Float {
    let norm = h.norm_inf().max(&Float::with_val(ctx.bits, 1));
    norm * ctx.rel_eps(32)
}

fn noise_floor(h: &SymMatrix, ctx: &PrecisionContext) -> Float {
    let norm = h.norm_inf().max(&Float::with_val(ctx.bits, 1));
    norm * ctx.rel_eps(40)
}

/// Tridiagonal form with the reflectors that produced it.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<Float>,
    pub off: Vec<Float>,
    /// Reflector `j` is `I - τ_j v_j v_jᵀ` acting on indices `j+1..n`.
    reflectors: Vec<(Float, Vec<Float>)>,
    prec: u32,
}

impl Tridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Apply `Q` to a vector in the tridiagonal basis.
    pub fn back_transform(&self, y: &mut [Float]) {
        let n = y.len();
        for (j, (tau, v)) in self.reflectors.iter().enumerate().rev() {
            if tau.is_zero() {
                continue;
            }
            let mut s = Float::with_val(self.prec, 0);
            for (vi, yi) in v.iter().zip(&y[j + 1..n]) {
                s += vi * yi;
            }
            s *= tau;
            for (vi, yi) in v.iter().zip(&mut y[j + 1..n]) {
                *yi -= vi * &s;
            }
        }
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: &Float, off_sq: &[Float], pivmin: &Float) -> usize {
        let prec = self.prec;
        let mut count = 0;
        let mut q = Float::with_val(prec, &self.diag[0] - x);
        let mut t = Float::with_val(prec, 0);
        for i in 0.. {
            if Float::with_val(prec, q.abs_ref()) < *pivmin {
                q = Float::with_val(prec, -pivmin);
            }
            if q.is_sign_negative() {
                count += 1;
            }
            if i + 1 == self.diag.len() {
                break;
            }
            t.assign_div(&off_sq[i], &q);
            q = Float::with_val(prec, &self.diag[i + 1] - x);
            q -= &t;
        }
        count
    }

    /// Gershgorin interval containing every eigenvalue.
    fn gershgorin(&self) -> (Float, Float) {
        let prec = self.prec;
        let n = self.dim();
        let mut lo = Float::with_val(prec, f64::INFINITY);
        let mut hi = Float::with_val(prec, f64::NEG_INFINITY);
        for i in 0..n {
            let mut r = Float::with_val(prec, 0);
            if i > 0 {
                r += Float::with_val(prec, self.off[i - 1].abs_ref());
            }
            if i + 1 < n {
                r += Float::with_val(prec, self.off[i].abs_ref());
            }
            let a = Float::with_val(prec, &self.diag[i] - &r);
            let b = Float::with_val(prec, &self.diag[i] + &r);
            if a < lo {
                lo = a;
            }
            if b > hi {
                hi = b;
            }
        }
        (lo, hi)
    }
}

trait AssignDiv {
    fn assign_div(&mut self, a: &Float, b: &Float);
}

impl AssignDiv for Float {
    fn assign_div(&mut self, a: &Float, b: &Float) {
        use rug::Assign;
        self.assign(a / b);
    }
}

/// Householder reduction of a symmetric matrix at `prec` bits.
pub fn tridiagonalize(h: &SymMatrix, prec: u32) -> Tridiagonal {
    let n = h.dim();
    // Lower triangle, a[i][j] for j <= i.
    let mut a: Vec<Vec<Float>> = (0..n)
        .map(|i| (0..=i).map(|j| Float::with_val(prec, h.get(i, j))).collect())
        .collect();
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    let mut p = vec![Float::with_val(prec, 0); n];

    for k in 0..n.saturating_sub(2) {
        diag.push(a[k][k].clone());
        // x = a[k+1..n][k]
        let mut sigma = Float::with_val(prec, 0);
        for row in a.iter().skip(k + 1) {
            sigma += Float::with_val(prec, row[k].square_ref());
        }
        if sigma.is_zero() {
            off.push(Float::with_val(prec, 0));
            reflectors.push((Float::with_val(prec, 0), Vec::new()));
            continue;
        }
        let norm = sigma.clone().sqrt();
        let x0 = a[k + 1][k].clone();
        let alpha = if x0.is_sign_negative() { norm } else { -norm };
        let mut v: Vec<Float> = a.iter().skip(k + 1).map(|row| row[k].clone()).collect();
        v[0] -= &alpha;
        // vᵀv = σ - 2 α x0 + α² = 2(σ - α x0)
        let vtv = Float::with_val(prec, &sigma - Float::with_val(prec, &alpha * &x0)) * 2u32;
        let tau = Float::with_val(prec, 2u32 / vtv);
        off.push(alpha);

        // p = τ A22 v on the trailing block (indices k+1..n).
        let m = n - k - 1;
        for pi in p.iter_mut().take(m) {
            *pi = Float::with_val(prec, 0);
        }
        for i in 0..m {
            let row = &a[k + 1 + i];
            let vi = &v[i];
            let mut acc = Float::with_val(prec, 0);
            for j in 0..i {
                let aij = &row[k + 1 + j];
                acc += aij * &v[j];
                p[j] += aij * vi;
            }
            acc += &row[k + 1 + i] * vi;
            p[i] += acc;
        }
        for pi in p.iter_mut().take(m) {
            *pi *= &tau;
        }
        // w = p - (τ/2)(pᵀv) v
        let mut ptv = Float::with_val(prec, 0);
        for (pi, vi) in p.iter().zip(&v) {
            ptv += pi * vi;
        }
        let kk = Float::with_val(prec, &tau * &ptv) / 2u32;
        let w: Vec<Float> = p
            .iter()
            .take(m)
            .zip(&v)
            .map(|(pi, vi)| Float::with_val(prec, pi - Float::with_val(prec, &kk * vi)))
            .collect();
        // A22 -= v wᵀ + w vᵀ
        for i in 0..m {
            let (vi, wi) = (&v[i], &w[i]);
            let row = &mut a[k + 1 + i];
            for j in 0..=i {
                let entry = &mut row[k + 1 + j];
                *entry -= vi * &w[j];
                *entry -= wi * &v[j];
            }
        }
        reflectors.push((tau, v));
    }
    if n >= 2 {
        diag.push(a[n - 2][n - 2].clone());
        off.push(a[n - 1][n - 2].clone());
    }
    if n >= 1 {
        diag.push(a[n - 1][n - 1].clone());
    }
    Tridiagonal {
        diag,
        off,
        reflectors,
        prec,
    }
}

struct Bisector<'a> {
    t: &'a Tridiagonal,
    off_sq: Vec<Float>,
    pivmin: Float,
    abs_tol: Float,
}

impl<'a> Bisector<'a> {
    fn new(t: &'a Tridiagonal, scale: &Float) -> Self {
        let prec = t.prec;
        let off_sq = t.off.iter().map(|e| Float::with_val(prec, e.square_ref())).collect();
        let pivmin = Float::with_val(prec, scale * Float::with_val(prec, 1u32) >> (prec as i32));
        let abs_tol = Float::with_val(prec, scale * Float::with_val(prec, 1u32) >> (prec as i32 - 4));
        Self {
            t,
            off_sq,
            pivmin,
            abs_tol,
        }
    }

    /// The `index`-th smallest eigenvalue (0-based) inside `[lo, hi]`.
    fn eigenvalue(&self, index: usize, mut lo: Float, mut hi: Float) -> Float {
        let prec = self.t.prec;
        let rel = Float::with_val(prec, 1u32) >> (prec as i32 - 2);
        loop {
            let mid = Float::with_val(prec, &lo + &hi) / 2u32;
            let width = Float::with_val(prec, &hi - &lo);
            let mag = Float::with_val(prec, lo.abs_ref()).max(&Float::with_val(prec, hi.abs_ref()));
            let bound = Float::with_val(prec, &mag * &rel).max(&self.abs_tol);
            if width <= bound || mid == lo || mid == hi {
                return mid;
            }
            if self.t.sturm_count(&mid, &self.off_sq, &self.pivmin) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
}

/// Smallest eigenpair of a symmetric matrix.
pub fn eigen_smallest(h: &SymMatrix, ctx: &PrecisionContext, tol: &Float) -> Result<SpectralPair, EigError> {
    let n = h.dim();
    if n == 0 {
        return Err(EigError::Empty);
    }
    if !h.is_symmetric() {
        return Err(EigError::NotSymmetric);
    }
    let floor = default_tolerance(h, ctx);
    if *tol < floor {
        return Err(EigError::ToleranceTooSmall {
            tol: tol.to_string_radix(10, Some(6)),
            floor: floor.to_string_radix(10, Some(6)),
        });
    }
    let wp = ctx.bits + GUARD_BITS;
    let t = tridiagonalize(h, wp);
    let scale = Float::with_val(wp, h.norm_inf()).max(&Float::with_val(wp, 1));
    let bis = Bisector::new(&t, &scale);
    let (lo, hi) = t.gershgorin();
    let lambda = bis.eigenvalue(0, lo, hi);

    let pair = inverse_iteration(h, &t, &lambda, &scale, ctx, tol)?;
    Ok(SpectralPair {
        noise_floor: noise_floor(h, ctx),
        ..pair
    })
}

/// All eigenvalues in ascending order, each located by Sturm bisection.
pub fn eigen_all(h: &SymMatrix, ctx: &PrecisionContext, tol: &Float) -> Result<Vec<Float>, EigError> {
    let n = h.dim();
    if n == 0 {
        return Err(EigError::Empty);
    }
    if !h.is_symmetric() {
        return Err(EigError::NotSymmetric);
    }
    let floor = default_tolerance(h, ctx);
    if *tol < floor {
        return Err(EigError::ToleranceTooSmall {
            tol: tol.to_string_radix(10, Some(6)),
            floor: floor.to_string_radix(10, Some(6)),
        });
    }
    let wp = ctx.bits + GUARD_BITS;
    let t = tridiagonalize(h, wp);
    let scale = Float::with_val(wp, h.norm_inf()).max(&Float::with_val(wp, 1));
    let bis = Bisector::new(&t, &scale);
    let (lo, hi) = t.gershgorin();
    let mut out = Vec::with_capacity(n);
    let mut floor_lo = lo;
    for i in 0..n {
        let value = bis.eigenvalue(i, floor_lo.clone(), hi.clone());
        floor_lo = Float::with_val(wp, &value - &bis.abs_tol).min(&value.clone());
        out.push(Float::with_val(ctx.bits, &value));
    }
    Ok(out)
}

/// Pivoted LU of a tridiagonal matrix (sub `dl`, diagonal `d`, super `du`).
struct TridiagonalLu {
    dl: Vec<Float>,
    d: Vec<Float>,
    du: Vec<Float>,
    du2: Vec<Float>,
    swap: Vec<bool>,
}

impl TridiagonalLu {
    fn factor(mut dl: Vec<Float>, mut d: Vec<Float>, mut du: Vec<Float>, pivmin: &Float) -> Self {
        let n = d.len();
        let prec = pivmin.prec();
        let mut du2 = vec![Float::with_val(prec, 0); n.saturating_sub(2)];
        let mut swap = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if Float::with_val(prec, d[i].abs_ref()) >= Float::with_val(prec, dl[i].abs_ref()) {
                if d[i].is_zero() {
                    d[i] = pivmin.clone();
                }
                let fact = Float::with_val(prec, &dl[i] / &d[i]);
                let delta = Float::with_val(prec, &fact * &du[i]);
                d[i + 1] -= delta;
                dl[i] = fact;
            } else {
                let fact = Float::with_val(prec, &d[i] / &dl[i]);
                d[i] = dl[i].clone();
                dl[i] = fact.clone();
                let temp = du[i].clone();
                du[i] = d[i + 1].clone();
                d[i + 1] = Float::with_val(prec, &temp - Float::with_val(prec, &fact * &d[i + 1]));
                if i + 2 < n {
                    du2[i] = du[i + 1].clone();
                    du[i + 1] = -Float::with_val(prec, &fact * &du[i + 1]);
                }
                swap[i] = true;
            }
        }
        if d[n - 1].is_zero() {
            d[n - 1] = pivmin.clone();
        }
        Self { dl, d, du, du2, swap }
    }

    fn solve(&self, b: &mut [Float]) {
        let n = self.d.len();
        let prec = self.d[0].prec();
        for i in 0..n.saturating_sub(1) {
            if self.swap[i] {
                let temp = Float::with_val(prec, &b[i] - Float::with_val(prec, &self.dl[i] * &b[i + 1]));
                b.swap(i, i + 1);
                b[i + 1] = temp;
            } else {
                let delta = Float::with_val(prec, &self.dl[i] * &b[i]);
                b[i + 1] -= delta;
            }
        }
        for i in (0..n).rev() {
            let mut acc = b[i].clone();
            if i + 1 < n {
                acc -= Float::with_val(prec, &self.du[i] * &b[i + 1]);
            }
            if i + 2 < n {
                acc -= Float::with_val(prec, &self.du2[i] * &b[i + 2]);
            }
            b[i] = acc / &self.d[i];
        }
    }
}

fn normalize(v: &mut [Float]) {
    let prec = v[0].prec();
    let mut s = Float::with_val(prec, 0);
    for x in v.iter() {
        s += Float::with_val(prec, x.square_ref());
    }
    let norm = s.sqrt();
    for x in v.iter_mut() {
        *x /= &norm;
    }
}

/// Flip so that the first component above `2^{-bits/2}` is positive.
pub fn apply_sign_convention(v: &mut [Float], bits: u32) {
    let threshold = Float::with_val(bits, 1u32) >> (bits as i32 / 2);
    if let Some(first) = v.iter().find(|x| Float::with_val(bits, x.abs_ref()) > threshold) {
        if first.is_sign_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

fn residual_norm(h: &SymMatrix, v: &[Float], lambda: &Float, prec: u32) -> Float {
    let hv = h.matvec(v);
    let mut s = Float::with_val(prec, 0);
    for (a, b) in hv.iter().zip(v) {
        let r = Float::with_val(prec, a - Float::with_val(prec, lambda * b));
        s += r.square();
    }
    s.sqrt()
}

fn inverse_iteration(
    h: &SymMatrix,
    t: &Tridiagonal,
    lambda: &Float,
    scale: &Float,
    ctx: &PrecisionContext,
    tol: &Float,
) -> Result<SpectralPair, EigError> {
    let n = t.dim();
    let wp = t.prec;
    let pivmin = Float::with_val(wp, scale * Float::with_val(wp, 1u32) >> (wp as i32));
    let shifted: Vec<Float> = t.diag.iter().map(|d| Float::with_val(wp, d - lambda)).collect();
    let lu = TridiagonalLu::factor(t.off.clone(), shifted, t.off.clone(), &pivmin);

    let mut best: Option<(Float, Vec<Float>)> = None;
    for start in 0..2u64 {
        // Deterministic starting vectors: all ones, then a fixed
        // pseudo-random vector in case the first is nearly orthogonal.
        let mut y: Vec<Float> = (0..n)
            .map(|i| {
                if start == 0 {
                    Float::with_val(wp, 1)
                } else {
                    let r = (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 11;
                    Float::with_val(wp, r as f64 / (1u64 << 53) as f64 - 0.5)
                }
            })
            .collect();
        for _ in 0..4 {
            lu.solve(&mut y);
            normalize(&mut y);
        }
        let mut v = y.clone();
        t.back_transform(&mut v);
        normalize(&mut v);
        let residual = residual_norm(h, &v, lambda, wp);
        let done = residual <= *tol;
        if best.as_ref().is_none_or(|(r, _)| residual < *r) {
            best = Some((residual, v));
        }
        if done {
            break;
        }
    }
    let (residual, mut v) = best.expect("at least one start vector");
    if residual > *tol {
        return Err(EigError::Stagnated {
            residual: residual.to_string_radix(10, Some(6)),
            tol: tol.to_string_radix(10, Some(6)),
        });
    }
    apply_sign_convention(&mut v, ctx.bits);
    Ok(SpectralPair {
        value: Float::with_val(ctx.bits, lambda),
        vector: v.into_iter().map(|x| Float::with_val(ctx.bits, x)).collect(),
        residual: Float::with_val(ctx.bits, residual),
        dim: n,
        noise_floor: Float::with_val(ctx.bits, 0),
    })
}
