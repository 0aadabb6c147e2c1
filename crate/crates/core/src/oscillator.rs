//! Harmonic-oscillator basis algebra: position-power matrices and the
//! truncated Hamiltonian.
//!
//! On the unnormalized states `|n) = √(n!) |n⟩` the ladder operators act
//! with integer coefficients, `a†|n) = |n+1)` and `a|n) = n|n-1)`, so
//! `(a + a†)^p |n) = Σ_m C_{mn} |m)` with `C_{mn} ∈ ℤ` and
//!
//! ```text
//! ⟨m| y^p |n⟩ = 2^{-p/2} C_{mn} √(m!/n!)
//! ```
//!
//! Every entry is computed from exact integers and rationals and rounded
//! once, so truncation never contaminates the last rows of a block.

use rug::{Float, Integer, Rational};

use crate::model::ModelParams;
use crate::specfun::{gamma_ratio, log2_abs, PrecisionContext, SpecfunError};

/// Which basis states a Hamiltonian block spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Assembly {
    /// All states `n < N`.
    Full,
    /// Even states `n < N` (the ground-state sector).
    Even,
    /// Odd states `n < N`.
    Odd,
}

impl Assembly {
    pub fn basis(self, dim: usize) -> Vec<usize> {
        match self {
            Assembly::Full => (0..dim).collect(),
            Assembly::Even => (0..dim).step_by(2).collect(),
            Assembly::Odd => (1..dim).step_by(2).collect(),
        }
    }
}

/// Dense real symmetric matrix. Row `i` and column `i` belong to the basis
/// state `basis[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    prec: u32,
    dim: usize,
    data: Vec<Float>,
    basis: Vec<usize>,
    label: String,
}

impl SymMatrix {
    pub fn zeros(dim: usize, prec: u32) -> Self {
        Self {
            prec,
            dim,
            data: vec![Float::with_val(prec, 0); dim * dim],
            basis: (0..dim).collect(),
            label: String::new(),
        }
    }

    /// Build from the lower triangle `f(i, j)` with `i >= j`.
    pub fn from_lower<F>(dim: usize, prec: u32, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Float,
    {
        let mut m = Self::zeros(dim, prec);
        for i in 0..dim {
            for j in 0..=i {
                let v = f(i, j);
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn diagonal(values: &[Float], prec: u32) -> Self {
        let mut m = Self::zeros(values.len(), prec);
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, Float::with_val(prec, v));
        }
        m
    }

    /// Rejects a general square array whose transpose differs.
    pub fn from_rows(rows: &[Vec<Float>], prec: u32) -> Result<Self, NotSymmetric> {
        let dim = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(NotSymmetric { row: i, col: row.len() });
            }
            for j in 0..i {
                if row[j] != rows[j][i] {
                    return Err(NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self::from_lower(dim, prec, |i, j| Float::with_val(prec, &rows[i][j])))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn with_basis(mut self, basis: Vec<usize>) -> Self {
        assert_eq!(basis.len(), self.dim);
        self.basis = basis;
        self
    }

    pub fn get(&self, i: usize, j: usize) -> &Float {
        &self.data[i * self.dim + j]
    }

    /// Writes both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Float) {
        let d = self.dim;
        if i != j {
            self.data[j * d + i] = v.clone();
        }
        self.data[i * d + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Float] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Leading `n × n` block.
    pub fn leading(&self, n: usize) -> SymMatrix {
        let mut m = SymMatrix::from_lower(n, self.prec, |i, j| self.get(i, j).clone());
        m.basis = self.basis[..n].to_vec();
        m.label = self.label.clone();
        m
    }

    pub fn matvec(&self, v: &[Float]) -> Vec<Float> {
        let prec = self.prec.max(v.first().map_or(self.prec, |x| x.prec()));
        (0..self.dim)
            .map(|i| {
                let mut acc = Float::with_val(prec, 0);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Largest absolute row sum; bounds the spectral radius.
    pub fn norm_inf(&self) -> Float {
        let mut best = Float::with_val(self.prec, 0);
        for i in 0..self.dim {
            let mut s = Float::with_val(self.prec, 0);
            for a in self.row(i) {
                s += Float::with_val(self.prec, a.abs_ref());
            }
            if s > best {
                best = s;
            }
        }
        best
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Number of nonzero entries above the diagonal in the widest row.
    pub fn bandwidth(&self) -> usize {
        let mut b = 0;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if !self.get(i, j).is_zero() {
                    b = b.max(j - i);
                }
            }
        }
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("matrix is not symmetric at ({row}, {col})")]
pub struct NotSymmetric {
    pub row: usize,
    pub col: usize,
}

/// Integer coefficients of `(a + a†)^p |n)` for the requested powers, each
/// as a window indexed by `m - (n - pmax)`. Powers must be ascending.
struct LadderColumn {
    offset: i64,
    snapshots: Vec<Vec<Integer>>,
}

impl LadderColumn {
    fn new(n: usize, powers: &[u32]) -> Self {
        let pmax = *powers.last().unwrap_or(&0) as usize;
        let width = 2 * pmax + 1;
        let offset = n as i64 - pmax as i64;
        let mut v = vec![Integer::new(); width];
        v[pmax] = Integer::from(1);
        let mut snapshots = Vec::with_capacity(powers.len());
        let mut applied = 0u32;
        for &p in powers {
            while applied < p {
                let mut next = vec![Integer::new(); width];
                for (idx, c) in v.iter().enumerate() {
                    if *c == 0 {
                        continue;
                    }
                    let m = offset + idx as i64;
                    // a† |m) = |m+1)
                    next[idx + 1] += c;
                    // a |m) = m |m-1)
                    if m > 0 {
                        next[idx - 1] += Integer::from(c * m);
                    }
                }
                v = next;
                applied += 1;
            }
            snapshots.push(v.clone());
        }
        Self { offset, snapshots }
    }

    fn coefficient(&self, which: usize, m: usize) -> Integer {
        let idx = m as i64 - self.offset;
        if idx < 0 || idx as usize >= self.snapshots[which].len() {
            return Integer::new();
        }
        self.snapshots[which][idx as usize].clone()
    }
}

/// `(n+1)(n+2)...(m)` for `m >= n`.
fn rising_product(n: usize, m: usize) -> Integer {
    let mut p = Integer::from(1);
    for t in (n + 1)..=m {
        p *= t as u32;
    }
    p
}

/// `sign(r) √(r² q)`, correctly rounded.
fn signed_sqrt_product(r: &Rational, q: &Integer, prec: u32) -> Float {
    if *r == 0 {
        return Float::with_val(prec, 0);
    }
    let square = Rational::from(r.square_ref()) * q;
    let mut v = Float::with_val(prec, &square).sqrt();
    if *r < 0 {
        v = -v;
    }
    v
}

/// Exact `⟨m| y^p |n⟩` rounded to `prec` bits.
pub fn x_power_entry(p: u32, m: usize, n: usize, prec: u32) -> Float {
    let (lo, hi) = if m >= n { (n, m) } else { (m, n) };
    if (hi - lo) % 2 != p as usize % 2 || hi - lo > p as usize {
        return Float::with_val(prec, 0);
    }
    let col = LadderColumn::new(lo, &[p]);
    ladder_entry(&col.coefficient(0, hi), p, lo, hi, prec)
}

/// `C √(m!/n!) / 2^{p/2}` from `entry² = C² (m!/n!) / 2^p`, one rounding.
fn ladder_entry(c: &Integer, p: u32, n: usize, m: usize, prec: u32) -> Float {
    if *c == 0 {
        return Float::with_val(prec, 0);
    }
    let square = Rational::from((Integer::from(c.square_ref()) * rising_product(n, m), Integer::from(1) << p));
    let v = Float::with_val(prec, &square).sqrt();
    if *c < 0 {
        -v
    } else {
        v
    }
}

/// The matrix of `y^p` on the states `n < dim`.
pub fn x_power_matrix(p: u32, dim: usize, ctx: &PrecisionContext) -> SymMatrix {
    x_power_block(p, &Assembly::Full.basis(dim), ctx.bits).with_label(format!("y^{p}"))
}

fn x_power_block(p: u32, basis: &[usize], prec: u32) -> SymMatrix {
    let dim = basis.len();
    let mut out = SymMatrix::zeros(dim, prec).with_basis(basis.to_vec());
    for (j, &n) in basis.iter().enumerate() {
        let col = LadderColumn::new(n, &[p]);
        for (i, &m) in basis.iter().enumerate().skip(j) {
            if m - n > p as usize {
                break;
            }
            if (m - n) % 2 != p as usize % 2 {
                continue;
            }
            let c = col.coefficient(0, m);
            if c != 0 {
                out.set(i, j, ladder_entry(&c, p, n, m, prec));
            }
        }
    }
    out
}

/// `⟨m| y^p |n⟩` from the double Hermite sum
///
/// ```text
/// π^{-1/2} √(m! n! / 2^{m+n}) Σ_{j ≤ m/2} Σ_{i ≤ n/2}
///     (-1)^{i+j} 2^{m+n-2(i+j)} / (i! j! (m-2j)! (n-2i)!) Γ((p + m + n - 2i - 2j + 1)/2)
/// ```
///
/// The alternating sum cancels heavily for large `m, n`; the working
/// precision is raised until the measured cancellation fits.
pub fn x_power_entry_gamma(p: u32, m: usize, n: usize, ctx: &PrecisionContext) -> Result<Float, SpecfunError> {
    if (m + n + p as usize) % 2 == 1 {
        return Ok(Float::with_val(ctx.bits, 0));
    }
    let mut wp = ctx.bits + 64;
    for _ in 0..4 {
        let wctx = ctx.widened(wp - ctx.bits);
        let mut sum = Float::with_val(wp, 0);
        let mut max_term = f64::NEG_INFINITY;
        for j in 0..=m / 2 {
            for i in 0..=n / 2 {
                let power = (m + n - 2 * (i + j)) as u32;
                let denom = Integer::from(Integer::factorial(i as u32))
                    * Integer::from(Integer::factorial(j as u32))
                    * Integer::from(Integer::factorial((m - 2 * j) as u32))
                    * Integer::from(Integer::factorial((n - 2 * i) as u32));
                let coeff = Rational::from((Integer::from(1) << power, denom));
                let g = gamma_ratio((p as usize + m + n - 2 * i - 2 * j + 1) as i64, 2, &wctx)?;
                let mut term = Float::with_val(wp, &coeff) * g;
                if (i + j) % 2 == 1 {
                    term = -term;
                }
                max_term = max_term.max(log2_abs(&term));
                sum += term;
            }
        }
        let pi = Float::with_val(wp, rug::float::Constant::Pi);
        let pref_sq = Rational::from((
            Integer::from(Integer::factorial(m as u32)) * Integer::from(Integer::factorial(n as u32)),
            Integer::from(1) << (m + n) as u32,
        ));
        let pref = Float::with_val(wp, &pref_sq).sqrt() / pi.sqrt();
        let pref_log = log2_abs(&pref);
        let value = sum * pref;
        let loss = max_term + pref_log - log2_abs(&value).max(0.0);
        if loss + (ctx.bits as f64) + 32.0 <= wp as f64 {
            return Ok(Float::with_val(ctx.bits, value));
        }
        wp = (ctx.bits as f64 + loss + 64.0).ceil() as u32;
    }
    Err(SpecfunError::Precision(format!("gamma-sum entry ({m}, {n}) of y^{p}")))
}

/// Assembly coefficients of the family Hamiltonian
/// `H = diag(n + 1/2 + σ/2) - ((2k-1)δ/2) y^{2k-2} - σδ y^{2k} + (δ²/2) y^{4k-2}`.
fn family_terms(params: &ModelParams) -> (Rational, Vec<(u32, Rational)>) {
    let k = params.k();
    let delta = params.delta_exact();
    let sigma = params.sigma().value();
    let shift = Rational::from((1 + sigma, 2));
    let terms = vec![
        (2 * k - 2, -Rational::from(&delta * Rational::from((2 * k as i64 - 1, 2)))),
        (2 * k, -Rational::from(&delta * sigma)),
        (4 * k - 2, Rational::from(delta.square_ref()) / 2u32),
    ];
    (shift, terms)
}

/// Hamiltonian of an arbitrary polynomial perturbation of the harmonic
/// oscillator: `diag(n + shift) + Σ c_p y^p`, all `p` even, on `basis`.
pub fn polynomial_hamiltonian(shift: &Rational, terms: &[(u32, Rational)], basis: &[usize], prec: u32) -> SymMatrix {
    polynomial_operator(Some(shift), terms, basis, prec)
}

/// The matrix of `Σ c_p y^p` alone, all `p` even, on `basis`.
pub fn polynomial_matrix(terms: &[(u32, Rational)], basis: &[usize], prec: u32) -> SymMatrix {
    polynomial_operator(None, terms, basis, prec)
}

fn polynomial_operator(shift: Option<&Rational>, terms: &[(u32, Rational)], basis: &[usize], prec: u32) -> SymMatrix {
    let mut sorted: Vec<(u32, Rational)> = terms.iter().filter(|(_, c)| *c != 0).cloned().collect();
    sorted.sort_by_key(|(p, _)| *p);
    assert!(sorted.iter().all(|(p, _)| p % 2 == 0), "only even powers are supported");
    let powers: Vec<u32> = sorted.iter().map(|(p, _)| *p).collect();
    let reach = powers.last().copied().unwrap_or(0) as usize;
    let dim = basis.len();
    let mut out = SymMatrix::zeros(dim, prec).with_basis(basis.to_vec());
    for (j, &n) in basis.iter().enumerate() {
        let col = LadderColumn::new(n, &powers);
        for (i, &m) in basis.iter().enumerate().skip(j) {
            if m - n > reach {
                break;
            }
            if (m - n) % 2 == 1 {
                continue;
            }
            // Every power is even, so 2^{p/2} is an integer and √(m!/n!)
            // factors out of the whole entry.
            let mut r = Rational::new();
            for (which, (p, c)) in sorted.iter().enumerate() {
                let cm = col.coefficient(which, m);
                if cm == 0 {
                    continue;
                }
                let term = Rational::from(c * Rational::from(cm)) / Rational::from(Integer::from(1) << (p / 2));
                r += term;
            }
            if let (true, Some(shift)) = (m == n, shift) {
                r += Rational::from(shift + n as u32);
            }
            if r != 0 {
                out.set(i, j, signed_sqrt_product(&r, &rising_product(n, m), prec));
            }
        }
    }
    out
}

/// `H^N` on the states `n < dim`.
pub fn hamiltonian_matrix(params: &ModelParams, dim: usize, ctx: &PrecisionContext) -> SymMatrix {
    hamiltonian_block(params, dim, Assembly::Full, ctx)
}

/// `H^N` restricted to one parity sector of the states `n < dim`. The
/// family is reflection symmetric, so the full matrix is the direct sum of
/// the two sectors.
pub fn hamiltonian_block(params: &ModelParams, dim: usize, assembly: Assembly, ctx: &PrecisionContext) -> SymMatrix {
    let (shift, terms) = family_terms(params);
    polynomial_hamiltonian(&shift, &terms, &assembly.basis(dim), ctx.bits).with_label(format!("H[{params}; N={dim}; {assembly:?}]"))
}
