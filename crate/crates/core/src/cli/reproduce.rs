//! Recomputation of the published tables, side by side with the printed
//! values.

use rug::{Float, Rational};

use super::golden::{self, CoefficientReference};
use super::table::{decimal, short, Table};
use super::CliError;
use crate::exact::{norm_sq, NormMethod};
use crate::model::{parse_rational, ModelParams, Sign};
use crate::pt::{delta_for_epsilon, pt_energy, pt_vs_rrm};
use crate::rrm::{compare_exact, default_bits, run_point};
use crate::specfun::PrecisionContext;

/// Relative tolerance for printed values above [`SMALL_VALUE`].
pub const RELATIVE_TOLERANCE: f64 = 1e-10;
/// Printed eigenvalues at or below this are compared by magnitude only.
pub const SMALL_VALUE: f64 = 1e-10;
/// Allowed magnitude factor for small eigenvalues.
pub const MAGNITUDE_FACTOR: f64 = 100.0;

fn ctx_for(bits: u32, digits: u32) -> Result<PrecisionContext, CliError> {
    Ok(PrecisionContext::with_digits(bits, digits.min(PrecisionContext::max_digits_for(bits)))?)
}

fn parse(text: &str, prec: u32) -> Float {
    Float::with_val(prec, &parse_rational(text).expect("reference values are decimal"))
}

fn params(k: u32, epsilon: &str) -> ModelParams {
    ModelParams::parse(k, Sign::Plus, epsilon).expect("reference parameters are valid")
}

/// Builds the table `id`; `prec` overrides the per-run default precision.
pub fn table(id: u32, prec: Option<u32>, digits: u32) -> Result<Table, CliError> {
    match id {
        1 => normalization(prec.unwrap_or(256), digits),
        2..=6 => eigenvalues(id, prec, digits),
        7..=11 => coefficients(id, prec, digits),
        12 => perturbation(prec.unwrap_or(256), digits),
        13 => norm_errors(prec, digits),
        _ => Err(CliError::Usage(format!("no table {id}; choose 1 to 13"))),
    }
}

fn normalization(bits: u32, digits: u32) -> Result<Table, CliError> {
    let ctx = ctx_for(bits, digits)?;
    let mut t = Table::new(
        "Table 1: closed-form norm against quadrature, epsilon = 2",
        bits,
        ctx.target_digits,
        &["k", "closed_form", "quadrature", "relative_difference", "reference_adaptive", "reference_trapezoidal"],
    );
    for r in golden::NORMALIZATION {
        let p = params(r.k, "2");
        let closed = norm_sq(&p, NormMethod::Closed, &ctx)?;
        let quad = norm_sq(&p, NormMethod::Quadrature, &ctx)?;
        let rel = Float::with_val(bits, &closed - &quad).abs() / &closed;
        t.push(vec![
            r.k.to_string(),
            decimal(&closed, ctx.target_digits),
            decimal(&quad, ctx.target_digits),
            short(&rel),
            r.adaptive.into(),
            r.trapezoidal.into(),
        ]);
    }
    t.note("the k = 4 closed form carries epsilon^2 on its first hypergeometric term");
    Ok(t)
}

/// Verdict for one eigenvalue against its printed value.
pub fn eigen_agreement(ours: &Float, reference: &Float, tolerance: &Float) -> (Float, bool) {
    let prec = ours.prec();
    let abs_ref = Float::with_val(prec, reference.abs_ref());
    if abs_ref > SMALL_VALUE {
        let rel = Float::with_val(prec, ours - reference).abs() / &abs_ref;
        let ok = rel <= RELATIVE_TOLERANCE;
        (rel, ok)
    } else {
        let abs_ours = Float::with_val(prec, ours.abs_ref());
        let ratio = Float::with_val(prec, &abs_ours / &abs_ref);
        let nonneg = *ours >= Float::with_val(prec, -tolerance);
        let ok = nonneg && ratio <= MAGNITUDE_FACTOR && ratio >= 1.0 / MAGNITUDE_FACTOR;
        (ratio, ok)
    }
}

fn eigenvalues(id: u32, prec: Option<u32>, digits: u32) -> Result<Table, CliError> {
    let refs: Vec<_> = golden::eigenvalues_of(id).collect();
    let max_bits = refs.iter().map(|r| prec.unwrap_or(default_bits(r.truncation))).max().unwrap_or(256);
    let ctx_digits = digits.min(PrecisionContext::max_digits_for(max_bits.min(prec.unwrap_or(256))));
    let first = &refs[0];
    let title = if id == 6 {
        "Table 6: ground-state eigenvalues, epsilon = 0.33, k = 2, 3, 4".to_string()
    } else {
        format!("Table {id}: ground-state eigenvalues, epsilon = {}, k = {}", first.epsilon, first.k)
    };
    let mut t = Table::new(
        title,
        max_bits,
        ctx_digits,
        &["k", "N", "bits", "lambda0", "sector", "tolerance", "reference", "agreement", "verdict", "double_noise"],
    );
    for r in refs {
        let bits = prec.unwrap_or(default_bits(r.truncation));
        let ctx = ctx_for(bits, ctx_digits)?;
        let run = run_point(&params(r.k, r.epsilon), r.truncation, &ctx)?;
        let reference = parse(r.value, bits);
        let (agreement, ok) = eigen_agreement(&run.lambda0, &reference, &run.tolerance);
        t.push(vec![
            r.k.to_string(),
            r.truncation.to_string(),
            bits.to_string(),
            decimal(&run.lambda0, ctx_digits),
            format!("{:?}", run.sector).to_lowercase(),
            short(&run.tolerance),
            r.value.into(),
            short(&agreement),
            if ok { "match" } else { "differs" }.into(),
            short(&run.double_precision_noise()),
        ]);
    }
    t.note(format!(
        "agreement is the relative error when |reference| > {SMALL_VALUE:e}, else the magnitude ratio |lambda0|/|reference| (match within {MAGNITUDE_FACTOR})"
    ));
    t.note("double_noise is 2^-53 ‖H‖∞, the rounding scale of a double-precision run");
    Ok(t)
}

fn coefficient_block(t: &mut Table, r: &CoefficientReference, prec: Option<u32>, digits: u32) -> Result<(), CliError> {
    let bits = prec.unwrap_or(default_bits(r.truncation));
    let ctx = ctx_for(bits, digits)?;
    let rep = compare_exact(&params(r.k, r.epsilon), r.truncation, &ctx)?;
    for (i, reference) in r.rows.iter().enumerate() {
        let row = &rep.rows[i];
        let err = row.abs_error();
        let exact_diff = Float::with_val(bits, &row.exact - parse(reference.exact, bits)).abs();
        let ratio = match reference.error {
            Some(e) => short(&Float::with_val(bits, &err / parse(e, bits))),
            None => "-".into(),
        };
        t.push(vec![
            r.truncation.to_string(),
            row.n.to_string(),
            decimal(&row.exact, ctx.target_digits),
            decimal(&row.approx, ctx.target_digits),
            short(&err),
            reference.exact.into(),
            reference.approx.into(),
            reference.error.unwrap_or("-").into(),
            short(&exact_diff),
            ratio,
        ]);
    }
    t.note(format!(
        "N = {}: lambda0 {}, norm error {}",
        r.truncation,
        decimal(&rep.lambda0, ctx.target_digits),
        short(&rep.norm_error)
    ));
    Ok(())
}

fn coefficients(id: u32, prec: Option<u32>, digits: u32) -> Result<Table, CliError> {
    let refs: Vec<_> = golden::coefficients_of(id).collect();
    let first = refs[0];
    let bits = refs.iter().map(|r| prec.unwrap_or(default_bits(r.truncation))).max().unwrap_or(256);
    let mut t = Table::new(
        format!("Table {id}: leading coefficients, epsilon = {}, k = {}", first.epsilon, first.k),
        bits,
        digits,
        &["N", "n", "exact", "approx", "abs_error", "reference_exact", "reference_approx", "reference_error", "exact_difference", "error_ratio"],
    );
    for r in refs {
        coefficient_block(&mut t, r, prec, digits)?;
    }
    t.note("error_ratio is abs_error / reference_error");
    Ok(t)
}

fn perturbation(bits: u32, digits: u32) -> Result<Table, CliError> {
    let ctx = ctx_for(bits, digits)?;
    let eps = parse_rational(golden::PT_EPSILON).expect("valid");
    let d = ctx.target_digits;
    let mut t = Table::new(
        "Table 12: perturbation theory against Rayleigh-Ritz, k = 2, epsilon = 0.33",
        bits,
        d,
        &["N", "pt_energy", "rrm_lambda0", "reference_pt", "reference_rrm", "pt_norm_deviation", "rrm_norm_deviation"],
    );
    for (n, rrm_ref) in golden::PT_TRUNCATIONS.iter().zip(golden::PT_RRM_ENERGIES) {
        let c = pt_vs_rrm(&eps, *n, &ctx)?;
        t.push(vec![
            n.to_string(),
            decimal(c.pt_energy(), d),
            decimal(c.rrm_energy(), d),
            golden::PT_ENERGY.into(),
            rrm_ref.into(),
            decimal(c.pt_norm_deviation(), d),
            short(&c.rrm_norm_deviation()),
        ]);
    }
    let alt = pt_energy(&Rational::from((11, 1000)), golden::PT_TRUNCATIONS[0], &ctx)?;
    let main = pt_energy(&delta_for_epsilon(&eps), golden::PT_TRUNCATIONS[0], &ctx)?;
    t.note(format!(
        "delta = 0.33^4 gives {}; delta = 0.011 gives {}",
        decimal(&main.energy, d),
        decimal(&alt.energy, d)
    ));
    t.note(format!(
        "printed deviations: perturbation theory {}, Rayleigh-Ritz {}",
        golden::PT_NORM_DEVIATION,
        golden::PT_RRM_NORM_DEVIATION
    ));
    Ok(t)
}

fn norm_errors(prec: Option<u32>, digits: u32) -> Result<Table, CliError> {
    let bits = golden::NORM_ERRORS.iter().map(|r| prec.unwrap_or(default_bits(r.truncation))).max().unwrap_or(256);
    let mut t = Table::new(
        "Table 13: norm error |‖c_exact‖ - ‖c_approx‖| over n <= N",
        bits,
        digits,
        &["k", "epsilon", "N", "norm_error", "unit_norm_error", "reference", "verdict"],
    );
    for r in golden::NORM_ERRORS {
        let b = prec.unwrap_or(default_bits(r.truncation));
        let ctx = ctx_for(b, digits)?;
        let rep = compare_exact(&params(r.k, r.epsilon), r.truncation, &ctx)?;
        let reference = parse(r.value, b);
        let ok = if r.floor {
            rep.norm_error < reference
        } else {
            let ratio = Float::with_val(b, &rep.norm_error / &reference);
            ratio <= 3.0 && ratio >= 1.0 / 3.0
        };
        let printed = if r.floor { format!("0 ± {}", r.value) } else { r.value.to_string() };
        t.push(vec![
            r.k.to_string(),
            r.epsilon.into(),
            r.truncation.to_string(),
            short(&rep.norm_error),
            short(&rep.norm_error_unit),
            printed,
            if ok { "match" } else { "differs" }.into(),
        ]);
    }
    t.note("unit_norm_error is |1 - ‖c_approx‖|, the other reading of the definition");
    t.note("rows printed as 0 ± x match when the computed error is below x");
    Ok(t)
}
