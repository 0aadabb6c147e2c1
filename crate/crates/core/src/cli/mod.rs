//! Command-line front end.
//!
//! Exit status is 0 on success, 2 for invalid flags or parameters and 3
//! when a computation fails.

pub mod cache;
pub mod golden;
pub mod reproduce;
pub mod table;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rug::Float;
use thiserror::Error;

use crate::eig::EigError;
use crate::exact::{norm_sq, normalized_coefficients, ExactError, NormMethod};
use crate::model::{analyze_minima, eval_potential, parse_rational, ModelError, ModelParams, Sign, StationaryKind};
use crate::pt::{pt_vs_rrm, PtError};
use crate::rrm::{compare_exact, default_bits, run_point, RrmError};
use crate::specfun::{PrecisionContext, SpecfunError};
use cache::{Cache, ParamsRecord, Request, RunRecord, TOOL_VERSION};
use table::{decimal, short, Format, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Compute(_) | CliError::Io(_) => EXIT_COMPUTE,
        }
    }
}

macro_rules! compute_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Compute(e.to_string())
            }
        })*
    };
}
compute_error!(RrmError, ExactError, PtError, EigError);

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SpecfunError> for CliError {
    fn from(e: SpecfunError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "ritzlab", version, about = "Rayleigh-Ritz and perturbation-theory benchmarks on anharmonic oscillators with exact ground states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct ModelArgs {
    #[arg(long)]
    pub k: u32,
    /// `ε = l/L`, as a decimal or a fraction such as `1/3`.
    #[arg(long)]
    pub epsilon: String,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sigma: i32,
}

#[derive(Debug, Args, Clone)]
pub struct OutputArgs {
    /// Working precision in bits (default 256, or 320 above N = 200).
    #[arg(long)]
    pub prec: Option<u32>,
    /// Significant digits printed (default 16).
    #[arg(long)]
    pub digits: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    /// Write the table here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Neither read nor write the run cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Args, Clone)]
pub struct DimArgs {
    /// Comma-separated truncations, ascending.
    #[arg(long, value_delimiter = ',', conflicts_with = "dim")]
    pub dims: Option<Vec<usize>>,
    #[arg(long)]
    pub dim: Option<usize>,
}

impl DimArgs {
    fn list(&self) -> Result<Vec<usize>, CliError> {
        match (&self.dims, self.dim) {
            (Some(d), _) if !d.is_empty() => Ok(d.clone()),
            (_, Some(n)) => Ok(vec![n]),
            _ => Err(CliError::Usage("one of --dims or --dim is required".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the potential or list its stationary points.
    Potential {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "minima", required_unless_present = "minima")]
        eval: Option<String>,
        #[arg(long)]
        minima: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rayleigh-Ritz ground-state energies.
    Rrm {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        dims: DimArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact normalized Fourier coefficients of the ground state.
    Exact {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact against Rayleigh-Ritz coefficients, with the norm error.
    Compare {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Second-order perturbation theory next to Rayleigh-Ritz (k = 2).
    Pt {
        #[arg(long)]
        epsilon: String,
        #[command(flatten)]
        dims: DimArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recompute one of the published tables 1 to 13.
    Reproduce {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=13))]
        table: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn model_params(m: &ModelArgs) -> Result<ModelParams, CliError> {
    let sigma = Sign::from_i32(m.sigma).ok_or_else(|| CliError::Usage(format!("sigma must be +1 or -1, got {}", m.sigma)))?;
    Ok(ModelParams::parse(m.k, sigma, &m.epsilon)?)
}

fn params_record(p: &ModelParams) -> ParamsRecord {
    ParamsRecord {
        k: p.k(),
        sigma: p.sigma().value(),
        epsilon: p.epsilon_label(),
    }
}

fn context(output: &OutputArgs, dims: &[usize]) -> Result<PrecisionContext, CliError> {
    let bits = output.prec.unwrap_or_else(|| dims.iter().copied().map(default_bits).max().unwrap_or(256));
    let ctx = match output.digits {
        Some(d) => PrecisionContext::with_digits(bits, d)?,
        None => PrecisionContext::new(bits)?,
    };
    Ok(ctx)
}

/// Runs `compute` unless the cache already holds the same request.
fn cached(request: Request, cache: Option<&Cache>, compute: impl FnOnce() -> Result<Table, CliError>) -> Result<Table, CliError> {
    if let Some(hit) = cache.and_then(|c| c.lookup(&request)) {
        return Ok(hit.outputs);
    }
    let table = compute()?;
    if let Some(c) = cache {
        c.store(&request, &RunRecord::new(&request, table.clone()))?;
    }
    Ok(table)
}

fn request(command: &str, params: Option<&ModelParams>, dims: &[usize], ctx: &PrecisionContext, options: Vec<(String, String)>) -> Request {
    Request {
        command: command.to_string(),
        params: params.map(params_record),
        dims: dims.to_vec(),
        precision: *ctx,
        options,
        tool_version: TOOL_VERSION.to_string(),
    }
}

fn potential_table(params: &ModelParams, eval: Option<&str>, ctx: &PrecisionContext) -> Result<Table, CliError> {
    let digits = ctx.target_digits;
    match eval {
        Some(text) => {
            let y = Float::with_val(ctx.bits, &parse_rational(text).map_err(|_| CliError::Usage(format!("invalid --eval value {text}")))?);
            let mut t = Table::new(format!("F(y) for {params}"), ctx.bits, digits, &["y", "F(y)"]);
            t.push(vec![text.to_string(), decimal(&eval_potential(params, &y), digits)]);
            Ok(t)
        }
        None => {
            let mut t = Table::new(format!("Positive stationary points of F(z), z = y^2, for {params}"), ctx.bits, digits, &["z", "y", "kind", "F"]);
            for p in analyze_minima(params, ctx) {
                let kind = match p.kind {
                    StationaryKind::Minimum => "minimum",
                    StationaryKind::Maximum => "maximum",
                };
                let y = p.y();
                t.push(vec![decimal(&p.z, digits), decimal(&y, digits), kind.into(), decimal(&eval_potential(params, &y), digits)]);
            }
            if t.rows.is_empty() {
                t.note("no positive stationary point");
            }
            Ok(t)
        }
    }
}

fn rrm_table(params: &ModelParams, dims: &[usize], ctx: &PrecisionContext) -> Result<Table, CliError> {
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage("--dims must be strictly ascending".into()));
    }
    let digits = ctx.target_digits;
    let mut t = Table::new(
        format!("Rayleigh-Ritz ground-state energy, {params}"),
        ctx.bits,
        digits,
        &["N", "lambda0", "sector", "residual", "tolerance", "noise_floor"],
    );
    for &n in dims {
        let r = run_point(params, n, ctx)?;
        t.push(vec![
            n.to_string(),
            decimal(&r.lambda0, digits),
            format!("{:?}", r.sector).to_lowercase(),
            short(&r.residual),
            short(&r.tolerance),
            short(&r.noise_floor),
        ]);
    }
    t.note("the basis at truncation N is b_0, ..., b_N");
    Ok(t)
}

fn exact_table(params: &ModelParams, n: usize, ctx: &PrecisionContext) -> Result<Table, CliError> {
    let digits = ctx.target_digits;
    let state = normalized_coefficients(params, n + 1, ctx)?;
    let mut t = Table::new(format!("Exact ground-state coefficients, {params}"), ctx.bits, digits, &["n", "I_n", "c_n"]);
    for i in (0..=n).step_by(2) {
        t.push(vec![i.to_string(), decimal(&state.unnormalized[i], digits), decimal(&state.normalized[i], digits)]);
    }
    t.note(format!("norm squared: {}", decimal(&state.norm_sq, digits)));
    if let Ok(q) = norm_sq(params, NormMethod::Quadrature, ctx) {
        let rel = Float::with_val(ctx.bits, &q - &state.norm_sq).abs() / &state.norm_sq;
        t.note(format!("quadrature norm squared: {} (relative difference {})", decimal(&q, digits), short(&rel)));
    }
    t.note(format!("sum of c_n^2 for n <= {n}: {}", decimal(&state.partial_norm_sq, digits)));
    t.note("odd coefficients vanish identically");
    Ok(t)
}

fn compare_table(params: &ModelParams, n: usize, ctx: &PrecisionContext) -> Result<Table, CliError> {
    let digits = ctx.target_digits;
    let rep = compare_exact(params, n, ctx)?;
    let mut t = Table::new(format!("Exact against Rayleigh-Ritz coefficients, {params}, N = {n}"), ctx.bits, digits, &["n", "exact", "approx", "abs_error"]);
    for r in &rep.rows {
        t.push(vec![r.n.to_string(), decimal(&r.exact, digits), decimal(&r.approx, digits), short(&r.abs_error())]);
    }
    t.note(format!("lambda0: {} ({:?} sector)", decimal(&rep.lambda0, digits), rep.lambda0_sector));
    t.note(format!("norm error |‖c_exact‖ - ‖c_approx‖| over n <= N: {}", short(&rep.norm_error)));
    t.note(format!("partial norms: exact {}, approx {}", decimal(&rep.partial_norm_exact, digits), decimal(&rep.partial_norm_approx, digits)));
    t.note(format!("largest odd Ritz coefficient: {}; eigen residual {}", short(&rep.max_odd_approx), short(&rep.residual)));
    Ok(t)
}

fn pt_table(epsilon: &str, dims: &[usize], ctx: &PrecisionContext) -> Result<Table, CliError> {
    let eps = parse_rational(epsilon)?;
    if eps <= 0 {
        return Err(CliError::Usage("epsilon must be positive".into()));
    }
    let digits = ctx.target_digits;
    let mut t = Table::new(
        format!("Second-order perturbation theory and Rayleigh-Ritz, k=2, sigma=+1, epsilon={epsilon}"),
        ctx.bits,
        digits,
        &["N", "pt_energy", "pt_norm_deviation", "rrm_lambda0", "rrm_norm_deviation"],
    );
    for &n in dims {
        let c = pt_vs_rrm(&eps, n, ctx)?;
        t.push(vec![
            n.to_string(),
            decimal(c.pt_energy(), digits),
            decimal(c.pt_norm_deviation(), digits),
            decimal(c.rrm_energy(), digits),
            short(&c.rrm_norm_deviation()),
        ]);
    }
    t.note("delta = epsilon^4; pt_norm_deviation is |‖e_0‖ - 1| over b_0..b_N");
    t.note("rrm_norm_deviation is 1 - ‖c_exact‖ over n <= N");
    Ok(t)
}

fn dispatch(cli: Cli, cache: Option<&Cache>) -> Result<(Table, OutputArgs), CliError> {
    match cli.command {
        Command::Potential { model, eval, minima: _, output } => {
            let params = model_params(&model)?;
            let ctx = context(&output, &[])?;
            Ok((potential_table(&params, eval.as_deref(), &ctx)?, output))
        }
        Command::Rrm { model, dims, output } => {
            let params = model_params(&model)?;
            let dims = dims.list()?;
            let ctx = context(&output, &dims)?;
            let req = request("rrm", Some(&params), &dims, &ctx, vec![]);
            Ok((cached(req, use_cache(cache, &output), || rrm_table(&params, &dims, &ctx))?, output))
        }
        Command::Exact { model, dim, output } => {
            let params = model_params(&model)?;
            let ctx = context(&output, &[dim])?;
            let req = request("exact", Some(&params), &[dim], &ctx, vec![]);
            Ok((cached(req, use_cache(cache, &output), || exact_table(&params, dim, &ctx))?, output))
        }
        Command::Compare { model, dim, output } => {
            let params = model_params(&model)?;
            let ctx = context(&output, &[dim])?;
            let req = request("compare", Some(&params), &[dim], &ctx, vec![]);
            Ok((cached(req, use_cache(cache, &output), || compare_table(&params, dim, &ctx))?, output))
        }
        Command::Pt { epsilon, dims, output } => {
            let dims = dims.list()?;
            let ctx = context(&output, &dims)?;
            let req = request("pt", None, &dims, &ctx, vec![("epsilon".into(), epsilon.clone())]);
            Ok((cached(req, use_cache(cache, &output), || pt_table(&epsilon, &dims, &ctx))?, output))
        }
        Command::Reproduce { table, output } => {
            let ctx = context(&output, &[])?;
            let req = request("reproduce", None, &[], &ctx, vec![("table".into(), table.to_string()), ("prec".into(), format!("{:?}", output.prec))]);
            Ok((cached(req, use_cache(cache, &output), || reproduce::table(table, output.prec, ctx.target_digits))?, output))
        }
    }
}

fn use_cache<'a>(cache: Option<&'a Cache>, output: &OutputArgs) -> Option<&'a Cache> {
    if output.no_cache {
        None
    } else {
        cache
    }
}

/// Parses `args`, runs the command and writes its output, returning the
/// exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write, cache: Option<&Cache>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    match dispatch(cli, cache).and_then(|(table, output)| emit(&table, &output, stdout)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(table: &Table, output: &OutputArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = table.render(output.format);
    match &output.out {
        Some(path) => cache::write_atomic(path, text.as_bytes(), true)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}
