//! Command-line front end. The `bfcurve` binary is a thin wrapper around
//! [`run`].
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when an analysis detects a
//! broken invariant or a failed bound (the report is still printed).

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::apn::apn_report;
use crate::boolfn::{
    divisibility_check, spectrum_stats, walsh_transform, FamilyPolynomial, Polynomial,
    SpectrumReport, SparsePolynomial, TruthTable,
};
use crate::curves::{analyze, ArtinSchreierQuintic, CurveReport};
use crate::error::{Error, Result};
use crate::gf2m::{field_params, parse_hex, FieldParams};
use crate::xalpha::{
    classify_alpha, classify_all, lower_bound_check, survey, write_records_csv, AlphaReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bfcurve", version, about = "Trace-function spectra, derivative curves and APN checks over GF(2^m)")]
pub struct Cli {
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true, env = "BFCURVE_WORKERS")]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the field parameters
    Field(FieldArgs),
    /// Walsh spectrum and statistics of Tr(G)
    Spectrum(SpectrumArgs),
    /// Quadratic-form analysis of y^2 + y = a x^5 + b x^3 + c x + d
    Curve(CurveArgs),
    /// X_alpha classification for one alpha, or all of them
    Xalpha(XalphaArgs),
    /// Full alpha sweep with the L4 identity and all family bounds
    Survey(SurveyArgs),
    /// Lower bounds on the spectral amplitude
    Bounds(SurveyArgs),
    /// Differential uniformity, Chabaud-Vaudenay sum and non-APN predicates
    Apn(ApnArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Extension degree
    #[arg(long)]
    pub m: u32,
    /// Reduction polynomial override, hex bitmask with bit m set
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl FieldArgs {
    fn field(&self) -> Result<FieldParams> {
        let poly = self.poly.as_deref().map(parse_hex).transpose()?;
        field_params(self.m, poly)
    }
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Coefficient of x^7 (hex)
    #[arg(long)]
    pub a7: Option<String>,
    /// Family terms b_i x^(2^i+1) as i:hex[,i:hex...]
    #[arg(long, default_value = "")]
    pub b: String,
    /// Accept the index i = 0 (a b0 x^2 term)
    #[arg(long)]
    pub allow_b0: bool,
}

impl FamilyArgs {
    fn family(&self, field: &FieldParams) -> Result<Option<FamilyPolynomial>> {
        match &self.a7 {
            None if self.b.is_empty() => Ok(None),
            None => Err(Error::Parse("--b needs --a7".into())),
            Some(a7) => FamilyPolynomial::parse(field, a7, &self.b, self.allow_b0).map(Some),
        }
    }
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Number of random family members to draw instead of --a7/--b
    #[arg(long)]
    pub samples: Option<usize>,
    /// Largest b-index of the random members
    #[arg(long, default_value_t = 0)]
    pub s: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Sparse polynomial as exp:hex[,exp:hex...]
    #[arg(long)]
    pub terms: Option<String>,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub a: String,
    #[arg(long, default_value = "0x0")]
    pub b: String,
    #[arg(long, default_value = "0x0")]
    pub c: String,
    #[arg(long, default_value = "0x0")]
    pub d: String,
}

#[derive(Debug, Args)]
pub struct XalphaArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Single alpha (hex); omit for the exhaustive sweep
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub sample: SampleArgs,
}

#[derive(Debug, Args)]
pub struct ApnArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Sparse polynomial as exp:hex[,exp:hex...]
    #[arg(long)]
    pub terms: Option<String>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub sample: SampleArgs,
}

enum Failure {
    Usage(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invariant_violation() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("output error: {e}"))
    }
}

type CmdResult = std::result::Result<bool, Failure>;

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.workers {
        if n == 0 {
            let _ = writeln!(err, "error: --workers must be at least 1");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };

    let mut buffer = Vec::new();
    let result = pool.install(|| dispatch(&cli.command, &mut buffer));
    if let Err(e) = out.write_all(&buffer) {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            let _ = writeln!(err, "error: a checked invariant or bound failed (see report)");
            EXIT_INVARIANT
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Invariant(msg)) => {
            let _ = writeln!(err, "invariant violation: {msg}");
            EXIT_INVARIANT
        }
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Field(a) => cmd_field(a, out),
        Command::Spectrum(a) => cmd_spectrum(a, out),
        Command::Curve(a) => cmd_curve(a, out),
        Command::Xalpha(a) => cmd_xalpha(a, out),
        Command::Survey(a) => cmd_survey(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Apn(a) => cmd_apn(a, out),
    }
}

fn emit_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Usage(format!("serialization failed: {e}")))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn require_odd(field: &FieldParams, what: &str) -> std::result::Result<(), Failure> {
    if field.m().is_multiple_of(2) {
        return Err(Failure::Usage(format!("{what} requires odd m, got m={}", field.m())));
    }
    Ok(())
}

fn cmd_field(a: &FieldArgs, out: &mut dyn Write) -> CmdResult {
    let field = a.field()?;
    match a.format {
        Some(Format::Json) => {
            #[derive(Serialize)]
            struct FieldJson {
                m: u32,
                q: u64,
                poly: String,
                text: String,
            }
            emit_json(
                out,
                &FieldJson {
                    m: field.m(),
                    q: field.q(),
                    poly: format!("{:#x}", field.reduction()),
                    text: field.to_string(),
                },
            )?;
        }
        _ => writeln!(out, "{field}")?,
    }
    Ok(true)
}

/// The polynomial named by `--terms` or `--a7/--b`, with the family's `s`.
fn any_polynomial(
    field: &FieldParams,
    terms: &Option<String>,
    family: &FamilyArgs,
) -> std::result::Result<Option<(Box<dyn Polynomial>, Option<u32>)>, Failure> {
    let fam = family.family(field)?;
    match (terms, fam) {
        (Some(_), Some(_)) => Err(Failure::Usage("give either --terms or --a7/--b, not both".into())),
        (Some(t), None) => Ok(Some((Box::new(SparsePolynomial::parse(field, t)?), None))),
        (None, Some(g)) => {
            let s = g.s();
            Ok(Some((Box::new(g), Some(s))))
        }
        (None, None) => Ok(None),
    }
}

fn cmd_spectrum(a: &SpectrumArgs, out: &mut dyn Write) -> CmdResult {
    let field = a.field.field()?;
    let (g, _) = any_polynomial(&field, &a.terms, &a.family)?
        .ok_or_else(|| Failure::Usage("spectrum needs --terms or --a7".into()))?;
    let tt = TruthTable::from_trace_poly(&field, g.as_ref());
    let sp = walsh_transform(&field, &tt);
    let stats = spectrum_stats(&sp)?;
    let sparse = g.to_sparse();
    let d = if sparse.is_zero() { 1 } else { sparse.binary_degree()? };
    let div = divisibility_check(&sp, d)?;
    match a.field.format {
        Some(Format::Csv) => sp.write_csv(&mut *out)?,
        _ => {
            #[derive(Serialize)]
            struct Dump<'a> {
                #[serde(flatten)]
                stats: SpectrumReport,
                walsh: &'a [i64],
            }
            emit_json(
                out,
                &Dump {
                    stats: SpectrumReport::new(&field, &stats, &div),
                    walsh: sp.values(),
                },
            )?;
        }
    }
    Ok(stats.norm_chain_holds()? && stats.amplitude_bounds_hold())
}

fn cmd_curve(a: &CurveArgs, out: &mut dyn Write) -> CmdResult {
    let field = a.field.field()?;
    let curve = ArtinSchreierQuintic::new(
        field.parse_element(&a.a)?,
        field.parse_element(&a.b)?,
        field.parse_element(&a.c)?,
        field.parse_element(&a.d)?,
    )?;
    let rep = analyze(&field, &curve)?;
    emit_json(out, &CurveReport::new(&field, &curve, &rep))?;
    Ok(true)
}

fn cmd_xalpha(a: &XalphaArgs, out: &mut dyn Write) -> CmdResult {
    let field = a.field.field()?;
    require_odd(&field, "xalpha")?;
    let g = a
        .family
        .family(&field)?
        .ok_or_else(|| Failure::Usage("xalpha needs --a7".into()))?;
    match &a.alpha {
        Some(alpha) => {
            let alpha = field.parse_element(alpha)?;
            let rec = classify_alpha(&field, &g, alpha)?;
            emit_json(out, &AlphaReport::new(&field, &g, &rec)?)?;
        }
        None => {
            let records = classify_all(&field, &g)?;
            match a.field.format {
                Some(Format::Json) => {
                    let reports = records
                        .iter()
                        .map(|r| AlphaReport::new(&field, &g, r))
                        .collect::<Result<Vec<_>>>()?;
                    emit_json(out, &reports)?;
                }
                _ => write_records_csv(&records, &mut *out)?,
            }
        }
    }
    Ok(true)
}

fn family_inputs(
    field: &FieldParams,
    family: &FamilyArgs,
    sample: &SampleArgs,
) -> std::result::Result<(Vec<FamilyPolynomial>, bool), Failure> {
    match (family.family(field)?, sample.samples) {
        (Some(_), Some(_)) => Err(Failure::Usage("give either --a7/--b or --samples, not both".into())),
        (Some(g), None) => Ok((vec![g], false)),
        (None, Some(n)) => {
            if sample.s >= field.m() {
                return Err(Failure::Usage(format!("--s must be below m={}", field.m())));
            }
            Ok((FamilyPolynomial::sample(field, sample.s, n, sample.seed)?, true))
        }
        (None, None) => Err(Failure::Usage("needs --a7 or --samples".into())),
    }
}

fn cmd_survey(a: &SurveyArgs, out: &mut dyn Write) -> CmdResult {
    let field = a.field.field()?;
    require_odd(&field, "survey")?;
    let (gs, sampled) = family_inputs(&field, &a.family, &a.sample)?;
    if a.field.format == Some(Format::Csv) {
        if sampled {
            return Err(Failure::Usage("CSV survey output needs a single --a7 polynomial".into()));
        }
        let rep = survey(&field, &gs[0])?;
        write_records_csv(&rep.records, &mut *out)?;
        return Ok(rep.all_bounds_hold());
    }
    let reports = gs
        .iter()
        .map(|g| survey(&field, g))
        .collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().all(|r| r.all_bounds_hold());
    if sampled {
        emit_json(out, &reports)?;
    } else {
        emit_json(out, &reports[0])?;
    }
    Ok(ok)
}

fn cmd_bounds(a: &SurveyArgs, out: &mut dyn Write) -> CmdResult {
    let field = a.field.field()?;
    require_odd(&field, "bounds")?;
    let (gs, sampled) = family_inputs(&field, &a.family, &a.sample)?;
    let reports = gs
        .iter()
        .map(|g| lower_bound_check(&field, g))
        .collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().all(|r| r.consistent());
    if sampled {
        emit_json(out, &reports)?;
    } else {
        emit_json(out, &reports[0])?;
    }
    Ok(ok)
}

fn cmd_apn(a: &ApnArgs, out: &mut dyn Write) -> CmdResult {
    let field = a.field.field()?;
    if a.sample.samples.is_some() {
        if a.terms.is_some() {
            return Err(Failure::Usage("give either --terms or --samples, not both".into()));
        }
        let (gs, _) = family_inputs(&field, &a.family, &a.sample)?;
        let reports = gs
            .iter()
            .map(|g| apn_report(&field, g, Some(g.s())))
            .collect::<Result<Vec<_>>>()?;
        let ok = reports.iter().all(|r| r.invariants_hold);
        emit_json(out, &reports)?;
        return Ok(ok);
    }
    let (g, s) = any_polynomial(&field, &a.terms, &a.family)?
        .ok_or_else(|| Failure::Usage("apn needs --terms, --a7 or --samples".into()))?;
    let rep = apn_report(&field, g.as_ref(), s)?;
    emit_json(out, &rep)?;
    Ok(rep.invariants_hold)
}
