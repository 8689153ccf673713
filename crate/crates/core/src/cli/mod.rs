//! Command-line front end. The `fplmap` binary parses [`Cli`] and hands it
//! to [`run`]; each subcommand is also callable directly.

pub mod reference;
pub mod series_file;
pub mod verify;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::analysis::{
    accel_bar, accel_tilde, b_series, k_series, mu2_estimate, solve_shift, EstimatorName, EstimatorReport,
    Parity, Precision,
};
use crate::error::{AnalysisError, DomainError, TransferError};
use crate::exact::fuss_catalan;
use crate::family::FamilySpec;
use crate::kpz::{self, CriticalData, Lattice, ModelClass};
use crate::transfer::{EngineOptions, Observable, OneSidedPropagator, Propagator};

pub use reference::{reference_table, reference_tables, ReferenceTable, TableKind};
pub use series_file::{FormatError, SeriesFile};
pub use verify::{compare_rows, verify_table, Mismatch, Outcome, Row, Scope};

/// Failure classes with stable exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<TransferError> for CliError {
    fn from(e: TransferError) -> Self {
        match e {
            TransferError::InvalidArgument(m) => CliError::Usage(m),
            other => CliError::Resource(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fplmap",
    version,
    about = "Hamiltonian cycles on bicolored random planar maps"
)]
pub struct Cli {
    /// Worker threads for the transfer step and shift scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate z_N (and y_N) for a family.
    Enumerate(EnumerateArgs),
    /// Run an estimator on a series file or a bundled table.
    Analyze(AnalyzeArgs),
    /// Print KPZ predictions for one parameterization.
    Predict(PredictArgs),
    /// Recompute the bundled tables and compare them exactly.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// `regular:p`, `rigid:2q` or `mixed:p=w,...`.
    pub family: String,
    #[arg(long)]
    pub n_max: usize,
    /// Comma-separated subset of `z,y`.
    #[arg(long, value_delimiter = ',', default_value = "z,y")]
    pub observables: Vec<String>,
    /// Also emit JSON: next to `--out` with a `.json` extension, or on stdout.
    #[arg(long)]
    pub json: bool,
    /// Stop once the stored state count exceeds this.
    #[arg(long)]
    pub max_states: Option<usize>,
    /// Rigid families only: build z = c^2 and y = 2gc from one-sided counts.
    #[arg(long)]
    pub closed_form: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnalysisKind {
    Gamma,
    Mu2,
    Nu,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(value_enum)]
    pub kind: AnalysisKind,
    /// Series file written by `enumerate`.
    #[arg(required_unless_present = "reference", conflicts_with = "reference")]
    pub input: Option<PathBuf>,
    /// Use a bundled table instead (see `verify --list`).
    #[arg(long)]
    pub reference: Option<String>,
    /// Quote the estimate at this N.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Configuration exponent used by `mu2` (default: from the family class).
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_theory: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Central charge.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n", "kappa"])]
    pub c: Option<f64>,
    /// Loop weight; needs `--class`.
    #[arg(
        long,
        allow_hyphen_values = true,
        requires = "class",
        conflicts_with = "kappa"
    )]
    pub n: Option<f64>,
    #[arg(long)]
    pub class: Option<ModelClass>,
    /// SLE parameter.
    #[arg(long)]
    pub kappa: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Fast,
    Full,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value = "fast")]
    pub scope: ScopeArg,
    /// Skip these tables.
    #[arg(long, value_delimiter = ',')]
    pub skip: Vec<String>,
    /// Check only these tables.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    #[arg(long)]
    pub max_states: Option<usize>,
    /// List the bundled tables and exit.
    #[arg(long)]
    pub list: bool,
}

/// Rows of an enumeration; on error, everything completed before it.
#[derive(Debug)]
pub struct Enumeration {
    pub file: SeriesFile,
    pub error: Option<TransferError>,
}

fn parse_family(text: &str) -> Result<FamilySpec, CliError> {
    text.parse()
        .map_err(|e: crate::error::FamilyError| CliError::Usage(e.to_string()))
}

fn parse_observables(names: &[String]) -> Result<(bool, bool), CliError> {
    let mut z = false;
    let mut y = false;
    for name in names {
        match name.trim() {
            "z" => z = true,
            "y" => y = true,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown observable `{other}`; use z and/or y"
                )))
            }
        }
    }
    if !(z || y) {
        return Err(CliError::Usage("no observables requested".into()));
    }
    Ok((z, y))
}

/// `z_N` and `y_N` for `N = 1 ..= n_max`.
pub fn cmd_enumerate(
    family: &FamilySpec,
    n_max: usize,
    observables: &[Observable],
    options: EngineOptions,
    closed_form: bool,
) -> Result<Enumeration, CliError> {
    if n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    let mut z = Vec::new();
    let mut y = Vec::new();
    let mut error = None;
    if closed_form {
        let q = family
            .rigid_q()
            .ok_or_else(|| CliError::Usage(format!("--closed-form needs a rigid family, got {family}")))?;
        let mut prop = OneSidedPropagator::new(q)?;
        for _ in 0..n_max {
            match prop.advance() {
                Ok(step) => {
                    y.push(&step.g * &step.c * 2u32);
                    z.push(&step.c * &step.c);
                }
                Err(e) => {
                    error = Some(e);
                    break;
                }
            }
        }
    } else {
        let mut prop = Propagator::new(family, options);
        for _ in 0..n_max {
            match prop.advance() {
                Ok(step) => {
                    log::info!(
                        "N = {}: {} states, about {} MiB",
                        step.n,
                        step.states,
                        prop.memory_estimate() >> 20
                    );
                    z.push(step.z);
                    y.push(step.y);
                }
                Err(e) => {
                    error = Some(e);
                    break;
                }
            }
        }
    }
    if let Some(e) = &error {
        log::error!("stopped after N = {}: {e}", z.len());
    }
    let file = SeriesFile::new(
        family.clone(),
        observables.contains(&Observable::Z).then_some(z),
        observables.contains(&Observable::Y).then_some(y),
    );
    Ok(Enumeration { file, error })
}

/// A bundled table as a series file; rigid `g` tables become
/// `z = c^2`, `y = 2 g c`.
pub fn reference_series(table: &ReferenceTable) -> SeriesFile {
    match table.kind {
        TableKind::Series => SeriesFile::new(table.family.clone(), Some(table.z.clone()), table.y.clone()),
        TableKind::OneSidedG => {
            let q = table.family.rigid_q().expect("rigid family");
            let c: Vec<BigUint> = (1..=table.g.len() as u64).map(|n| fuss_catalan(q, n)).collect();
            SeriesFile::new(
                table.family.clone(),
                Some(c.iter().map(|c| c * c).collect()),
                Some(table.g.iter().zip(&c).map(|(g, c)| g * c * 2u32).collect()),
            )
        }
    }
}

/// `c_fpl` for `p`-regular families, `c_dense` for mixed and rigid ones.
pub fn theory_class(family: &FamilySpec) -> ModelClass {
    if family.is_rigid() || family.valencies().len() > 1 {
        ModelClass::Dense
    } else {
        ModelClass::Fpl
    }
}

fn theory(family: &FamilySpec) -> CriticalData {
    CriticalData::from_n(0.0, theory_class(family)).expect("n = 0 is in range")
}

fn section(out: &mut String, report: &EstimatorReport) {
    out.push_str(&report.to_tsv());
    out.push('\n');
}

/// Runs one estimator and renders the sequence tables plus a summary.
pub fn cmd_analyze(
    kind: AnalysisKind,
    file: &SeriesFile,
    n_max: Option<usize>,
    gamma_theory: Option<f64>,
    p: &Precision,
) -> Result<String, CliError> {
    let theory = theory(&file.family);
    let mut out = String::new();
    writeln!(out, "# family {} ({} digits)", file.family, p.digits()).unwrap();
    match kind {
        AnalysisKind::Gamma => {
            let mut z = file.series(Observable::Z)?;
            if let Some(n) = n_max {
                if z.len() < n + 5 {
                    return Err(AnalysisError::InsufficientData {
                        what: "gamma estimate",
                        needed: n + 5,
                        got: z.len(),
                    }
                    .into());
                }
                z = z.truncated(n + 5);
            }
            let b = b_series(&p.series(&z), p)?;
            let last = |s: &crate::analysis::RealSeries| s.last().map_or(0, |(i, _)| i);
            let tilde = accel_tilde(&b, p)?;
            let bar = accel_bar(&b)?;
            let b_report = EstimatorReport::new(EstimatorName::B, b.clone(), None, last(&b))?;
            let tilde_report =
                EstimatorReport::new(EstimatorName::BTilde, tilde.clone(), None, last(&tilde))?;
            let bar_report =
                EstimatorReport::new(EstimatorName::BBar, bar.series.clone(), None, last(&bar.series))?;
            for r in [&b_report, &tilde_report, &bar_report] {
                section(&mut out, r);
            }
            if !bar.flagged.is_empty() {
                writeln!(out, "# b_bar skipped N = {:?}", bar.flagged).unwrap();
            }
            writeln!(
                out,
                "b_tilde\t{:.6}\tN={}",
                tilde_report.final_value, tilde_report.n_max
            )
            .unwrap();
            writeln!(
                out,
                "b_bar\t{:.6}\tN={}",
                bar_report.final_value, bar_report.n_max
            )
            .unwrap();
            writeln!(out, "2-gamma ({} class)\t{:.6}", theory.class, 2.0 - theory.gamma).unwrap();
        }
        AnalysisKind::Mu2 => {
            let z = file.series(Observable::Z)?;
            let n = n_max.unwrap_or_else(|| z.len().saturating_sub(1));
            let gamma = gamma_theory.unwrap_or(theory.gamma);
            let report = mu2_estimate(&p.series(&z), gamma, n, p)?;
            section(&mut out, &report);
            writeln!(out, "mu2\t{:.4}\tN_max={n}\tgamma={gamma:.6}", report.final_value).unwrap();
        }
        AnalysisKind::Nu => {
            let k = k_series(&file.series(Observable::Z)?, &file.series(Observable::Y)?, p)?;
            let top = n_max.unwrap_or_else(|| file.len().saturating_sub(8));
            for parity in [Parity::Even, Parity::Odd] {
                let n = if Parity::of(top) == parity {
                    top
                } else {
                    top.saturating_sub(1)
                };
                let solution = solve_shift(&k, parity, n, p)?;
                section(&mut out, &solution.report(&k, p)?);
                writeln!(
                    out,
                    "{parity}\ts*={:.4}\tnu={:.5}\tN_max={n}",
                    solution.s_star, solution.nu
                )
                .unwrap();
            }
            writeln!(out, "nu ({} class)\t{:.6}", theory.class, theory.contact()?.nu).unwrap();
        }
    }
    Ok(out)
}

/// Exactly one of the three parameterizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Parameterization {
    CentralCharge(f64),
    LoopWeight(f64, ModelClass),
    Kappa(f64),
}

fn row(out: &mut String, key: &str, value: f64) {
    // no "-0.000000000" from rounding noise
    let value = if value.abs() < 1e-12 { 0.0 } else { value };
    writeln!(out, "{key}\t{value:.9}").unwrap();
}

fn critical_rows(out: &mut String, d: &CriticalData) -> Result<(), DomainError> {
    writeln!(out, "[{}]", d.class).unwrap();
    row(out, "n", d.n);
    row(out, "g", d.g);
    row(out, "kappa", d.kappa);
    row(out, "c", d.c);
    row(out, "gamma", d.gamma);
    row(out, "gamma_L", d.gamma_l);
    let contact = d.contact()?;
    row(out, "h_contact", contact.h);
    row(out, "delta_contact", contact.delta);
    row(out, "nu", contact.nu);
    Ok(())
}

/// Labelled table of central charge, exponents, predicted `nu` and
/// watermelon dimensions.
pub fn cmd_predict(param: Parameterization) -> Result<String, DomainError> {
    let mut out = String::new();
    match param {
        Parameterization::CentralCharge(c) => {
            row(&mut out, "c", c);
            row(&mut out, "gamma", kpz::gamma_of_c(c)?);
            row(&mut out, "gamma_L", kpz::gamma_l_of_c(c)?);
            row(&mut out, "kappa", kpz::kappa_of_c(c)?);
            let contact = kpz::predicted_nu(c)?;
            row(&mut out, "delta_contact", contact.delta);
            row(&mut out, "nu", contact.nu);
        }
        Parameterization::LoopWeight(n, class) => {
            let d = CriticalData::from_n(n, class)?;
            critical_rows(&mut out, &d)?;
            watermelon_rows(&mut out, d.kappa)?;
        }
        Parameterization::Kappa(kappa) => {
            let dual = kpz::dual_kappa(kappa)?;
            row(&mut out, "kappa", kappa);
            row(&mut out, "dual_kappa", dual);
            row(&mut out, "hausdorff_dimension", kpz::hausdorff_dimension(kappa)?);
            row(
                &mut out,
                "dual_hausdorff_dimension",
                kpz::hausdorff_dimension(dual)?,
            );
            for class in [ModelClass::Dense, ModelClass::Fpl] {
                match CriticalData::from_kappa(kappa, class) {
                    Ok(d) => critical_rows(&mut out, &d)?,
                    Err(e) => writeln!(out, "[{class}]\t{e}").unwrap(),
                }
            }
            watermelon_rows(&mut out, kappa)?;
        }
    }
    Ok(out)
}

fn watermelon_rows(out: &mut String, kappa: f64) -> Result<(), DomainError> {
    writeln!(out, "[watermelons]\nell\th\th_hex\th_square\tdelta_dense").unwrap();
    for ell in 1..=4 {
        let dense = kpz::dense_gravitational_watermelon(kappa, ell)
            .map_or_else(|_| "-".to_string(), |v| format!("{v:.9}"));
        writeln!(
            out,
            "{ell}\t{:.9}\t{:.9}\t{:.9}\t{dense}",
            kpz::watermelon_h(kappa, ell)?,
            kpz::fpl_watermelon_h(kappa, ell, Lattice::Hexagonal)?,
            kpz::fpl_watermelon_h(kappa, ell, Lattice::Square)?,
        )
        .unwrap();
    }
    Ok(())
}

/// Per-table results of a verification run.
#[derive(Debug)]
pub struct VerifySummary {
    pub results: Vec<(&'static str, Outcome)>,
}

impl VerifySummary {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (id, outcome) in &self.results {
            match outcome {
                Outcome::Pass { checked } => writeln!(out, "ok\t{id}\tN=1..{checked}").unwrap(),
                Outcome::Mismatch(m) => writeln!(out, "FAIL\t{id}\n{m}").unwrap(),
                Outcome::Exhausted { completed, error } => {
                    writeln!(out, "STOP\t{id}\tverified to N={completed}: {error}").unwrap()
                }
            }
        }
        out
    }

    /// Mismatch beats exhaustion.
    pub fn status(&self) -> Result<(), CliError> {
        let outcomes = || self.results.iter().map(|r| &r.1);
        if let Some(Outcome::Mismatch(m)) = outcomes().find(|o| matches!(o, Outcome::Mismatch(_))) {
            return Err(CliError::Mismatch(m.to_string()));
        }
        if outcomes().any(|o| matches!(o, Outcome::Exhausted { .. })) {
            return Err(CliError::Resource(
                "some tables could not be recomputed in full".into(),
            ));
        }
        Ok(())
    }
}

pub fn cmd_verify(
    scope: Scope,
    skip: &[String],
    only: &[String],
    options: EngineOptions,
) -> Result<VerifySummary, CliError> {
    let ids = reference::table_ids();
    if let Some(bad) = skip.iter().chain(only).find(|s| !ids.contains(&s.as_str())) {
        return Err(CliError::Usage(format!(
            "unknown table `{bad}`; known: {}",
            ids.join(", ")
        )));
    }
    let results = reference_tables()
        .into_iter()
        .filter(|t| !skip.iter().any(|s| s == t.id))
        .filter(|t| only.is_empty() || only.iter().any(|s| s == t.id))
        .map(|t| {
            let cap = scope.cap(&t);
            (t.id, verify_table(&t, cap, options))
        })
        .collect();
    Ok(VerifySummary { results })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Dispatches a parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let threads = cli.threads.unwrap_or_else(rayon::current_num_threads).max(1);
    let out = cli.out.as_deref();
    match cli.command {
        Command::Enumerate(args) => {
            let family = parse_family(&args.family)?;
            let (z, y) = parse_observables(&args.observables)?;
            let observables: Vec<Observable> = [(z, Observable::Z), (y, Observable::Y)]
                .into_iter()
                .filter_map(|(on, o)| on.then_some(o))
                .collect();
            let options = EngineOptions {
                threads,
                max_states: args.max_states,
            };
            let result = cmd_enumerate(&family, args.n_max, &observables, options, args.closed_form)?;
            match (args.json, out) {
                (true, None) => emit(None, &result.file.to_json())?,
                (true, Some(path)) => {
                    emit(Some(path), &result.file.to_csv())?;
                    emit(Some(&path.with_extension("json")), &result.file.to_json())?;
                }
                (false, _) => emit(out, &result.file.to_csv())?,
            }
            match result.error {
                Some(e) => Err(CliError::Resource(format!(
                    "{e}; rows up to N = {} were written",
                    result.file.len()
                ))),
                None => Ok(()),
            }
        }
        Command::Analyze(args) => {
            let file = match (&args.reference, &args.input) {
                (Some(id), _) => {
                    let table = reference_table(id).ok_or_else(|| {
                        CliError::Usage(format!(
                            "unknown table `{id}`; known: {}",
                            reference::table_ids().join(", ")
                        ))
                    })?;
                    reference_series(&table)
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    SeriesFile::from_csv(&text)?
                }
                (None, None) => return Err(CliError::Usage("give an input file or --reference".into())),
            };
            let p = Precision::from_env();
            emit(
                out,
                &cmd_analyze(args.kind, &file, args.n_max, args.gamma_theory, &p)?,
            )
        }
        Command::Predict(args) => {
            let param = match (args.c, args.n, args.kappa) {
                (Some(c), None, None) => Parameterization::CentralCharge(c),
                (None, Some(n), None) => {
                    Parameterization::LoopWeight(n, args.class.expect("clap requires --class"))
                }
                (None, None, Some(k)) => Parameterization::Kappa(k),
                _ => return Err(CliError::Usage("give exactly one of --c, --n, --kappa".into())),
            };
            emit(out, &cmd_predict(param)?)
        }
        Command::Verify(args) => {
            if args.list {
                let mut text = String::new();
                for t in reference_tables() {
                    writeln!(text, "{}\t{}\tN<={}\t{}", t.id, t.family, t.len(), t.provenance).unwrap();
                }
                return emit(out, &text);
            }
            let scope = match args.scope {
                ScopeArg::Fast => Scope::Fast,
                ScopeArg::Full => Scope::Full,
            };
            let options = EngineOptions {
                threads,
                max_states: args.max_states,
            };
            let summary = cmd_verify(scope, &args.skip, &args.only, options)?;
            emit(out, &summary.render())?;
            summary.status()
        }
    }
}

impl clap::ValueEnum for ModelClass {
    fn value_variants<'a>() -> &'a [Self] {
        &[ModelClass::Dense, ModelClass::Fpl]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            ModelClass::Dense => "dense",
            ModelClass::Fpl => "fpl",
        }))
    }
}
