//! Batch front-end: `<binary> <command> [target] [--flag value]...`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{ChargeSelection, FlavorWindow};
use crate::num::{int, to_i64};
use crate::report::{CheckMode, ComparisonReport};
use crate::series::{Monomial, Series, TermJson, VarId};
use crate::symfunc::{bosonic_hilbert_series, g_series_identity_check};
use crate::trace::{
    bo_brute, bo_check, bo_product, duality_checks, gamma_commutation_factor, gamma_factor_assertions, gamma_strip_check,
    howe_character, howe_character_check, howe_product, main_formula_reports, main_formula_rhs, main_trace_brute,
    main_vacuum_term_check, ze_brute, ze_check, ze_formula, MainParams, MainReading, MuRelation, SecondShape,
    VacuumProduct,
};
use crate::vertex::{
    at_unit_mass, cy_partition_product, cy_partition_trace, cy_product_report, cy_trace_checks, log_z, mcmahon_check,
    mcmahon_product, mcmahon_series, wall_product_check,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTED_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REPORT_DISAGREED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Run comparisons and exit according to their outcome.
    Verify,
    /// Closed-form side of a target.
    Series,
    /// Characters read off a basis.
    Char,
    /// Brute-force trace side of a target.
    Trace,
    /// The elliptic partition function, its unit-mass limit and its logarithm.
    Cy,
    /// Plane-partition coefficients from vertex operators.
    Mcmahon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    All,
    Ze,
    Bo,
    Main,
    Howe,
    Duality,
    Gamma,
    Wall,
    Cy,
    GIdentity,
    Mcmahon,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::All => "all",
            Target::Ze => "ze",
            Target::Bo => "bo",
            Target::Main => "main",
            Target::Howe => "howe",
            Target::Duality => "duality",
            Target::Gamma => "gamma",
            Target::Wall => "wall",
            Target::Cy => "cy",
            Target::GIdentity => "g-identity",
            Target::Mcmahon => "mcmahon",
        }
    }

    const VERIFIABLE: [Target; 10] = [
        Target::Ze,
        Target::Bo,
        Target::Main,
        Target::Howe,
        Target::Duality,
        Target::Gamma,
        Target::Wall,
        Target::Cy,
        Target::GIdentity,
        Target::Mcmahon,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChargeMode {
    All,
    Zero,
}

impl From<ChargeMode> for ChargeSelection {
    fn from(c: ChargeMode) -> Self {
        match c {
            ChargeMode::All => ChargeSelection::All,
            ChargeMode::Zero => ChargeSelection::Zero,
        }
    }
}

/// Which `μ` enter the inner sum of the main formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuArg {
    /// `μ ⊆ λ` and `μ ⊆ λ^t`.
    Both,
    /// `μ ⊆ λ` only.
    Lambda,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SecondArg {
    Transpose,
    Same,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VacuumArg {
    Included,
    Omitted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Output {
    #[default]
    Json,
    Csv,
}

/// Every configurable value; the JSON config file uses the same keys.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub target: Option<Target>,
    pub energy: Option<u32>,
    pub q_order: Option<u32>,
    pub tau_order: Option<u32>,
    pub jmax: Option<u32>,
    pub l: Option<u32>,
    pub flavor_window: Option<String>,
    pub lambda_max: Option<u32>,
    pub ab_degree: Option<u32>,
    pub mode_count: Option<u32>,
    pub kmax: Option<u32>,
    pub wall_m: Option<u32>,
    pub order: Option<u32>,
    pub charge_mode: Option<ChargeMode>,
    pub mu: Option<MuArg>,
    pub second: Option<SecondArg>,
    pub vacuum: Option<VacuumArg>,
    pub output: Option<Output>,
}

impl RunConfig {
    /// Values set in `over` win.
    pub fn overlay(self, over: RunConfig) -> RunConfig {
        RunConfig {
            command: over.command.or(self.command),
            target: over.target.or(self.target),
            energy: over.energy.or(self.energy),
            q_order: over.q_order.or(self.q_order),
            tau_order: over.tau_order.or(self.tau_order),
            jmax: over.jmax.or(self.jmax),
            l: over.l.or(self.l),
            flavor_window: over.flavor_window.or(self.flavor_window),
            lambda_max: over.lambda_max.or(self.lambda_max),
            ab_degree: over.ab_degree.or(self.ab_degree),
            mode_count: over.mode_count.or(self.mode_count),
            kmax: over.kmax.or(self.kmax),
            wall_m: over.wall_m.or(self.wall_m),
            order: over.order.or(self.order),
            charge_mode: over.charge_mode.or(self.charge_mode),
            mu: over.mu.or(self.mu),
            second: over.second.or(self.second),
            vacuum: over.vacuum.or(self.vacuum),
            output: over.output.or(self.output),
        }
    }

    pub fn from_json(text: &str) -> Result<RunConfig> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("config file: {e}")))
    }
}

#[derive(Debug, Parser)]
#[command(name = "fock-trace", version, about = "Exact Fock-space traces checked against their closed forms")]
struct Cli {
    command: Option<Command>,
    target: Option<Target>,
    /// Energy cutoff of truncated bases (also the Howe degree bound).
    #[arg(long)]
    energy: Option<u32>,
    #[arg(long)]
    q_order: Option<u32>,
    #[arg(long)]
    tau_order: Option<u32>,
    #[arg(long)]
    jmax: Option<u32>,
    /// Level: flavors 1..=l.
    #[arg(long = "l")]
    l: Option<u32>,
    /// Explicit flavor range `lo..=hi`; overrides --l.
    #[arg(long)]
    flavor_window: Option<String>,
    /// Bound on |λ| for strips and on Σ|λ_i| for highest weight vectors.
    #[arg(long)]
    lambda_max: Option<u32>,
    /// Total degree cap on the A_n and B_n.
    #[arg(long)]
    ab_degree: Option<u32>,
    #[arg(long)]
    mode_count: Option<u32>,
    #[arg(long)]
    kmax: Option<u32>,
    /// Wall width M.
    #[arg(long)]
    wall_m: Option<u32>,
    /// q-order for `mcmahon`.
    #[arg(long)]
    order: Option<u32>,
    #[arg(long, value_enum)]
    charge_mode: Option<ChargeMode>,
    #[arg(long, value_enum)]
    mu: Option<MuArg>,
    #[arg(long, value_enum)]
    second: Option<SecondArg>,
    #[arg(long, value_enum)]
    vacuum: Option<VacuumArg>,
    #[arg(long, value_enum)]
    output: Option<Output>,
    /// JSON file with the same keys as the flags (underscored); flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Cli {
    fn into_parts(self) -> (RunConfig, Option<PathBuf>) {
        let config = RunConfig {
            command: self.command,
            target: self.target,
            energy: self.energy,
            q_order: self.q_order,
            tau_order: self.tau_order,
            jmax: self.jmax,
            l: self.l,
            flavor_window: self.flavor_window,
            lambda_max: self.lambda_max,
            ab_degree: self.ab_degree,
            mode_count: self.mode_count,
            kmax: self.kmax,
            wall_m: self.wall_m,
            order: self.order,
            charge_mode: self.charge_mode,
            mu: self.mu,
            second: self.second,
            vacuum: self.vacuum,
            output: self.output,
        };
        (config, self.config)
    }
}

/// A config with every default filled in.
#[derive(Clone, Debug)]
struct Settings {
    command: Command,
    target: Option<Target>,
    energy: Option<u32>,
    q_order: u32,
    tau_order: u32,
    jmax: u32,
    window: FlavorWindow,
    lambda_max: u32,
    ab_degree: u32,
    mode_count: Option<u32>,
    kmax: u32,
    wall_m: u32,
    order: Option<u32>,
    charge_mode: Option<ChargeMode>,
    mu: Option<MuArg>,
    second: Option<SecondArg>,
    vacuum: Option<VacuumArg>,
    output: Output,
}

fn parse_window(s: &str) -> Result<FlavorWindow> {
    let bad = || Error::Config(format!("flavor window {s:?} is not of the form lo..=hi"));
    let (lo, hi) = s.split_once("..=").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::Config(format!("flavor window {s:?} is empty")));
    }
    Ok(FlavorWindow::new(lo, hi))
}

impl Settings {
    fn resolve(c: RunConfig) -> Result<Settings> {
        let command = c.command.ok_or_else(|| Error::Config("no command given".into()))?;
        let window = match (&c.flavor_window, c.l) {
            (Some(w), _) => parse_window(w)?,
            (None, Some(0)) => return Err(Error::Config("level l must be at least 1".into())),
            (None, l) => FlavorWindow::level(l.unwrap_or(1) as usize),
        };
        Ok(Settings {
            command,
            target: c.target,
            energy: c.energy,
            q_order: c.q_order.unwrap_or(6),
            tau_order: c.tau_order.unwrap_or(3),
            jmax: c.jmax.unwrap_or(2),
            window,
            lambda_max: c.lambda_max.unwrap_or(3),
            ab_degree: c.ab_degree.unwrap_or(2),
            mode_count: c.mode_count,
            kmax: c.kmax.unwrap_or(4),
            wall_m: c.wall_m.unwrap_or(2),
            order: c.order,
            charge_mode: c.charge_mode,
            mu: c.mu,
            second: c.second,
            vacuum: c.vacuum,
            output: c.output.unwrap_or_default(),
        })
    }

    /// The Ze trace needs every q-degree it compares, so its energy defaults to the q-order.
    fn ze_energy(&self) -> u32 {
        self.energy.unwrap_or(self.q_order)
    }

    fn energy_or(&self, default: u32) -> u32 {
        self.energy.unwrap_or(default)
    }

    fn bo_modes(&self) -> u32 {
        self.mode_count.unwrap_or(self.energy_or(4))
    }

    fn main_params(&self) -> MainParams {
        MainParams { energy: self.energy_or(4), jmax: self.jmax, ab_degree: self.ab_degree }
    }

    fn max_degree(&self) -> crate::num::Rational {
        int(self.energy_or(3) as i64)
    }

    fn mcmahon_order(&self) -> u32 {
        self.order.unwrap_or(self.q_order)
    }

    /// Readings allowed by the toggles; an unset toggle admits both values.
    fn readings(&self) -> Vec<MainReading> {
        MainReading::all()
            .into_iter()
            .filter(|r| match self.mu {
                Some(MuArg::Both) => r.mu == MuRelation::ContainedInBoth,
                Some(MuArg::Lambda) => r.mu == MuRelation::ContainedInLambda,
                None => true,
            })
            .filter(|r| match self.second {
                Some(SecondArg::Transpose) => r.second == SecondShape::Transpose,
                Some(SecondArg::Same) => r.second == SecondShape::Same,
                None => true,
            })
            .filter(|r| self.charge_mode.is_none_or(|c| r.charges == ChargeSelection::from(c)))
            .filter(|r| match self.vacuum {
                Some(VacuumArg::Included) => r.vacuum == VacuumProduct::Included,
                Some(VacuumArg::Omitted) => r.vacuum == VacuumProduct::Omitted,
                None => true,
            })
            .collect()
    }
}

#[derive(Serialize)]
struct ReportEntry<'a> {
    target: &'a str,
    mode: &'static str,
    report: &'a ComparisonReport,
}

#[derive(Serialize)]
struct NamedSeries {
    name: String,
    params: BTreeMap<String, String>,
    terms: Vec<TermJson>,
}

impl NamedSeries {
    fn new(name: impl Into<String>, series: &Series) -> Self {
        NamedSeries { name: name.into(), params: BTreeMap::new(), terms: series.to_terms_json() }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }
}

enum Document {
    Reports(Vec<(Target, ComparisonReport)>),
    Series(Vec<(NamedSeries, Series)>),
    Coefficients { order: u32, coefficients: Vec<i64> },
}

impl Document {
    fn exit_code(&self) -> i32 {
        let Document::Reports(reports) = self else { return EXIT_OK };
        let failed = |mode| reports.iter().any(|(_, r)| r.mode() == mode && !r.agree);
        if failed(CheckMode::Asserted) {
            EXIT_ASSERTED_FAILED
        } else if failed(CheckMode::ReportOnly) {
            EXIT_REPORT_DISAGREED
        } else {
            EXIT_OK
        }
    }

    fn render(&self, output: Output) -> String {
        match (self, output) {
            (Document::Reports(reports), Output::Json) => {
                let entries: Vec<_> = reports
                    .iter()
                    .map(|(t, r)| ReportEntry { target: t.name(), mode: r.mode().as_str(), report: r })
                    .collect();
                let doc = serde_json::json!({ "reports": entries, "exit_code": self.exit_code() });
                serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
            }
            (Document::Reports(reports), Output::Csv) => {
                let mut out = String::from("target,mode,comparison,monomial,lhs,rhs\n");
                for (t, r) in reports {
                    let comparison = csv_field(&format!("{} vs {}", r.lhs, r.rhs));
                    for row in &r.rows {
                        out.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            t.name(),
                            r.mode().as_str(),
                            comparison,
                            csv_field(&row.monomial),
                            row.lhs_value,
                            row.rhs_value
                        ));
                    }
                }
                out
            }
            (Document::Series(list), Output::Json) => {
                let named: Vec<_> = list.iter().map(|(n, _)| n).collect();
                serde_json::to_string_pretty(&serde_json::json!({ "series": named })).expect("series serialize") + "\n"
            }
            (Document::Series(list), Output::Csv) => {
                let mut out = String::from("series,monomial,coefficient\n");
                for (n, s) in list {
                    for (m, c) in s.terms() {
                        out.push_str(&format!(
                            "{},{},{}\n",
                            csv_field(&n.name),
                            csv_field(&m.to_string()),
                            crate::num::fmt_rational(c)
                        ));
                    }
                }
                out
            }
            (Document::Coefficients { order, coefficients }, Output::Json) => {
                let doc = serde_json::json!({ "order": order, "coefficients": coefficients });
                serde_json::to_string_pretty(&doc).expect("coefficients serialize") + "\n"
            }
            (Document::Coefficients { coefficients, .. }, Output::Csv) => {
                let mut out = String::from("degree,coefficient\n");
                for (n, c) in coefficients.iter().enumerate() {
                    out.push_str(&format!("{n},{c}\n"));
                }
                out
            }
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn unsupported(command: &str, target: Option<Target>) -> Error {
    let target = target.map_or("(none)", Target::name);
    Error::Config(format!("command {command} does not support target {target}"))
}

fn verify_target(s: &Settings, target: Target) -> Result<Vec<ComparisonReport>> {
    Ok(match target {
        Target::Ze => vec![ze_check(s.ze_energy(), s.q_order, s.ab_degree)?],
        Target::Bo => vec![bo_check(s.jmax, s.bo_modes())?],
        Target::Main => {
            let params = s.main_params();
            let readings = s.readings();
            let mut out = vec![main_vacuum_term_check(params)?];
            let labels: Vec<String> = readings.iter().map(MainReading::label).collect();
            out.extend(
                main_formula_reports(params)?
                    .into_iter()
                    .filter(|r| r.params.get("reading").is_some_and(|l| labels.contains(l))),
            );
            out
        }
        Target::Howe => vec![howe_character_check(s.window, &s.max_degree())?],
        Target::Duality => vec![duality_checks(s.window, &s.max_degree(), s.lambda_max as i64)?],
        Target::Gamma => {
            let factor = gamma_commutation_factor(s.q_order)?;
            vec![gamma_strip_check(s.lambda_max)?, gamma_factor_assertions(&factor), factor.printed]
        }
        Target::Wall => vec![wall_product_check(s.wall_m, s.q_order)?],
        Target::Cy => vec![cy_trace_checks(s.tau_order, s.q_order)?, cy_product_report(s.tau_order, s.q_order)?],
        Target::GIdentity => vec![g_series_identity_check(s.kmax, s.q_order)?],
        Target::Mcmahon => vec![mcmahon_check(s.mcmahon_order())?],
        Target::All => return Err(unsupported("verify", Some(target))),
    })
}

fn verify(s: &Settings) -> Result<Document> {
    let targets: Vec<Target> = match s.target.unwrap_or(Target::All) {
        Target::All => Target::VERIFIABLE.to_vec(),
        t => vec![t],
    };
    let results: Vec<Result<Vec<ComparisonReport>>> = targets.par_iter().map(|&t| verify_target(s, t)).collect();
    let mut reports = Vec::new();
    for (t, r) in targets.into_iter().zip(results) {
        reports.extend(r?.into_iter().map(|rep| (t, rep)));
    }
    Ok(Document::Reports(reports))
}

fn closed_forms(s: &Settings) -> Result<Document> {
    let one = |name: &str, series: Series| Ok(Document::Series(vec![(NamedSeries::new(name, &series), series)]));
    match s.target {
        Some(Target::Ze) => one("ze product formula", ze_formula(s.q_order, s.ab_degree)?),
        Some(Target::Bo) => one("bo mode product", bo_product(s.jmax, s.bo_modes())?),
        Some(Target::Main) => {
            let params = s.main_params();
            let mut list = Vec::new();
            for reading in s.readings() {
                let series = main_formula_rhs(params, reading)?;
                list.push((NamedSeries::new("main formula", &series).param("reading", reading.label()), series));
            }
            Ok(Document::Series(list))
        }
        Some(Target::Howe) => one("fermion product", howe_product(s.window, &s.max_degree())?),
        Some(Target::Cy) => one("cy product display", cy_partition_product(s.tau_order, s.q_order, s.q_order + 1)?),
        Some(Target::GIdentity) => {
            let list = (0..=s.kmax)
                .map(|k| {
                    let series = bosonic_hilbert_series(k, s.q_order);
                    (NamedSeries::new("bosonic hilbert series", &series).param("k", k), series)
                })
                .collect();
            Ok(Document::Series(list))
        }
        Some(Target::Mcmahon) => one("prod (1-q^n)^(-n)", mcmahon_product(s.mcmahon_order())?),
        t => Err(unsupported("series", t)),
    }
}

fn traces(s: &Settings) -> Result<Document> {
    let one = |name: &str, series: Series| Ok(Document::Series(vec![(NamedSeries::new(name, &series), series)]));
    match s.target {
        Some(Target::Ze) => one("ze brute trace", ze_brute(s.ze_energy(), s.q_order, s.ab_degree)?),
        Some(Target::Bo) => one("bo brute character", bo_brute(s.jmax, s.bo_modes())?),
        Some(Target::Main) => {
            let charges = s.charge_mode.unwrap_or(ChargeMode::All);
            let series = main_trace_brute(s.main_params(), charges.into())?;
            let name = NamedSeries::new("main brute trace", &series).param("charges", format!("{charges:?}").to_lowercase());
            Ok(Document::Series(vec![(name, series)]))
        }
        Some(Target::Cy) => one("cy trace", cy_partition_trace(s.tau_order, s.q_order)?),
        Some(Target::Mcmahon) => one("vertex operators", mcmahon_series(s.mcmahon_order())?),
        t => Err(unsupported("trace", t)),
    }
}

fn characters(s: &Settings) -> Result<Document> {
    let one = |name: &str, series: Series| Ok(Document::Series(vec![(NamedSeries::new(name, &series), series)]));
    match s.target.unwrap_or(Target::Howe) {
        Target::Howe => one("clifford module character", howe_character(s.window, &s.max_degree())?),
        Target::Bo => one("bo brute character", bo_brute(s.jmax, s.bo_modes())?),
        t => Err(unsupported("char", Some(t))),
    }
}

fn cy(s: &Settings) -> Result<Document> {
    if s.target.is_some_and(|t| t != Target::Cy) {
        return Err(unsupported("cy", s.target));
    }
    let trace = cy_partition_trace(s.tau_order, s.q_order)?;
    let limit = at_unit_mass(&trace)?;
    let log = log_z(&trace)?;
    let tag = |n: NamedSeries| n.param("tau_order", s.tau_order).param("q_order", s.q_order);
    Ok(Document::Series(vec![
        (tag(NamedSeries::new("Z", &trace)), trace),
        (tag(NamedSeries::new("Z at Q_m = 1", &limit)), limit),
        (tag(NamedSeries::new("log Z", &log)), log),
    ]))
}

fn mcmahon(s: &Settings) -> Result<Document> {
    if s.target.is_some_and(|t| t != Target::Mcmahon) {
        return Err(unsupported("mcmahon", s.target));
    }
    let order = s.mcmahon_order();
    let series = mcmahon_series(order)?;
    let coefficients = (0..=order as i64)
        .map(|n| {
            let c = series.coefficient(&Monomial::power(VarId::q(), int(n)));
            to_i64(&c).ok_or_else(|| Error::Unsupported(format!("non-integral coefficient at q^{n}")))
        })
        .collect::<Result<_>>()?;
    Ok(Document::Coefficients { order, coefficients })
}

fn execute(s: &Settings) -> Result<Document> {
    match s.command {
        Command::Verify => verify(s),
        Command::Series => closed_forms(s),
        Command::Trace => traces(s),
        Command::Char => characters(s),
        Command::Cy => cy(s),
        Command::Mcmahon => mcmahon(s),
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Arity(_) => EXIT_USAGE,
        _ => EXIT_ASSERTED_FAILED,
    }
}

/// Runs a fully merged config, writing the document to `out` and a summary to `err`.
pub fn run_config(config: RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let settings = match Settings::resolve(config) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let doc = match execute(&settings) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return error_code(&e);
        }
    };
    if let Document::Reports(reports) = &doc {
        for (t, r) in reports {
            let verdict = if r.agree { "agree" } else { "DISAGREE" };
            let _ = writeln!(err, "{}: {verdict} [{}] {} vs {} ({} checked)", t.name(), r.mode().as_str(), r.lhs, r.rhs, r.checked);
        }
    }
    if out.write_all(doc.render(settings.output).as_bytes()).is_err() {
        return EXIT_USAGE;
    }
    doc.exit_code()
}

/// Parses arguments (program name first), merges an optional config file and runs.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let (flags, file) = cli.into_parts();
    let config = match file {
        None => flags,
        Some(path) => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            };
            match RunConfig::from_json(&text) {
                Ok(base) => base.overlay(flags),
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_USAGE;
                }
            }
        }
    };
    run_config(config, out, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("fock-trace").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn verify_ze_agrees() {
        let (code, out) = invoke(&["verify", "ze", "--q-order", "6", "--ab-degree", "2"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"agree\": true"));
    }

    #[test]
    fn mcmahon_coefficients() {
        let (code, out) = invoke(&["mcmahon", "--order", "6", "--output", "csv"]);
        assert_eq!(code, EXIT_OK);
        let coefficients: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
        assert_eq!(coefficients, ["1", "1", "3", "6", "13", "24", "48"]);
    }

    #[test]
    fn main_is_never_silent() {
        let (code, out) = invoke(&["verify", "main", "--energy", "3", "--jmax", "2"]);
        assert!(code == EXIT_OK || code == EXIT_REPORT_DISAGREED);
        assert_eq!(out.matches("\"reading\"").count(), 16);
    }

    #[test]
    fn toggles_filter_readings() {
        let (_, out) = invoke(&["verify", "main", "--energy", "2", "--jmax", "1", "--mu", "lambda", "--charge-mode", "zero"]);
        assert_eq!(out.matches("\"reading\"").count(), 4);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(invoke(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(invoke(&[]).0, EXIT_USAGE);
        assert_eq!(invoke(&["series", "all"]).0, EXIT_USAGE);
        assert_eq!(invoke(&["verify", "howe", "--flavor-window", "2..=1"]).0, EXIT_USAGE);
        assert_eq!(invoke(&["verify", "main", "--jmax", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn report_csv_schema() {
        let (_, out) = invoke(&["verify", "g-identity", "--kmax", "2", "--q-order", "2", "--output", "csv"]);
        assert!(out.starts_with("target,mode,comparison,monomial,lhs,rhs\ng-identity,asserted,"));
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["verify", "gamma", "--lambda-max", "3", "--q-order", "3"];
        assert_eq!(invoke(&args), invoke(&args));
    }

    #[test]
    fn config_file_rules() {
        assert!(RunConfig::from_json(r#"{"energy": 3, "bogus": 1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"energy": -3}"#).is_err());
        let path = std::env::temp_dir().join(format!("fock-trace-config-{}.json", std::process::id()));
        std::fs::write(&path, r#"{"command": "mcmahon", "order": 2, "output": "csv"}"#).unwrap();
        let p = path.to_str().unwrap();
        assert_eq!(invoke(&["--config", p]), (EXIT_OK, "degree,coefficient\n0,1\n1,1\n2,3\n".into()));
        let (_, json) = invoke(&["--config", p, "--output", "json", "--order", "3"]);
        std::fs::remove_file(&path).unwrap();
        assert!(json.contains("\"order\": 3"));
    }

    #[test]
    fn series_and_traces_render() {
        let (code, out) = invoke(&["series", "ze", "--q-order", "2", "--ab-degree", "1", "--output", "csv"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("series,monomial,coefficient\n"));
        assert_eq!(invoke(&["trace", "howe"]).0, EXIT_USAGE);
        assert_eq!(invoke(&["char", "howe", "--energy", "1"]).0, EXIT_OK);
        assert_eq!(invoke(&["cy", "--tau-order", "1", "--q-order", "1"]).0, EXIT_OK);
    }
}
