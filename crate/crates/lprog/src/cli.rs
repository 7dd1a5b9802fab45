//! Command grammar, dispatch, and report emission.
//!
//! Exit policy: 0 on success, 1 on validation or configuration errors, 2 on
//! numeric findings (non-convergence, range overflow, exhausted searches).
//! Every JSON report embeds the resolved configuration and the SHA-256 of
//! the constants file in effect; the LPROG_CONSTANTS environment variable
//! points at an override file.  Output for fixed flags is bit-identical
//! across runs and thread counts.

use crate::bounds::{self, MinSumVariant};
use crate::characters::DirichletCharacter;
use crate::constants::{self, ConstantsFile, FrozenConstants};
use crate::error::{Error, Result};
use crate::lfunc::{self, ComplexPoint, TruncationPlan};
use crate::mollifier::PolyLabel;
use crate::moments::{self, EvalPlan, ProgressionSpec};
use crate::report;
use crate::sieve::{build_sieve, SieveTable};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "lprog",
    version,
    about = "Dirichlet L-functions along vertical arithmetic progressions: \
             characters, dual-route evaluation, mollified moments, \
             nonvanishing scans, and explicit bound ledgers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the Dirichlet characters mod q
    Chars(CharsArgs),
    /// Evaluate L(s, chi) by the Hurwitz oracle or the truncated series
    Eval(EvalArgs),
    /// Mollified moment S1 or S2 along t_k = 2pi(alpha + k beta)
    Moment(MomentArgs),
    /// Nonvanishing scan with the Cauchy-Schwarz lower bound
    Nonvanish(NonvanishArgs),
    /// First certified nonzero L-value along t_k = a + kb
    FirstNonzero(FirstNonzeroArgs),
    /// Exact min-sums against their bound shapes, single row or ledger grid
    Minsum(MinsumArgs),
    /// The slow-growth weight w_L(x) = exp(L log x / log log x)
    Wfunc(WfuncArgs),
    /// Quadrature cross-check of the mollified second-moment main term
    BauerCheck(BauerCheckArgs),
    /// Re-derive the empirical constants and emit the frozen constants file
    Calibrate(CalibrateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn label(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to this path instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Oracle,
    Truncated,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PlanArg {
    Oracle,
    Truncated,
    Hybrid,
}

impl PlanArg {
    fn to_plan(self, c: f64) -> EvalPlan {
        match self {
            PlanArg::Oracle => EvalPlan::Oracle,
            PlanArg::Truncated => EvalPlan::Truncated { c },
            PlanArg::Hybrid => EvalPlan::Hybrid { c },
        }
    }

    fn label(self) -> &'static str {
        match self {
            PlanArg::Oracle => "oracle",
            PlanArg::Truncated => "truncated",
            PlanArg::Hybrid => "hybrid",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolyArg {
    P1,
    P2,
}

impl PolyArg {
    fn to_label(self) -> PolyLabel {
        match self {
            PolyArg::P1 => PolyLabel::P1,
            PolyArg::P2 => PolyLabel::P2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            PolyArg::P1 => "P1",
            PolyArg::P2 => "P2",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MomentKind {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    General,
    #[value(name = "beta-ge-1")]
    BetaGe1,
    IntervalLemma,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GridArg {
    /// Weighted grid over beta, T, and (A, B) ranges
    Prop42,
    /// Unweighted per-interval grid over the E_j boundaries
    Lemma41,
}

#[derive(Args, Debug)]
struct CharsArgs {
    #[arg(long)]
    modulus: u32,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    modulus: u32,
    /// Conrey label of the character
    #[arg(long)]
    conrey: u32,
    #[arg(long)]
    sigma: f64,
    #[arg(long)]
    t: f64,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Truncation length for the series method; defaults to the scan rule
    /// max(x_base, 1.25 C|t|/2pi)
    #[arg(long)]
    x: Option<f64>,
    /// Admissibility constant C in x > C|t|/2pi
    #[arg(long, default_value_t = 2.0)]
    bigc: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct MomentArgs {
    #[arg(long)]
    modulus: u32,
    #[arg(long)]
    conrey: u32,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long = "T")]
    t_count: u64,
    #[arg(long, value_enum, default_value_t = MomentKind::First)]
    kind: MomentKind,
    #[arg(long, value_enum, default_value_t = PolyArg::P1)]
    poly: PolyArg,
    /// Mollifier exponent for P1 (X = T^theta); defaults to the frozen value
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long, value_enum, default_value_t = PlanArg::Truncated)]
    plan: PlanArg,
    #[arg(long, default_value_t = 2.0)]
    bigc: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct NonvanishArgs {
    #[arg(long)]
    modulus: u32,
    #[arg(long)]
    conrey: u32,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long = "T")]
    t_count: u64,
    /// Mollifier exponent for the Cauchy-Schwarz moment run
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long, value_enum, default_value_t = PlanArg::Hybrid)]
    plan: PlanArg,
    #[arg(long, default_value_t = 2.0)]
    bigc: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct FirstNonzeroArgs {
    #[arg(long)]
    modulus: u32,
    #[arg(long)]
    conrey: u32,
    /// Progression offset in t_k = a + kb
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    /// Progression step in t_k = a + kb
    #[arg(long)]
    b: f64,
    /// Exponent constant in the theorem bound; must exceed 8 log 2
    #[arg(long = "D", default_value_t = 6.0)]
    d: f64,
    #[arg(long, value_enum, default_value_t = PlanArg::Hybrid)]
    plan: PlanArg,
    #[arg(long, default_value_t = 2.0)]
    bigc: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct MinsumArgs {
    /// Run a whole ledger grid instead of a single row
    #[arg(long, value_enum)]
    grid: Option<GridArg>,
    #[arg(long = "A", required_unless_present = "grid")]
    a: Option<f64>,
    #[arg(long = "B", required_unless_present = "grid")]
    b: Option<f64>,
    #[arg(long, required_unless_present = "grid")]
    beta: Option<f64>,
    #[arg(long = "T", required_unless_present = "grid")]
    t: Option<f64>,
    #[arg(long, value_enum, default_value_t = VariantArg::General)]
    variant: VariantArg,
    /// Interval index for the interval-lemma variant
    #[arg(long)]
    j: Option<u32>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct WfuncArgs {
    #[arg(long = "L")]
    l: f64,
    #[arg(long)]
    x: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct BauerCheckArgs {
    #[arg(long, default_value_t = 3)]
    modulus: u32,
    #[arg(long, default_value_t = 2)]
    conrey: u32,
    #[arg(long = "T")]
    t: f64,
    #[arg(long)]
    theta: f64,
    /// Q1 coefficients, ascending degree, comma-separated (constant term 0)
    #[arg(long, default_value = "0,1")]
    poly: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Truncated)]
    method: MethodArg,
    #[arg(long, default_value_t = 2.0)]
    bigc: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct CalibrateArgs {
    /// Write the fitted constants file here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Fit only the fast constants (min-sum, growth gauge, truncation
    /// factor); keep the previous moment, scan, and quadrature values
    #[arg(long)]
    quick: bool,
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let consts = constants::load()?;
    match cli.command {
        Command::Chars(args) => cmd_chars(args, &consts),
        Command::Eval(args) => cmd_eval(args, &consts),
        Command::Moment(args) => cmd_moment(args, &consts),
        Command::Nonvanish(args) => cmd_nonvanish(args, &consts),
        Command::FirstNonzero(args) => cmd_first_nonzero(args, &consts),
        Command::Minsum(args) => cmd_minsum(args, &consts),
        Command::Wfunc(args) => cmd_wfunc(args, &consts),
        Command::BauerCheck(args) => cmd_bauer_check(args, &consts),
        Command::Calibrate(args) => cmd_calibrate(args, &consts),
    }
}

fn emit(
    command: &str,
    config: serde_json::Value,
    consts: &ConstantsFile,
    out: &OutputArgs,
    json_payload: &impl serde::Serialize,
    csv_payload: impl FnOnce() -> Result<String>,
) -> Result<()> {
    let content = match out.format {
        Format::Json => report::render_json(command, &config, consts, json_payload)?,
        Format::Csv => csv_payload()?,
    };
    report::write_output(out.output.as_deref(), &content)
}

fn sieve_for(x: f64) -> Result<SieveTable> {
    build_sieve((x.ceil() as usize + 2).max(1000))
}

fn cmd_chars(args: CharsArgs, consts: &ConstantsFile) -> Result<()> {
    let records: Vec<_> = DirichletCharacter::enumerate(args.modulus)?
        .iter()
        .map(|c| c.json_record())
        .collect();
    let config = json!({
        "modulus": args.modulus,
        "format": args.out.format.label(),
    });
    emit("chars", config, consts, &args.out, &records, || {
        report::characters_csv(&records)
    })
}

fn cmd_eval(args: EvalArgs, consts: &ConstantsFile) -> Result<()> {
    let chi = DirichletCharacter::from_conrey(args.modulus, args.conrey)?;
    let s = ComplexPoint::new(args.sigma, args.t);
    let (ev, x_used) = match args.method {
        MethodArg::Oracle => (lfunc::l_via_hurwitz(s, &chi)?, None),
        MethodArg::Truncated => {
            let x = args.x.unwrap_or_else(|| {
                consts
                    .constants
                    .scan_x_base
                    .max(1.25 * args.bigc * args.t.abs() / (2.0 * PI))
            });
            let plan =
                TruncationPlan::new(args.bigc, x, consts.constants.truncation_constant_factor)?;
            (lfunc::l_truncated(s, &chi, &plan)?, Some(x))
        }
    };
    let config = json!({
        "modulus": args.modulus,
        "conrey": args.conrey,
        "sigma": args.sigma,
        "t": args.t,
        "method": ev.method.as_str(),
        "x": x_used,
        "bigc": args.bigc,
        "format": args.out.format.label(),
    });
    let payload = json!({
        "value": [ev.value.re, ev.value.im],
        "errorRadius": ev.error_radius,
        "termsUsed": ev.terms_used,
        "method": ev.method.as_str(),
    });
    #[derive(serde::Serialize)]
    #[serde(rename_all = "camelCase")]
    struct EvalRow {
        modulus: u32,
        conrey: u32,
        sigma: f64,
        t: f64,
        method: &'static str,
        re: f64,
        im: f64,
        abs: f64,
        error_radius: f64,
        terms_used: u64,
    }
    let row = EvalRow {
        modulus: args.modulus,
        conrey: args.conrey,
        sigma: args.sigma,
        t: args.t,
        method: ev.method.as_str(),
        re: ev.value.re,
        im: ev.value.im,
        abs: ev.value.norm(),
        error_radius: ev.error_radius,
        terms_used: ev.terms_used,
    };
    emit("eval", config, consts, &args.out, &payload, || {
        report::rows_to_csv(&[row])
    })
}

fn cmd_moment(args: MomentArgs, consts: &ConstantsFile) -> Result<()> {
    let chi = DirichletCharacter::from_conrey(args.modulus, args.conrey)?;
    let spec = ProgressionSpec::new(args.alpha, args.beta)?;
    let label = args.poly.to_label();
    let theta = resolve_theta(label, args.theta, &consts.constants);
    let mollifier = moments::mollifier_for_run(label, args.t_count, theta, spec, args.modulus)?;
    let sieve = sieve_for(mollifier.x)?;
    let plan = args.plan.to_plan(args.bigc);
    let rep = match args.kind {
        MomentKind::First => moments::first_moment(
            args.t_count,
            spec,
            &chi,
            &mollifier,
            theta,
            plan,
            &sieve,
            &consts.constants,
        )?,
        MomentKind::Second => moments::second_moment(
            args.t_count,
            spec,
            &chi,
            &mollifier,
            theta,
            plan,
            &sieve,
            &consts.constants,
        )?,
    };
    let config = json!({
        "modulus": args.modulus,
        "conrey": args.conrey,
        "alpha": args.alpha,
        "beta": args.beta,
        "T": args.t_count,
        "kind": match args.kind { MomentKind::First => "first", MomentKind::Second => "second" },
        "poly": args.poly.label(),
        "theta": theta,
        "plan": args.plan.label(),
        "bigc": args.bigc,
        "format": args.out.format.label(),
    });
    emit("moment", config, consts, &args.out, &rep, || {
        report::moment_csv(&rep)
    })
}

fn cmd_nonvanish(args: NonvanishArgs, consts: &ConstantsFile) -> Result<()> {
    let chi = DirichletCharacter::from_conrey(args.modulus, args.conrey)?;
    let spec = ProgressionSpec::new(args.alpha, args.beta)?;
    let plan = args.plan.to_plan(args.bigc);
    let outcome = moments::nonvanishing_scan(args.t_count, spec, &chi, plan, &consts.constants)?;
    let theta = resolve_theta(PolyLabel::P1, args.theta, &consts.constants);
    let mollifier =
        moments::mollifier_for_run(PolyLabel::P1, args.t_count, theta, spec, args.modulus)?;
    let sieve = sieve_for(mollifier.x)?;
    let moment = moments::first_moment(
        args.t_count,
        spec,
        &chi,
        &mollifier,
        theta,
        plan,
        &sieve,
        &consts.constants,
    )?;
    let config = json!({
        "modulus": args.modulus,
        "conrey": args.conrey,
        "alpha": args.alpha,
        "beta": args.beta,
        "T": args.t_count,
        "theta": theta,
        "plan": args.plan.label(),
        "bigc": args.bigc,
        "format": args.out.format.label(),
    });
    // The summary carries the Cauchy-Schwarz bound from the companion
    // moment run next to the scan counts.
    let mut summary = serde_json::to_value(&outcome.summary)
        .map_err(|e| Error::Config(format!("summary serialization failed: {e}")))?;
    summary["csLowerBound"] = json!(moment.cs_lower_bound);
    let payload = json!({
        "summary": summary,
        "moment": moment,
        "verdicts": report::verdict_json_rows(&outcome),
    });
    emit("nonvanish", config, consts, &args.out, &payload, || {
        report::scan_csv(&outcome)
    })
}

fn cmd_first_nonzero(args: FirstNonzeroArgs, consts: &ConstantsFile) -> Result<()> {
    let chi = DirichletCharacter::from_conrey(args.modulus, args.conrey)?;
    let plan = args.plan.to_plan(args.bigc);
    let rep = moments::first_nonzero_index(&chi, args.a, args.b, args.d, plan, &consts.constants)?;
    let config = json!({
        "modulus": args.modulus,
        "conrey": args.conrey,
        "a": args.a,
        "b": args.b,
        "D": args.d,
        "plan": args.plan.label(),
        "bigc": args.bigc,
        "format": args.out.format.label(),
    });
    emit("first-nonzero", config, consts, &args.out, &rep, || {
        report::first_nonzero_csv(&rep)
    })
}

fn cmd_minsum(args: MinsumArgs, consts: &ConstantsFile) -> Result<()> {
    let records = match args.grid {
        Some(GridArg::Prop42) => bounds::prop42_grid()?,
        Some(GridArg::Lemma41) => bounds::lemma41_grid()?,
        None => {
            let (a, b, beta, t) = (
                args.a.expect("required"),
                args.b.expect("required"),
                args.beta.expect("required"),
                args.t.expect("required"),
            );
            let variant = match args.variant {
                VariantArg::General => MinSumVariant::General,
                VariantArg::BetaGe1 => MinSumVariant::BetaGe1,
                VariantArg::IntervalLemma => MinSumVariant::IntervalLemma {
                    j: args.j.ok_or_else(|| {
                        Error::InvalidArgument("the interval-lemma variant needs --j".into())
                    })?,
                },
            };
            vec![bounds::min_sum_record(a, b, beta, t, variant)?]
        }
    };
    let config = json!({
        "grid": args.grid.map(|g| match g { GridArg::Prop42 => "prop42", GridArg::Lemma41 => "lemma41" }),
        "A": args.a,
        "B": args.b,
        "beta": args.beta,
        "T": args.t,
        "variant": records.first().map(|r| r.variant.clone()),
        "j": args.j,
        "format": args.out.format.label(),
    });
    emit("minsum", config, consts, &args.out, &records, || {
        report::min_sum_csv(&records)
    })
}

fn cmd_wfunc(args: WfuncArgs, consts: &ConstantsFile) -> Result<()> {
    let value = bounds::w_function(args.l, args.x)?;
    let config = json!({
        "L": args.l,
        "x": args.x,
        "format": args.out.format.label(),
    });
    #[derive(serde::Serialize)]
    struct WRow {
        #[serde(rename = "L")]
        l: f64,
        x: f64,
        value: f64,
    }
    let row = WRow {
        l: args.l,
        x: args.x,
        value,
    };
    let payload = json!({ "L": args.l, "x": args.x, "value": value });
    emit("wfunc", config, consts, &args.out, &payload, || {
        report::rows_to_csv(&[row])
    })
}

fn cmd_bauer_check(args: BauerCheckArgs, consts: &ConstantsFile) -> Result<()> {
    let chi = DirichletCharacter::from_conrey(args.modulus, args.conrey)?;
    let coeffs = parse_coeff_list(&args.poly)?;
    let plan = match args.method {
        MethodArg::Oracle => EvalPlan::Oracle,
        MethodArg::Truncated => EvalPlan::Truncated { c: args.bigc },
    };
    let x_moll = args.t.powf(args.theta);
    let sieve = sieve_for(x_moll)?;
    let rep = bounds::bauer_quadrature_check(
        args.t,
        args.theta,
        &chi,
        &coeffs,
        plan,
        &sieve,
        &consts.constants,
    )?;
    let config = json!({
        "modulus": args.modulus,
        "conrey": args.conrey,
        "T": args.t,
        "theta": args.theta,
        "poly": coeffs,
        "method": match args.method { MethodArg::Oracle => "oracle", MethodArg::Truncated => "truncated" },
        "bigc": args.bigc,
        "format": args.out.format.label(),
    });
    emit("bauer-check", config, consts, &args.out, &rep, || {
        report::bauer_csv(&rep)
    })
}

fn parse_coeff_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidArgument(format!("bad coefficient {piece:?}: {e}")))
        })
        .collect()
}

fn resolve_theta(label: PolyLabel, given: Option<f64>, consts: &FrozenConstants) -> Option<f64> {
    match label {
        PolyLabel::P1 => Some(given.unwrap_or(consts.theta_default)),
        _ => given,
    }
}

/// The full calibration pass.  Fits the truncation constant on the
/// conformance grid first, then measures everything else with the fitted
/// value, so the frozen file is self-consistent.
fn cmd_calibrate(args: CalibrateArgs, consts: &ConstantsFile) -> Result<()> {
    let mut fitted = consts.constants.clone();
    let mut details = serde_json::Map::new();

    // Truncation constant: smallest factor covering every grid point, then
    // quadrupled for headroom beyond the probed t-range and rounded up to
    // two decimals.
    let unit_runs = lfunc::run_conformance(1.0)?;
    let mut cf_needed: f64 = 0.0;
    for p in &unit_runs {
        let excess = (p.delta - p.float_radius).max(0.0);
        cf_needed = cf_needed.max(excess / p.unit_radius);
    }
    fitted.truncation_constant_factor = ((400.0 * cf_needed).ceil() / 100.0).max(1.0);
    details.insert(
        "conformance".into(),
        json!({
            "points": unit_runs.len(),
            "factor_needed": cf_needed,
            "factor_frozen": fitted.truncation_constant_factor,
        }),
    );

    let prop = bounds::prop42_grid()?;
    let lemma = bounds::lemma41_grid()?;
    let max_ratio = |rows: &[bounds::MinSumRecord],
                     pred: &dyn Fn(&bounds::MinSumRecord) -> bool| {
        rows.iter()
            .filter(|r| pred(r))
            .map(|r| r.ratio)
            .fold(0.0f64, f64::max)
    };
    fitted.prop42_general_ratio_max = max_ratio(&prop, &|r| r.variant == "general");
    fitted.prop42_beta_ge1_ratio_max = max_ratio(&prop, &|r| r.variant == "beta-ge-1");
    fitted.lemma41_ratio_max = max_ratio(&lemma, &|_| true);
    let gauge = bounds::lemma61c_grid()?;
    fitted.lemma61c_ratio_max = gauge.iter().map(|r| r.ratio).fold(0.0f64, f64::max);
    details.insert(
        "min_sums".into(),
        json!({
            "prop42_rows": prop.len(),
            "lemma41_rows": lemma.len(),
            "general_max": fitted.prop42_general_ratio_max,
            "beta_ge_1_max": fitted.prop42_beta_ge1_ratio_max,
            "interval_max": fitted.lemma41_ratio_max,
            "lemma61c_max": fitted.lemma61c_ratio_max,
        }),
    );

    if !args.quick {
        let chi = DirichletCharacter::from_conrey(3, 2)?;
        let spec = ProgressionSpec::new(0.0, 1.0)?;
        let theta = Some(0.4);
        let plan = EvalPlan::Truncated { c: 2.0 };

        let mut goldens = std::collections::BTreeMap::new();
        let mut s2_max: f64 = 0.0;
        let mut moment_rows = Vec::new();
        for t_count in [250u64, 500, 1000, 2000] {
            let mollifier = moments::mollifier_for_run(PolyLabel::P1, t_count, theta, spec, 3)?;
            let sieve = sieve_for(mollifier.x)?;
            let rep = moments::first_moment(
                t_count, spec, &chi, &mollifier, theta, plan, &sieve, &fitted,
            )?;
            let tf = t_count as f64;
            let s1 = rep.s1_complex();
            let golden = ((s1 / tf) - num_complex::Complex64::new(1.0, 0.0)).norm();
            let s2_ratio = rep.s2 / (tf * tf.ln());
            goldens.insert(t_count.to_string(), golden);
            s2_max = s2_max.max(s2_ratio);
            moment_rows.push(json!({
                "T": t_count,
                "s1": rep.s1,
                "s2": rep.s2,
                "golden": golden,
                "s2_over_t_log_t": s2_ratio,
            }));
        }
        fitted.first_moment_golden = goldens;
        fitted.second_moment_ratio_max = s2_max;
        details.insert("moments".into(), json!(moment_rows));

        let scan =
            moments::nonvanishing_scan(200, spec, &chi, EvalPlan::Hybrid { c: 2.0 }, &fitted)?;
        fitted.nonvanish_ratio_min = scan.summary.ratio_vs_t_over_log_t;
        details.insert(
            "scan".into(),
            json!({
                "T": 200,
                "nonzero": scan.summary.nonzero_count,
                "undetermined": scan.summary.undetermined_count,
                "ratio": scan.summary.ratio_vs_t_over_log_t,
            }),
        );

        let sieve = sieve_for(500.0f64.powf(0.3))?;
        let bauer = bounds::bauer_quadrature_check(
            500.0,
            0.3,
            &chi,
            &[0.0, 1.0],
            EvalPlan::Truncated { c: 2.0 },
            &sieve,
            &fitted,
        )?;
        fitted.bauer_deviation_max = bauer.relative_deviation;
        details.insert(
            "bauer".into(),
            json!({
                "T": 500.0,
                "theta": 0.3,
                "integral": bauer.integral,
                "main_term": bauer.main_term,
                "deviation": bauer.relative_deviation,
            }),
        );

        // Gallagher diagnostic on the progression grid k = 1..50.
        let t_count = 50u64;
        let (t1, t2) = (PI, 2.0 * PI * (0.5 + t_count as f64));
        let grid: Vec<f64> = (1..=t_count).map(|k| 2.0 * PI * k as f64).collect();
        let mollifier = moments::mollifier_for_run(PolyLabel::P1, t_count, theta, spec, 3)?;
        let gsieve = sieve_for(mollifier.x)?;
        let gal = moments::gallagher_inequality_check(
            t1,
            t2,
            2.0 * PI,
            &grid,
            &chi,
            &mollifier,
            plan,
            &gsieve,
            &fitted,
        )?;
        fitted.gallagher_margin = gal.margin;
        details.insert(
            "gallagher".into(),
            json!({
                "T1": t1,
                "T2": t2,
                "kappa": 2.0 * PI,
                "lhs": gal.lhs,
                "rhs": gal.rhs,
                "margin": gal.margin,
                "holds": gal.holds,
            }),
        );
    }

    let text = constants::to_canonical_json(&fitted);
    match &args.output {
        Some(path) => {
            report::write_output(Some(path), &text)?;
            let summary = json!({
                "written": path.display().to_string(),
                "sha256": constants::sha256_hex(text.as_bytes()),
                "quick": args.quick,
                "details": details,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&summary).expect("summary")
            );
            Ok(())
        }
        None => report::write_output(None, &text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_parses_spec_examples() {
        Cli::try_parse_from(["lprog", "chars", "--modulus", "5", "--format", "json"]).unwrap();
        Cli::try_parse_from([
            "lprog",
            "eval",
            "--modulus",
            "4",
            "--conrey",
            "3",
            "--sigma",
            "1",
            "--t",
            "0",
            "--method",
            "oracle",
        ])
        .unwrap();
        Cli::try_parse_from([
            "lprog",
            "nonvanish",
            "--modulus",
            "3",
            "--conrey",
            "2",
            "--alpha",
            "0",
            "--beta",
            "1",
            "--T",
            "200",
        ])
        .unwrap();
        Cli::try_parse_from(["lprog", "wfunc", "--L", "1", "--x", "100"]).unwrap();
        Cli::try_parse_from(["lprog", "minsum", "--grid", "prop42", "--format", "csv"]).unwrap();
        assert!(Cli::try_parse_from(["lprog", "eval", "--nonsense"]).is_err());
        assert!(Cli::try_parse_from(["lprog", "minsum"]).is_err());
    }

    #[test]
    fn coefficient_lists_parse() {
        assert_eq!(parse_coeff_list("0,1").unwrap(), vec![0.0, 1.0]);
        assert_eq!(
            parse_coeff_list(" 0 , -2.5 , 3 ").unwrap(),
            vec![0.0, -2.5, 3.0]
        );
        assert!(parse_coeff_list("0,x").is_err());
    }

    #[test]
    fn theta_defaults_only_for_p1() {
        let consts = constants::load().unwrap().constants;
        assert_eq!(
            resolve_theta(PolyLabel::P1, None, &consts),
            Some(consts.theta_default)
        );
        assert_eq!(resolve_theta(PolyLabel::P1, Some(0.3), &consts), Some(0.3));
        assert_eq!(resolve_theta(PolyLabel::P2, None, &consts), None);
    }
}
