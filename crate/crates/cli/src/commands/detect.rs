//! `selmer detect-period`: exact periodicity scan with the full report
//! for periodic MSA expansions. NotFound is a status, not a failure.

use super::{field_text, resolve_field, resolve_precision, Format};
use crate::{emit, CliError};
use selmer_core::maps::Algo;
use selmer_core::periodic::{detect_period, DetectOutcome, PeriodReport};
use std::fmt::Write as _;
use std::path::PathBuf;

pub struct DetectArgs {
    pub algo: Algo,
    pub field: Option<String>,
    pub point: String,
    pub max_steps: usize,
    pub format: Format,
    pub precision: String,
    pub out: Option<PathBuf>,
}

pub fn run(args: &DetectArgs) -> Result<(), CliError> {
    let field = resolve_field(&args.field)?;
    let x = crate::spec::parse_point_spec(&args.point, &field).map_err(CliError::usage)?;
    let (_, places) = resolve_precision(&args.precision)?;
    let outcome = detect_period(&x, args.algo, args.max_steps);
    let content = match args.format {
        Format::Json | Format::Csv => {
            let mut v = outcome_json(&outcome, args.max_steps);
            v["field"] = x.field().to_json();
            let mut s = v.to_string();
            s.push('\n');
            s
        }
        Format::Text => outcome_text(&outcome, &x, args.max_steps, places),
    };
    emit(&args.out, &content)
}

fn outcome_json(outcome: &DetectOutcome, max_steps: usize) -> serde_json::Value {
    match outcome {
        DetectOutcome::Periodic(report) => {
            let mut v = report.to_json();
            v["status"] = "periodic".into();
            v
        }
        DetectOutcome::NotFound { trace } => serde_json::json!({
            "status": "not-found",
            "max_steps": max_steps,
            "steps_scanned": trace.step_count(),
        }),
        DetectOutcome::Terminated { trace } => serde_json::json!({
            "status": "terminated",
            "steps": trace.step_count(),
        }),
    }
}

fn outcome_text(
    outcome: &DetectOutcome,
    x: &selmer_core::maps::PointB,
    max_steps: usize,
    places: u32,
) -> String {
    let mut out = String::new();
    writeln!(out, "field: {}", field_text(x.field())).unwrap();
    writeln!(out, "start: {}", x.to_text()).unwrap();
    match outcome {
        DetectOutcome::Periodic(report) => {
            writeln!(out, "status: periodic").unwrap();
            writeln!(out, "preperiod m = {}", report.preperiod).unwrap();
            writeln!(out, "period p = {}", report.period).unwrap();
            let digits: Vec<String> =
                report.cycle_digits.iter().map(|d| d.to_string()).collect();
            writeln!(out, "cycle digits: {}", digits.join(" ")).unwrap();
            writeln!(out, "cycle entry T^m x = {}", report.cycle_entry.to_text()).unwrap();
            render_analysis(&mut out, report, places);
        }
        DetectOutcome::NotFound { trace } => {
            writeln!(
                out,
                "status: not-found within {max_steps} steps ({} scanned)",
                trace.step_count()
            )
            .unwrap();
        }
        DetectOutcome::Terminated { trace } => {
            writeln!(
                out,
                "status: terminated after {} steps (last coordinate reached 0)",
                trace.step_count()
            )
            .unwrap();
            if let Some(rest) = trace.states.last().unwrap().restrict_to_lower_dim() {
                writeln!(out, "restriction to lower dimension: {}", rest.to_text()).unwrap();
            }
        }
    }
    out
}

fn render_analysis(out: &mut String, report: &PeriodReport, places: u32) {
    if let Some(a) = &report.analysis {
        writeln!(out, "periodicity matrix M = beta^({}):", report.period).unwrap();
        writeln!(out, "{}", a.matrix.to_aligned_text()).unwrap();
        writeln!(out, "char poly: {}", a.char_poly).unwrap();
        writeln!(
            out,
            "rho0: root of {} in ({}, {})  ~ {}",
            a.dominant.field.min_poly(),
            a.dominant.interval.lo,
            a.dominant.interval.hi,
            a.dominant.rho0.decimal(places.min(12)),
        )
        .unwrap();
        writeln!(
            out,
            "|rho1| in [{}, {}] (second largest modulus bounds)",
            selmer_core::rational::decimal_string(&a.dominant.rho1_lower, 6),
            selmer_core::rational::decimal_string(&a.dominant.rho1_upper, 6),
        )
        .unwrap();
        writeln!(
            out,
            "eigen point over Q(rho0): {}  ~ ({})",
            a.eigen_point.to_text(),
            a.eigen_point.decimals(places.min(12)).join(", ")
        )
        .unwrap();
        if let Some(e) = a.positivity_exponent {
            writeln!(out, "positivity exponent: M^{e} > 0").unwrap();
        }
    }
    if let Some(err) = &report.analysis_error {
        writeln!(out, "analysis failed: {err}").unwrap();
    }
}
