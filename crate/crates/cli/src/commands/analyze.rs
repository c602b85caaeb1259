//! `selmer analyze`: detect an MSA period, then report per-column
//! convergence errors and the approximation-error envelope of the
//! cycle, anchored at the purely periodic point T^m x.

use super::{resolve_field, resolve_precision, Format};
use crate::{emit, CliError};
use num_bigint::BigInt;
use selmer_core::maps::{Algo, Digit};
use selmer_core::periodic::{
    approximation_report, convergence_report, detect_period, repeat_digits, ApproximationReport,
    ConvergenceReport, CycleAnalysis, DetectOutcome,
};
use selmer_core::rational::{decimal_string, format_rational, parse_rational, Rational};
use std::fmt::Write as _;
use std::path::PathBuf;

pub struct AnalyzeArgs {
    pub field: Option<String>,
    pub point: String,
    pub max_steps: usize,
    pub s_max: usize,
    pub g_max: usize,
    pub epsilon: String,
    pub columns: Vec<usize>,
    pub format: Format,
    pub precision: String,
    pub out: Option<PathBuf>,
}

pub fn run(args: &AnalyzeArgs) -> Result<(), CliError> {
    let field = resolve_field(&args.field)?;
    let x = crate::spec::parse_point_spec(&args.point, &field).map_err(CliError::usage)?;
    let (_prec, places) = resolve_precision(&args.precision)?;
    let epsilon = parse_rational(&args.epsilon).map_err(CliError::usage)?;

    let outcome = detect_period(&x, Algo::Msa, args.max_steps);
    let report = match outcome {
        DetectOutcome::Periodic(r) => r,
        DetectOutcome::NotFound { trace } => {
            return emit(
                &args.out,
                &format!(
                    "status: not-found within {} steps ({} scanned); nothing to analyze\n",
                    args.max_steps,
                    trace.step_count()
                ),
            );
        }
        DetectOutcome::Terminated { trace } => {
            return emit(
                &args.out,
                &format!(
                    "status: terminated after {} steps; the expansion is finite\n",
                    trace.step_count()
                ),
            );
        }
    };
    let Some(analysis) = &report.analysis else {
        return emit(
            &args.out,
            &format!(
                "status: periodic (m = {}, p = {}), but the matrix analysis failed: {}\n",
                report.preperiod,
                report.period,
                report.analysis_error.as_deref().unwrap_or("unknown")
            ),
        );
    };

    let cycle: Vec<BigInt> = report
        .cycle_digits
        .iter()
        .map(|d| match d {
            Digit::Msa(k) => k.clone(),
            Digit::Ssa(_) => unreachable!("MSA detection"),
        })
        .collect();
    let anchor = &report.cycle_entry;
    let n = anchor.dim();
    let columns: Vec<usize> = if args.columns.is_empty() {
        (0..=n).collect()
    } else {
        for &c in &args.columns {
            if c > n {
                return Err(CliError::usage(format!("column {c} out of range 0..={n}")));
            }
        }
        args.columns.clone()
    };

    let digits = repeat_digits(&cycle, args.s_max);
    let conv = convergence_report(anchor, &digits, args.s_max, &columns)
        .map_err(|e| CliError::runtime(e.to_string()))?;
    let approx = approximation_report(anchor, &cycle, args.g_max, &epsilon, &analysis.dominant)
        .map_err(|e| CliError::runtime(e.to_string()))?;

    let content = match args.format {
        Format::Json => {
            let mut v = report.to_json();
            v["status"] = "periodic".into();
            v["convergence"] = convergence_json(&conv, places);
            v["approximation"] = approximation_json(&approx, places);
            let mut s = v.to_string();
            s.push('\n');
            s
        }
        Format::Text | Format::Csv => {
            let comment = if args.format == Format::Csv { "# " } else { "" };
            let mut out = String::new();
            summary_text(&mut out, comment, &report, analysis, &approx, places);
            writeln!(out, "s,column,max_error").unwrap();
            for row in &conv.rows {
                let err = match &row.max_err {
                    Some(e) => e.decimal(places),
                    None => "degenerate".to_string(),
                };
                writeln!(out, "{},{},{}", row.s, row.column, err).unwrap();
            }
            writeln!(out).unwrap();
            writeln!(out, "g,i,e_i_g,envelope_bound").unwrap();
            for row in &approx.rows {
                writeln!(
                    out,
                    "{},{},{},{}",
                    row.g,
                    row.i,
                    row.err.decimal(places),
                    decimal_string(&envelope_at(&approx, row.g), places)
                )
                .unwrap();
            }
            out
        }
    };
    emit(&args.out, &content)
}

fn envelope_at(approx: &ApproximationReport, g: usize) -> Rational {
    let mut acc = approx.fitted_c.clone();
    for _ in 0..g {
        acc *= &approx.envelope_base;
    }
    acc
}

fn summary_text(
    out: &mut String,
    comment: &str,
    report: &selmer_core::periodic::PeriodReport,
    analysis: &CycleAnalysis,
    approx: &ApproximationReport,
    places: u32,
) {
    let digits: Vec<String> = report.cycle_digits.iter().map(|d| d.to_string()).collect();
    writeln!(
        out,
        "{comment}status: periodic, m = {}, p = {}",
        report.preperiod, report.period
    )
    .unwrap();
    writeln!(out, "{comment}cycle digits: {}", digits.join(" ")).unwrap();
    writeln!(out, "{comment}char poly: {}", analysis.char_poly).unwrap();
    writeln!(
        out,
        "{comment}rho0: root of {} in ({}, {})  ~ {}",
        analysis.dominant.field.min_poly(),
        analysis.dominant.interval.lo,
        analysis.dominant.interval.hi,
        analysis.dominant.rho0.decimal(places.min(12)),
    )
    .unwrap();
    writeln!(
        out,
        "{comment}|rho1| in [{}, {}]",
        decimal_string(&analysis.dominant.rho1_lower, 6),
        decimal_string(&analysis.dominant.rho1_upper, 6),
    )
    .unwrap();
    writeln!(
        out,
        "{comment}eigen point: {}  ~ ({})",
        analysis.eigen_point.to_text(),
        analysis.eigen_point.decimals(places.min(12)).join(", ")
    )
    .unwrap();
    writeln!(
        out,
        "{comment}envelope: e_i(g) <= c * base^g with c = {}, base = {} (fit on g <= {}, \
         holds on the rest: {})",
        decimal_string(&approx.fitted_c, 6),
        decimal_string(&approx.envelope_base, 6),
        approx.fit_window,
        approx.envelope_holds,
    )
    .unwrap();
    writeln!(
        out,
        "{comment}lower-bound evidence: max e_i(g)/|rho1|^g >= {}",
        decimal_string(&approx.lower_evidence, 6),
    )
    .unwrap();
    writeln!(out, "{comment}").unwrap();
}

fn convergence_json(conv: &ConvergenceReport, places: u32) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = conv
        .rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "s": r.s,
                "column": r.column,
                "max_error": r.max_err.as_ref().map(|e| e.decimal(places)),
            })
        })
        .collect();
    serde_json::Value::Array(rows)
}

fn approximation_json(approx: &ApproximationReport, places: u32) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = approx
        .rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "g": r.g,
                "i": r.i,
                "e": r.err.decimal(places),
            })
        })
        .collect();
    serde_json::json!({
        "rows": rows,
        "envelope_base": format_rational(&approx.envelope_base),
        "fitted_c": format_rational(&approx.fitted_c),
        "fit_window": approx.fit_window,
        "envelope_holds": approx.envelope_holds,
        "lower_evidence": format_rational(&approx.lower_evidence),
    })
}
