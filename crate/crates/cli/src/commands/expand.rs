//! `selmer expand`: run an expansion and print per-step digits, exact
//! coordinates, certified decimals and (for MSA) the running convergent
//! column.

use super::{field_text, resolve_field, resolve_precision, Format};
use crate::{emit, CliError};
use selmer_core::convergents::ConvergentState;
use selmer_core::maps::{Algo, Digit};
use selmer_core::periodic::expand_orbit;
use std::fmt::Write as _;
use std::path::PathBuf;

pub struct ExpandArgs {
    pub algo: Algo,
    pub field: Option<String>,
    pub point: String,
    pub steps: usize,
    pub format: Format,
    pub precision: String,
    pub out: Option<PathBuf>,
}

pub fn run(args: &ExpandArgs) -> Result<(), CliError> {
    let field = resolve_field(&args.field)?;
    let x = crate::spec::parse_point_spec(&args.point, &field).map_err(CliError::usage)?;
    let (_, places) = resolve_precision(&args.precision)?;
    let trace = expand_orbit(&x, args.algo, args.steps);
    let content = match args.format {
        Format::Text => render_text(&trace, places),
        Format::Json => {
            let mut s = crate::trace::trace_to_json(&trace, places).to_string();
            s.push('\n');
            s
        }
        Format::Csv => render_csv(&trace, places),
    };
    emit(&args.out, &content)
}

fn render_text(trace: &selmer_core::periodic::OrbitTrace, places: u32) -> String {
    let mut out = String::new();
    let start = trace.start();
    writeln!(out, "algo: {}", trace.algo).unwrap();
    writeln!(out, "field: {}", field_text(start.field())).unwrap();
    writeln!(
        out,
        "start: {}  ~ ({})",
        start.to_text(),
        start.decimals(places).join(", ")
    )
    .unwrap();
    let mut conv = if trace.algo == Algo::Msa {
        Some(ConvergentState::identity(start.dim()))
    } else {
        None
    };
    for (i, digit) in trace.digits.iter().enumerate() {
        let state = &trace.states[i + 1];
        write!(
            out,
            "step {:>3}: digit {}  ->  {}  ~ ({})",
            i + 1,
            digit,
            state.to_text(),
            state.decimals(places).join(", ")
        )
        .unwrap();
        if let (Some(c), Digit::Msa(k)) = (&mut conv, digit) {
            *c = c.extend(k).expect("valid digit");
            let col: Vec<String> = c
                .matrix()
                .column(c.main_column())
                .iter()
                .map(|v| v.to_string())
                .collect();
            write!(out, "  B^({}) = [{}]", i + 1, col.join(", ")).unwrap();
        }
        writeln!(out).unwrap();
    }
    if trace.terminated {
        writeln!(
            out,
            "terminated after step {}: the last coordinate reached 0",
            trace.step_count()
        )
        .unwrap();
    }
    out
}

fn render_csv(trace: &selmer_core::periodic::OrbitTrace, places: u32) -> String {
    let n = trace.start().dim();
    let mut out = String::new();
    let mut header: Vec<String> = vec!["step".into(), "digit".into()];
    for i in 1..=n {
        header.push(format!("x{i}"));
    }
    for i in 1..=n {
        header.push(format!("x{i}_decimal"));
    }
    writeln!(out, "{}", header.join(",")).unwrap();
    for (idx, state) in trace.states.iter().enumerate() {
        let digit = if idx == 0 {
            String::new()
        } else {
            trace.digits[idx - 1].to_string()
        };
        let mut row: Vec<String> = vec![idx.to_string(), digit];
        for c in state.coords() {
            row.push(c.to_text());
        }
        row.extend(state.decimals(places));
        writeln!(out, "{}", row.join(",")).unwrap();
    }
    if trace.terminated {
        writeln!(out, "# terminated: last coordinate reached 0").unwrap();
    }
    out
}
