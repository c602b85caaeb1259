//! JSON trace schema for expansions, designed so that a re-parsed trace
//! reproduces the exact internal states (coefficients are exact
//! rational strings, never decimals).

use num_bigint::BigInt;
use selmer_core::convergents::ConvergentState;
use selmer_core::maps::{Algo, Digit, PointB};
use selmer_core::numfield::{NumberField, NumberFieldElement};
use selmer_core::periodic::OrbitTrace;
use serde_json::{json, Value};
use std::str::FromStr;
use std::sync::Arc;

pub fn trace_to_json(trace: &OrbitTrace, decimals: u32) -> Value {
    let field = trace.start().field();
    let mut steps = Vec::new();
    let mut conv = if trace.algo == Algo::Msa {
        Some(ConvergentState::identity(trace.start().dim()))
    } else {
        None
    };
    for (i, digit) in trace.digits.iter().enumerate() {
        let state = &trace.states[i + 1];
        let mut step = json!({
            "index": i + 1,
            "digit": digit.to_string(),
            "point": state.to_json(),
            "decimals": state.decimals(decimals),
        });
        if let (Some(c), Digit::Msa(k)) = (&mut conv, digit) {
            *c = c.extend(k).expect("valid digit");
            let col: Vec<String> = c
                .matrix()
                .column(c.main_column())
                .iter()
                .map(|v| v.to_string())
                .collect();
            step["convergent_main_column"] = json!(col);
        }
        steps.push(step);
    }
    json!({
        "algo": trace.algo.to_string(),
        "dim": trace.start().dim(),
        "field": field.to_json(),
        "start": trace.start().to_json(),
        "start_decimals": trace.start().decimals(decimals),
        "terminated": trace.terminated,
        "steps": steps,
    })
}

/// Reconstructs the exact states of a trace produced by
/// [`trace_to_json`]. Returns the algorithm, all states (including the
/// start) and the digits.
pub fn trace_from_json(v: &Value) -> Result<(Algo, Vec<PointB>, Vec<Digit>), String> {
    let algo = match v.get("algo").and_then(Value::as_str) {
        Some("ssa") => Algo::Ssa,
        Some("msa") => Algo::Msa,
        other => return Err(format!("bad algo field: {other:?}")),
    };
    let field_v = v.get("field").ok_or("missing field header")?;
    let field = field_from_json(field_v)?;
    let start_v = v.get("start").ok_or("missing start point")?;
    let start = point_from_json(&field, start_v)?;
    let mut states = vec![start];
    let mut digits = Vec::new();
    for step in v
        .get("steps")
        .and_then(Value::as_array)
        .ok_or("missing steps array")?
    {
        let d = step
            .get("digit")
            .and_then(Value::as_str)
            .ok_or("step without digit")?;
        let digit = match algo {
            Algo::Ssa => Digit::Ssa(d.parse::<usize>().map_err(|e| e.to_string())?),
            Algo::Msa => Digit::Msa(BigInt::from_str(d).map_err(|e| e.to_string())?),
        };
        digits.push(digit);
        let p = step.get("point").ok_or("step without point")?;
        states.push(point_from_json(&field, p)?);
    }
    Ok((algo, states, digits))
}

pub fn field_from_json(v: &Value) -> Result<Arc<NumberField>, String> {
    let coeffs = v
        .get("min_poly")
        .and_then(Value::as_array)
        .ok_or("field header missing min_poly")?;
    let ints: Result<Vec<BigInt>, String> = coeffs
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| "coefficient must be a string".to_string())
                .and_then(|s| BigInt::from_str(s).map_err(|e| e.to_string()))
        })
        .collect();
    let min_poly = selmer_core::poly::Polynomial::new(ints?);
    let interval = v
        .get("root_interval")
        .and_then(Value::as_array)
        .ok_or("field header missing root_interval")?;
    if interval.len() != 2 {
        return Err("root_interval needs two endpoints".into());
    }
    let lo = selmer_core::rational::parse_rational(
        interval[0].as_str().ok_or("endpoint must be a string")?,
    )?;
    let hi = selmer_core::rational::parse_rational(
        interval[1].as_str().ok_or("endpoint must be a string")?,
    )?;
    NumberField::new(min_poly, lo, hi).map_err(|e| e.to_string())
}

pub fn point_from_json(field: &Arc<NumberField>, v: &Value) -> Result<PointB, String> {
    let arr = v.as_array().ok_or("point must be an array")?;
    let coords: Result<Vec<NumberFieldElement>, String> = arr
        .iter()
        .map(|c| NumberFieldElement::from_json(field, c))
        .collect();
    PointB::new(coords?).map_err(|e| e.to_string())
}
