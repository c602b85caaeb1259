//! Field and point specifications:
//! `--field "x^3-2:(1,2)"` declares a minimal polynomial and a root
//! isolating interval; `--point "a^2-1,a-1"` lists coordinate
//! expressions in the generator `a`. Omitting `--field` selects the
//! rational field, whose points are plain rational expressions.

use crate::expr::{eval_element, eval_polynomial, parse_expr};
use selmer_core::maps::PointB;
use selmer_core::numfield::NumberField;
use selmer_core::poly;
use selmer_core::rational::parse_rational;
use std::sync::Arc;

pub fn parse_field_spec(s: &str) -> Result<Arc<NumberField>, String> {
    let (poly_part, interval_part) = s
        .split_once(':')
        .ok_or_else(|| format!("field spec {s:?} must look like \"x^3-2:(1,2)\""))?;
    let expr = parse_expr(poly_part)?;
    let coeffs = eval_polynomial(&expr)?;
    let min_poly = poly::primitive_from_q(&coeffs);
    let inner = interval_part
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("root interval {interval_part:?} must look like \"(1,2)\""))?;
    let (lo_s, hi_s) = inner
        .split_once(',')
        .ok_or_else(|| format!("root interval {inner:?} needs two endpoints"))?;
    let lo = parse_rational(lo_s)?;
    let hi = parse_rational(hi_s)?;
    NumberField::new(min_poly, lo, hi).map_err(|e| e.to_string())
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(c),
        }
    }
    out.push(cur);
    out
}

pub fn parse_point_spec(s: &str, field: &Arc<NumberField>) -> Result<PointB, String> {
    let mut coords = Vec::new();
    for part in split_top_level(s) {
        let expr = parse_expr(&part)?;
        coords.push(eval_element(&expr, field)?);
    }
    PointB::new(coords).map_err(|e| format!("invalid point: {e}"))
}
