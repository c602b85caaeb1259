pub mod analyze;
pub mod detect;
pub mod expand;
pub mod partition;
pub mod verify;

use crate::CliError;
use selmer_core::numfield::NumberField;
use selmer_core::rational::{parse_rational, Rational};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub(crate) fn resolve_field(spec: &Option<String>) -> Result<Arc<NumberField>, CliError> {
    match spec {
        Some(s) => crate::spec::parse_field_spec(s).map_err(CliError::usage),
        None => Ok(NumberField::rational()),
    }
}

pub(crate) fn resolve_precision(s: &str) -> Result<(Rational, u32), CliError> {
    let prec = parse_rational(s).map_err(CliError::usage)?;
    let places = crate::precision_places(&prec);
    Ok((prec, places))
}

pub(crate) fn field_text(field: &NumberField) -> String {
    format!(
        "min_poly {} with root in ({}, {})",
        field.min_poly(),
        field.root_interval().lo,
        field.root_interval().hi
    )
}
