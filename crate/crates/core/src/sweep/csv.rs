//! CSV emission with 12-significant-digit values.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::tolerances::UNIT_INTERVAL_SLACK;

use super::run::{SweepTable, Value};

/// C `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside [1e-4, 1e12).
pub fn format_g12(v: f64) -> String {
    const PREC: i32 = 12;
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // exponent after rounding to PREC significant digits
    let sci = format!("{:.*e}", (PREC - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= PREC {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (PREC - 1 - exp) as usize, v)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn header(table: &SweepTable) -> Vec<String> {
    let mut h = vec!["r_a".to_string(), "r_b".to_string()];
    h.extend(table.param_names.iter().map(|s| s.to_string()));
    h.push("region".into());
    h.extend(table.measures.iter().map(|m| m.name().to_string()));
    h
}

fn check_value(m: Measure, v: &Value, row: usize) -> Result<()> {
    let Value::Real(x) = *v else { return Ok(()) };
    let bad = |why: &str| Err(Error::NumericInvariant(format!("row {row}: {m} = {x} {why}")));
    if !x.is_finite() {
        return bad("is not finite");
    }
    match m {
        Measure::Concurrence | Measure::Fidelity if !(0.0..=1.0).contains(&x) => bad("outside [0, 1]"),
        Measure::Telp if x < 0.0 => bad("is negative"),
        Measure::Purity if !(0.25 - UNIT_INTERVAL_SLACK..=1.0 + UNIT_INTERVAL_SLACK).contains(&x) => {
            bad("outside [1/4, 1]")
        }
        _ => Ok(()),
    }
}

/// Writes the table as CSV, checking every value on the way out.
pub fn write_csv<W: Write>(table: &SweepTable, out: W) -> Result<()> {
    if table.rows.is_empty() {
        return Err(Error::invalid("no rows to write"));
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let io = |e: csv::Error| Error::Io(e.into());
    w.write_record(header(table)).map_err(io)?;
    for (i, row) in table.rows.iter().enumerate() {
        let mut record = vec![format_g12(row.r_a), format_g12(row.r_b)];
        record.extend(row.params.iter().map(|&p| format_g12(p)));
        record.push(row.region.to_string());
        for (m, v) in table.measures.iter().zip(&row.values) {
            check_value(*m, v, i)?;
            record.push(match v {
                Value::Real(x) => format_g12(*x),
                Value::Verdict(verdict) => verdict.as_str().to_string(),
            });
        }
        w.write_record(&record).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(table: &SweepTable, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv(table, std::io::BufWriter::new(file))
}
