//! JSON encodings shared by all commands.

use fibersym_core::exactla::{format_rational, parse_rational, EpsNumber, MatrixQ, Rational, Subspace};
use serde_json::{json, Value};

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(m: &MatrixQ) -> Value {
    Value::Array((0..m.rows()).map(|r| vector(m.row(r))).collect())
}

pub fn subspace(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": s.basis().iter().map(|v| vector(v)).collect::<Vec<_>>() })
}

pub fn eps(x: &EpsNumber) -> Value {
    json!({ "coeffs": x.coeffs().iter().map(rational).collect::<Vec<_>>() })
}

/// Inverse of [`eps`].
pub fn parse_eps(v: &Value) -> Option<EpsNumber> {
    let coeffs = v.get("coeffs")?.as_array()?;
    let parsed = coeffs.iter().map(|c| parse_rational(c.as_str()?)).collect::<Option<Vec<_>>>()?;
    Some(EpsNumber::new(parsed))
}

/// Inverse of [`matrix`].
pub fn parse_matrix(v: &Value) -> Option<MatrixQ> {
    let rows = v.as_array()?;
    let rows = rows
        .iter()
        .map(|r| r.as_array()?.iter().map(|c| parse_rational(c.as_str()?)).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    MatrixQ::from_rows(rows).ok()
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub fn big_int(x: i128) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fibersym_core::exactla::{rat, ratio};

    #[test]
    fn eps_and_matrix_round_trip() {
        let x = EpsNumber::new(vec![ratio(1, 2), rat(-3)]);
        assert_eq!(eps(&x), json!({"coeffs": ["1/2", "-3"]}));
        assert_eq!(parse_eps(&eps(&x)), Some(x));
        assert_eq!(eps(&EpsNumber::zero()), json!({"coeffs": []}));
        let m = MatrixQ::from_i64(&[[1, -2], [0, 7]]);
        assert_eq!(parse_matrix(&matrix(&m)), Some(m));
        assert_eq!(big_int(5), json!(5));
        assert_eq!(big_int(i128::MAX), json!(i128::MAX.to_string()));
    }
}
