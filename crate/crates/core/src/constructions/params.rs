use std::collections::BTreeMap;
use std::fmt;

use crate::mlinalg::scalar::fmt_scalar;
use crate::mlinalg::{parse_scalar, qi, QMatrix, Scalar};

use super::ConstructionError;

/// Default values swept by the family grids.
pub const GRID: [(i64, i64); 7] = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Scalar(Scalar),
    Matrix(QMatrix),
    Choice(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Scalar(x) => f.write_str(&fmt_scalar(x)),
            ParamValue::Matrix(m) => {
                let rows: Vec<String> = (0..m.rows())
                    .map(|r| format!("[{}]", m.row(r).iter().map(fmt_scalar).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, "[{}]", rows.join(","))
            }
            ParamValue::Choice(s) => f.write_str(s),
        }
    }
}

/// Named parameters of a family. Matrices holding 2-forms are coefficient
/// matrices: entry `(i,j)`, `i < j`, multiplies `e_i∧e_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    values: BTreeMap<String, ParamValue>,
}

impl FamilyParams {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: Scalar) -> Self {
        self.values.insert(name.to_string(), ParamValue::Scalar(value));
        self
    }

    pub fn with_int(self, name: &str, value: i64) -> Self {
        self.with(name, qi(value))
    }

    pub fn with_matrix(mut self, name: &str, m: QMatrix) -> Self {
        self.values.insert(name.to_string(), ParamValue::Matrix(m));
        self
    }

    pub fn with_choice(mut self, name: &str, choice: &str) -> Self {
        self.values.insert(name.to_string(), ParamValue::Choice(choice.to_string()));
        self
    }

    pub fn set(&mut self, name: &str, value: ParamValue) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.values.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &ParamValue)> {
        self.values.iter()
    }

    pub fn scalar(&self, name: &str) -> Result<Option<Scalar>, ConstructionError> {
        match self.values.get(name) {
            None => Ok(None),
            Some(ParamValue::Scalar(x)) => Ok(Some(x.clone())),
            Some(other) => Err(invalid(name, &format!("expected a rational, found `{other}`"))),
        }
    }

    pub fn scalar_or(&self, name: &str, default: Scalar) -> Result<Scalar, ConstructionError> {
        Ok(self.scalar(name)?.unwrap_or(default))
    }

    pub fn require(&self, family: &str, name: &str) -> Result<Scalar, ConstructionError> {
        self.scalar(name)?.ok_or_else(|| ConstructionError::MissingParameter {
            family: family.to_string(),
            name: name.to_string(),
        })
    }

    /// Nonnegative integer parameter.
    pub fn count_or(&self, name: &str, default: usize) -> Result<usize, ConstructionError> {
        match self.scalar(name)? {
            None => Ok(default),
            Some(x) => {
                use num::ToPrimitive;
                if !x.is_integer() || x < qi(0) {
                    return Err(invalid(name, "expected a nonnegative integer"));
                }
                x.to_integer().to_usize().ok_or_else(|| invalid(name, "too large"))
            }
        }
    }

    pub fn matrix(&self, name: &str) -> Result<Option<QMatrix>, ConstructionError> {
        match self.values.get(name) {
            None => Ok(None),
            Some(ParamValue::Matrix(m)) => Ok(Some(m.clone())),
            Some(other) => Err(invalid(name, &format!("expected a matrix, found `{other}`"))),
        }
    }

    pub fn choice(&self, name: &str) -> Result<Option<String>, ConstructionError> {
        match self.values.get(name) {
            None => Ok(None),
            Some(ParamValue::Choice(s)) => Ok(Some(s.clone())),
            Some(other) => Err(invalid(name, &format!("expected a name, found `{other}`"))),
        }
    }

    /// Parses `name=value`; values are rationals, matrices `[[a,b],[c,d]]`
    /// or bare names.
    pub fn parse_assignment(&mut self, s: &str) -> Result<(), ConstructionError> {
        let (name, value) = s.split_once('=').ok_or_else(|| invalid(s, "expected name=value"))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(invalid(s, "empty parameter name"));
        }
        let value = parse_value(name, value.trim())?;
        self.values.insert(name.to_string(), value);
        Ok(())
    }
}

fn parse_value(name: &str, v: &str) -> Result<ParamValue, ConstructionError> {
    if v.starts_with('[') {
        return parse_matrix(v).map(ParamValue::Matrix).ok_or_else(|| invalid(name, &format!("bad matrix `{v}`")));
    }
    if let Some(x) = parse_scalar(v) {
        return Ok(ParamValue::Scalar(x));
    }
    let looks_numeric = v.chars().next().is_some_and(|c| c.is_ascii_digit() || c == '-' || c == '+' || c == '.');
    if looks_numeric || v.is_empty() {
        return Err(invalid(name, &format!("`{v}` is not a rational number")));
    }
    Ok(ParamValue::Choice(v.to_string()))
}

fn parse_matrix(v: &str) -> Option<QMatrix> {
    let compact: String = v.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact.strip_prefix("[[")?.strip_suffix("]]")?;
    let rows: Option<Vec<Vec<Scalar>>> =
        inner.split("],[").map(|r| r.split(',').map(parse_scalar).collect()).collect();
    let rows = rows?;
    let width = rows.first()?.len();
    if width == 0 || rows.iter().any(|r| r.len() != width) {
        return None;
    }
    Some(QMatrix::from_rows(rows))
}

fn invalid(name: &str, reason: &str) -> ConstructionError {
    ConstructionError::InvalidParameter { name: name.to_string(), reason: reason.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlinalg::q;

    #[test]
    fn parses_assignments() {
        let mut p = FamilyParams::new();
        p.parse_assignment("alpha=-1/2").unwrap();
        p.parse_assignment("K=[[1,0],[0, 2]]").unwrap();
        p.parse_assignment("base=so3").unwrap();
        assert_eq!(p.scalar("alpha").unwrap(), Some(q(-1, 2)));
        assert_eq!(p.matrix("K").unwrap(), Some(QMatrix::from_i64(&[&[1, 0], &[0, 2]])));
        assert_eq!(p.choice("base").unwrap().as_deref(), Some("so3"));
    }

    #[test]
    fn rejects_zero_denominator() {
        let mut p = FamilyParams::new();
        assert!(p.parse_assignment("alpha=1/0").is_err());
        assert!(p.parse_assignment("K=[[1,2],[3]]").is_err());
    }
}
