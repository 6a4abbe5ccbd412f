use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{OpmError, Result};

/// Objective value at a known minimizer, when there is one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum FStar {
    Known(f64),
    /// The objective is unbounded below.
    Unbounded,
    Unknown(String),
}

impl FStar {
    pub fn known(&self) -> Option<f64> {
        match self {
            FStar::Known(v) => Some(*v),
            _ => None,
        }
    }

    /// Parses the three forms found in the catalog table: a number, `-Inf`
    /// or a free-text note such as `unknown`.
    pub fn parse(s: &str) -> Result<FStar> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("-inf") {
            return Ok(FStar::Unbounded);
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(FStar::Known(v)),
            Ok(_) => Err(OpmError::InvalidParameter(format!("non-finite fstar '{s}'"))),
            Err(_) if !s.is_empty() => Ok(FStar::Unknown(s.to_string())),
            Err(_) => Err(OpmError::InvalidParameter("empty fstar".into())),
        }
    }

    /// Renders as `%+.8e`, `-Inf` or the note text.
    pub fn render(&self) -> String {
        match self {
            FStar::Known(v) => format_sci(*v, 8),
            FStar::Unbounded => "-Inf".to_string(),
            FStar::Unknown(note) => note.clone(),
        }
    }
}

impl fmt::Display for FStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// C-style `%+.<digits>e`: explicit sign and a signed exponent of at least two
/// digits.
pub fn format_sci(v: f64, digits: usize) -> String {
    let s = format!("{:+.*e}", digits, v);
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_like_printf() {
        assert_eq!(format_sci(0.0, 8), "+0.00000000e+00");
        assert_eq!(format_sci(85822.2, 8), "+8.58222000e+04");
        assert_eq!(format_sci(-18.2, 8), "-1.82000000e+01");
        assert_eq!(format_sci(3.07505e-3, 8), "+3.07505000e-03");
        assert_eq!(format_sci(1.12793277e-08, 8), "+1.12793277e-08");
        assert_eq!(format_sci(1e123, 2), "+1.00e+123");
    }

    #[test]
    fn parses_table_forms() {
        assert_eq!(FStar::parse("+9.00000000e+00").unwrap(), FStar::Known(9.0));
        assert_eq!(FStar::parse("-Inf").unwrap(), FStar::Unbounded);
        assert_eq!(
            FStar::parse("unknown").unwrap(),
            FStar::Unknown("unknown".into())
        );
        for s in ["+1.99786610e-01", "-1.11715260e+00", "unknown", "-Inf"] {
            assert_eq!(FStar::parse(s).unwrap().render(), s);
        }
    }
}
