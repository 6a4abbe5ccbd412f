//! CUTEst-style problem classification strings.
//!
//! A classification such as `SUR2-AY-V-0` reads as: objective kind, constraint
//! kind, regularity, derivative order, then origin and internal-variable flag,
//! then the number of variables and the number of constraints (`V` when the
//! user may choose it).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{OpmError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObjectiveKind {
    /// No objective.
    None,
    Constant,
    Linear,
    Quadratic,
    SumOfSquares,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstraintKind {
    Unconstrained,
    /// Only fixed variables.
    FixedVariables,
    Bounds,
    Network,
    Linear,
    Quadratic,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regularity {
    Regular,
    Irregular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Origin {
    Academic,
    Modelling,
    RealApplication,
}

/// A count that is either fixed by the problem or chosen by the user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Extent {
    Fixed(usize),
    Variable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub objective_kind: ObjectiveKind,
    pub constraint_kind: ConstraintKind,
    pub regularity: Regularity,
    pub derivative_order: u8,
    pub origin: Origin,
    pub internal_vars: bool,
    pub dimension: Extent,
    pub n_constraints: Extent,
}

impl ObjectiveKind {
    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'N' => Self::None,
            'C' => Self::Constant,
            'L' => Self::Linear,
            'Q' => Self::Quadratic,
            'S' => Self::SumOfSquares,
            'O' => Self::Other,
            _ => return None,
        })
    }

    fn to_char(self) -> char {
        match self {
            Self::None => 'N',
            Self::Constant => 'C',
            Self::Linear => 'L',
            Self::Quadratic => 'Q',
            Self::SumOfSquares => 'S',
            Self::Other => 'O',
        }
    }
}

impl ConstraintKind {
    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'U' => Self::Unconstrained,
            'X' => Self::FixedVariables,
            'B' => Self::Bounds,
            'N' => Self::Network,
            'L' => Self::Linear,
            'Q' => Self::Quadratic,
            'O' => Self::Other,
            _ => return None,
        })
    }

    fn to_char(self) -> char {
        match self {
            Self::Unconstrained => 'U',
            Self::FixedVariables => 'X',
            Self::Bounds => 'B',
            Self::Network => 'N',
            Self::Linear => 'L',
            Self::Quadratic => 'Q',
            Self::Other => 'O',
        }
    }
}

impl Extent {
    fn render(self) -> String {
        match self {
            Extent::Fixed(k) => k.to_string(),
            Extent::Variable => "V".to_string(),
        }
    }
}

struct Cursor<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor {
            input,
            chars: input.chars().collect(),
            pos: 0,
        }
    }

    fn fail(&self, reason: impl Into<String>) -> OpmError {
        OpmError::MalformedClassification {
            input: self.input.to_string(),
            position: self.pos + 1,
            reason: reason.into(),
        }
    }

    fn next<T>(&mut self, what: &str, f: impl Fn(char) -> Option<T>) -> Result<T> {
        let c = self
            .chars
            .get(self.pos)
            .copied()
            .ok_or_else(|| self.fail(format!("expected {what}, found end of string")))?;
        let v = f(c).ok_or_else(|| self.fail(format!("expected {what}, found '{c}'")))?;
        self.pos += 1;
        Ok(v)
    }

    fn dash(&mut self) -> Result<()> {
        self.next("'-'", |c| (c == '-').then_some(()))
    }

    fn extent(&mut self, what: &str) -> Result<Extent> {
        if self.chars.get(self.pos) == Some(&'V') {
            self.pos += 1;
            return Ok(Extent::Variable);
        }
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.fail(format!("expected {what} ('V' or an integer)")));
        }
        if self.pos - start > 1 && self.chars[start] == '0' {
            self.pos = start;
            return Err(self.fail(format!("{what} has a leading zero")));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map(Extent::Fixed)
            .map_err(|_| self.fail(format!("{what} is out of range")))
    }
}

pub fn parse_classification(s: &str) -> Result<Classification> {
    let mut cur = Cursor::new(s);
    let objective_kind = cur.next("objective kind [NCLQSO]", ObjectiveKind::from_char)?;
    let constraint_kind = cur.next("constraint kind [UXBNLQO]", ConstraintKind::from_char)?;
    let regularity = cur.next("regularity [RI]", |c| match c {
        'R' => Some(Regularity::Regular),
        'I' => Some(Regularity::Irregular),
        _ => None,
    })?;
    let derivative_order = cur.next("derivative order [012]", |c| match c {
        '0'..='2' => Some(c as u8 - b'0'),
        _ => None,
    })?;
    cur.dash()?;
    let origin = cur.next("origin [AMR]", |c| match c {
        'A' => Some(Origin::Academic),
        'M' => Some(Origin::Modelling),
        'R' => Some(Origin::RealApplication),
        _ => None,
    })?;
    let internal_vars = cur.next("internal variables flag [YN]", |c| match c {
        'Y' => Some(true),
        'N' => Some(false),
        _ => None,
    })?;
    cur.dash()?;
    let dimension = cur.extent("number of variables")?;
    cur.dash()?;
    let n_constraints = cur.extent("number of constraints")?;
    if cur.pos != cur.chars.len() {
        return Err(cur.fail("trailing characters"));
    }
    Ok(Classification {
        objective_kind,
        constraint_kind,
        regularity,
        derivative_order,
        origin,
        internal_vars,
        dimension,
        n_constraints,
    })
}

pub fn render_classification(c: &Classification) -> String {
    format!(
        "{}{}{}{}-{}{}-{}-{}",
        c.objective_kind.to_char(),
        c.constraint_kind.to_char(),
        match c.regularity {
            Regularity::Regular => 'R',
            Regularity::Irregular => 'I',
        },
        c.derivative_order,
        match c.origin {
            Origin::Academic => 'A',
            Origin::Modelling => 'M',
            Origin::RealApplication => 'R',
        },
        if c.internal_vars { 'Y' } else { 'N' },
        c.dimension.render(),
        c.n_constraints.render(),
    )
}

impl FromStr for Classification {
    type Err = OpmError;

    fn from_str(s: &str) -> Result<Self> {
        parse_classification(s)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_classification(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fixed_dimension_sum_of_squares() {
        let c = parse_classification("SUR2-AY-3-0").unwrap();
        assert_eq!(c.objective_kind, ObjectiveKind::SumOfSquares);
        assert_eq!(c.constraint_kind, ConstraintKind::Unconstrained);
        assert_eq!(c.regularity, Regularity::Regular);
        assert_eq!(c.derivative_order, 2);
        assert_eq!(c.origin, Origin::Academic);
        assert!(c.internal_vars);
        assert_eq!(c.dimension, Extent::Fixed(3));
        assert_eq!(c.n_constraints, Extent::Fixed(0));
    }

    #[test]
    fn parses_fixed_variable_kind() {
        let c = parse_classification("OXR2-MY-V-0").unwrap();
        assert_eq!(c.constraint_kind, ConstraintKind::FixedVariables);
        assert_eq!(c.origin, Origin::Modelling);
        assert_eq!(c.dimension, Extent::Variable);
    }

    #[test]
    fn parses_quadratic() {
        let c = parse_classification("QUR2-AN-2-0").unwrap();
        assert_eq!(c.objective_kind, ObjectiveKind::Quadratic);
        assert!(!c.internal_vars);
    }

    #[test]
    fn multi_digit_dimension() {
        let c: Classification = "SUR2-AN-99-0".parse().unwrap();
        assert_eq!(c.dimension, Extent::Fixed(99));
        assert_eq!(c.to_string(), "SUR2-AN-99-0");
    }

    #[test]
    fn reports_offending_position() {
        let err = parse_classification("SZR2-AY-V-0").unwrap_err();
        match err {
            OpmError::MalformedClassification { position, .. } => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_classification("SUR2-AY-V").unwrap_err();
        assert!(matches!(err, OpmError::MalformedClassification { position: 10, .. }));
        let err = parse_classification("SUR2-AY-V-0x").unwrap_err();
        assert!(matches!(err, OpmError::MalformedClassification { position: 12, .. }));
        assert!(parse_classification("SUR2-AY-03-0").is_err());
        assert!(parse_classification("SUR3-AY-3-0").is_err());
        assert!(parse_classification("").is_err());
    }

    fn class_string() -> impl Strategy<Value = String> {
        let extent = prop_oneof![Just("V".to_string()), (0usize..5000).prop_map(|k| k.to_string())];
        (
            "[NCLQSO][UXBNLQO][RI][012]",
            "[AMR][YN]",
            extent.clone(),
            extent,
        )
            .prop_map(|(a, b, c, d)| format!("{a}-{b}-{c}-{d}"))
    }

    proptest! {
        #[test]
        fn render_inverts_parse(s in class_string()) {
            let c = parse_classification(&s).unwrap();
            prop_assert_eq!(render_classification(&c), s);
        }
    }
}
