//! Data model of the evaluation protocol.

use serde::{Deserialize, Serialize};

use crate::classification::Classification;
use crate::error::{OpmError, Result};
use crate::fstar::FStar;
use crate::sparse::{DenseSymMatrix, SparseSymMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarType {
    Continuous,
    Integer,
    Categorical,
}

impl VarType {
    pub fn as_char(self) -> char {
        match self {
            VarType::Continuous => 'c',
            VarType::Integer => 'i',
            VarType::Categorical => 's',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'c' => Some(VarType::Continuous),
            'i' => Some(VarType::Integer),
            's' => Some(VarType::Categorical),
            _ => None,
        }
    }
}

/// Which problem dimensions are admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DimRule {
    Fixed(usize),
    AtLeast(usize),
    /// `n` a multiple of `step` and at least `min`.
    MultipleOf { step: usize, min: usize },
    /// `n = p*p` with `p >= min_side`.
    PerfectSquare { min_side: usize },
}

impl DimRule {
    pub fn admits(&self, n: usize) -> bool {
        match *self {
            DimRule::Fixed(k) => n == k,
            DimRule::AtLeast(min) => n >= min,
            DimRule::MultipleOf { step, min } => n >= min && n.is_multiple_of(step),
            DimRule::PerfectSquare { min_side } => {
                let p = isqrt(n);
                p * p == n && p >= min_side
            }
        }
    }

    pub fn is_variable(&self) -> bool {
        !matches!(self, DimRule::Fixed(_))
    }

    pub fn describe(&self) -> String {
        match *self {
            DimRule::Fixed(k) => format!("the dimension is fixed at {k}"),
            DimRule::AtLeast(min) => format!("n must be at least {min}"),
            DimRule::MultipleOf { step, min } => {
                format!("n must be a multiple of {step} and at least {min}")
            }
            DimRule::PerfectSquare { min_side } => format!(
                "n must be a perfect square p*p with p >= {min_side} (n >= {})",
                min_side * min_side
            ),
        }
    }

    /// Admissible dimensions in increasing order, up to `limit`.
    pub fn admissible_up_to(&self, limit: usize) -> Vec<usize> {
        (1..=limit).filter(|&n| self.admits(n)).collect()
    }
}

pub(crate) fn isqrt(n: usize) -> usize {
    let mut p = (n as f64).sqrt() as usize;
    while p * p > n {
        p -= 1;
    }
    while (p + 1) * (p + 1) <= n {
        p += 1;
    }
    p
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl ParamValue {
    pub fn as_scalar(&self) -> Option<f64> {
        match self {
            ParamValue::Scalar(v) => Some(*v),
            ParamValue::Vector(_) => None,
        }
    }

    pub fn as_vector(&self) -> Option<&[f64]> {
        match self {
            ParamValue::Vector(v) => Some(v),
            ParamValue::Scalar(_) => None,
        }
    }

    fn same_shape(&self, other: &ParamValue) -> bool {
        match (self, other) {
            (ParamValue::Scalar(_), ParamValue::Scalar(_)) => true,
            (ParamValue::Vector(a), ParamValue::Vector(b)) => a.len() == b.len(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Param {
    pub name: String,
    pub value: ParamValue,
}

impl Param {
    pub fn scalar(name: &str, v: f64) -> Self {
        Param {
            name: name.to_string(),
            value: ParamValue::Scalar(v),
        }
    }

    pub fn vector(name: &str, v: Vec<f64>) -> Self {
        Param {
            name: name.to_string(),
            value: ParamValue::Vector(v),
        }
    }
}

/// Element decomposition of a problem at a given dimension.
///
/// `eldom[i]` lists the 1-based, strictly increasing variable indices of
/// element `i + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CpsStructure {
    pub name: String,
    pub n: usize,
    pub eldom: Vec<Vec<usize>>,
    pub param: Vec<Param>,
}

impl CpsStructure {
    pub fn n_elements(&self) -> usize {
        self.eldom.len()
    }

    /// Largest element domain, `max_i |E_i|`.
    pub fn mel(&self) -> usize {
        self.eldom.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Parameter values in declaration order, as passed to element calls.
    pub fn param_values(&self) -> Vec<ParamValue> {
        self.param.iter().map(|p| p.value.clone()).collect()
    }

    pub fn param(&self, name: &str) -> Option<&ParamValue> {
        self.param.iter().find(|p| p.name == name).map(|p| &p.value)
    }

    /// Gathers `x[eldom[i]]`; `index` is 0-based here.
    pub fn gather(&self, index: usize, x: &[f64]) -> Vec<f64> {
        self.eldom[index].iter().map(|&j| x[j - 1]).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.eldom.is_empty() {
            return Err(OpmError::StructureMismatch(format!(
                "{} has no elements",
                self.name
            )));
        }
        for (i, dom) in self.eldom.iter().enumerate() {
            if dom.is_empty() {
                return Err(OpmError::StructureMismatch(format!(
                    "element {} of {} has an empty domain",
                    i + 1,
                    self.name
                )));
            }
            let ordered = dom.windows(2).all(|w| w[0] < w[1]);
            let in_range = dom.iter().all(|&j| (1..=self.n).contains(&j));
            if !ordered || !in_range {
                return Err(OpmError::StructureMismatch(format!(
                    "element {} of {} has domain {:?}, not strictly increasing within 1..={}",
                    i + 1,
                    self.name,
                    dom,
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// Checks that `params` start with the declared parameters, in order and
    /// with matching shapes. Extra trailing parameters are allowed.
    pub fn check_params(&self, params: &[ParamValue]) -> Result<()> {
        if params.len() < self.param.len() {
            return Err(OpmError::ParameterMismatch(format!(
                "{} declares {} parameter(s), got {}",
                self.name,
                self.param.len(),
                params.len()
            )));
        }
        for (decl, given) in self.param.iter().zip(params) {
            if !decl.value.same_shape(given) {
                return Err(OpmError::ParameterMismatch(format!(
                    "parameter '{}' of {} has the wrong shape",
                    decl.name, self.name
                )));
            }
        }
        Ok(())
    }
}

/// Variable bounds; `lower == upper` marks a fixed variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Bounds {
    pub fn free(n: usize) -> Self {
        Bounds {
            lower: vec![f64::NEG_INFINITY; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    pub fn fix(&mut self, index: usize, value: f64) {
        self.lower[index - 1] = value;
        self.upper[index - 1] = value;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetupResult {
    pub x0: Vec<f64>,
    pub fstar: FStar,
    pub xtype: Vec<VarType>,
    pub xlower: Vec<f64>,
    pub xupper: Vec<f64>,
    pub clower: Vec<f64>,
    pub cupper: Vec<f64>,
    pub class: Classification,
}

impl SetupResult {
    pub fn n(&self) -> usize {
        self.x0.len()
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.xlower[i] == self.xupper[i]
    }

    pub fn fixed_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.is_fixed(i)).collect()
    }
}

/// Outputs requested from an evaluation; the value is always returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EvalRequest {
    pub gradient: bool,
    pub hessian: bool,
}

impl EvalRequest {
    pub const VALUE: EvalRequest = EvalRequest {
        gradient: false,
        hessian: false,
    };
    pub const GRADIENT: EvalRequest = EvalRequest {
        gradient: true,
        hessian: false,
    };
    pub const ALL: EvalRequest = EvalRequest {
        gradient: true,
        hessian: true,
    };
    pub const HESSIAN_ONLY: EvalRequest = EvalRequest {
        gradient: false,
        hessian: true,
    };

    /// Request matching a count of output arguments: 1 → f, 2 → f, g,
    /// 3 → f, g, H.
    pub fn from_nargout(nargout: usize) -> Self {
        EvalRequest {
            gradient: nargout >= 2,
            hessian: nargout >= 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub f: f64,
    pub g: Option<Vec<f64>>,
    pub h: Option<SparseSymMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementEvalResult {
    pub f: f64,
    pub g: Option<Vec<f64>>,
    pub h: Option<DenseSymMatrix>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_rules() {
        assert!(DimRule::PerfectSquare { min_side: 3 }.admits(16));
        assert!(!DimRule::PerfectSquare { min_side: 3 }.admits(4));
        assert!(!DimRule::PerfectSquare { min_side: 3 }.admits(15));
        assert!(DimRule::MultipleOf { step: 3, min: 6 }.admits(12));
        assert!(!DimRule::MultipleOf { step: 3, min: 6 }.admits(3));
        assert_eq!(DimRule::Fixed(2).admissible_up_to(10), vec![2]);
        assert_eq!(
            DimRule::MultipleOf { step: 4, min: 4 }.admissible_up_to(12),
            vec![4, 8, 12]
        );
        assert!(DimRule::PerfectSquare { min_side: 3 }
            .describe()
            .contains("perfect square"));
    }

    #[test]
    fn var_type_chars() {
        for t in [VarType::Continuous, VarType::Integer, VarType::Categorical] {
            assert_eq!(VarType::from_char(t.as_char()), Some(t));
        }
        assert_eq!(VarType::from_char('x'), None);
    }

    #[test]
    fn structure_validation() {
        let mut s = CpsStructure {
            name: "t".into(),
            n: 3,
            eldom: vec![vec![1, 2], vec![2, 3]],
            param: vec![Param::scalar("n", 3.0)],
        };
        assert!(s.validate().is_ok());
        assert_eq!(s.mel(), 2);
        s.eldom.push(vec![3, 2]);
        assert!(s.validate().is_err());
        s.eldom.pop();
        s.eldom.push(vec![4]);
        assert!(s.validate().is_err());
        s.eldom.pop();
        assert!(s.check_params(&[]).is_err());
        assert!(s.check_params(&[ParamValue::Vector(vec![1.0])]).is_err());
        assert!(s
            .check_params(&[ParamValue::Scalar(3.0), ParamValue::Scalar(7.0)])
            .is_ok());
    }
}
