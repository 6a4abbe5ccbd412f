use crate::classification::{parse_classification, Classification};
use crate::cps::{Bounds, CpsStructure, DimRule, ElementEvalResult, EvalRequest, EvalResult, ParamValue};
use crate::error::{OpmError, Result};
use crate::fstar::FStar;

/// Static description of a catalog entry.
#[derive(Debug, Clone)]
pub struct ProblemMeta {
    pub name: &'static str,
    /// Problem statement followed by its literature source.
    pub description: &'static str,
    pub default_n: usize,
    pub dim_rule: DimRule,
    pub fstar: FStar,
    pub class: &'static str,
    pub objtype: &'static str,
}

impl ProblemMeta {
    pub fn classification(&self) -> Classification {
        parse_classification(self.class).expect("catalog classification strings are valid")
    }

    pub fn summary(&self) -> &'static str {
        self.description
            .split_once(". ")
            .map(|(head, _)| head)
            .unwrap_or(self.description)
    }
}

/// A coordinate-partially-separable test problem.
///
/// Implementations supply metadata, the standard start, bounds, the element
/// decomposition and element evaluation. Everything else (setup, full
/// evaluation, assembly) is generic and lives in [`crate::eval`].
pub trait Problem: Send + Sync {
    fn meta(&self) -> &ProblemMeta;

    fn start(&self, n: usize) -> Vec<f64>;

    fn bounds(&self, n: usize) -> Bounds {
        Bounds::free(n)
    }

    fn structure(&self, n: usize) -> CpsStructure;

    /// Evaluates element `index` (1-based) at `x`, the gathered values of its
    /// domain. Callers have already checked `index`, the length of `x` and
    /// the declared parameters.
    fn element(
        &self,
        index: usize,
        x: &[f64],
        params: &[ParamValue],
        req: EvalRequest,
    ) -> ElementEvalResult;

    /// Direct transcription of the summed objective, independent of the
    /// element code. Used only as a verification oracle.
    fn full_objective(&self, _x: &[f64], _req: EvalRequest) -> Option<EvalResult> {
        None
    }

    fn name(&self) -> &str {
        self.meta().name
    }

    /// Dimension an element call refers to: fixed problems use their only
    /// size, variable ones read it from the leading `n` parameter.
    fn dim_from_params(&self, params: &[ParamValue]) -> Result<usize> {
        match self.meta().dim_rule {
            DimRule::Fixed(n) => Ok(n),
            _ => {
                let v = params.first().and_then(ParamValue::as_scalar).ok_or_else(|| {
                    OpmError::ParameterMismatch(format!(
                        "{} expects the dimension as its first parameter",
                        self.name()
                    ))
                })?;
                if v < 1.0 || v.fract() != 0.0 {
                    return Err(OpmError::ParameterMismatch(format!(
                        "dimension parameter {v} is not a positive integer"
                    )));
                }
                Ok(v as usize)
            }
        }
    }
}

pub(crate) fn n_param(params: &[ParamValue]) -> usize {
    params[0].as_scalar().expect("validated dimension parameter") as usize
}
