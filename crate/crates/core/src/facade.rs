//! String-dispatched entry point mirroring the `problem(action, ...)`
//! calling convention. Outputs are returned in protocol order and only as
//! many as `nargout` asks for; unrequested outputs are not computed.

use crate::cps::{CpsStructure, EvalRequest, ParamValue, VarType};
use crate::error::{OpmError, Result};
use crate::eval;
use crate::fstar::FStar;
use crate::registry::Registry;
use crate::sparse::{DenseSymMatrix, SparseSymMatrix};

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Num(f64),
    Vector(Vec<f64>),
    Structure(CpsStructure),
    Param(ParamValue),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Scalar(f64),
    Vector(Vec<f64>),
    FStar(FStar),
    /// Variable types as a string of `c`, `i` and `s`.
    Types(String),
    Class(String),
    Structure(CpsStructure),
    Eldom(Vec<Vec<usize>>),
    Hessian(SparseSymMatrix),
    ElementHessian(DenseSymMatrix),
}

fn num(args: &[Arg], k: usize, what: &str) -> Result<f64> {
    match args.get(k) {
        Some(Arg::Num(v)) => Ok(*v),
        _ => Err(OpmError::InvalidParameter(format!("argument {} must be {what}", k + 1))),
    }
}

fn vector<'a>(args: &'a [Arg], k: usize, what: &str) -> Result<&'a [f64]> {
    match args.get(k) {
        Some(Arg::Vector(v)) => Ok(v),
        _ => Err(OpmError::InvalidParameter(format!("argument {} must be {what}", k + 1))),
    }
}

fn dimension(args: &[Arg]) -> Result<usize> {
    let v = num(args, 0, "the dimension")?;
    if v < 1.0 || v.fract() != 0.0 {
        return Err(OpmError::InvalidParameter(format!("dimension must be a positive integer, got {v}")));
    }
    Ok(v as usize)
}

/// Empty when every entry equals `default`, as the protocol allows.
fn compact(v: Vec<f64>, default: f64) -> Vec<f64> {
    if v.iter().all(|&x| x == default) {
        Vec::new()
    } else {
        v
    }
}

pub fn call(registry: &Registry, problem: &str, action: &str, args: &[Arg], nargout: usize) -> Result<Vec<Output>> {
    let p = registry.lookup(problem)?;
    let nargout = nargout.max(1);
    match action {
        "setup" => {
            let nums = args
                .iter()
                .enumerate()
                .map(|(k, _)| num(args, k, "numeric"))
                .collect::<Result<Vec<f64>>>()?;
            let s = eval::setup(p, &nums)?;
            let types: String = if s.xtype.iter().all(|&t| t == VarType::Continuous) {
                String::new()
            } else {
                s.xtype.iter().map(|t| t.as_char()).collect()
            };
            let all = vec![
                Output::Vector(s.x0),
                Output::FStar(s.fstar),
                Output::Types(types),
                Output::Vector(compact(s.xlower, f64::NEG_INFINITY)),
                Output::Vector(compact(s.xupper, f64::INFINITY)),
                Output::Vector(s.clower),
                Output::Vector(s.cupper),
                Output::Class(crate::classification::render_classification(&s.class)),
            ];
            Ok(all.into_iter().take(nargout).collect())
        }
        "cpsstr" => Ok(vec![Output::Structure(eval::cps_structure(p, dimension(args)?)?)]),
        "eldom" => Ok(vec![Output::Eldom(eval::cps_structure(p, dimension(args)?)?.eldom)]),
        "objf" => {
            let x = vector(args, 0, "the point x")?;
            let structure = match args.get(1) {
                Some(Arg::Structure(s)) => Some(s),
                None => None,
                Some(_) => return Err(OpmError::InvalidParameter("argument 2 must be a structure".into())),
            };
            let r = eval::eval_objective(p, x, EvalRequest::from_nargout(nargout), structure)?;
            let mut out = vec![Output::Scalar(r.f)];
            out.extend(r.g.map(Output::Vector));
            out.extend(r.h.map(Output::Hessian));
            Ok(out)
        }
        "elobjf" => {
            let i = num(args, 0, "the element index")?;
            if i < 1.0 || i.fract() != 0.0 {
                return Err(OpmError::ElementIndexOutOfRange { index: 0, count: 0 });
            }
            let xi = vector(args, 1, "the element point")?;
            let params = args[2..]
                .iter()
                .map(|a| match a {
                    Arg::Num(v) => Ok(ParamValue::Scalar(*v)),
                    Arg::Vector(v) => Ok(ParamValue::Vector(v.clone())),
                    Arg::Param(v) => Ok(v.clone()),
                    Arg::Structure(_) => Err(OpmError::ParameterMismatch("a structure is not a parameter".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            let r = eval::eval_element(p, i as usize, xi, &params, EvalRequest::from_nargout(nargout))?;
            let mut out = vec![Output::Scalar(r.f)];
            out.extend(r.g.map(Output::Vector));
            out.extend(r.h.map(Output::ElementHessian));
            Ok(out)
        }
        other => Err(OpmError::UnsupportedAction(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::global;

    #[test]
    fn setup_returns_requested_outputs_only() {
        let out = call(global(), "rosenbr", "setup", &[Arg::Num(10.0)], 2).unwrap();
        assert_eq!(out.len(), 2);
        assert!(matches!(&out[0], Output::Vector(x) if x.len() == 10));
        assert_eq!(out[1], Output::FStar(FStar::Known(0.0)));
    }

    #[test]
    fn free_problems_render_empty_bounds() {
        let out = call(global(), "rosenbr", "setup", &[], 8).unwrap();
        assert_eq!(out[2], Output::Types(String::new()));
        assert_eq!(out[3], Output::Vector(vec![]));
        assert_eq!(out[7], Output::Class("SUR2-AY-V-0".into()));
        let out = call(global(), "lminsurf", "setup", &[], 4).unwrap();
        assert!(matches!(&out[3], Output::Vector(v) if v.len() == 16));
    }

    #[test]
    fn objf_honours_nargout() {
        let x = Arg::Vector(vec![-1.2, 1.0]);
        let out = call(global(), "rosenbr", "objf", std::slice::from_ref(&x), 1).unwrap();
        assert_eq!(out.len(), 1);
        match out[0] {
            Output::Scalar(f) => assert!((f - 24.2).abs() < 1e-12),
            _ => panic!(),
        }
        assert_eq!(call(global(), "rosenbr", "objf", &[x], 3).unwrap().len(), 3);
    }

    #[test]
    fn elobjf_with_structure_parameters() {
        let s = crate::eval::cps_structure(global().lookup("arwhead").unwrap(), 10).unwrap();
        let mut args = vec![Arg::Num(3.0), Arg::Vector(vec![0.0, 0.0])];
        args.extend(s.param_values().into_iter().map(Arg::Param));
        let out = call(global(), "arwhead", "elobjf", &args, 1).unwrap();
        assert_eq!(out, vec![Output::Scalar(3.0)]);
    }

    #[test]
    fn constraint_action_is_unsupported() {
        let e = call(global(), "rosenbr", "consf", &[], 1).unwrap_err();
        assert_eq!(e.kind(), "UnsupportedAction");
    }
}
