//! Setup, structure retrieval, full and element evaluation, and assembly of
//! global derivatives from element pieces.

use crate::cps::{
    CpsStructure, ElementEvalResult, EvalRequest, EvalResult, ParamValue, SetupResult, VarType,
};
use crate::error::{OpmError, Result};
use crate::exec::{self, ExecPolicy};
use crate::problem::Problem;
use crate::sparse::SparseSymMatrix;

pub fn check_dimension(problem: &dyn Problem, n: usize) -> Result<()> {
    let rule = problem.meta().dim_rule;
    if rule.admits(n) {
        Ok(())
    } else {
        Err(OpmError::InvalidDimension {
            problem: problem.name().to_string(),
            n,
            rule: rule.describe(),
        })
    }
}

/// Standard start, bounds and metadata. `args[0]`, when given, is the
/// dimension; no catalog problem takes further setup parameters.
pub fn setup(problem: &dyn Problem, args: &[f64]) -> Result<SetupResult> {
    let meta = problem.meta();
    let n = match args.first() {
        None => meta.default_n,
        Some(&v) => {
            if !(v >= 1.0 && v.fract() == 0.0 && v <= usize::MAX as f64) {
                return Err(OpmError::InvalidParameter(format!(
                    "dimension must be a positive integer, got {v}"
                )));
            }
            v as usize
        }
    };
    if args.len() > 1 {
        return Err(OpmError::InvalidParameter(format!(
            "{} accepts only the dimension as setup parameter, got {} values",
            meta.name,
            args.len()
        )));
    }
    check_dimension(problem, n)?;
    let bounds = problem.bounds(n);
    let mut x0 = problem.start(n);
    debug_assert_eq!(x0.len(), n);
    for ((x, &lo), &up) in x0.iter_mut().zip(&bounds.lower).zip(&bounds.upper) {
        *x = x.clamp(lo, up);
    }
    Ok(SetupResult {
        x0,
        fstar: meta.fstar.clone(),
        xtype: vec![VarType::Continuous; n],
        xlower: bounds.lower,
        xupper: bounds.upper,
        clower: Vec::new(),
        cupper: Vec::new(),
        class: meta.classification(),
    })
}

pub fn cps_structure(problem: &dyn Problem, n: usize) -> Result<CpsStructure> {
    check_dimension(problem, n)?;
    let s = problem.structure(n);
    debug_assert!(s.validate().is_ok(), "{} structure invalid", problem.name());
    Ok(s)
}

pub fn mel(structure: &CpsStructure) -> usize {
    structure.mel()
}

fn check_point(problem: &dyn Problem, n: usize) -> Result<()> {
    match problem.meta().dim_rule {
        crate::cps::DimRule::Fixed(k) if k != n => {
            Err(OpmError::DimensionMismatch { expected: k, actual: n })
        }
        _ => check_dimension(problem, n),
    }
}

/// Full objective (and requested derivatives) at `x`, built as the sum of
/// element contributions. A supplied structure is reused as is; otherwise
/// one is computed for this call.
pub fn eval_objective(
    problem: &dyn Problem,
    x: &[f64],
    req: EvalRequest,
    structure: Option<&CpsStructure>,
) -> Result<EvalResult> {
    eval_objective_with(ExecPolicy::Auto, problem, x, req, structure)
}

pub fn eval_objective_with(
    policy: ExecPolicy,
    problem: &dyn Problem,
    x: &[f64],
    req: EvalRequest,
    structure: Option<&CpsStructure>,
) -> Result<EvalResult> {
    check_point(problem, x.len())?;
    let owned;
    let s = match structure {
        Some(s) => {
            if s.name != problem.name() {
                return Err(OpmError::StructureMismatch(format!(
                    "structure of {} passed to {}",
                    s.name,
                    problem.name()
                )));
            }
            if s.n != x.len() {
                return Err(OpmError::StructureMismatch(format!(
                    "structure for n = {} used with a point of length {}",
                    s.n,
                    x.len()
                )));
            }
            s
        }
        None => {
            owned = problem.structure(x.len());
            &owned
        }
    };
    let elements = eval_elements(policy, problem, s, x, req);
    assemble(s, &elements, x.len(), req)
}

/// Evaluates every element of `structure` at the global point `x`, in
/// element order.
pub fn eval_elements(
    policy: ExecPolicy,
    problem: &dyn Problem,
    structure: &CpsStructure,
    x: &[f64],
    req: EvalRequest,
) -> Vec<ElementEvalResult> {
    let params = structure.param_values();
    exec::map_indexed(policy, structure.n_elements(), |i| {
        let xi = structure.gather(i, x);
        problem.element(i + 1, &xi, &params, req)
    })
}

/// Single element call. `params` are the structure parameters, optionally
/// followed by extra trailing values.
pub fn eval_element(
    problem: &dyn Problem,
    index: usize,
    xi: &[f64],
    params: &[ParamValue],
    req: EvalRequest,
) -> Result<ElementEvalResult> {
    let n = problem.dim_from_params(params)?;
    check_dimension(problem, n).map_err(|e| OpmError::ParameterMismatch(e.to_string()))?;
    let s = problem.structure(n);
    s.check_params(params)?;
    if index == 0 || index > s.n_elements() {
        return Err(OpmError::ElementIndexOutOfRange {
            index,
            count: s.n_elements(),
        });
    }
    let size = s.eldom[index - 1].len();
    if xi.len() != size {
        return Err(OpmError::DimensionMismatch {
            expected: size,
            actual: xi.len(),
        });
    }
    Ok(problem.element(index, xi, params, req))
}

/// Sums element values, scatters element gradients and accumulates element
/// Hessians on their `eldom[i] x eldom[i]` blocks.
pub fn assemble(
    structure: &CpsStructure,
    elements: &[ElementEvalResult],
    n: usize,
    req: EvalRequest,
) -> Result<EvalResult> {
    if elements.len() != structure.n_elements() {
        return Err(OpmError::DimensionMismatch {
            expected: structure.n_elements(),
            actual: elements.len(),
        });
    }
    if structure.n != n {
        return Err(OpmError::DimensionMismatch {
            expected: structure.n,
            actual: n,
        });
    }
    let mut f = 0.0;
    let mut g = req.gradient.then(|| vec![0.0; n]);
    let mut trips = if req.hessian {
        let cap = structure
            .eldom
            .iter()
            .map(|d| d.len() * (d.len() + 1) / 2)
            .sum();
        Some(Vec::with_capacity(cap))
    } else {
        None
    };
    for (i, (dom, el)) in structure.eldom.iter().zip(elements).enumerate() {
        f += el.f;
        if let Some(g) = g.as_mut() {
            let gi = el.g.as_ref().ok_or(OpmError::MissingGradient(i + 1))?;
            if gi.len() != dom.len() {
                return Err(OpmError::DimensionMismatch {
                    expected: dom.len(),
                    actual: gi.len(),
                });
            }
            for (&j, v) in dom.iter().zip(gi) {
                g[j - 1] += v;
            }
        }
        if let Some(trips) = trips.as_mut() {
            let hi = el.h.as_ref().ok_or(OpmError::MissingHessian(i + 1))?;
            if hi.order() != dom.len() {
                return Err(OpmError::DimensionMismatch {
                    expected: dom.len(),
                    actual: hi.order(),
                });
            }
            for (a, &ja) in dom.iter().enumerate() {
                for (b, &jb) in dom.iter().enumerate().take(a + 1) {
                    trips.push((ja, jb, hi.get(a, b)));
                }
            }
        }
    }
    Ok(EvalResult {
        f,
        g,
        h: trips.map(|t| SparseSymMatrix::from_lower_unchecked(n, t)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cps::Param;
    use crate::sparse::DenseSymMatrix;

    fn el(f: f64, g: Vec<f64>, h: Vec<Vec<f64>>) -> ElementEvalResult {
        ElementEvalResult {
            f,
            g: Some(g),
            h: Some(DenseSymMatrix::from_rows(&h).unwrap()),
        }
    }

    fn structure(n: usize, eldom: Vec<Vec<usize>>) -> CpsStructure {
        CpsStructure {
            name: "t".into(),
            n,
            eldom,
            param: vec![Param::scalar("n", n as f64)],
        }
    }

    #[test]
    fn single_full_element_passes_through() {
        let s = structure(2, vec![vec![1, 2]]);
        let e = el(3.0, vec![1.0, -2.0], vec![vec![4.0, 1.0], vec![1.0, 5.0]]);
        let r = assemble(&s, &[e], 2, EvalRequest::ALL).unwrap();
        assert_eq!(r.f, 3.0);
        assert_eq!(r.g.unwrap(), vec![1.0, -2.0]);
        assert_eq!(r.h.unwrap().to_dense(), vec![vec![4.0, 1.0], vec![1.0, 5.0]]);
    }

    #[test]
    fn overlapping_blocks_add() {
        let s = structure(3, vec![vec![1, 2], vec![2, 3]]);
        let e1 = el(1.0, vec![1.0, 1.0], vec![vec![1.0, 2.0], vec![2.0, 3.0]]);
        let e2 = el(2.0, vec![1.0, 1.0], vec![vec![10.0, 20.0], vec![20.0, 30.0]]);
        let r = assemble(&s, &[e1, e2], 3, EvalRequest::ALL).unwrap();
        assert_eq!(r.f, 3.0);
        assert_eq!(r.g.unwrap(), vec![1.0, 2.0, 1.0]);
        let h = r.h.unwrap();
        assert_eq!(h.get(2, 2), 13.0);
        assert_eq!(h.get(3, 1), 0.0);
        assert_eq!(h.nnz(), 5);
    }

    #[test]
    fn disjoint_blocks_are_block_diagonal() {
        let s = structure(4, vec![vec![1, 2], vec![3, 4]]);
        let e1 = el(0.0, vec![0.0; 2], vec![vec![1.0, 2.0], vec![2.0, 3.0]]);
        let e2 = el(0.0, vec![0.0; 2], vec![vec![4.0, 5.0], vec![5.0, 6.0]]);
        let h = assemble(&s, &[e1, e2], 4, EvalRequest::ALL).unwrap().h.unwrap();
        let d = h.to_dense();
        assert_eq!(d[0][..2], [1.0, 2.0]);
        assert_eq!(d[3][2..], [5.0, 6.0]);
        for (r, c) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            assert_eq!(d[r][c], 0.0);
        }
    }

    #[test]
    fn missing_pieces_are_reported() {
        let s = structure(2, vec![vec![1, 2]]);
        let e = ElementEvalResult {
            f: 1.0,
            g: None,
            h: None,
        };
        assert_eq!(
            assemble(&s, std::slice::from_ref(&e), 2, EvalRequest::GRADIENT),
            Err(OpmError::MissingGradient(1))
        );
        assert_eq!(
            assemble(&s, std::slice::from_ref(&e), 2, EvalRequest::HESSIAN_ONLY),
            Err(OpmError::MissingHessian(1))
        );
        assert!(assemble(&s, &[], 2, EvalRequest::VALUE).is_err());
        let bad = ElementEvalResult {
            f: 0.0,
            g: Some(vec![1.0]),
            h: None,
        };
        assert!(matches!(
            assemble(&s, &[bad], 2, EvalRequest::GRADIENT),
            Err(OpmError::DimensionMismatch { .. })
        ));
    }
}
