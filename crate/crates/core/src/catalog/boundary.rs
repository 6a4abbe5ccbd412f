//! Discretized boundary-value problems whose two end variables are fixed.

use super::kit::{sized_structure, Local};
use super::meta;
use crate::cps::{Bounds, CpsStructure, DimRule, ElementEvalResult, EvalRequest, ParamValue};
use crate::fstar::FStar;
use crate::problem::{n_param, Problem, ProblemMeta};

fn interior_triples(n: usize) -> Vec<Vec<usize>> {
    (2..n).map(|i| vec![i - 1, i, i + 1]).collect()
}

fn ends_fixed_at_zero(n: usize) -> Bounds {
    let mut b = Bounds::free(n);
    b.fix(1, 0.0);
    b.fix(n, 0.0);
    b
}

pub struct Broyden3d(ProblemMeta);

impl Broyden3d {
    pub fn new() -> Self {
        Broyden3d(meta(
            "broyden3d",
            "Broyden tridiagonal system as least squares, sum over 1 < i < n of \
             ((3 - 2 x(i)) x(i) - x(i-1) - 2 x(i+1) + 1)^2, with x(1) = x(n) = 0 fixed. \
             Interior starts at -1. Source: problem 30 in Moré, Garbow and Hillstrom (1981).",
            10,
            DimRule::AtLeast(3),
            FStar::Known(0.0),
            "SXR2-AY-V-0",
        ))
    }
}

impl Problem for Broyden3d {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        let mut x = vec![-1.0; n];
        x[0] = 0.0;
        x[n - 1] = 0.0;
        x
    }

    fn bounds(&self, n: usize) -> Bounds {
        ends_fixed_at_zero(n)
    }

    fn structure(&self, n: usize) -> CpsStructure {
        sized_structure("broyden3d", n, interior_triples(n))
    }

    fn element(&self, _: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let (a, b, c) = (x[0], x[1], x[2]);
        let mut l = Local::new(3, req);
        l.square(
            1.0,
            (3.0 - 2.0 * b) * b - a - 2.0 * c + 1.0,
            &[(0, -1.0), (1, 3.0 - 4.0 * b), (2, -2.0)],
            &[(1, 1, -4.0)],
        );
        l.finish()
    }
}

pub struct Morebv(ProblemMeta);

impl Morebv {
    pub fn new() -> Self {
        Morebv(meta(
            "morebv",
            "Discrete boundary value problem as least squares, sum over 1 < i < n of \
             (2 x(i) - x(i-1) - x(i+1) + h^2 (x(i) + t(i) + 1)^3 / 2)^2 with h = 1/(n-1), \
             t(i) = (i-1) h and x(1) = x(n) = 0 fixed. Starts from x(i) = t(i) (t(i) - 1). \
             Source: problem 28 in Moré, Garbow and Hillstrom (1981).",
            12,
            DimRule::AtLeast(3),
            FStar::Known(0.0),
            "SXR2-AY-V-0",
        ))
    }
}

impl Problem for Morebv {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        let h = 1.0 / (n - 1) as f64;
        (0..n)
            .map(|k| {
                let t = k as f64 * h;
                t * (t - 1.0)
            })
            .collect()
    }

    fn bounds(&self, n: usize) -> Bounds {
        ends_fixed_at_zero(n)
    }

    fn structure(&self, n: usize) -> CpsStructure {
        sized_structure("morebv", n, interior_triples(n))
    }

    fn element(&self, e: usize, x: &[f64], p: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let h = 1.0 / (n_param(p) - 1) as f64;
        // element e is centred on variable e + 1, so t = e h
        let t = e as f64 * h;
        let w = x[1] + t + 1.0;
        let h2 = h * h;
        let mut l = Local::new(3, req);
        l.square(
            1.0,
            2.0 * x[1] - x[0] - x[2] + 0.5 * h2 * w * w * w,
            &[(0, -1.0), (1, 2.0 + 1.5 * h2 * w * w), (2, -1.0)],
            &[(1, 1, 3.0 * h2 * w)],
        );
        l.finish()
    }
}
