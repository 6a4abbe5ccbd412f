//! Classic small functions repeated over disjoint blocks of variables.

use std::f64::consts::PI;

use super::kit::{sized_structure, Local};
use super::meta;
use crate::cps::{CpsStructure, DimRule, ElementEvalResult, EvalRequest, ParamValue};
use crate::fstar::FStar;
use crate::problem::{n_param, Problem, ProblemMeta};

pub struct Powellsg(ProblemMeta);

impl Powellsg {
    pub fn new() -> Self {
        Powellsg(meta(
            "powellsg",
            "Extended Powell singular function. Each block of four variables (a, b, c, d) \
             contributes (a + 10 b)^2 + 5 (c - d)^2 + (b - 2 c)^4 + 10 (a - d)^4. Starts \
             from (3, -1, 0, 1) in every block. Source: problem 13 in Moré, Garbow and \
             Hillstrom (1981).",
            4,
            DimRule::MultipleOf { step: 4, min: 4 },
            FStar::Known(0.0),
            "SUR2-AY-V-0",
        ))
    }
}

impl Problem for Powellsg {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        [3.0, -1.0, 0.0, 1.0].iter().copied().cycle().take(n).collect()
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let mut eldom = Vec::with_capacity(n);
        for j in (0..n).step_by(4) {
            eldom.push(vec![j + 1, j + 2]);
            eldom.push(vec![j + 3, j + 4]);
            eldom.push(vec![j + 2, j + 3]);
            eldom.push(vec![j + 1, j + 4]);
        }
        sized_structure("powellsg", n, eldom)
    }

    fn element(&self, e: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let mut l = Local::new(2, req);
        match (e - 1) % 4 {
            0 => l.square(1.0, x[0] + 10.0 * x[1], &[(0, 1.0), (1, 10.0)], &[]),
            1 => l.square(5.0, x[0] - x[1], &[(0, 1.0), (1, -1.0)], &[]),
            2 => l.power(1.0, x[0] - 2.0 * x[1], 4, &[(0, 1.0), (1, -2.0)], &[]),
            _ => l.power(10.0, x[0] - x[1], 4, &[(0, 1.0), (1, -1.0)], &[]),
        }
        l.finish()
    }
}

pub struct Woods(ProblemMeta);

impl Woods {
    pub fn new() -> Self {
        Woods(meta(
            "woods",
            "Extended Wood function. Each block of four variables (a, b, c, d) contributes \
             100 (b - a^2)^2 + (1 - a)^2 + 90 (d - c^2)^2 + (1 - c)^2 + 10 (b + d - 2)^2 + \
             0.1 (b - d)^2. Starts from (-3, -1, -3, -1) in every block. Source: problem 14 \
             in Moré, Garbow and Hillstrom (1981), extended as in CUTEst.",
            12,
            DimRule::MultipleOf { step: 4, min: 4 },
            FStar::Known(0.0),
            "OUR2-AY-V-0",
        ))
    }
}

impl Problem for Woods {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        [-3.0, -1.0].iter().copied().cycle().take(n).collect()
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let mut eldom = Vec::with_capacity(3 * n / 4);
        for j in (0..n).step_by(4) {
            eldom.push(vec![j + 1, j + 2]);
            eldom.push(vec![j + 3, j + 4]);
            eldom.push(vec![j + 2, j + 4]);
        }
        sized_structure("woods", n, eldom)
    }

    fn element(&self, e: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let (a, b) = (x[0], x[1]);
        let mut l = Local::new(2, req);
        match (e - 1) % 3 {
            2 => {
                l.square(10.0, a + b - 2.0, &[(0, 1.0), (1, 1.0)], &[]);
                l.square(0.1, a - b, &[(0, 1.0), (1, -1.0)], &[]);
            }
            kind => {
                let w = if kind == 0 { 100.0 } else { 90.0 };
                l.square(w, b - a * a, &[(0, -2.0 * a), (1, 1.0)], &[(0, 0, -2.0)]);
                l.square(1.0, 1.0 - a, &[(0, -1.0)], &[]);
            }
        }
        l.finish()
    }
}

pub struct Helix(ProblemMeta);

impl Helix {
    pub fn new() -> Self {
        Helix(meta(
            "helix",
            "Extended helical valley. Each complete block of three variables (a, b, c) \
             contributes 100 ((c - 10 theta(a, b))^2 + (sqrt(a^2 + b^2) - 1)^2) + c^2, where \
             2 pi theta = atan(b/a), plus pi when a < 0; each remaining variable v contributes \
             v^2. Blocks start from (-1, 0, 0), remaining variables from 1. Source: problem 7 \
             in Moré, Garbow and Hillstrom (1981), extended blockwise.",
            10,
            DimRule::AtLeast(3),
            FStar::Known(0.0),
            "SUR2-AY-V-0",
        ))
    }
}

fn blocks(n: usize) -> usize {
    n / 3
}

/// `theta` and its first and second partial derivatives.
fn theta(a: f64, b: f64) -> (f64, [f64; 2], [f64; 3]) {
    let t = if a > 0.0 {
        (b / a).atan() / (2.0 * PI)
    } else if a < 0.0 {
        (b / a).atan() / (2.0 * PI) + 0.5
    } else {
        0.25_f64.copysign(b)
    };
    let r2 = a * a + b * b;
    let r4 = r2 * r2;
    (
        t,
        [-b / (2.0 * PI * r2), a / (2.0 * PI * r2)],
        [
            a * b / (PI * r4),
            (b * b - a * a) / (2.0 * PI * r4),
            -a * b / (PI * r4),
        ],
    )
}

impl Problem for Helix {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        let k = 3 * blocks(n);
        (0..n)
            .map(|i| match i {
                i if i >= k => 1.0,
                i if i % 3 == 0 => -1.0,
                _ => 0.0,
            })
            .collect()
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let k = blocks(n);
        let mut eldom: Vec<Vec<usize>> = (0..k).map(|j| vec![3 * j + 1, 3 * j + 2, 3 * j + 3]).collect();
        eldom.extend((3 * k + 1..=n).map(|i| vec![i]));
        sized_structure("helix", n, eldom)
    }

    fn element(&self, e: usize, x: &[f64], p: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        if e > blocks(n_param(p)) {
            let mut l = Local::new(1, req);
            l.square(1.0, x[0], &[(0, 1.0)], &[]);
            return l.finish();
        }
        let (a, b, c) = (x[0], x[1], x[2]);
        let (t, dt, d2t) = theta(a, b);
        let rho = (a * a + b * b).sqrt();
        let r3 = rho * rho * rho;
        let mut l = Local::new(3, req);
        l.square(
            100.0,
            c - 10.0 * t,
            &[(0, -10.0 * dt[0]), (1, -10.0 * dt[1]), (2, 1.0)],
            &[(0, 0, -10.0 * d2t[0]), (1, 0, -10.0 * d2t[1]), (1, 1, -10.0 * d2t[2])],
        );
        l.square(
            100.0,
            rho - 1.0,
            &[(0, a / rho), (1, b / rho)],
            &[(0, 0, b * b / r3), (1, 0, -a * b / r3), (1, 1, a * a / r3)],
        );
        l.square(1.0, c, &[(2, 1.0)], &[]);
        l.finish()
    }
}
