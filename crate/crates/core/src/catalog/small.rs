//! Fixed-dimension problems with a handful of variables.

use super::kit::{plain_structure, Full, Local};
use super::meta;
use crate::cps::{CpsStructure, DimRule, ElementEvalResult, EvalRequest, EvalResult, Param, ParamValue};
use crate::fstar::FStar;
use crate::problem::{Problem, ProblemMeta};

pub struct Beale(ProblemMeta);

const BEALE_Y: [f64; 3] = [1.5, 2.25, 2.625];

impl Beale {
    pub fn new() -> Self {
        Beale(meta(
            "beale",
            "Beale function, sum over k = 1..3 of (y(k) - x(1) (1 - x(2)^k))^2 with \
             y = (1.5, 2.25, 2.625). Starts from (1, 1); minimum 0 at (3, 0.5). Source: \
             problem 5 in Moré, Garbow and Hillstrom (1981).",
            2,
            DimRule::Fixed(2),
            FStar::Known(0.0),
            "SUR2-AN-2-0",
        ))
    }
}

impl Problem for Beale {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, _: usize) -> Vec<f64> {
        vec![1.0, 1.0]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let mut s = plain_structure("beale", n, vec![vec![1, 2]; 3]);
        s.param.push(Param::vector("y", BEALE_Y.to_vec()));
        s
    }

    fn element(&self, k: usize, x: &[f64], p: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let y = p[0].as_vector().expect("validated y parameter")[k - 1];
        let (a, b) = (x[0], x[1]);
        let kf = k as f64;
        let bk1 = b.powi(k as i32 - 1);
        let mut d2r = vec![(1, 0, kf * bk1)];
        if k >= 2 {
            d2r.push((1, 1, a * kf * (kf - 1.0) * b.powi(k as i32 - 2)));
        }
        let mut l = Local::new(2, req);
        l.square(
            1.0,
            y - a * (1.0 - b * bk1),
            &[(0, b * bk1 - 1.0), (1, a * kf * bk1)],
            &d2r,
        );
        l.finish()
    }
}

pub struct Booth(ProblemMeta);

impl Booth {
    pub fn new() -> Self {
        Booth(meta(
            "booth",
            "Booth quadratic, (x(1) + 2 x(2) - 7)^2 + (2 x(1) + x(2) - 5)^2. Starts from the \
             origin; minimum 0 at (1, 3). Source: problem 36 in Hock and Schittkowski's \
             unconstrained companion set, as distributed with CUTEst.",
            2,
            DimRule::Fixed(2),
            FStar::Known(0.0),
            "QUR2-AN-2-0",
        ))
    }
}

impl Problem for Booth {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, _: usize) -> Vec<f64> {
        vec![0.0, 0.0]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        plain_structure("booth", n, vec![vec![1, 2]])
    }

    fn element(&self, _: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let mut l = Local::new(2, req);
        l.square(1.0, x[0] + 2.0 * x[1] - 7.0, &[(0, 1.0), (1, 2.0)], &[]);
        l.square(1.0, 2.0 * x[0] + x[1] - 5.0, &[(0, 2.0), (1, 1.0)], &[]);
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let (a, b) = (x[0], x[1]);
        let mut fl = Full::new(2, req);
        fl.value((a + 2.0 * b - 7.0).powi(2) + (2.0 * a + b - 5.0).powi(2));
        fl.grad(0, 10.0 * a + 8.0 * b - 34.0);
        fl.grad(1, 8.0 * a + 10.0 * b - 38.0);
        fl.hess(0, 0, 10.0);
        fl.hess(1, 0, 8.0);
        fl.hess(1, 1, 10.0);
        Some(fl.finish())
    }
}

pub struct Box3(ProblemMeta);

impl Box3 {
    pub fn new() -> Self {
        Box3(meta(
            "box3",
            "Box three-dimensional function, sum over k = 1..10 of \
             (exp(-t x(1)) - exp(-t x(2)) - x(3) (exp(-t) - exp(-10 t)))^2 with t = 0.1 k. \
             Starts from (0, 10, 20); minimum 0 at (1, 10, 1). Source: problem 12 in \
             Moré, Garbow and Hillstrom (1981).",
            3,
            DimRule::Fixed(3),
            FStar::Known(0.0),
            "OUR2-AN-3-0",
        ))
    }
}

impl Problem for Box3 {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, _: usize) -> Vec<f64> {
        vec![0.0, 10.0, 20.0]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        plain_structure("box3", n, vec![vec![1, 2, 3]; 10])
    }

    fn element(&self, k: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let t = 0.1 * k as f64;
        let (e1, e2) = ((-t * x[0]).exp(), (-t * x[1]).exp());
        let c = (-t).exp() - (-10.0 * t).exp();
        let mut l = Local::new(3, req);
        l.square(
            1.0,
            e1 - e2 - x[2] * c,
            &[(0, -t * e1), (1, t * e2), (2, -c)],
            &[(0, 0, t * t * e1), (1, 1, -t * t * e2)],
        );
        l.finish()
    }
}

pub struct Brownden(ProblemMeta);

impl Brownden {
    pub fn new() -> Self {
        Brownden(meta(
            "brownden",
            "Brown and Dennis function, sum over k = 1..20 of ((x(1) + t x(2) - exp(t))^2 + \
             (x(3) + x(4) sin(t) - cos(t))^2)^2 with t = k/5. Starts from (25, 5, -5, -1). \
             Source: problem 16 in Moré, Garbow and Hillstrom (1981).",
            4,
            DimRule::Fixed(4),
            FStar::Known(85822.2),
            "SUR2-AN-4-0",
        ))
    }
}

impl Problem for Brownden {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, _: usize) -> Vec<f64> {
        vec![25.0, 5.0, -5.0, -1.0]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        plain_structure("brownden", n, vec![vec![1, 2, 3, 4]])
    }

    fn element(&self, _: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let mut l = Local::new(4, req);
        for k in 1..=20 {
            let t = k as f64 / 5.0;
            let (s, c) = t.sin_cos();
            let a = x[0] + t * x[1] - t.exp();
            let b = x[2] + x[3] * s - c;
            let u = a * a + b * b;
            l.compose(
                [u * u, 2.0 * u, 2.0],
                &[(0, 2.0 * a), (1, 2.0 * a * t), (2, 2.0 * b), (3, 2.0 * b * s)],
                &[
                    (0, 0, 2.0),
                    (1, 0, 2.0 * t),
                    (1, 1, 2.0 * t * t),
                    (2, 2, 2.0),
                    (3, 2, 2.0 * s),
                    (3, 3, 2.0 * s * s),
                ],
            );
        }
        l.finish()
    }
}

pub struct Cliff(ProblemMeta);

impl Cliff {
    pub fn new() -> Self {
        Cliff(meta(
            "cliff",
            "Cliff function, (0.01 x(1) - 0.03)^2 - x(1) + x(2) + exp(20 (x(1) - x(2))). \
             Starts from (0, -1). Source: problem 206 in Hock and Schittkowski's \
             unconstrained companion set, as distributed with CUTEst.",
            2,
            DimRule::Fixed(2),
            FStar::Known(0.19978661),
            "OUR2-AN-2-0",
        ))
    }
}

impl Problem for Cliff {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, _: usize) -> Vec<f64> {
        vec![0.0, -1.0]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        plain_structure("cliff", n, vec![vec![1], vec![1, 2]])
    }

    fn element(&self, i: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        if i == 1 {
            let mut l = Local::new(1, req);
            l.square(1.0, 0.01 * x[0] - 0.03, &[(0, 0.01)], &[]);
            l.value(-x[0]);
            l.grad(0, -1.0);
            return l.finish();
        }
        let e = (20.0 * (x[0] - x[1])).exp();
        let mut l = Local::new(2, req);
        l.compose([e, e, e], &[(0, 20.0), (1, -20.0)], &[]);
        l.value(x[1]);
        l.grad(1, 1.0);
        l.finish()
    }
}

pub struct Jensmp(ProblemMeta);

impl Jensmp {
    pub fn new() -> Self {
        Jensmp(meta(
            "jensmp",
            "Jennrich and Sampson function, sum over k = 1..10 of \
             (2 + 2k - exp(k x(1)) - exp(k x(2)))^2. Starts from (0.3, 0.4). Source: \
             problem 6 in Moré, Garbow and Hillstrom (1981).",
            2,
            DimRule::Fixed(2),
            FStar::Known(124.362),
            "SUR2-AN-2-0",
        ))
    }
}

impl Problem for Jensmp {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, _: usize) -> Vec<f64> {
        vec![0.3, 0.4]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        plain_structure("jensmp", n, vec![vec![1, 2]; 10])
    }

    fn element(&self, k: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let kf = k as f64;
        let (e1, e2) = ((kf * x[0]).exp(), (kf * x[1]).exp());
        let mut l = Local::new(2, req);
        l.square(
            1.0,
            2.0 + 2.0 * kf - e1 - e2,
            &[(0, -kf * e1), (1, -kf * e2)],
            &[(0, 0, -kf * kf * e1), (1, 1, -kf * kf * e2)],
        );
        l.finish()
    }
}

pub struct Kowosb(ProblemMeta);

const KOWOSB_Y: [f64; 11] = [
    0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
];
const KOWOSB_U: [f64; 11] = [
    4.0, 2.0, 1.0, 0.5, 0.25, 0.167, 0.125, 0.1, 0.0833, 0.0714, 0.0625,
];

impl Kowosb {
    pub fn new() -> Self {
        Kowosb(meta(
            "kowosb",
            "Kowalik and Osborne function, sum over k = 1..11 of \
             (y(k) - x(1) (u(k)^2 + u(k) x(2)) / (u(k)^2 + u(k) x(3) + x(4)))^2 with the \
             published enzyme data y and u. Starts from (0.25, 0.39, 0.415, 0.39). Source: \
             problem 15 in Moré, Garbow and Hillstrom (1981).",
            4,
            DimRule::Fixed(4),
            FStar::Known(3.07505e-3),
            "SUR2-AN-4-0",
        ))
    }
}

impl Problem for Kowosb {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, _: usize) -> Vec<f64> {
        vec![0.25, 0.39, 0.415, 0.39]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let mut s = plain_structure("kowosb", n, vec![vec![1, 2, 3, 4]]);
        s.param.push(Param::vector("y", KOWOSB_Y.to_vec()));
        s.param.push(Param::vector("u", KOWOSB_U.to_vec()));
        s
    }

    fn element(&self, _: usize, x: &[f64], p: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let ys = p[0].as_vector().expect("validated y parameter");
        let us = p[1].as_vector().expect("validated u parameter");
        let x1 = x[0];
        let mut l = Local::new(4, req);
        for (&y, &u) in ys.iter().zip(us) {
            let num = u * u + u * x[1];
            let den = u * u + u * x[2] + x[3];
            let (d2, d3) = (den * den, den * den * den);
            // r = y - m with m = x1 num / den
            l.square(
                1.0,
                y - x1 * num / den,
                &[
                    (0, -num / den),
                    (1, -x1 * u / den),
                    (2, x1 * num * u / d2),
                    (3, x1 * num / d2),
                ],
                &[
                    (1, 0, -u / den),
                    (2, 0, num * u / d2),
                    (3, 0, num / d2),
                    (2, 1, x1 * u * u / d2),
                    (3, 1, x1 * u / d2),
                    (2, 2, -2.0 * x1 * num * u * u / d3),
                    (3, 2, -2.0 * x1 * num * u / d3),
                    (3, 3, -2.0 * x1 * num / d3),
                ],
            );
        }
        l.finish()
    }
}

pub struct Zangwil2(ProblemMeta);

impl Zangwil2 {
    pub fn new() -> Self {
        Zangwil2(meta(
            "zangwil2",
            "Zangwill's quadratic, (16 x(1)^2 + 16 x(2)^2 - 8 x(1) x(2) - 56 x(1) - 256 x(2) \
             + 991) / 15. Starts from (3, 8); minimum -18.2 at (4, 9). Source: problem 7 in \
             Himmelblau (1972).",
            2,
            DimRule::Fixed(2),
            FStar::Known(-18.2),
            "QUR2-AN-2-0",
        ))
    }
}

impl Problem for Zangwil2 {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, _: usize) -> Vec<f64> {
        vec![3.0, 8.0]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        plain_structure("zangwil2", n, vec![vec![1, 2]])
    }

    fn element(&self, _: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let (a, b) = (x[0], x[1]);
        let w = 1.0 / 15.0;
        let mut l = Local::new(2, req);
        l.value(w * (16.0 * a * a + 16.0 * b * b - 8.0 * a * b - 56.0 * a - 256.0 * b + 991.0));
        l.grad(0, w * (32.0 * a - 8.0 * b - 56.0));
        l.grad(1, w * (32.0 * b - 8.0 * a - 256.0));
        l.hess(0, 0, 32.0 * w);
        l.hess(1, 0, -8.0 * w);
        l.hess(1, 1, 32.0 * w);
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let (a, b) = (x[0], x[1]);
        let mut fl = Full::new(2, req);
        fl.value((16.0 * a * a + 16.0 * b * b - 8.0 * a * b - 56.0 * a - 256.0 * b + 991.0) / 15.0);
        fl.grad(0, (32.0 * a - 8.0 * b - 56.0) / 15.0);
        fl.grad(1, (32.0 * b - 8.0 * a - 256.0) / 15.0);
        fl.hess(0, 0, 32.0 / 15.0);
        fl.hess(1, 0, -8.0 / 15.0);
        fl.hess(1, 1, 32.0 / 15.0);
        Some(fl.finish())
    }
}

pub struct Zangwil3(ProblemMeta);

impl Zangwil3 {
    pub fn new() -> Self {
        Zangwil3(meta(
            "zangwil3",
            "Zangwill's three linear residuals, (x(1) - x(2) + x(3))^2 + \
             (-x(1) + x(2) + x(3))^2 + (x(1) + x(2) - x(3))^2. Starts from (100, -1, 2.5); \
             minimum 0 at the origin. Source: problem 8 in Himmelblau (1972).",
            3,
            DimRule::Fixed(3),
            FStar::Known(0.0),
            "QUR2-AN-3-0",
        ))
    }
}

impl Problem for Zangwil3 {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, _: usize) -> Vec<f64> {
        vec![100.0, -1.0, 2.5]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        plain_structure("zangwil3", n, vec![vec![1, 2, 3]])
    }

    fn element(&self, _: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let mut l = Local::new(3, req);
        l.square(1.0, x[0] - x[1] + x[2], &[(0, 1.0), (1, -1.0), (2, 1.0)], &[]);
        l.square(1.0, -x[0] + x[1] + x[2], &[(0, -1.0), (1, 1.0), (2, 1.0)], &[]);
        l.square(1.0, x[0] + x[1] - x[2], &[(0, 1.0), (1, 1.0), (2, -1.0)], &[]);
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let (a, b, c) = (x[0], x[1], x[2]);
        let mut fl = Full::new(3, req);
        fl.value((a - b + c).powi(2) + (-a + b + c).powi(2) + (a + b - c).powi(2));
        fl.grad(0, 6.0 * a - 2.0 * b - 2.0 * c);
        fl.grad(1, 6.0 * b - 2.0 * a - 2.0 * c);
        fl.grad(2, 6.0 * c - 2.0 * a - 2.0 * b);
        for j in 0..3 {
            fl.hess(j, j, 6.0);
            for k in 0..j {
                fl.hess(j, k, -2.0);
            }
        }
        Some(fl.finish())
    }
}
