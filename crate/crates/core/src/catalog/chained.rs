//! Variable-dimension problems whose elements couple neighbouring variables
//! (or one variable with a fixed partner).

use super::kit::{alternating, chain_pairs, sized_structure, Full, Local};
use super::meta;
use crate::cps::{CpsStructure, DimRule, ElementEvalResult, EvalRequest, EvalResult, ParamValue};
use crate::fstar::FStar;
use crate::problem::{Problem, ProblemMeta};

/// `(a^2 + b^2)^2 - 4a + 3`, shared by arwhead and engval1.
fn quartic_pair(x: &[f64], req: EvalRequest) -> ElementEvalResult {
    let (a, b) = (x[0], x[1]);
    let mut l = Local::new(2, req);
    l.compose(
        {
            let u = a * a + b * b;
            [u * u, 2.0 * u, 2.0]
        },
        &[(0, 2.0 * a), (1, 2.0 * b)],
        &[(0, 0, 2.0), (1, 1, 2.0)],
    );
    l.value(3.0 - 4.0 * a);
    l.grad(0, -4.0);
    l.finish()
}

fn full_quartic_pair(fl: &mut Full, x: &[f64], i: usize, j: usize) {
    let (a, b) = (x[i], x[j]);
    let u = a * a + b * b;
    fl.value(u * u - 4.0 * a + 3.0);
    fl.grad(i, 4.0 * u * a - 4.0);
    fl.grad(j, 4.0 * u * b);
    fl.hess(i, i, 8.0 * a * a + 4.0 * u);
    fl.hess(j, i, 8.0 * a * b);
    fl.hess(j, j, 8.0 * b * b + 4.0 * u);
}

pub struct Rosenbr(ProblemMeta);

impl Rosenbr {
    pub fn new() -> Self {
        Rosenbr(meta(
            "rosenbr",
            "Chained Rosenbrock function, sum over i < n of 100 (x(i+1) - x(i)^2)^2 + (1 - x(i))^2. \
             Starts from (-1.2, 1, -1.2, 1, ...). Source: the Rosenbrock banana function, problem 1 in \
             Moré, Garbow and Hillstrom (1981), chained as in Toint (1983).",
            2,
            DimRule::AtLeast(2),
            FStar::Known(0.0),
            "SUR2-AY-V-0",
        ))
    }
}

impl Problem for Rosenbr {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        alternating(n, -1.2, 1.0)
    }

    fn structure(&self, n: usize) -> CpsStructure {
        sized_structure("rosenbr", n, chain_pairs(n))
    }

    fn element(&self, _: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let mut l = Local::new(2, req);
        l.square(
            100.0,
            x[1] - x[0] * x[0],
            &[(0, -2.0 * x[0]), (1, 1.0)],
            &[(0, 0, -2.0)],
        );
        l.square(1.0, 1.0 - x[0], &[(0, -1.0)], &[]);
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let mut fl = Full::new(n, req);
        for i in 0..n - 1 {
            let (a, b) = (x[i], x[i + 1]);
            let t = b - a * a;
            fl.value(100.0 * t * t + (1.0 - a) * (1.0 - a));
            fl.grad(i, -400.0 * a * t - 2.0 * (1.0 - a));
            fl.grad(i + 1, 200.0 * t);
            fl.hess(i, i, 1200.0 * a * a - 400.0 * b + 2.0);
            fl.hess(i + 1, i, -400.0 * a);
            fl.hess(i + 1, i + 1, 200.0);
        }
        Some(fl.finish())
    }
}

pub struct Arwhead(ProblemMeta);

impl Arwhead {
    pub fn new() -> Self {
        Arwhead(meta(
            "arwhead",
            "Arrowhead-structured quartic, sum over i < n of (x(i)^2 + x(n)^2)^2 - 4 x(i) + 3. \
             Starts from all ones; the minimizer is (1, ..., 1, 0). Source: problem 55 in \
             Conn, Gould, Lescrenier and Toint (1994).",
            10,
            DimRule::AtLeast(2),
            FStar::Known(0.0),
            "OUR2-AN-V-0",
        ))
    }
}

impl Problem for Arwhead {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        vec![1.0; n]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        sized_structure("arwhead", n, (1..n).map(|i| vec![i, n]).collect())
    }

    fn element(&self, _: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        quartic_pair(x, req)
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let mut fl = Full::new(n, req);
        for i in 0..n - 1 {
            full_quartic_pair(&mut fl, x, i, n - 1);
        }
        Some(fl.finish())
    }
}

pub struct Engval1(ProblemMeta);

impl Engval1 {
    pub fn new() -> Self {
        Engval1(meta(
            "engval1",
            "Chained Engvall function, sum over i < n of (x(i)^2 + x(i+1)^2)^2 - 4 x(i) + 3. \
             Starts from all twos. Source: problem 31 in Toint (1983).",
            10,
            DimRule::AtLeast(2),
            FStar::Known(0.0),
            "OUR2-AY-V-0",
        ))
    }
}

impl Problem for Engval1 {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        vec![2.0; n]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        sized_structure("engval1", n, chain_pairs(n))
    }

    fn element(&self, _: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        quartic_pair(x, req)
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let mut fl = Full::new(n, req);
        for i in 0..n - 1 {
            full_quartic_pair(&mut fl, x, i, i + 1);
        }
        Some(fl.finish())
    }
}

pub struct Cube(ProblemMeta);

impl Cube {
    pub fn new() -> Self {
        Cube(meta(
            "cube",
            "Chained cube valley, (x(1) - 1)^2 + sum over i > 1 of 100 (x(i) - x(i-1)^3)^2. \
             Starts from (-1.2, 1, -1.2, 1, ...). Source: the cube function of Leon (1966), \
             extended to n variables as in the CUTEst collection.",
            10,
            DimRule::AtLeast(2),
            FStar::Known(0.0),
            "SUR2-AY-V-0",
        ))
    }
}

impl Problem for Cube {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        alternating(n, -1.2, 1.0)
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let mut eldom = vec![vec![1]];
        eldom.extend((2..=n).map(|i| vec![i - 1, i]));
        sized_structure("cube", n, eldom)
    }

    fn element(&self, i: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        if i == 1 {
            let mut l = Local::new(1, req);
            l.square(1.0, x[0] - 1.0, &[(0, 1.0)], &[]);
            return l.finish();
        }
        let (a, b) = (x[0], x[1]);
        let mut l = Local::new(2, req);
        l.square(
            100.0,
            b - a * a * a,
            &[(0, -3.0 * a * a), (1, 1.0)],
            &[(0, 0, -6.0 * a)],
        );
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let mut fl = Full::new(n, req);
        fl.value((x[0] - 1.0) * (x[0] - 1.0));
        fl.grad(0, 2.0 * (x[0] - 1.0));
        fl.hess(0, 0, 2.0);
        for i in 1..n {
            let (a, b) = (x[i - 1], x[i]);
            let t = b - a * a * a;
            fl.value(100.0 * t * t);
            fl.grad(i - 1, -600.0 * a * a * t);
            fl.grad(i, 200.0 * t);
            fl.hess(i - 1, i - 1, 1800.0 * a.powi(4) - 1200.0 * a * t);
            fl.hess(i, i - 1, -600.0 * a * a);
            fl.hess(i, i, 200.0);
        }
        Some(fl.finish())
    }
}

pub struct Extrosnb(ProblemMeta);

impl Extrosnb {
    pub fn new() -> Self {
        Extrosnb(meta(
            "extrosnb",
            "Nonseparable extended Rosenbrock, (x(1) - 1)^2 + sum over i > 1 of \
             100 (x(i) - x(i-1)^2)^2. Starts from all minus ones. Source: Toint (1978), \
             as distributed with CUTEst.",
            10,
            DimRule::AtLeast(2),
            FStar::Known(0.0),
            "SUR2-AY-V-0",
        ))
    }
}

impl Problem for Extrosnb {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        vec![-1.0; n]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let mut eldom = vec![vec![1]];
        eldom.extend((2..=n).map(|i| vec![i - 1, i]));
        sized_structure("extrosnb", n, eldom)
    }

    fn element(&self, i: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        if i == 1 {
            let mut l = Local::new(1, req);
            l.square(1.0, x[0] - 1.0, &[(0, 1.0)], &[]);
            return l.finish();
        }
        let mut l = Local::new(2, req);
        l.square(
            100.0,
            x[1] - x[0] * x[0],
            &[(0, -2.0 * x[0]), (1, 1.0)],
            &[(0, 0, -2.0)],
        );
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let mut fl = Full::new(n, req);
        fl.value((x[0] - 1.0) * (x[0] - 1.0));
        fl.grad(0, 2.0 * (x[0] - 1.0));
        fl.hess(0, 0, 2.0);
        for i in 1..n {
            let (a, b) = (x[i - 1], x[i]);
            let t = b - a * a;
            fl.value(100.0 * t * t);
            fl.grad(i - 1, -400.0 * a * t);
            fl.grad(i, 200.0 * t);
            fl.hess(i - 1, i - 1, 1200.0 * a * a - 400.0 * b);
            fl.hess(i, i - 1, -400.0 * a);
            fl.hess(i, i, 200.0);
        }
        Some(fl.finish())
    }
}

pub struct Cosine(ProblemMeta);

impl Cosine {
    pub fn new() -> Self {
        Cosine(meta(
            "cosine",
            "Sum over i < n of cos(x(i)^2 - x(i+1)/2). Starts from all ones. \
             Source: Toint, as distributed with CUTEst.",
            10,
            DimRule::AtLeast(2),
            FStar::Known(0.0),
            "QUR2-AY-V-0",
        ))
    }
}

impl Problem for Cosine {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        vec![1.0; n]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        sized_structure("cosine", n, chain_pairs(n))
    }

    fn element(&self, _: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let z = x[0] * x[0] - 0.5 * x[1];
        let (s, c) = z.sin_cos();
        let mut l = Local::new(2, req);
        l.compose([c, -s, -c], &[(0, 2.0 * x[0]), (1, -0.5)], &[(0, 0, 2.0)]);
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let mut fl = Full::new(n, req);
        for i in 0..n - 1 {
            let a = x[i];
            let z = a * a - 0.5 * x[i + 1];
            let (s, c) = z.sin_cos();
            fl.value(c);
            fl.grad(i, -2.0 * a * s);
            fl.grad(i + 1, 0.5 * s);
            fl.hess(i, i, -4.0 * a * a * c - 2.0 * s);
            fl.hess(i + 1, i, a * c);
            fl.hess(i + 1, i + 1, -0.25 * c);
        }
        Some(fl.finish())
    }
}

pub struct Freuroth(ProblemMeta);

impl Freuroth {
    pub fn new() -> Self {
        Freuroth(meta(
            "freuroth",
            "Chained Freudenstein and Roth function, sum over i < n of \
             (-13 + x(i) + ((5 - x(i+1)) x(i+1) - 2) x(i+1))^2 + \
             (-29 + x(i) + ((x(i+1) + 1) x(i+1) - 14) x(i+1))^2. \
             Starts from (0.5, -2, 0, ..., 0). Source: problem 2 in Moré, Garbow and Hillstrom (1981), \
             chained as in Toint (1983).",
            10,
            DimRule::AtLeast(2),
            FStar::Known(0.0),
            "OUR2-AY-V-0",
        ))
    }
}

impl Problem for Freuroth {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        x[0] = 0.5;
        x[1] = -2.0;
        x
    }

    fn structure(&self, n: usize) -> CpsStructure {
        sized_structure("freuroth", n, chain_pairs(n))
    }

    fn element(&self, _: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let (a, y) = (x[0], x[1]);
        let mut l = Local::new(2, req);
        l.square(
            1.0,
            -13.0 + a + ((5.0 - y) * y - 2.0) * y,
            &[(0, 1.0), (1, 10.0 * y - 3.0 * y * y - 2.0)],
            &[(1, 1, 10.0 - 6.0 * y)],
        );
        l.square(
            1.0,
            -29.0 + a + ((y + 1.0) * y - 14.0) * y,
            &[(0, 1.0), (1, 3.0 * y * y + 2.0 * y - 14.0)],
            &[(1, 1, 6.0 * y + 2.0)],
        );
        l.finish()
    }
}

pub struct Genhumps(ProblemMeta);

/// Hump frequency.
const HUMPS_ZETA: f64 = 2.0;

impl Genhumps {
    pub fn new() -> Self {
        Genhumps(meta(
            "genhumps",
            "Generalized humps function, sum over i < n of sin(2 x(i))^2 sin(2 x(i+1))^2 + \
             0.05 (x(i)^2 + x(i+1)^2). Starts from (-506, 506.2, ..., 506.2). Source: \
             Ph. Toint, multidimensional variant of the humps problem, as distributed with CUTEst.",
            10,
            DimRule::AtLeast(2),
            FStar::Known(0.0),
            "SUR2-AY-V-0",
        ))
    }
}

fn humps(u: f64) -> [f64; 3] {
    let s = (HUMPS_ZETA * u).sin();
    [
        s * s,
        HUMPS_ZETA * (2.0 * HUMPS_ZETA * u).sin(),
        2.0 * HUMPS_ZETA * HUMPS_ZETA * (2.0 * HUMPS_ZETA * u).cos(),
    ]
}

impl Problem for Genhumps {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        let mut x = vec![506.2; n];
        x[0] = -506.0;
        x
    }

    fn structure(&self, n: usize) -> CpsStructure {
        sized_structure("genhumps", n, chain_pairs(n))
    }

    fn element(&self, _: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let (a, b) = (x[0], x[1]);
        let (sa, sb) = (humps(a), humps(b));
        let mut l = Local::new(2, req);
        l.value(sa[0] * sb[0] + 0.05 * (a * a + b * b));
        l.grad(0, sa[1] * sb[0] + 0.1 * a);
        l.grad(1, sa[0] * sb[1] + 0.1 * b);
        l.hess(0, 0, sa[2] * sb[0] + 0.1);
        l.hess(1, 0, sa[1] * sb[1]);
        l.hess(1, 1, sa[0] * sb[2] + 0.1);
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let mut fl = Full::new(n, req);
        for i in 0..n - 1 {
            let (a, b) = (x[i], x[i + 1]);
            let (pa, pb) = ((2.0 * a).sin().powi(2), (2.0 * b).sin().powi(2));
            let (da, db) = (2.0 * (4.0 * a).sin(), 2.0 * (4.0 * b).sin());
            let (dda, ddb) = (8.0 * (4.0 * a).cos(), 8.0 * (4.0 * b).cos());
            fl.value(pa * pb + 0.05 * (a * a + b * b));
            fl.grad(i, da * pb + 0.1 * a);
            fl.grad(i + 1, pa * db + 0.1 * b);
            fl.hess(i, i, dda * pb + 0.1);
            fl.hess(i + 1, i, da * db);
            fl.hess(i + 1, i + 1, pa * ddb + 0.1);
        }
        Some(fl.finish())
    }
}

pub struct Edensch(ProblemMeta);

impl Edensch {
    pub fn new() -> Self {
        Edensch(meta(
            "edensch",
            "Extended Dennis and Schnabel function, 16 + sum over i < n of (x(i) - 2)^4 + \
             (x(i) x(i+1) - 2 x(i+1))^2 + (x(i+1) + 1)^2. Starts from the origin. Source: \
             Li (1988), as distributed with CUTEst.",
            10,
            DimRule::AtLeast(2),
            FStar::Unknown("unknown".into()),
            "OUR2-AY-V-0",
        ))
    }
}

impl Problem for Edensch {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        vec![0.0; n]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        sized_structure("edensch", n, chain_pairs(n))
    }

    fn element(&self, i: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let (a, b) = (x[0], x[1]);
        let mut l = Local::new(2, req);
        if i == 1 {
            l.value(16.0);
        }
        l.power(1.0, a - 2.0, 4, &[(0, 1.0)], &[]);
        l.square(1.0, a * b - 2.0 * b, &[(0, b), (1, a - 2.0)], &[(1, 0, 1.0)]);
        l.square(1.0, b + 1.0, &[(1, 1.0)], &[]);
        l.finish()
    }
}

pub struct Tridia(ProblemMeta);

impl Tridia {
    pub fn new() -> Self {
        Tridia(meta(
            "tridia",
            "Shanno's tridiagonal quadratic, (x(1) - 1)^2 + sum over i > 1 of \
             i (2 x(i) - x(i-1))^2. Starts from all ones. Source: problem 8 in Toint (1983).",
            10,
            DimRule::AtLeast(2),
            FStar::Known(0.0),
            "QUR2-AY-V-0",
        ))
    }
}

impl Problem for Tridia {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        vec![1.0; n]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let mut eldom = vec![vec![1]];
        eldom.extend((2..=n).map(|i| vec![i - 1, i]));
        sized_structure("tridia", n, eldom)
    }

    fn element(&self, i: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        if i == 1 {
            let mut l = Local::new(1, req);
            l.square(1.0, x[0] - 1.0, &[(0, 1.0)], &[]);
            return l.finish();
        }
        let mut l = Local::new(2, req);
        l.square(i as f64, 2.0 * x[1] - x[0], &[(0, -1.0), (1, 2.0)], &[]);
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let mut fl = Full::new(n, req);
        fl.value((x[0] - 1.0).powi(2));
        fl.grad(0, 2.0 * (x[0] - 1.0));
        fl.hess(0, 0, 2.0);
        for k in 1..n {
            let w = (k + 1) as f64;
            let t = 2.0 * x[k] - x[k - 1];
            fl.value(w * t * t);
            fl.grad(k - 1, -2.0 * w * t);
            fl.grad(k, 4.0 * w * t);
            fl.hess(k - 1, k - 1, 2.0 * w);
            fl.hess(k, k - 1, -4.0 * w);
            fl.hess(k, k, 8.0 * w);
        }
        Some(fl.finish())
    }
}

pub struct Nondia(ProblemMeta);

impl Nondia {
    pub fn new() -> Self {
        Nondia(meta(
            "nondia",
            "Nondiagonal variant of Rosenbrock's function, (x(1) - 1)^2 + sum over i > 1 of \
             100 (x(1) - x(i-1)^2)^2. Starts from all minus ones. Source: Shanno (1978), \
             as distributed with CUTEst.",
            10,
            DimRule::AtLeast(2),
            FStar::Known(0.0),
            "SUR2-AY-V-0",
        ))
    }
}

impl Problem for Nondia {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        vec![-1.0; n]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let mut eldom = vec![vec![1]];
        eldom.extend((2..n).map(|k| vec![1, k]));
        sized_structure("nondia", n, eldom)
    }

    fn element(&self, i: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        if i == 1 {
            let a = x[0];
            let mut l = Local::new(1, req);
            l.square(1.0, a - 1.0, &[(0, 1.0)], &[]);
            l.square(100.0, a - a * a, &[(0, 1.0 - 2.0 * a)], &[(0, 0, -2.0)]);
            return l.finish();
        }
        let mut l = Local::new(2, req);
        l.square(
            100.0,
            x[0] - x[1] * x[1],
            &[(0, 1.0), (1, -2.0 * x[1])],
            &[(1, 1, -2.0)],
        );
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let mut fl = Full::new(n, req);
        let a = x[0];
        fl.value((a - 1.0).powi(2));
        fl.grad(0, 2.0 * (a - 1.0));
        fl.hess(0, 0, 2.0);
        for k in 0..n - 1 {
            let b = x[k];
            let t = a - b * b;
            fl.value(100.0 * t * t);
            if k == 0 {
                // x(1) - x(1)^2
                fl.grad(0, 200.0 * t * (1.0 - 2.0 * a));
                fl.hess(0, 0, 200.0 * (1.0 - 2.0 * a).powi(2) - 400.0 * t);
            } else {
                fl.grad(0, 200.0 * t);
                fl.grad(k, -400.0 * b * t);
                fl.hess(0, 0, 200.0);
                fl.hess(k, 0, -400.0 * b);
                fl.hess(k, k, 800.0 * b * b - 400.0 * t);
            }
        }
        Some(fl.finish())
    }
}

pub struct Nondquar(ProblemMeta);

impl Nondquar {
    pub fn new() -> Self {
        Nondquar(meta(
            "nondquar",
            "Nondiagonal quartic, (x(1) - x(2))^2 + (x(n-1) + x(n))^2 + sum over i <= n-2 of \
             (x(i) + x(i+1) + x(n))^4. Starts from (1, -1, 1, -1, ...). Source: problem 57 in \
             Conn, Gould, Lescrenier and Toint (1994).",
            100,
            DimRule::AtLeast(3),
            FStar::Known(0.0),
            "OUR2-AN-V-0",
        ))
    }
}

impl Problem for Nondquar {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        alternating(n, 1.0, -1.0)
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let mut eldom: Vec<Vec<usize>> = (1..=n - 2).map(|i| vec![i, i + 1, n]).collect();
        eldom.push(vec![1, 2]);
        eldom.push(vec![n - 1, n]);
        sized_structure("nondquar", n, eldom)
    }

    fn element(&self, i: usize, x: &[f64], p: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let n = crate::problem::n_param(p);
        if i <= n - 2 {
            let mut l = Local::new(3, req);
            l.power(1.0, x[0] + x[1] + x[2], 4, &[(0, 1.0), (1, 1.0), (2, 1.0)], &[]);
            return l.finish();
        }
        let mut l = Local::new(2, req);
        if i == n - 1 {
            l.square(1.0, x[0] - x[1], &[(0, 1.0), (1, -1.0)], &[]);
        } else {
            l.square(1.0, x[0] + x[1], &[(0, 1.0), (1, 1.0)], &[]);
        }
        l.finish()
    }
}

pub struct Dqrtic(ProblemMeta);

impl Dqrtic {
    pub fn new() -> Self {
        Dqrtic(meta(
            "dqrtic",
            "Separable quartic, sum over i of (x(i) - i)^4. Starts from all twos. \
             Source: problem 157 in Schittkowski (1987).",
            10,
            DimRule::AtLeast(1),
            FStar::Known(0.0),
            "QUR2-AY-V-0",
        ))
    }
}

impl Problem for Dqrtic {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        vec![2.0; n]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        sized_structure("dqrtic", n, (1..=n).map(|i| vec![i]).collect())
    }

    fn element(&self, i: usize, x: &[f64], _: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let mut l = Local::new(1, req);
        l.power(1.0, x[0] - i as f64, 4, &[(0, 1.0)], &[]);
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let mut fl = Full::new(x.len(), req);
        for (k, &v) in x.iter().enumerate() {
            let t = v - (k + 1) as f64;
            fl.value(t.powi(4));
            fl.grad(k, 4.0 * t.powi(3));
            fl.hess(k, k, 12.0 * t * t);
        }
        Some(fl.finish())
    }
}

pub struct Vardim(ProblemMeta);

impl Vardim {
    pub fn new() -> Self {
        Vardim(meta(
            "vardim",
            "Variably dimensioned function, sum of (x(i) - 1)^2 plus s^2 + s^4 where \
             s = sum of i (x(i) - 1). Starts from x(i) = 1 - i/n. Source: problem 25 in \
             Moré, Garbow and Hillstrom (1981).",
            10,
            DimRule::AtLeast(1),
            FStar::Known(0.0),
            "SUR2-AY-V-0",
        ))
    }
}

impl Problem for Vardim {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        (1..=n).map(|i| 1.0 - i as f64 / n as f64).collect()
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let mut eldom: Vec<Vec<usize>> = (1..=n).map(|i| vec![i]).collect();
        eldom.push((1..=n).collect());
        sized_structure("vardim", n, eldom)
    }

    fn element(&self, i: usize, x: &[f64], p: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let n = crate::problem::n_param(p);
        if i <= n {
            let mut l = Local::new(1, req);
            l.square(1.0, x[0] - 1.0, &[(0, 1.0)], &[]);
            return l.finish();
        }
        let s: f64 = x
            .iter()
            .enumerate()
            .map(|(k, v)| (k + 1) as f64 * (v - 1.0))
            .sum();
        let dr: Vec<(usize, f64)> = (0..x.len()).map(|k| (k, (k + 1) as f64)).collect();
        let mut l = Local::new(x.len(), req);
        l.compose(
            [
                s * s + s.powi(4),
                2.0 * s + 4.0 * s.powi(3),
                2.0 + 12.0 * s * s,
            ],
            &dr,
            &[],
        );
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let mut fl = Full::new(n, req);
        let mut s = 0.0;
        for (k, &v) in x.iter().enumerate() {
            fl.value((v - 1.0).powi(2));
            fl.grad(k, 2.0 * (v - 1.0));
            fl.hess(k, k, 2.0);
            s += (k + 1) as f64 * (v - 1.0);
        }
        fl.value(s * s + s.powi(4));
        let d1 = 2.0 * s + 4.0 * s.powi(3);
        let d2 = 2.0 + 12.0 * s * s;
        for j in 0..n {
            fl.grad(j, d1 * (j + 1) as f64);
            for k in 0..=j {
                fl.hess(j, k, d2 * ((j + 1) * (k + 1)) as f64);
            }
        }
        Some(fl.finish())
    }
}
