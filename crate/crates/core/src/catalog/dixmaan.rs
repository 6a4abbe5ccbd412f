//! The Dixon-Maany family. Variants differ only in their coefficient and
//! exponent tables; all share one element core.

use super::kit::{sized_structure, Full, Local};
use super::meta;
use crate::cps::{CpsStructure, DimRule, ElementEvalResult, EvalRequest, EvalResult, ParamValue};
use crate::fstar::FStar;
use crate::problem::{n_param, Problem, ProblemMeta};

/// `alpha, beta, gamma, delta` and the exponents `k1..k4`.
#[derive(Debug, Clone, Copy)]
struct Coeffs {
    c: [f64; 4],
    k: [i32; 4],
}

fn variant(v: char) -> (&'static str, &'static str, Coeffs) {
    match v {
        'a' => (
            "dixmaana",
            "Dixon-Maany function, variant A: alpha = 1, beta = 0, gamma = delta = 0.125, all \
             weight exponents 0. With m = n/3, f = 1 + sum alpha x(i)^2 (i/n)^k1 + \
             sum beta x(i)^2 (x(i+1) + x(i+1)^2)^2 (i/n)^k2 + sum over i <= 2m of \
             gamma x(i)^2 x(i+m)^4 (i/n)^k3 + sum over i <= m of delta x(i) x(i+2m) (i/n)^k4. \
             Starts from all twos. Source: Dixon and Maany (1988), as distributed with CUTEst.",
            Coeffs { c: [1.0, 0.0, 0.125, 0.125], k: [0, 0, 0, 0] },
        ),
        'e' => (
            "dixmaane",
            "Dixon-Maany function, variant E: alpha = 1, beta = 0, gamma = delta = 0.125, \
             exponents (1, 0, 0, 1). Same template as dixmaana. Starts from all twos. \
             Source: Dixon and Maany (1988), as distributed with CUTEst.",
            Coeffs { c: [1.0, 0.0, 0.125, 0.125], k: [1, 0, 0, 1] },
        ),
        'i' => (
            "dixmaani",
            "Dixon-Maany function, variant I: alpha = 1, beta = 0, gamma = delta = 0.125, \
             exponents (2, 0, 0, 2). Same template as dixmaana. Starts from all twos. \
             Source: Dixon and Maany (1988), as distributed with CUTEst.",
            Coeffs { c: [1.0, 0.0, 0.125, 0.125], k: [2, 0, 0, 2] },
        ),
        'l' => (
            "dixmaanl",
            "Dixon-Maany function, variant L: alpha = 1, beta = gamma = delta = 0.26, \
             exponents (2, 0, 0, 2). Same template as dixmaana. Starts from all twos. \
             Source: Dixon and Maany (1988), as distributed with CUTEst.",
            Coeffs { c: [1.0, 0.26, 0.26, 0.26], k: [2, 0, 0, 2] },
        ),
        _ => panic!("no dixmaan variant {v}"),
    }
}

pub struct Dixmaan {
    meta: ProblemMeta,
    coeffs: Coeffs,
}

impl Dixmaan {
    pub fn new(v: char) -> Self {
        let (name, description, coeffs) = variant(v);
        Dixmaan {
            meta: meta(
                name,
                description,
                12,
                DimRule::MultipleOf { step: 3, min: 6 },
                FStar::Known(1.0),
                "OUR2-AY-V-0",
            ),
            coeffs,
        }
    }

    fn weights(&self, i: usize, n: usize) -> [f64; 4] {
        let r = i as f64 / n as f64;
        let mut w = self.coeffs.c;
        for (w, &k) in w.iter_mut().zip(&self.coeffs.k) {
            *w *= r.powi(k);
        }
        w
    }
}

impl Problem for Dixmaan {
    fn meta(&self) -> &ProblemMeta {
        &self.meta
    }

    fn start(&self, n: usize) -> Vec<f64> {
        vec![2.0; n]
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let m = n / 3;
        let eldom = (1..=n)
            .map(|i| {
                let mut d = vec![i];
                if i < n {
                    d.push(i + 1);
                }
                if i <= 2 * m {
                    d.push(i + m);
                }
                if i <= m {
                    d.push(i + 2 * m);
                }
                d
            })
            .collect();
        sized_structure(self.meta.name, n, eldom)
    }

    fn element(&self, i: usize, x: &[f64], p: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let n = n_param(p);
        let m = n / 3;
        let [wa, wb, wc, wd] = self.weights(i, n);
        let a = x[0];
        let mut pos = 1;
        let mut l = Local::new(x.len(), req);
        if i == 1 {
            l.value(1.0);
        }
        l.square(wa, a, &[(0, 1.0)], &[]);
        if i < n {
            let b = x[pos];
            // a (b + b^2)
            l.square(
                wb,
                a * (b + b * b),
                &[(0, b + b * b), (pos, a * (1.0 + 2.0 * b))],
                &[(pos, 0, 1.0 + 2.0 * b), (pos, pos, 2.0 * a)],
            );
            pos += 1;
        }
        if i <= 2 * m {
            let c = x[pos];
            l.square(
                wc,
                a * c * c,
                &[(0, c * c), (pos, 2.0 * a * c)],
                &[(pos, 0, 2.0 * c), (pos, pos, 2.0 * a)],
            );
            pos += 1;
        }
        if i <= m {
            let d = x[pos];
            l.value(wd * a * d);
            l.grad(0, wd * d);
            l.grad(pos, wd * a);
            l.hess(pos, 0, wd);
        }
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let m = n / 3;
        let [al, be, ga, de] = self.coeffs.c;
        let w = |i: usize, k: usize| ((i + 1) as f64 / n as f64).powi(self.coeffs.k[k]);
        let mut fl = Full::new(n, req);
        fl.value(1.0);
        for i in 0..n {
            let c = al * w(i, 0);
            fl.value(c * x[i] * x[i]);
            fl.grad(i, 2.0 * c * x[i]);
            fl.hess(i, i, 2.0 * c);
        }
        for i in 0..n - 1 {
            let c = be * w(i, 1);
            let (a, b) = (x[i], x[i + 1]);
            let q = b + b * b;
            let dq = 1.0 + 2.0 * b;
            fl.value(c * a * a * q * q);
            fl.grad(i, 2.0 * c * a * q * q);
            fl.grad(i + 1, 2.0 * c * a * a * q * dq);
            fl.hess(i, i, 2.0 * c * q * q);
            fl.hess(i + 1, i, 4.0 * c * a * q * dq);
            fl.hess(i + 1, i + 1, 2.0 * c * a * a * (dq * dq + 2.0 * q));
        }
        for i in 0..2 * m {
            let c = ga * w(i, 2);
            let (a, b) = (x[i], x[i + m]);
            fl.value(c * a * a * b.powi(4));
            fl.grad(i, 2.0 * c * a * b.powi(4));
            fl.grad(i + m, 4.0 * c * a * a * b.powi(3));
            fl.hess(i, i, 2.0 * c * b.powi(4));
            fl.hess(i + m, i, 8.0 * c * a * b.powi(3));
            fl.hess(i + m, i + m, 12.0 * c * a * a * b * b);
        }
        for i in 0..m {
            let c = de * w(i, 3);
            let (a, b) = (x[i], x[i + 2 * m]);
            fl.value(c * a * b);
            fl.grad(i, c * b);
            fl.grad(i + 2 * m, c * a);
            fl.hess(i + 2 * m, i, c);
        }
        Some(fl.finish())
    }
}
