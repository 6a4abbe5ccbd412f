//! Minimal-surface problem on a square grid with a fixed boundary.

use super::kit::{sized_structure, Full, Local};
use super::meta;
use crate::cps::{
    isqrt, Bounds, CpsStructure, DimRule, ElementEvalResult, EvalRequest, EvalResult, ParamValue,
};
use crate::fstar::FStar;
use crate::problem::{n_param, Problem, ProblemMeta};

/// Boundary height `1 + 8u + 4v` on the unit square.
fn height(u: f64, v: f64) -> f64 {
    1.0 + 8.0 * u + 4.0 * v
}

/// The plane through the boundary data, which is the exact minimizer.
pub(crate) fn plane(n: usize) -> Vec<f64> {
    let p = isqrt(n);
    let h = 1.0 / (p - 1) as f64;
    (0..n)
        .map(|k| height((k % p) as f64 * h, (k / p) as f64 * h))
        .collect()
}

fn on_boundary(k: usize, p: usize) -> bool {
    let (r, c) = (k / p, k % p);
    r == 0 || c == 0 || r == p - 1 || c == p - 1
}

pub struct Lminsurf(ProblemMeta);

impl Lminsurf {
    pub fn new() -> Self {
        Lminsurf(meta(
            "lminsurf",
            "Linear minimum surface problem on a p x p grid (n = p^2): the sum over grid cells \
             of h^2 sqrt(1 + ((x(d) - x(a))^2 + (x(c) - x(b))^2) / (2 h^2)), h = 1/(p-1), with \
             the 4p - 4 boundary values fixed to 1 + 8u + 4v. Interior starts at 0. The \
             solution is the plane through the boundary, of area 9. Source: Toint, as \
             distributed with CUTEst.",
            16,
            DimRule::PerfectSquare { min_side: 3 },
            FStar::Known(9.0),
            "OXR2-MY-V-0",
        ))
    }
}

impl Problem for Lminsurf {
    fn meta(&self) -> &ProblemMeta {
        &self.0
    }

    fn start(&self, n: usize) -> Vec<f64> {
        let p = isqrt(n);
        plane(n)
            .into_iter()
            .enumerate()
            .map(|(k, z)| if on_boundary(k, p) { z } else { 0.0 })
            .collect()
    }

    fn bounds(&self, n: usize) -> Bounds {
        let p = isqrt(n);
        let mut b = Bounds::free(n);
        for (k, z) in plane(n).into_iter().enumerate() {
            if on_boundary(k, p) {
                b.fix(k + 1, z);
            }
        }
        b
    }

    fn structure(&self, n: usize) -> CpsStructure {
        let p = isqrt(n);
        let mut eldom = Vec::with_capacity((p - 1) * (p - 1));
        for r in 0..p - 1 {
            for c in 0..p - 1 {
                let a = r * p + c + 1;
                eldom.push(vec![a, a + 1, a + p, a + p + 1]);
            }
        }
        sized_structure("lminsurf", n, eldom)
    }

    fn element(&self, _: usize, x: &[f64], p: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let side = isqrt(n_param(p));
        let h = 1.0 / (side - 1) as f64;
        let k = 1.0 / (2.0 * h * h);
        let (d1, d2) = (x[3] - x[0], x[2] - x[1]);
        let s = (1.0 + k * (d1 * d1 + d2 * d2)).sqrt();
        let h2 = h * h;
        let mut l = Local::new(4, req);
        l.compose(
            [h2 * s, h2 * k / (2.0 * s), -h2 * k * k / (4.0 * s * s * s)],
            &[(0, -2.0 * d1), (1, -2.0 * d2), (2, 2.0 * d2), (3, 2.0 * d1)],
            &[
                (0, 0, 2.0),
                (3, 0, -2.0),
                (3, 3, 2.0),
                (1, 1, 2.0),
                (2, 1, -2.0),
                (2, 2, 2.0),
            ],
        );
        l.finish()
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let n = x.len();
        let p = isqrt(n);
        let h = 1.0 / (p - 1) as f64;
        let mut fl = Full::new(n, req);
        for r in 0..p - 1 {
            for c in 0..p - 1 {
                let a = r * p + c;
                let (b, cc, d) = (a + 1, a + p, a + p + 1);
                let u = (x[d] - x[a]) / h;
                let v = (x[cc] - x[b]) / h;
                let q = 1.0 + 0.5 * (u * u + v * v);
                let s = q.sqrt();
                fl.value(h * h * s);
                // df/du = h^2 u / (2s), du/dx(d) = 1/h
                let gu = h * u / (2.0 * s);
                let gv = h * v / (2.0 * s);
                fl.grad(d, gu);
                fl.grad(a, -gu);
                fl.grad(cc, gv);
                fl.grad(b, -gv);
                let huu = 1.0 / (2.0 * s) - u * u / (4.0 * s * q);
                let hvv = 1.0 / (2.0 * s) - v * v / (4.0 * s * q);
                let huv = -u * v / (4.0 * s * q);
                for (i, si) in [(a, -1.0), (d, 1.0)] {
                    for (j, sj) in [(a, -1.0), (d, 1.0)] {
                        if j <= i {
                            fl.hess(i, j, si * sj * huu);
                        }
                    }
                    for (j, sj) in [(b, -1.0), (cc, 1.0)] {
                        fl.hess(i.max(j), i.min(j), si * sj * huv);
                    }
                }
                for (i, si) in [(b, -1.0), (cc, 1.0)] {
                    for (j, sj) in [(b, -1.0), (cc, 1.0)] {
                        if j <= i {
                            fl.hess(i, j, si * sj * hvv);
                        }
                    }
                }
            }
        }
        Some(fl.finish())
    }
}
