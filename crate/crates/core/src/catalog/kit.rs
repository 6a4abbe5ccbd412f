//! Building blocks for hand-coded element derivatives.

use crate::cps::{CpsStructure, ElementEvalResult, EvalRequest, EvalResult, Param};
use crate::sparse::{DenseSymMatrix, SparseSymMatrix};

/// Accumulates an element value with derivatives on local (0-based) domain
/// positions. Derivative pieces are dropped unless requested.
pub(crate) struct Local {
    f: f64,
    g: Option<Vec<f64>>,
    h: Option<DenseSymMatrix>,
}

impl Local {
    pub fn new(dim: usize, req: EvalRequest) -> Self {
        Local {
            f: 0.0,
            g: req.gradient.then(|| vec![0.0; dim]),
            h: req.hessian.then(|| DenseSymMatrix::zeros(dim)),
        }
    }

    pub fn value(&mut self, v: f64) {
        self.f += v;
    }

    pub fn grad(&mut self, a: usize, v: f64) {
        if let Some(g) = self.g.as_mut() {
            g[a] += v;
        }
    }

    /// Adds `v` at `(a, b)` and, off the diagonal, at `(b, a)`.
    pub fn hess(&mut self, a: usize, b: usize, v: f64) {
        if let Some(h) = self.h.as_mut() {
            h.add(a, b, v);
        }
    }

    /// Adds `phi(r)` given `[phi, phi', phi'']` at `r`, the local gradient of
    /// `r` and the lower-triangle entries of its local Hessian.
    pub fn compose(&mut self, phi: [f64; 3], dr: &[(usize, f64)], d2r: &[(usize, usize, f64)]) {
        self.f += phi[0];
        if let Some(g) = self.g.as_mut() {
            for &(a, da) in dr {
                g[a] += phi[1] * da;
            }
        }
        if let Some(h) = self.h.as_mut() {
            for (p, &(a, da)) in dr.iter().enumerate() {
                for &(b, db) in &dr[..=p] {
                    h.add(a, b, phi[2] * da * db);
                }
            }
            for &(a, b, v) in d2r {
                h.add(a, b, phi[1] * v);
            }
        }
    }

    /// `w * r^2`.
    pub fn square(&mut self, w: f64, r: f64, dr: &[(usize, f64)], d2r: &[(usize, usize, f64)]) {
        self.compose([w * r * r, 2.0 * w * r, 2.0 * w], dr, d2r);
    }

    /// `w * r^p` for an integer power `p >= 2`.
    pub fn power(
        &mut self,
        w: f64,
        r: f64,
        p: i32,
        dr: &[(usize, f64)],
        d2r: &[(usize, usize, f64)],
    ) {
        let pf = p as f64;
        self.compose(
            [
                w * r.powi(p),
                w * pf * r.powi(p - 1),
                w * pf * (pf - 1.0) * r.powi(p - 2),
            ],
            dr,
            d2r,
        );
    }

    pub fn finish(self) -> ElementEvalResult {
        ElementEvalResult {
            f: self.f,
            g: self.g,
            h: self.h,
        }
    }
}

/// Dense accumulator for the independent whole-function oracles. Indices
/// are 0-based global positions.
pub(crate) struct Full {
    f: f64,
    g: Vec<f64>,
    h: Vec<Vec<f64>>,
    req: EvalRequest,
}

impl Full {
    pub fn new(n: usize, req: EvalRequest) -> Self {
        Full {
            f: 0.0,
            g: if req.gradient { vec![0.0; n] } else { Vec::new() },
            h: if req.hessian {
                vec![vec![0.0; n]; n]
            } else {
                Vec::new()
            },
            req,
        }
    }

    pub fn value(&mut self, v: f64) {
        self.f += v;
    }

    pub fn grad(&mut self, j: usize, v: f64) {
        if self.req.gradient {
            self.g[j] += v;
        }
    }

    /// Adds to both `(j, k)` and `(k, j)` when they differ.
    pub fn hess(&mut self, j: usize, k: usize, v: f64) {
        if self.req.hessian {
            self.h[j][k] += v;
            if j != k {
                self.h[k][j] += v;
            }
        }
    }

    pub fn finish(self) -> EvalResult {
        let n = self.h.len();
        let h = self.req.hessian.then(|| {
            let mut trips = Vec::new();
            for (r, row) in self.h.iter().enumerate() {
                for (c, &v) in row.iter().enumerate().take(r + 1) {
                    if v != 0.0 {
                        trips.push((r + 1, c + 1, v));
                    }
                }
            }
            SparseSymMatrix::from_triplets(n, trips).expect("indices in range")
        });
        EvalResult {
            f: self.f,
            g: self.req.gradient.then_some(self.g),
            h,
        }
    }
}

/// Structure whose only parameter is the dimension.
pub(crate) fn sized_structure(name: &str, n: usize, eldom: Vec<Vec<usize>>) -> CpsStructure {
    CpsStructure {
        name: name.to_string(),
        n,
        eldom,
        param: vec![Param::scalar("n", n as f64)],
    }
}

pub(crate) fn plain_structure(name: &str, n: usize, eldom: Vec<Vec<usize>>) -> CpsStructure {
    CpsStructure {
        name: name.to_string(),
        n,
        eldom,
        param: Vec::new(),
    }
}

/// `[i, i+1]` for `i = 1..n-1`.
pub(crate) fn chain_pairs(n: usize) -> Vec<Vec<usize>> {
    (1..n).map(|i| vec![i, i + 1]).collect()
}

/// Alternating start values `a, b, a, b, ...`.
pub(crate) fn alternating(n: usize, a: f64, b: f64) -> Vec<f64> {
    (0..n).map(|i| if i % 2 == 0 { a } else { b }).collect()
}
