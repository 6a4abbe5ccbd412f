//! A wrapper that injects a known defect into a problem, so that each check
//! can be shown to fail when it should.

use crate::cps::{Bounds, CpsStructure, ElementEvalResult, EvalRequest, EvalResult, ParamValue};
use crate::problem::{Problem, ProblemMeta};

/// Element indices are 1-based; positions inside an element are 0-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Corruption {
    /// Negates one component of one element gradient.
    GradientSign { element: usize, component: usize },
    /// Multiplies one element Hessian entry (and its mirror) by `factor`.
    HessianScale {
        element: usize,
        row: usize,
        col: usize,
        factor: f64,
    },
    /// Adds `offset` to one element value.
    ValueOffset { element: usize, offset: f64 },
    /// Adds `weight * x(a) * x(b)` to the independent evaluator only, a
    /// coupling no element declares. `a` and `b` are 1-based.
    HiddenCoupling { a: usize, b: usize, weight: f64 },
}

pub struct Corrupted<'a> {
    inner: &'a dyn Problem,
    corruption: Corruption,
}

impl<'a> Corrupted<'a> {
    pub fn new(inner: &'a dyn Problem, corruption: Corruption) -> Self {
        Corrupted { inner, corruption }
    }
}

impl Problem for Corrupted<'_> {
    fn meta(&self) -> &ProblemMeta {
        self.inner.meta()
    }

    fn start(&self, n: usize) -> Vec<f64> {
        self.inner.start(n)
    }

    fn bounds(&self, n: usize) -> Bounds {
        self.inner.bounds(n)
    }

    fn structure(&self, n: usize) -> CpsStructure {
        self.inner.structure(n)
    }

    fn element(&self, index: usize, x: &[f64], params: &[ParamValue], req: EvalRequest) -> ElementEvalResult {
        let mut e = self.inner.element(index, x, params, req);
        match self.corruption {
            Corruption::GradientSign { element, component } if element == index => {
                if let Some(g) = e.g.as_mut() {
                    g[component] = -g[component];
                }
            }
            Corruption::HessianScale {
                element,
                row,
                col,
                factor,
            } if element == index => {
                if let Some(h) = e.h.as_mut() {
                    let v = h.get(row, col);
                    h.set(row, col, v * factor);
                }
            }
            Corruption::ValueOffset { element, offset } if element == index => e.f += offset,
            _ => {}
        }
        e
    }

    fn full_objective(&self, x: &[f64], req: EvalRequest) -> Option<EvalResult> {
        let mut r = self.inner.full_objective(x, req)?;
        if let Corruption::HiddenCoupling { a, b, weight } = self.corruption {
            let (i, j) = (a - 1, b - 1);
            r.f += weight * x[i] * x[j];
            if let Some(g) = r.g.as_mut() {
                g[i] += weight * x[j];
                g[j] += weight * x[i];
            }
            if let Some(h) = r.h.take() {
                let mut trips: Vec<(usize, usize, f64)> =
                    h.entries().iter().map(|t| (t.row, t.col, t.value)).collect();
                trips.push((a.max(b), a.min(b), if a == b { 2.0 * weight } else { weight }));
                r.h = Some(
                    crate::sparse::SparseSymMatrix::from_triplets(x.len(), trips)
                        .expect("indices in range"),
                );
            }
        }
        Some(r)
    }
}
