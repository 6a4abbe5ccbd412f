use super::{dot, norm2};
use crate::error::{OpmError, Result};
use crate::sparse::DenseSymMatrix;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct UpdateOutcome {
    /// Per element: whether its update was applied.
    pub applied: Vec<bool>,
    /// Largest `||B+ s - y|| / ||y||` over the applied updates.
    pub max_secant_residual: f64,
}

/// BFGS update of each element approximation `b[i]` with its pair
/// `(s[i], y[i])`. An update is skipped (and `b[i]` left untouched) unless
/// `s.y > curvature_floor ||s|| ||y||` and `s.Bs > 0`.
pub fn partitioned_update(
    b: &mut [DenseSymMatrix],
    s: &[Vec<f64>],
    y: &[Vec<f64>],
    curvature_floor: f64,
) -> Result<UpdateOutcome> {
    if s.len() != b.len() || y.len() != b.len() {
        return Err(OpmError::DimensionMismatch {
            expected: b.len(),
            actual: if s.len() != b.len() { s.len() } else { y.len() },
        });
    }
    for ((bi, si), yi) in b.iter().zip(s).zip(y) {
        for v in [si, yi] {
            if v.len() != bi.order() {
                return Err(OpmError::DimensionMismatch {
                    expected: bi.order(),
                    actual: v.len(),
                });
            }
        }
    }
    let mut out = UpdateOutcome {
        applied: Vec::with_capacity(b.len()),
        max_secant_residual: 0.0,
    };
    for ((bi, si), yi) in b.iter_mut().zip(s).zip(y) {
        let sy = dot(si, yi);
        let (ns, ny) = (norm2(si), norm2(yi));
        let bs = bi.matvec(si);
        let sbs = dot(si, &bs);
        if !(sy > curvature_floor * ns * ny && sy > 0.0 && sbs > 0.0) {
            out.applied.push(false);
            continue;
        }
        let m = bi.order();
        for p in 0..m {
            for q in 0..=p {
                let v = bi.get(p, q) - bs[p] * bs[q] / sbs + yi[p] * yi[q] / sy;
                bi.set(p, q, v);
            }
        }
        let r: Vec<f64> = bi.matvec(si).iter().zip(yi).map(|(a, b)| a - b).collect();
        out.max_secant_residual = out.max_secant_residual.max(norm2(&r) / ny);
        out.applied.push(true);
    }
    Ok(out)
}
