//! Symmetric matrices: dense element blocks and the sparse global Hessian.

use serde::{Deserialize, Serialize};

use crate::error::{OpmError, Result};

/// Dense symmetric matrix, stored in full so element blocks can be indexed
/// directly. Writes always go through both triangles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseSymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl DenseSymMatrix {
    pub fn zeros(order: usize) -> Self {
        DenseSymMatrix {
            order,
            data: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.data[i * order + i] = 1.0;
        }
        m
    }

    /// Builds from a row-major square array, averaging the two triangles.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        let mut m = Self::zeros(order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(OpmError::DimensionMismatch {
                    expected: order,
                    actual: row.len(),
                });
            }
            for b in 0..=a {
                m.set(a, b, 0.5 * (rows[a][b] + rows[b][a]));
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.data[a * self.order + b]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, v: f64) {
        self.data[a * self.order + b] = v;
        self.data[b * self.order + a] = v;
    }

    #[inline]
    pub fn add(&mut self, a: usize, b: usize, v: f64) {
        self.data[a * self.order + b] += v;
        if a != b {
            self.data[b * self.order + a] += v;
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        self.data
            .chunks_exact(self.order.max(1))
            .take(self.order)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks_exact(self.order.max(1))
            .take(self.order)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.get(a, b) == self.get(b, a)))
    }
}

/// One stored entry of a [`SparseSymMatrix`], 1-based with `row >= col`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triplet {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

/// Symmetric matrix in coordinate form. Only the lower triangle is stored,
/// entries are sorted by `(row, col)` and unique. Entries produced by
/// assembly are structural: they are kept even when their value is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseSymMatrix {
    order: usize,
    entries: Vec<Triplet>,
}

impl SparseSymMatrix {
    pub fn empty(order: usize) -> Self {
        SparseSymMatrix {
            order,
            entries: Vec::new(),
        }
    }

    /// Canonicalizes 1-based `(row, col, value)` triplets: upper-triangle
    /// entries are mirrored into the lower triangle and duplicates are summed
    /// in input order.
    pub fn from_triplets(
        order: usize,
        triplets: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut raw: Vec<(usize, usize, f64)> = Vec::new();
        for (r, c, v) in triplets {
            if r == 0 || c == 0 || r > order || c > order {
                return Err(OpmError::InvalidParameter(format!(
                    "triplet ({r}, {c}) outside 1..={order}"
                )));
            }
            raw.push(if r >= c { (r, c, v) } else { (c, r, v) });
        }
        Ok(Self::from_lower_unchecked(order, raw))
    }

    pub(crate) fn from_lower_unchecked(order: usize, mut raw: Vec<(usize, usize, f64)>) -> Self {
        // stable: duplicates are summed in insertion order
        raw.sort_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<Triplet> = Vec::with_capacity(raw.len());
        for (row, col, value) in raw {
            match entries.last_mut() {
                Some(last) if last.row == row && last.col == col => last.value += value,
                _ => entries.push(Triplet { row, col, value }),
            }
        }
        SparseSymMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Triplet] {
        &self.entries
    }

    /// Value at 1-based `(row, col)`, either triangle.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        let key = if row >= col { (row, col) } else { (col, row) };
        self.entries
            .binary_search_by_key(&key, |t| (t.row, t.col))
            .map(|k| self.entries[k].value)
            .unwrap_or(0.0)
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.order];
        self.matvec_into(x, &mut y);
        y
    }

    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for t in &self.entries {
            let (r, c) = (t.row - 1, t.col - 1);
            y[r] += t.value * x[c];
            if r != c {
                y[c] += t.value * x[r];
            }
        }
    }

    /// Materialized row-major dense form.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.order]; self.order];
        for t in &self.entries {
            d[t.row - 1][t.col - 1] = t.value;
            d[t.col - 1][t.row - 1] = t.value;
        }
        d
    }

    /// True when every stored entry lies within `bandwidth` of the diagonal.
    pub fn is_banded(&self, bandwidth: usize) -> bool {
        self.entries.iter().all(|t| t.row - t.col <= bandwidth)
    }
}
