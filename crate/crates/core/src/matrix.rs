//! Exact sparse window matrices and floating-point norm estimates.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operator::OperatorSpec;
use crate::partition::{PartitionIndex, Window};
use crate::scalar::Scalar;

/// Matrix of an operator restricted to `rows × cols`. Only nonzero entries
/// are stored, keyed by `(row position, column position)` in window order.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixWindow {
    rows: Window,
    cols: Window,
    entries: BTreeMap<(usize, usize), Scalar>,
    exact: bool,
}

/// A nonzero matrix entry labelled by its partitions.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub row: PartitionIndex,
    pub col: PartitionIndex,
    pub value: Scalar,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({
            "row": self.row.entries(),
            "col": self.col.entries(),
            "re": self.value.re_string(),
            "im": self.value.im_string(),
        })
    }
}

impl MatrixWindow {
    pub fn zeros(rows: Window, cols: Window) -> Self {
        MatrixWindow {
            rows,
            cols,
            entries: BTreeMap::new(),
            exact: true,
        }
    }

    /// Fills every position from `f(q, p)`, one column per task.
    pub fn build<F>(rows: &Window, cols: &Window, f: F) -> Result<Self>
    where
        F: Fn(&PartitionIndex, &PartitionIndex) -> Result<Scalar> + Sync,
    {
        let columns: Vec<Vec<Scalar>> = cols
            .members()
            .par_iter()
            .map(|p| rows.members().iter().map(|q| f(q, p)).collect())
            .collect::<Result<_>>()?;
        Ok(Self::from_columns(rows, cols, columns))
    }

    fn from_columns(rows: &Window, cols: &Window, columns: Vec<Vec<Scalar>>) -> Self {
        let mut entries = BTreeMap::new();
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    entries.insert((i, j), v);
                }
            }
        }
        MatrixWindow {
            rows: rows.clone(),
            cols: cols.clone(),
            entries,
            exact: true,
        }
    }

    pub fn rows(&self) -> &Window {
        &self.rows
    }

    pub fn cols(&self) -> &Window {
        &self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Entry at the given partitions, zero when either lies outside the window.
    pub fn at(&self, q: &PartitionIndex, p: &PartitionIndex) -> Scalar {
        match (self.rows.index_of(q), self.cols.index_of(p)) {
            (Some(i), Some(j)) => self.get(i, j),
            _ => Scalar::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn witnesses(&self) -> Vec<Witness> {
        self.entries
            .iter()
            .map(|(&(i, j), v)| Witness {
                row: self.rows.members()[i].clone(),
                col: self.cols.members()[j].clone(),
                value: v.clone(),
            })
            .collect()
    }

    pub fn first_witness(&self) -> Option<Witness> {
        self.entries.iter().next().map(|(&(i, j), v)| Witness {
            row: self.rows.members()[i].clone(),
            col: self.cols.members()[j].clone(),
            value: v.clone(),
        })
    }

    /// `self − other` on identical windows.
    pub fn sub(&self, other: &MatrixWindow) -> Result<MatrixWindow> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix windows differ".into()));
        }
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            let slot = entries.entry(*k).or_insert_with(Scalar::zero);
            *slot -= v;
            if slot.is_zero() {
                entries.remove(k);
            }
        }
        Ok(MatrixWindow {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries,
            exact: self.exact && other.exact,
        })
    }

    /// Sparse floating-point copy, `(row, col, value)` triplets.
    pub fn to_f64(&self) -> SparseF64 {
        SparseF64 {
            nrows: self.rows.len(),
            ncols: self.cols.len(),
            triplets: self
                .entries
                .iter()
                .map(|(&(i, j), v)| (i, j, v.to_complex64()))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<Complex64> {
        let mut m = nalgebra::DMatrix::zeros(self.rows.len(), self.cols.len());
        for (&(i, j), v) in &self.entries {
            m[(i, j)] = v.to_complex64();
        }
        m
    }

    /// `row;col;re;im` lines for every nonzero entry, partitions written as
    /// JSON arrays and values as rational strings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row;col;re;im\n");
        for w in self.witnesses() {
            let _ = writeln!(
                out,
                "{};{};{};{}",
                index_json(&w.row),
                index_json(&w.col),
                w.value.re_string(),
                w.value.im_string()
            );
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": window_json(&self.rows),
            "cols": window_json(&self.cols),
            "exact": self.exact,
            "entries": self.witnesses().iter().map(Witness::to_json).collect::<Vec<_>>(),
        })
    }

    /// Lower bound on the operator norm; see [`SparseF64::norm_estimate`].
    pub fn norm_estimate(&self, iterations: usize, seed: u64) -> f64 {
        self.to_f64().norm_estimate(iterations, seed, None).0
    }
}

fn index_json(p: &PartitionIndex) -> String {
    serde_json::to_string(p.entries()).expect("integer arrays serialize")
}

pub fn window_json(w: &Window) -> Value {
    json!({
        "d": w.d(),
        "maxTop": w.max_top(),
        "minBottom": w.min_bottom(),
        "part": w.part(),
        "size": w.len(),
    })
}

/// Exact window matrix of `op`. Both windows must lie inside the operator's
/// index sets.
pub fn assemble(op: &OperatorSpec, rows: &Window, cols: &Window) -> Result<MatrixWindow> {
    if rows.d() != op.d() || cols.d() != op.d() {
        return Err(Error::Dimension(format!(
            "windows in dimension {}/{} for an operator in dimension {}",
            rows.d(),
            cols.d(),
            op.d()
        )));
    }
    if !rows.within(op.row_part()) || !cols.within(op.col_part()) {
        return Err(Error::Domain(format!(
            "window outside the index sets of {} (rows {:?}, columns {:?})",
            op.kind_name(),
            op.row_part(),
            op.col_part()
        )));
    }
    let columns: Vec<Vec<Scalar>> = cols
        .members()
        .par_iter()
        .map(|p| op.column_entries(rows.members(), p))
        .collect::<Result<_>>()?;
    Ok(MatrixWindow::from_columns(rows, cols, columns))
}

/// Floating-point settings for norm estimates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormOptions {
    pub iterations: usize,
    pub seed: u64,
    pub grid: usize,
    pub tol: f64,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            iterations: 500,
            seed: 42,
            grid: 64,
            tol: 1e-9,
        }
    }
}

/// Floating-point sparse matrix used for norm estimation.
#[derive(Clone, Debug, Default)]
pub struct SparseF64 {
    pub nrows: usize,
    pub ncols: usize,
    pub triplets: Vec<(usize, usize, Complex64)>,
}

impl SparseF64 {
    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::zero(); self.nrows];
        for &(i, j, v) in &self.triplets {
            y[i] += v * x[j];
        }
        y
    }

    pub fn adjoint_matvec(&self, y: &[Complex64]) -> Vec<Complex64> {
        let mut x = vec![Complex64::zero(); self.ncols];
        for &(i, j, v) in &self.triplets {
            x[j] += v.conj() * y[i];
        }
        x
    }

    /// Power iteration on `M*M`. Returns the largest `‖Mx‖/‖x‖` seen and the
    /// unit vector attaining it. The start vector is `start` when given and
    /// nonzero, otherwise seeded random. Each reported value is attained by
    /// an explicit vector, so the result is a lower bound on the norm; it is
    /// a running maximum over a fixed sequence, so it cannot decrease when
    /// `iterations` grows.
    pub fn norm_estimate(
        &self,
        iterations: usize,
        seed: u64,
        start: Option<&[Complex64]>,
    ) -> (f64, Vec<Complex64>) {
        if self.ncols == 0 || self.triplets.is_empty() {
            return (0.0, vec![Complex64::zero(); self.ncols]);
        }
        let mut x: Vec<Complex64> = match start {
            Some(s) if s.len() == self.ncols && l2(s) > 0.0 => s.to_vec(),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..self.ncols)
                    .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                    .collect()
            }
        };
        normalize(&mut x);
        let mut best = 0.0;
        let mut best_x = x.clone();
        for _ in 0..iterations.max(1) {
            let y = self.matvec(&x);
            let n = l2(&y);
            if n > best {
                best = n;
                best_x.clone_from(&x);
            }
            let mut next = self.adjoint_matvec(&y);
            if l2(&next) == 0.0 {
                break;
            }
            normalize(&mut next);
            x = next;
        }
        (best, best_x)
    }
}

/// Copies `v` (indexed by `from`) into the coordinates of `to`, dropping
/// members `to` lacks.
pub fn embed_vector(from: &Window, to: &Window, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); to.len()];
    for (p, x) in from.members().iter().zip(v) {
        if let Some(k) = to.index_of(p) {
            out[k] = *x;
        }
    }
    out
}

pub(crate) fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = l2(v);
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
}
