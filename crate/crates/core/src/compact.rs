//! Compactness diagnostics on the Hardy part.
//!
//! The pure isometries used throughout are `Y_1, …, Y_{d−1}` and `T_p`. In
//! this coordinate model `Y_a^j e_p = e_{p + j f_a}` and `T_p^j e_p =
//! e_{p + (j, …, j)}`, so every block of the maps below reads entries of
//! `T` at shifted indices and is computed exactly.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hardy::bh_residuals;
use crate::matrix::{assemble, MatrixWindow, NormOptions, SparseF64, Witness};
use crate::operator::{EntryOracle, OperatorSpec};
use crate::partition::{Part, PartitionIndex, Window};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::symbol::{conjugate, elementary, Symbol};

/// `η_j(T)` on a window: the `d × d` grid of blocks `Z_a^{*j} T Z_b^j` with
/// `Z_a = Y_a` for `a < d` and `Z_d = T_p`.
#[derive(Clone, Debug)]
pub struct EtaReport {
    pub j: usize,
    pub block_norm: f64,
    /// `blocks[a][b]` for `a, b` in `0..d`.
    pub blocks: Vec<Vec<MatrixWindow>>,
    pub exact_blocks: bool,
}

impl EtaReport {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(MatrixWindow::is_zero)
    }

    /// The stacked `d·|W| × d·|W|` matrix in floating point.
    pub fn block_matrix(&self) -> SparseF64 {
        stack(&self.blocks)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "j": self.j,
            "blockNorm": self.block_norm,
            "verdicts": {
                "exactBlocks": self.exact_blocks,
                "zero": self.is_zero(),
            },
        })
    }
}

fn stack(blocks: &[Vec<MatrixWindow>]) -> SparseF64 {
    let n = blocks.first().and_then(|r| r.first()).map_or(0, |m| m.shape().0);
    let k = blocks.len();
    let mut out = SparseF64 {
        nrows: k * n,
        ncols: k * n,
        triplets: Vec::new(),
    };
    for (a, row) in blocks.iter().enumerate() {
        for (b, m) in row.iter().enumerate() {
            for (i, j, v) in m.entries() {
                out.triplets.push((a * n + i, b * n + j, v.to_complex64()));
            }
        }
    }
    out
}

/// Ones in the first `a` slots, or everywhere for `a = d`.
fn shift_by(p: &PartitionIndex, a: usize, j: i64) -> PartitionIndex {
    if a == p.d() {
        p.shift_diag(j)
    } else {
        p.add_leading_ones(a, j)
    }
}

fn require_analytic(window: &Window, d: usize) -> Result<()> {
    if window.d() != d {
        return Err(Error::Dimension("window dimension differs from the operator".into()));
    }
    if !window.within(Part::Analytic) {
        return Err(Error::Domain("window must be analytic".into()));
    }
    Ok(())
}

pub fn eta<T: EntryOracle + ?Sized>(t: &T, j: usize, window: &Window, opts: NormOptions) -> Result<EtaReport> {
    if j == 0 {
        return Err(Error::Domain("η_j needs j ≥ 1".into()));
    }
    let d = t.d();
    require_analytic(window, d)?;
    let shift = j as i64;
    let mut blocks = Vec::with_capacity(d);
    for a in 1..=d {
        let mut row = Vec::with_capacity(d);
        for b in 1..=d {
            row.push(MatrixWindow::build(window, window, |q, p| {
                t.entry(&shift_by(q, a, shift), &shift_by(p, b, shift))
            })?);
        }
        blocks.push(row);
    }
    let block_norm = stack(&blocks).norm_estimate(opts.iterations, opts.seed, None).0;
    Ok(EtaReport {
        j,
        block_norm,
        exact_blocks: blocks.iter().flatten().all(MatrixWindow::is_exact),
        blocks,
    })
}

/// `{(k + (d−2)l, k + (d−3)l, …, k + l, k, 0) : 1 ≤ k ≤ l}`, the indices
/// spanning the joint kernel of `Y_1^{*l}, …, Y_{d−1}^{*l}` among those
/// ending in `0`.
pub fn el_projection(d: usize, l: usize) -> Result<Vec<PartitionIndex>> {
    if l == 0 {
        return Err(Error::Domain("l must be at least 1".into()));
    }
    let l = l as i64;
    (1..=l)
        .map(|k| {
            let mut e: Vec<i64> = (0..d as i64 - 1).rev().map(|t| k + t * l).collect();
            e.push(0);
            PartitionIndex::new(e)
        })
        .collect()
}

/// `F_l = Σ_{r<l} T_p^r E_l T_p^{*r}` as a diagonal finite-rank operator.
pub fn f_projection(d: usize, l: usize) -> Result<OperatorSpec> {
    let mut members = Vec::new();
    for p in el_projection(d, l)? {
        for r in 0..l as i64 {
            members.push(p.shift_diag(r));
        }
    }
    Ok(OperatorSpec::diagonal_identity(d, &members))
}

/// Window matrix of `T − T̃_l` with `T̃_l = T F_l + F_l T − F_l T F_l`.
pub fn finite_rank_truncation(t: &OperatorSpec, l: usize, window: &Window) -> Result<MatrixWindow> {
    require_analytic(window, t.d())?;
    let f = f_projection(t.d(), l)?;
    let neg = |o: OperatorSpec| OperatorSpec::Scaled(Scalar::from_integer(-1), Box::new(o));
    let op = OperatorSpec::Sum(vec![
        t.clone(),
        neg(OperatorSpec::product(vec![t.clone(), f.clone()])),
        neg(OperatorSpec::product(vec![f.clone(), t.clone()])),
        OperatorSpec::product(vec![f.clone(), t.clone(), f]),
    ]);
    assemble(&op, window, window)
}

/// Matrices of `T_p^{*n} [T, T_{s_i}] T_p^n` for `n = 0..=n_max`, with the
/// matching Brown–Halmos residual of `T`.
#[derive(Clone, Debug)]
pub struct DecayReport {
    pub i: usize,
    pub norms: Vec<f64>,
    pub matrices: Vec<MatrixWindow>,
    /// `T_{s_i}* T T_p − T T_{s_{d−i}}` on the window.
    pub residual: MatrixWindow,
}

impl DecayReport {
    /// First `n` at which the conjugated commutator is exactly zero.
    pub fn zero_from(&self) -> Option<usize> {
        self.matrices.iter().position(MatrixWindow::is_zero)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "norms": self.norms,
            "zero": self.matrices.iter().map(MatrixWindow::is_zero).collect::<Vec<_>>(),
            "residualZero": self.residual.is_zero(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n;norm;zero\n");
        for (n, (x, m)) in self.norms.iter().zip(&self.matrices).enumerate() {
            out.push_str(&format!("{n};{x};{}\n", m.is_zero()));
        }
        out
    }
}

pub fn commutator_decay<T: EntryOracle + ?Sized>(
    t: &T,
    i: usize,
    n_max: usize,
    window: &Window,
    opts: NormOptions,
) -> Result<DecayReport> {
    let d = t.d();
    if i == 0 || i >= d {
        return Err(Error::Domain(format!("commutator index {i} outside 1..={}", d - 1)));
    }
    require_analytic(window, d)?;
    let s = OperatorSpec::Toeplitz(elementary(d, i)?);
    let s_adj = OperatorSpec::Toeplitz(conjugate(&elementary(d, i)?));
    let mut matrices = Vec::with_capacity(n_max + 1);
    let mut norms = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max as i64 {
        let m = MatrixWindow::build(window, window, |q, p| {
            let (q, p) = (q.shift_diag(n), p.shift_diag(n));
            let mut acc = Scalar::zero();
            for (r, c) in s.apply_basis(&p)? {
                acc += &c * &t.entry(&q, &r)?;
            }
            for (r, c) in s_adj.apply_basis(&q)? {
                acc -= &(&c.conj() * &t.entry(&r, &p)?);
            }
            Ok(acc)
        })?;
        norms.push(m.to_f64().norm_estimate(opts.iterations, opts.seed, None).0);
        matrices.push(m);
    }
    let residual = bh_residuals(t, window)?.swap_remove(i - 1);
    Ok(DecayReport {
        i,
        norms,
        matrices,
        residual,
    })
}

/// Checks the three conditions characterizing `T = T_φ + K` as an
/// asymptotic Toeplitz operator, for an operator given in that split form:
///
/// 1. `T_p^{*n} [T, T_{s_i}] T_p^n` is exactly zero on the window for some
///    `n ≤ j_max`, for every `i`;
/// 2. `B = T_φ` passes the Brown–Halmos test and `T_p^{*n} T T_p^n − B` is
///    exactly zero on the window at `n = j_max`;
/// 3. `η_{j_max}(T − B) = η_{j_max}(K)` is exactly zero.
pub fn asymptotic_classify(
    phi: &Symbol,
    k: &OperatorSpec,
    j_max: usize,
    window: &Window,
    opts: NormOptions,
) -> Result<Report> {
    let d = phi.d();
    if k.d() != d {
        return Err(Error::Dimension("symbol and compact part differ in dimension".into()));
    }
    require_analytic(window, d)?;
    let b = OperatorSpec::Toeplitz(phi.clone());
    let t = OperatorSpec::Sum(vec![b.clone(), k.clone()]);
    let mut report = Report::new("asymptotic-toeplitz");

    let mut decay = Report::new("commutator-decay");
    for i in 1..d {
        let r = commutator_decay(&t, i, j_max, window, opts)?;
        let ok = r.zero_from().is_some();
        decay.require(ok);
        decay.norm(r.to_json());
        if !ok {
            if let Some(w) = r.matrices.last().and_then(MatrixWindow::first_witness) {
                decay.witness(&w);
            }
        }
    }
    report.child(decay);

    let mut limit = Report::new("weak-limit");
    for (idx, r) in bh_residuals(&b, window)?.iter().enumerate() {
        if let Some(w) = r.first_witness() {
            limit.fail_with(&w);
            limit.detail("residual", idx + 1);
        }
    }
    let n = j_max as i64;
    let diff = MatrixWindow::build(window, window, |q, p| {
        Ok(t.entry(&q.shift_diag(n), &p.shift_diag(n))? - b.entry(q, p)?)
    })?;
    if let Some(w) = diff.first_witness() {
        limit.fail_with(&w);
    }
    limit.detail("n", j_max);
    report.child(limit);

    let mut compact = Report::new("eta-decay");
    let mut last: Option<EtaReport> = None;
    for j in 1..=j_max {
        let e = eta(k, j, window, opts)?;
        compact.norm(e.to_json());
        last = Some(e);
    }
    match last {
        Some(e) if e.is_zero() => {}
        Some(e) => {
            let w: Option<Witness> = e.blocks.iter().flatten().find_map(MatrixWindow::first_witness);
            compact.require(false);
            if let Some(w) = w {
                compact.witness(&w);
            }
        }
        None => {
            compact.require(false);
        }
    }
    report.child(compact);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_window;

    fn p(v: &[i64]) -> PartitionIndex {
        PartitionIndex::new(v.to_vec()).unwrap()
    }

    fn one() -> Scalar {
        Scalar::from_integer(1)
    }

    fn opts() -> NormOptions {
        NormOptions {
            iterations: 200,
            ..NormOptions::default()
        }
    }

    fn rank_one() -> OperatorSpec {
        OperatorSpec::rank_one(p(&[1, 0]), p(&[1, 0]), one())
    }

    #[test]
    fn eta_examples() {
        let w = enumerate_window(2, 6, 0).unwrap();
        let e = eta(&rank_one(), 1, &w, opts()).unwrap();
        assert!(e.is_zero());
        assert_eq!(e.block_norm, 0.0);

        let id = OperatorSpec::diagonal_identity(2, enumerate_window(2, 12, 0).unwrap().members());
        for j in 1..=3 {
            assert!(eta(&id, j, &w, opts()).unwrap().block_norm >= 1.0 - 1e-9);
        }

        let t = OperatorSpec::Toeplitz(elementary(2, 1).unwrap());
        for j in 1..=3 {
            assert!(eta(&t, j, &w, opts()).unwrap().block_norm >= 0.9);
        }
    }

    #[test]
    fn el_projection_examples() {
        assert_eq!(
            el_projection(2, 3).unwrap(),
            vec![p(&[1, 0]), p(&[2, 0]), p(&[3, 0])]
        );
        assert_eq!(el_projection(3, 1).unwrap(), vec![p(&[2, 1, 0])]);
        assert_eq!(el_projection(2, 1).unwrap(), vec![p(&[1, 0])]);
        assert_eq!(el_projection(4, 2).unwrap()[0], p(&[5, 3, 1, 0]));
    }

    #[test]
    fn el_projection_in_joint_kernel() {
        for d in 2..=4 {
            for l in 1..=4 {
                for x in el_projection(d, l).unwrap() {
                    for j in 1..d {
                        let y = OperatorSpec::shift_y(d, j).unwrap().adjoint();
                        let mut v = crate::operator::basis_vector(&x);
                        for _ in 0..l {
                            v = y.apply(&v).unwrap();
                        }
                        assert!(v.is_empty(), "{x} survives Y_{j}^*{l}");
                    }
                }
            }
        }
    }

    #[test]
    fn f_projection_is_idempotent() {
        let w = enumerate_window(3, 9, 0).unwrap();
        let f = f_projection(3, 2).unwrap();
        let f2 = OperatorSpec::product(vec![f.clone(), f.clone()]);
        assert_eq!(assemble(&f, &w, &w).unwrap(), assemble(&f2, &w, &w).unwrap());
    }

    #[test]
    fn truncation_examples() {
        let w = enumerate_window(2, 6, 0).unwrap();
        assert!(finite_rank_truncation(&rank_one(), 2, &w).unwrap().is_zero());

        let id = OperatorSpec::diagonal_identity(2, w.members());
        let r = finite_rank_truncation(&id, 2, &w).unwrap();
        assert!((r.norm_estimate(50, 1) - 1.0).abs() < 1e-9);

        // (I − F_l) T (I − F_l) read entrywise
        let t = OperatorSpec::Toeplitz(elementary(2, 1).unwrap());
        let f = f_projection(2, 3).unwrap();
        let m = finite_rank_truncation(&t, 3, &w).unwrap();
        for q in w.members() {
            for pp in w.members() {
                let keep = |x: &PartitionIndex| f.entry(x, x).unwrap().is_zero();
                let want = if keep(q) && keep(pp) { t.entry(q, pp).unwrap() } else { Scalar::zero() };
                assert_eq!(m.at(q, pp), want);
            }
        }
        let big = enumerate_window(2, 14, 0).unwrap();
        for l in 1..=6 {
            let r = finite_rank_truncation(&t, l, &big).unwrap();
            assert!(r.norm_estimate(300, 42) >= 0.9);
        }
    }

    #[test]
    fn decay_examples() {
        let w = enumerate_window(2, 6, 0).unwrap();
        let y = OperatorSpec::shift_y(2, 1).unwrap();
        let r = commutator_decay(&y, 1, 4, &w, opts()).unwrap();
        for x in &r.norms {
            assert!((x - 1.0).abs() < 1e-9);
        }
        // T_p^{*n} [Y_1, T_{s_1}] T_p^n e_(1,0) = −e_(2,1)
        for m in &r.matrices {
            assert_eq!(m.at(&p(&[2, 1]), &p(&[1, 0])), Scalar::from_integer(-1));
        }

        let u = OperatorSpec::Toeplitz(Symbol::unit(2));
        let r = commutator_decay(&u, 1, 3, &w, opts()).unwrap();
        assert!(r.matrices.iter().all(MatrixWindow::is_zero));
        assert!(r.norms.iter().all(|x| *x == 0.0));
        assert!(r.residual.is_zero());

        let r = commutator_decay(&rank_one(), 1, 4, &w, opts()).unwrap();
        assert!(r.zero_from().unwrap() <= 2);
        assert!(r.matrices[2..].iter().all(MatrixWindow::is_zero));
    }

    #[test]
    fn asymptotic_examples() {
        let w = enumerate_window(2, 6, 0).unwrap();
        let s1 = elementary(2, 1).unwrap();
        let r = asymptotic_classify(&s1, &rank_one(), 3, &w, opts()).unwrap();
        assert!(r.passed(), "{:#}", r.to_json());

        let zero_k = OperatorSpec::FiniteRank { d: 2, terms: vec![] };
        assert!(asymptotic_classify(&Symbol::zero(2), &zero_k, 2, &w, opts()).unwrap().passed());

        let y = OperatorSpec::shift_y(2, 1).unwrap();
        let r = asymptotic_classify(&Symbol::zero(2), &y, 3, &w, opts()).unwrap();
        assert!(!r.find("commutator-decay").unwrap().passed());
    }
}
