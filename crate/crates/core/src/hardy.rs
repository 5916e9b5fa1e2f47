//! Identities of Toeplitz and Hankel operators on the Hardy part, checked
//! exactly on finite windows.

use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::matrix::{assemble, embed_vector, MatrixWindow, NormOptions};
use crate::operator::{EntryOracle, OperatorSpec};
use crate::partition::{enumerate_window, OrbitRep, Part, PartitionIndex, Window};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::symbol::{conjugate, elementary, multiply, sup_norm_sampled, Symbol};

fn coordinate_toeplitz(d: usize) -> Result<Vec<OperatorSpec>> {
    (1..=d)
        .map(|i| Ok(OperatorSpec::Toeplitz(elementary(d, i)?)))
        .collect()
}

fn require_analytic(window: &Window, d: usize) -> Result<()> {
    if window.d() != d {
        return Err(Error::Dimension(format!(
            "window in dimension {} for an operator in dimension {d}",
            window.d()
        )));
    }
    if !window.within(Part::Analytic) {
        return Err(Error::Domain("window must be analytic (minBottom = 0)".into()));
    }
    Ok(())
}

/// The `d` residuals `T_{s_i}* T T_p − T T_{s_{d−i}}` (`i = 1..d−1`) and
/// `T_p* T T_p − T`, on `window × window`.
///
/// Each entry is expanded through the coordinate operators, so only exact
/// entries of `T` at shifted indices are read:
/// `⟨T_{s_i}* T T_p e_p, e_q⟩ = Σ_r conj((T_{s_i} e_q)_r) T(r, p + 1)`.
pub fn bh_residuals<T: EntryOracle + ?Sized>(t: &T, window: &Window) -> Result<Vec<MatrixWindow>> {
    let d = t.d();
    require_analytic(window, d)?;
    let s = coordinate_toeplitz(d)?;
    let mut out = Vec::with_capacity(d);
    for i in 1..d {
        let (si, sdi) = (&s[i - 1], &s[d - i - 1]);
        out.push(MatrixWindow::build(window, window, |q, p| {
            let p1 = p.shift_diag(1);
            let mut acc = Scalar::zero();
            for (r, c) in si.apply_basis(q)? {
                acc += &c.conj() * &t.entry(&r, &p1)?;
            }
            for (r, c) in sdi.apply_basis(p)? {
                acc -= &(&c * &t.entry(q, &r)?);
            }
            Ok(acc)
        })?);
    }
    out.push(MatrixWindow::build(window, window, |q, p| {
        Ok(t.entry(&q.shift_diag(1), &p.shift_diag(1))? - t.entry(q, p)?)
    })?);
    Ok(out)
}

/// All orbit representatives with entries in `[−bound, bound]`.
pub fn reps_within(d: usize, bound: i64) -> Vec<OrbitRep> {
    fn go(d: usize, hi: i64, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<OrbitRep>) {
        if cur.len() == d {
            out.push(OrbitRep::of(cur));
            return;
        }
        for x in lo..=hi {
            cur.push(x);
            go(d, x, lo, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, bound, -bound, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Reconstructs the symbol of an operator known to be Toeplitz with symbol
/// support of height at most `bound`.
///
/// The operator first has to pass the Brown–Halmos residual test on an
/// analytic window of top `2·bound + d + 2`. The coefficients then solve
/// the exact linear system given by probes `q = (r+d, …, r+1) + N`,
/// `p = q − m↑` (with `m↑` the increasing rearrangement of `m` and `N` a
/// diagonal-free spread that isolates the identity permutation), followed by
/// a full comparison on the check window.
pub fn recover_symbol<T: EntryOracle + ?Sized>(t: &T, bound: i64) -> Result<Symbol> {
    let d = t.d();
    if bound < 0 {
        return Err(Error::Domain(format!("degree bound {bound} < 0")));
    }
    let check = enumerate_window(d, 2 * bound + d as i64 + 2, 0)?;
    for (k, r) in bh_residuals(t, &check)?.iter().enumerate() {
        if let Some(w) = r.first_witness() {
            return Err(Error::NotToeplitz(format!(
                "Brown–Halmos residual {} is {} at ({}, {})",
                k + 1,
                w.value,
                w.row,
                w.col
            )));
        }
    }

    let unknowns = reps_within(d, bound);
    let col_of = |m: &[i64]| -> Option<usize> {
        let rep = OrbitRep::of(m);
        if rep.height() > bound {
            return None;
        }
        unknowns.binary_search(&rep).ok()
    };
    let spread = 2 * bound + d as i64 + 1;
    let r0 = bound + 1;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for m in &unknowns {
        for n in [0, spread] {
            let q: Vec<i64> = (0..d)
                .map(|k| r0 + (d - k) as i64 + (d - 1 - k) as i64 * n)
                .collect();
            let p: Vec<i64> = (0..d).map(|k| q[k] - m.entries()[d - 1 - k]).collect();
            let (qi, pi) = (PartitionIndex::new(q.clone())?, PartitionIndex::new(p.clone())?);
            let mut row = vec![Scalar::zero(); unknowns.len() + 1];
            for sp in crate::partition::signed_permutations(d) {
                let diff: Vec<i64> = (0..d).map(|k| q[sp.perm[k]] - p[k]).collect();
                if let Some(c) = col_of(&diff) {
                    row[c] += Scalar::from_integer(sp.sign as i64);
                }
            }
            row[unknowns.len()] = t.entry(&qi, &pi)?;
            rows.push(row);
        }
    }
    let x = solve_exact(rows, unknowns.len())?;
    let phi = Symbol::from_terms(d, unknowns.into_iter().zip(x))?;

    let recovered = OperatorSpec::Toeplitz(phi.clone());
    for q in check.members() {
        for p in check.members() {
            let (a, b) = (t.entry(q, p)?, recovered.entry(q, p)?);
            if a != b {
                return Err(Error::NotToeplitz(format!(
                    "entry ({q}, {p}) is {a} but the height-{bound} fit gives {b}"
                )));
            }
        }
    }
    Ok(phi)
}

/// Exact Gaussian elimination on an augmented system `[A | b]` with `n`
/// unknowns; the solution must exist and be unique.
fn solve_exact(mut rows: Vec<Vec<Scalar>>, n: usize) -> Result<Vec<Scalar>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let Some(k) = (pivot_row..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, k);
        let inv = rows[pivot_row][col].inv().expect("pivot is nonzero");
        for v in rows[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        let pr = rows[pivot_row].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pr) {
                    *v -= &(&f * pv);
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[n].is_zero()) {
        return Err(Error::NotToeplitz("probe equations are inconsistent".into()));
    }
    if pivots.len() < n {
        return Err(Error::Underdetermined(format!(
            "rank {} of {n} unknowns",
            pivots.len()
        )));
    }
    Ok((0..n).map(|k| rows[k][n].clone()).collect())
}

/// `T_φ T_ψ − T_{φψ} + H_{φ̄}* H_ψ` on `window × window`.
pub fn product_defect(phi: &Symbol, psi: &Symbol, window: &Window) -> Result<MatrixWindow> {
    require_analytic(window, phi.d())?;
    let op = product_defect_operator(phi, psi)?;
    assemble(&op, window, window)
}

fn product_defect_operator(phi: &Symbol, psi: &Symbol) -> Result<OperatorSpec> {
    Ok(OperatorSpec::Sum(vec![
        OperatorSpec::product(vec![
            OperatorSpec::Toeplitz(phi.clone()),
            OperatorSpec::Toeplitz(psi.clone()),
        ]),
        OperatorSpec::Scaled(
            Scalar::from_integer(-1),
            Box::new(OperatorSpec::Toeplitz(multiply(phi, psi)?)),
        ),
        OperatorSpec::product(vec![
            OperatorSpec::Hankel(conjugate(phi)).adjoint(),
            OperatorSpec::Hankel(psi.clone()),
        ]),
    ]))
}

/// `[A, B] = AB − BA`.
pub fn commutator(a: OperatorSpec, b: OperatorSpec) -> OperatorSpec {
    OperatorSpec::difference(
        OperatorSpec::product(vec![a.clone(), b.clone()]),
        OperatorSpec::product(vec![b, a]),
    )
}

/// Compares analyticity of `φ` with the commutation of `T_φ` with `T_p` and
/// with each `T_{s_i}`. The report passes when "every commutator vanishes"
/// agrees with `is_analytic(φ)`.
pub fn classify_analytic(phi: &Symbol, window: &Window) -> Result<Report> {
    let d = phi.d();
    require_analytic(window, d)?;
    let need = phi.height() + d as i64;
    if window.max_top() < need {
        return Err(Error::Margin(format!(
            "maxTop {} < height + d = {need}",
            window.max_top()
        )));
    }
    let analytic = phi.is_analytic();
    let mut report = Report::new("analytic");
    report.detail("isAnalytic", analytic);
    let tphi = OperatorSpec::Toeplitz(phi.clone());
    let mut all_zero = true;
    let mut coords: Vec<(String, usize)> = vec![("p".to_string(), d)];
    coords.extend((1..d).map(|i| (format!("s{i}"), i)));
    for (name, i) in coords {
        let c = commutator(tphi.clone(), OperatorSpec::Toeplitz(elementary(d, i)?));
        let m = assemble(&c, window, window)?;
        let mut sub = Report::new(format!("commutator-{name}"));
        sub.detail("zero", m.is_zero());
        if let Some(w) = m.first_witness() {
            sub.witness(&w);
            all_zero = false;
        }
        report.child(sub);
    }
    report.detail("commutatorsVanish", all_zero);
    report.require(all_zero == analytic);
    Ok(report)
}

/// Compares `T_φ` with its extension `M_φ` on a growing sequence of
/// windows: the analytic block of the Laurent matrix must equal the
/// Toeplitz matrix exactly, and the estimated norms must satisfy
/// `‖T_w‖ ≤ ‖L_w‖` and grow with the window.
///
/// Each estimate is the better of a seeded random start and a warm start
/// from the previous window's top vector (the Laurent one also from the
/// Toeplitz vector), which makes both inequalities hold for the lower
/// bounds themselves.
pub fn lift_verify(phi: &Symbol, windows: &[Window], opts: NormOptions) -> Result<Report> {
    let d = phi.d();
    let mut report = Report::new("lift");
    let sup = sup_norm_sampled(phi, opts.grid)?;
    report.detail("sampledSup", sup).detail("grid", opts.grid);
    let tphi = OperatorSpec::Toeplitz(phi.clone());
    let lphi = OperatorSpec::Laurent(phi.clone());
    let mut prev: Option<(Window, Vec<_>, Window, Vec<_>, f64, f64)> = None;
    for w in windows {
        if w.d() != d {
            return Err(Error::Dimension("window dimension differs from the symbol".into()));
        }
        let aw = w.restrict(Part::Analytic);
        if aw.is_empty() {
            return Err(Error::Domain("window has no analytic members".into()));
        }
        let tm = assemble(&tphi, &aw, &aw)?;
        let lm = assemble(&lphi, w, w)?;
        let compression = MatrixWindow::build(&aw, &aw, |q, p| Ok(lm.at(q, p)))?.sub(&tm)?;
        let mut wr = Report::exact_zero(format!("compression-{}", w.max_top()), &compression);

        let (tf, lf) = (tm.to_f64(), lm.to_f64());
        let t_start = prev.as_ref().map(|(pa, tv, ..)| embed_vector(pa, &aw, tv));
        // a warm start alone can stall near an eigenvector of the smaller
        // window, so a seeded random start competes with it
        let (mut tn, mut tv) = tf.norm_estimate(opts.iterations, opts.seed, None);
        if let Some(start) = t_start {
            let (n2, v2) = tf.norm_estimate(opts.iterations, opts.seed, Some(&start));
            if n2 > tn {
                (tn, tv) = (n2, v2);
            }
        }
        let (mut ln, mut lv) = lf.norm_estimate(opts.iterations, opts.seed, Some(&embed_vector(&aw, w, &tv)));
        let (n3, v3) = lf.norm_estimate(opts.iterations, opts.seed, None);
        if n3 > ln {
            (ln, lv) = (n3, v3);
        }
        if let Some((_, _, pw, plv, ..)) = &prev {
            let (n2, v2) = lf.norm_estimate(opts.iterations, opts.seed, Some(&embed_vector(pw, w, plv)));
            if n2 > ln {
                (ln, lv) = (n2, v2);
            }
        }
        let chain = tn <= ln + opts.tol;
        let monotone = prev
            .as_ref()
            .is_none_or(|(.., pt, pl)| tn + opts.tol >= *pt && ln + opts.tol >= *pl);
        wr.require(chain && monotone);
        wr.detail("chain", chain).detail("monotone", monotone);
        report.norm(json!({
            "maxTop": w.max_top(),
            "minBottom": w.min_bottom(),
            "toeplitz": tn,
            "laurent": ln,
            "gapToSampledSup": sup - ln,
        }));
        report.child(wr);
        prev = Some((aw, tv, w.clone(), lv, tn, ln));
    }
    Ok(report)
}
