//! Dual Toeplitz operators on the orthogonal complement of the Hardy part.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{assemble, MatrixWindow};
use crate::operator::{EntryOracle, OperatorSpec};
use crate::partition::{Part, PartitionIndex, Window};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::symbol::{conjugate, elementary, Symbol};

/// A window restricted to the non-analytic indices (last entry `≤ −1`).
#[derive(Clone, Debug, PartialEq)]
pub struct DualWindow(Window);

impl DualWindow {
    pub fn new(window: &Window) -> Result<Self> {
        if window.min_bottom() >= 0 {
            return Err(Error::Domain(
                "a dual window needs minBottom < 0".into(),
            ));
        }
        Ok(DualWindow(window.restrict(Part::NonAnalytic)))
    }

    pub fn window(&self) -> &Window {
        &self.0
    }

    pub fn members(&self) -> &[PartitionIndex] {
        self.0.members()
    }
}

/// `⟨DT_φ e_p, e_q⟩` for non-analytic `p`, `q`.
pub fn dual_entry(phi: &Symbol, q: &PartitionIndex, p: &PartitionIndex) -> Result<Scalar> {
    OperatorSpec::DualToeplitz(phi.clone()).entry(q, p)
}

/// Residuals `DT_{s̄_i}* T DT_{p̄} − T DT_{s̄_{d−i}}` (`i = 1..d−1`) and
/// `DT_{p̄}* T DT_{p̄} − T`. Since `DT_{p̄} e_p = e_{p−1}`, the middle factor
/// is read at shifted indices only.
pub fn dual_bh_residuals<T: EntryOracle + ?Sized>(t: &T, window: &DualWindow) -> Result<Vec<MatrixWindow>> {
    let d = t.d();
    let w = window.window();
    if w.d() != d {
        return Err(Error::Dimension("window dimension differs from the operator".into()));
    }
    let conj_coord = |i: usize| -> Result<OperatorSpec> {
        Ok(OperatorSpec::DualToeplitz(conjugate(&elementary(d, i)?)))
    };
    let mut out = Vec::with_capacity(d);
    for i in 1..d {
        let (di, ddi) = (conj_coord(i)?, conj_coord(d - i)?);
        out.push(MatrixWindow::build(w, w, |q, p| {
            let p1 = p.shift_diag(-1);
            let mut acc = Scalar::zero();
            for (r, c) in di.apply_basis(q)? {
                acc += &c.conj() * &t.entry(&r, &p1)?;
            }
            for (r, c) in ddi.apply_basis(p)? {
                acc -= &(&c * &t.entry(q, &r)?);
            }
            Ok(acc)
        })?);
    }
    out.push(MatrixWindow::build(w, w, |q, p| {
        Ok(t.entry(&q.shift_diag(-1), &p.shift_diag(-1))? - t.entry(q, p)?)
    })?);
    Ok(out)
}

/// Checks that the Laurent matrix of `φ` on a window straddling both halves
/// splits into the blocks `T_φ`, `H_φ`, `H_{φ̄}*` and `DT_φ`, entry by entry.
pub fn block_decomposition_check(phi: &Symbol, full: &Window) -> Result<Report> {
    let d = phi.d();
    if full.d() != d {
        return Err(Error::Dimension("window dimension differs from the symbol".into()));
    }
    let h = phi.height();
    if full.min_bottom() > -h.max(1) || full.max_top() < d as i64 - 1 + h {
        return Err(Error::Margin(format!(
            "window [{}, {}] does not reach height {h} on both sides",
            full.min_bottom(),
            full.max_top()
        )));
    }
    let laurent = assemble(&OperatorSpec::Laurent(phi.clone()), full, full)?;
    let analytic = full.restrict(Part::Analytic);
    let dual = full.restrict(Part::NonAnalytic);
    let blocks = [
        ("T", OperatorSpec::Toeplitz(phi.clone()), &analytic, &analytic),
        ("H", OperatorSpec::Hankel(phi.clone()), &dual, &analytic),
        ("H*", OperatorSpec::Hankel(conjugate(phi)).adjoint(), &analytic, &dual),
        ("DT", OperatorSpec::DualToeplitz(phi.clone()), &dual, &dual),
    ];
    let mut report = Report::new("block");
    for (tag, op, rows, cols) in blocks {
        let expected = assemble(&op, rows, cols)?;
        let seen = MatrixWindow::build(rows, cols, |q, p| Ok(laurent.at(q, p)))?;
        let mut r = Report::exact_zero(tag, &seen.sub(&expected)?);
        r.detail("nonzerosInBlock", expected.nnz());
        report.child(r);
    }
    Ok(report)
}
