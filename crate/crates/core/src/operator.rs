//! Operators on the antisymmetric model, evaluated lazily and exactly.
//!
//! Every [`OperatorSpec`] has two exact evaluation routes:
//!
//! - [`OperatorSpec::entry`] gives the matrix element `⟨A e_p, e_q⟩`. For a
//!   symbol-driven operator this is the closed form
//!   `Σ_{σ∈Σ_d} sgn(σ) α_{q_σ − p}`.
//! - [`OperatorSpec::apply_basis`] expands `A e_p` as a finite combination of
//!   basis vectors, using `M_φ a_p = Σ_m α_m a_{m+p}` followed by the
//!   projection onto the operator's range (drop indices on the wrong side of
//!   `p_d ≥ 0`).
//!
//! Compositions are evaluated by pushing basis vectors through the factors,
//! never by multiplying truncated matrices, so identities hold exactly.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partition::{antisymmetrize_slice, signed_permutations, Part, PartitionIndex};
use crate::scalar::Scalar;
use crate::symbol::{conjugate, Symbol};

/// Finitely supported vector in the `e_p` basis.
pub type SparseVec = BTreeMap<PartitionIndex, Scalar>;

pub fn basis_vector(p: &PartitionIndex) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(p.clone(), Scalar::from_integer(1));
    v
}

fn accumulate(out: &mut SparseVec, key: PartitionIndex, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = out.entry(key.clone()).or_insert_with(Scalar::zero);
    *slot += c;
    if slot.is_zero() {
        out.remove(&key);
    }
}

/// `⟨u, v⟩ = Σ u_r conj(v_r)`.
pub fn inner(u: &SparseVec, v: &SparseVec) -> Scalar {
    let mut acc = Scalar::zero();
    for (k, a) in u {
        if let Some(b) = v.get(k) {
            acc += a * &b.conj();
        }
    }
    acc
}

/// Anything that can report exact matrix elements `⟨T e_p, e_q⟩`.
pub trait EntryOracle: Sync {
    fn d(&self) -> usize;
    fn entry(&self, q: &PartitionIndex, p: &PartitionIndex) -> Result<Scalar>;
}

/// Entry oracle backed by a closure.
pub struct FnOracle<F> {
    d: usize,
    f: F,
}

impl<F> FnOracle<F>
where
    F: Fn(&PartitionIndex, &PartitionIndex) -> Result<Scalar> + Sync,
{
    pub fn new(d: usize, f: F) -> Self {
        FnOracle { d, f }
    }
}

impl<F> EntryOracle for FnOracle<F>
where
    F: Fn(&PartitionIndex, &PartitionIndex) -> Result<Scalar> + Sync,
{
    fn d(&self) -> usize {
        self.d
    }

    fn entry(&self, q: &PartitionIndex, p: &PartitionIndex) -> Result<Scalar> {
        (self.f)(q, p)
    }
}

/// One `(row, col, coefficient)` term of a finite-rank operator.
pub type RankOneTerm = (PartitionIndex, PartitionIndex, Scalar);

#[derive(Clone, Debug, PartialEq)]
pub enum OperatorSpec {
    /// `T_φ = Pr M_φ` on the Hardy part.
    Toeplitz(Symbol),
    /// `M_φ` on the whole antisymmetric `L²`.
    Laurent(Symbol),
    /// `H_φ = (I − Pr) M_φ`, Hardy part to its complement.
    Hankel(Symbol),
    /// `DT_φ = (I − Pr) M_φ` on the complement of the Hardy part.
    DualToeplitz(Symbol),
    /// `Y_j e_p = e_{p+f_j}` with `f_j` = `j` leading ones.
    ShiftY { d: usize, j: usize },
    /// `Σ c · e_row ⊗ e_col*`.
    FiniteRank { d: usize, terms: Vec<RankOneTerm> },
    Sum(Vec<OperatorSpec>),
    Scaled(Scalar, Box<OperatorSpec>),
    /// Composition, leftmost factor applied last.
    Product(Vec<OperatorSpec>),
    Adjoint(Box<OperatorSpec>),
}

impl OperatorSpec {
    pub fn toeplitz(phi: Symbol) -> Self {
        OperatorSpec::Toeplitz(phi)
    }

    pub fn shift_y(d: usize, j: usize) -> Result<Self> {
        if j == 0 || j >= d {
            return Err(Error::Domain(format!("Y_j needs 1 ≤ j ≤ d−1, got j = {j}, d = {d}")));
        }
        Ok(OperatorSpec::ShiftY { d, j })
    }

    pub fn rank_one(row: PartitionIndex, col: PartitionIndex, c: Scalar) -> Self {
        OperatorSpec::FiniteRank {
            d: row.d(),
            terms: vec![(row, col, c)],
        }
    }

    /// Identity on the given indices, as a finite-rank operator.
    pub fn diagonal_identity(d: usize, members: &[PartitionIndex]) -> Self {
        OperatorSpec::FiniteRank {
            d,
            terms: members
                .iter()
                .map(|p| (p.clone(), p.clone(), Scalar::from_integer(1)))
                .collect(),
        }
    }

    pub fn product(ops: Vec<OperatorSpec>) -> Self {
        OperatorSpec::Product(ops)
    }

    pub fn difference(a: OperatorSpec, b: OperatorSpec) -> Self {
        OperatorSpec::Sum(vec![
            a,
            OperatorSpec::Scaled(Scalar::from_integer(-1), Box::new(b)),
        ])
    }

    pub fn d(&self) -> usize {
        match self {
            OperatorSpec::Toeplitz(s)
            | OperatorSpec::Laurent(s)
            | OperatorSpec::Hankel(s)
            | OperatorSpec::DualToeplitz(s) => s.d(),
            OperatorSpec::ShiftY { d, .. } | OperatorSpec::FiniteRank { d, .. } => *d,
            OperatorSpec::Sum(v) | OperatorSpec::Product(v) => v.first().map_or(0, |o| o.d()),
            OperatorSpec::Scaled(_, o) | OperatorSpec::Adjoint(o) => o.d(),
        }
    }

    /// Index set the operator acts on.
    pub fn col_part(&self) -> Part {
        match self {
            OperatorSpec::Toeplitz(_) | OperatorSpec::Hankel(_) | OperatorSpec::ShiftY { .. } => {
                Part::Analytic
            }
            OperatorSpec::DualToeplitz(_) => Part::NonAnalytic,
            OperatorSpec::Laurent(_) | OperatorSpec::FiniteRank { .. } => Part::All,
            OperatorSpec::Sum(v) => v.iter().map(|o| o.col_part()).reduce(meet).unwrap_or(Part::All),
            OperatorSpec::Product(v) => v.last().map_or(Part::All, |o| o.col_part()),
            OperatorSpec::Scaled(_, o) => o.col_part(),
            OperatorSpec::Adjoint(o) => o.row_part(),
        }
    }

    /// Index set the operator maps into.
    pub fn row_part(&self) -> Part {
        match self {
            OperatorSpec::Toeplitz(_) | OperatorSpec::ShiftY { .. } => Part::Analytic,
            OperatorSpec::Hankel(_) | OperatorSpec::DualToeplitz(_) => Part::NonAnalytic,
            OperatorSpec::Laurent(_) | OperatorSpec::FiniteRank { .. } => Part::All,
            OperatorSpec::Sum(v) => v.iter().map(|o| o.row_part()).reduce(join).unwrap_or(Part::All),
            OperatorSpec::Product(v) => v.first().map_or(Part::All, |o| o.row_part()),
            OperatorSpec::Scaled(_, o) => o.row_part(),
            OperatorSpec::Adjoint(o) => o.col_part(),
        }
    }

    fn check_col(&self, p: &PartitionIndex) -> Result<()> {
        if p.d() != self.d() {
            return Err(Error::Dimension(format!("index {p} for an operator in dimension {}", self.d())));
        }
        if !self.col_part().contains(p) {
            return Err(Error::Domain(format!(
                "column index {p} outside the {:?} domain of {}",
                self.col_part(),
                self.kind_name()
            )));
        }
        Ok(())
    }

    fn check_row(&self, q: &PartitionIndex) -> Result<()> {
        if q.d() != self.d() {
            return Err(Error::Dimension(format!("index {q} for an operator in dimension {}", self.d())));
        }
        if !self.row_part().contains(q) {
            return Err(Error::Domain(format!(
                "row index {q} outside the {:?} range of {}",
                self.row_part(),
                self.kind_name()
            )));
        }
        Ok(())
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            OperatorSpec::Toeplitz(_) => "toeplitz",
            OperatorSpec::Laurent(_) => "laurent",
            OperatorSpec::Hankel(_) => "hankel",
            OperatorSpec::DualToeplitz(_) => "dual",
            OperatorSpec::ShiftY { .. } => "shiftY",
            OperatorSpec::FiniteRank { .. } => "finiteRank",
            OperatorSpec::Sum(_) => "sum",
            OperatorSpec::Scaled(..) => "scaled",
            OperatorSpec::Product(_) => "product",
            OperatorSpec::Adjoint(_) => "adjoint",
        }
    }

    /// Structural adjoint. Hankel and shift operators stay wrapped.
    pub fn adjoint(&self) -> OperatorSpec {
        match self {
            OperatorSpec::Toeplitz(s) => OperatorSpec::Toeplitz(conjugate(s)),
            OperatorSpec::Laurent(s) => OperatorSpec::Laurent(conjugate(s)),
            OperatorSpec::DualToeplitz(s) => OperatorSpec::DualToeplitz(conjugate(s)),
            OperatorSpec::Hankel(_) | OperatorSpec::ShiftY { .. } => {
                OperatorSpec::Adjoint(Box::new(self.clone()))
            }
            OperatorSpec::FiniteRank { d, terms } => OperatorSpec::FiniteRank {
                d: *d,
                terms: terms
                    .iter()
                    .map(|(r, c, v)| (c.clone(), r.clone(), v.conj()))
                    .collect(),
            },
            OperatorSpec::Sum(v) => OperatorSpec::Sum(v.iter().map(|o| o.adjoint()).collect()),
            OperatorSpec::Scaled(a, o) => OperatorSpec::Scaled(a.conj(), Box::new(o.adjoint())),
            OperatorSpec::Product(v) => {
                OperatorSpec::Product(v.iter().rev().map(|o| o.adjoint()).collect())
            }
            OperatorSpec::Adjoint(o) => (**o).clone(),
        }
    }

    /// Exact matrix element `⟨A e_p, e_q⟩`.
    pub fn entry(&self, q: &PartitionIndex, p: &PartitionIndex) -> Result<Scalar> {
        self.check_row(q)?;
        self.check_col(p)?;
        self.entry_unchecked(q, p)
    }

    fn entry_unchecked(&self, q: &PartitionIndex, p: &PartitionIndex) -> Result<Scalar> {
        Ok(match self {
            OperatorSpec::Toeplitz(s)
            | OperatorSpec::Laurent(s)
            | OperatorSpec::Hankel(s)
            | OperatorSpec::DualToeplitz(s) => symbol_entry(s, q, p),
            OperatorSpec::ShiftY { j, .. } => {
                if *q == p.add_leading_ones(*j, 1) {
                    Scalar::from_integer(1)
                } else {
                    Scalar::zero()
                }
            }
            OperatorSpec::FiniteRank { terms, .. } => {
                let mut acc = Scalar::zero();
                for (r, c, v) in terms {
                    if r == q && c == p {
                        acc += v;
                    }
                }
                acc
            }
            OperatorSpec::Sum(v) => {
                let mut acc = Scalar::zero();
                for o in v {
                    if o.row_part().contains(q) {
                        acc += o.entry(q, p)?;
                    }
                }
                acc
            }
            OperatorSpec::Scaled(a, o) => a * &o.entry(q, p)?,
            OperatorSpec::Product(v) => match v.split_first() {
                None => return Err(Error::Domain("empty product".into())),
                Some((first, [])) => first.entry(q, p)?,
                Some((first, rest)) => {
                    let mut col = basis_vector(p);
                    for o in rest.iter().rev() {
                        col = o.apply(&col)?;
                    }
                    let mut acc = Scalar::zero();
                    for (r, c) in &col {
                        acc += c * &first.entry(q, r)?;
                    }
                    acc
                }
            },
            OperatorSpec::Adjoint(o) => o.entry(p, q)?.conj(),
        })
    }

    /// Exact image `A v` of a finitely supported vector.
    pub fn apply(&self, v: &SparseVec) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for (p, c) in v {
            for (r, x) in self.apply_basis(p)? {
                accumulate(&mut out, r, &(c * &x));
            }
        }
        Ok(out)
    }

    /// Exact image `A e_p`.
    pub fn apply_basis(&self, p: &PartitionIndex) -> Result<SparseVec> {
        self.check_col(p)?;
        let mut out = SparseVec::new();
        match self {
            OperatorSpec::Toeplitz(s)
            | OperatorSpec::Laurent(s)
            | OperatorSpec::Hankel(s)
            | OperatorSpec::DualToeplitz(s) => {
                multiply_basis(s, p, self.row_part(), &mut out);
            }
            OperatorSpec::ShiftY { j, .. } => {
                out.insert(p.add_leading_ones(*j, 1), Scalar::from_integer(1));
            }
            OperatorSpec::FiniteRank { terms, .. } => {
                for (r, c, v) in terms {
                    if c == p {
                        accumulate(&mut out, r.clone(), v);
                    }
                }
            }
            OperatorSpec::Sum(v) => {
                for o in v {
                    for (r, x) in o.apply_basis(p)? {
                        accumulate(&mut out, r, &x);
                    }
                }
            }
            OperatorSpec::Scaled(a, o) => {
                for (r, x) in o.apply_basis(p)? {
                    accumulate(&mut out, r, &(a * &x));
                }
            }
            OperatorSpec::Product(v) => {
                let mut col = basis_vector(p);
                for o in v.iter().rev() {
                    col = o.apply(&col)?;
                }
                out = col;
            }
            OperatorSpec::Adjoint(o) => match &**o {
                // H_φ* = Pr M_{φ̄} on the complement
                OperatorSpec::Hankel(s) => multiply_basis(&conjugate(s), p, Part::Analytic, &mut out),
                OperatorSpec::ShiftY { j, .. } => {
                    if let Some(r) = p.sub_leading_ones(*j, 1) {
                        if r.is_analytic() {
                            out.insert(r, Scalar::from_integer(1));
                        }
                    }
                }
                other => out = other.adjoint().apply_basis(p)?,
            },
        }
        Ok(out)
    }

    /// Entries `⟨A e_p, e_q⟩` for every `q` in `rows`, pushing `e_p` through
    /// all but the leftmost factor once.
    pub fn column_entries(&self, rows: &[PartitionIndex], p: &PartitionIndex) -> Result<Vec<Scalar>> {
        self.check_col(p)?;
        match self {
            OperatorSpec::Product(v) if v.len() > 1 => {
                let (first, rest) = v.split_first().unwrap();
                let mut col = basis_vector(p);
                for o in rest.iter().rev() {
                    col = o.apply(&col)?;
                }
                rows.iter()
                    .map(|q| {
                        self.check_row(q)?;
                        let mut acc = Scalar::zero();
                        for (r, c) in &col {
                            acc += c * &first.entry(q, r)?;
                        }
                        Ok(acc)
                    })
                    .collect()
            }
            _ => rows.iter().map(|q| self.entry(q, p)).collect(),
        }
    }
}

impl EntryOracle for OperatorSpec {
    fn d(&self) -> usize {
        OperatorSpec::d(self)
    }

    fn entry(&self, q: &PartitionIndex, p: &PartitionIndex) -> Result<Scalar> {
        OperatorSpec::entry(self, q, p)
    }
}

// Summands must all accept a column; disagreeing halves are rejected by the
// summands' own checks.
fn meet(a: Part, b: Part) -> Part {
    match (a, b) {
        (Part::All, x) | (x, Part::All) => x,
        (x, _) => x,
    }
}

// A sum maps into the union of its summands' ranges.
fn join(a: Part, b: Part) -> Part {
    if a == b {
        a
    } else {
        Part::All
    }
}

/// `Σ_σ sgn(σ) α_{q_σ − p}`: the matrix element of `M_φ` in the normalized
/// basis.
pub fn symbol_entry(phi: &Symbol, q: &PartitionIndex, p: &PartitionIndex) -> Scalar {
    let qe = q.entries();
    let pe = p.entries();
    let d = qe.len();
    // every q_σ − p has entry sum Σq − Σp; skip when no support orbit does
    let total: i64 = qe.iter().sum::<i64>() - pe.iter().sum::<i64>();
    if !phi.terms().any(|(m, _)| m.entries().iter().sum::<i64>() == total) {
        return Scalar::zero();
    }
    let mut acc = Scalar::zero();
    let mut diff = vec![0i64; d];
    for sp in signed_permutations(d) {
        for k in 0..d {
            diff[k] = qe[sp.perm[k]] - pe[k];
        }
        if let Some(c) = phi.coeff_at(&diff) {
            if sp.sign > 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
    }
    acc
}

/// `M_φ e_p = Σ_m α_m e_{m+p}`, antisymmetrized and restricted to `part`.
fn multiply_basis(phi: &Symbol, p: &PartitionIndex, part: Part, out: &mut SparseVec) {
    let pe = p.entries();
    let mut t = vec![0i64; pe.len()];
    for (x, c) in phi.lattice_points() {
        for k in 0..pe.len() {
            t[k] = x[k] + pe[k];
        }
        let sp = antisymmetrize_slice(&t);
        if let Some(r) = sp.partition {
            if part.contains(&r) {
                let v = if sp.sign > 0 { c } else { -c };
                accumulate(out, r, &v);
            }
        }
    }
}
