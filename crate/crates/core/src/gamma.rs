//! Membership in the symmetrized polydisk and its distinguished boundary,
//! and structure tests for commuting matrix tuples.
//!
//! Everything here is double precision with explicit tolerances.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::assemble;
use crate::operator::{basis_vector, OperatorSpec};
use crate::partition::{Part, Window};
use crate::report::Report;
use crate::symbol::{conjugate, elementary, Symbol};

pub type CMatrix = DMatrix<Complex64>;

/// Roots closer than this are merged to their centroid before moduli are
/// compared: a root of multiplicity `m` is only computed to about `ε^{1/m}`,
/// while the centroid of the cluster is accurate to about `ε`.
const ROOT_CLUSTER: f64 = 1e-4;

/// `(S_1, …, S_{d−1}, V)`: `d` square matrices of one size.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaTuple {
    mats: Vec<CMatrix>,
    comm_tol: f64,
}

impl GammaTuple {
    /// Validates shapes only; commutation is reported by the checkers.
    pub fn new(mats: Vec<CMatrix>, comm_tol: f64) -> Result<Self> {
        if mats.len() < 2 {
            return Err(Error::Dimension(format!("a tuple needs d ≥ 2 matrices, got {}", mats.len())));
        }
        let n = mats[0].nrows();
        if n == 0 || mats.iter().any(|m| m.nrows() != n || m.ncols() != n) {
            return Err(Error::Dimension("tuple matrices must be square and of one size".into()));
        }
        Ok(GammaTuple { mats, comm_tol })
    }

    pub fn d(&self) -> usize {
        self.mats.len()
    }

    pub fn n(&self) -> usize {
        self.mats[0].nrows()
    }

    pub fn mats(&self) -> &[CMatrix] {
        &self.mats
    }

    /// `S_i` for `1 ≤ i ≤ d−1`, and `V` for `i = d`.
    pub fn s(&self, i: usize) -> &CMatrix {
        &self.mats[i - 1]
    }

    pub fn v(&self) -> &CMatrix {
        self.mats.last().unwrap()
    }

    pub fn comm_tol(&self) -> f64 {
        self.comm_tol
    }

    /// Largest `‖AB − BA‖` over pairs.
    pub fn commutator_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..self.d() {
            for b in a + 1..self.d() {
                let c = &self.mats[a] * &self.mats[b] - &self.mats[b] * &self.mats[a];
                worst = worst.max(op_norm(&c));
            }
        }
        worst
    }

    /// `{"d": …, "mats": [row-major arrays of [re, im]], "commTol": …}`.
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d(),
            "mats": self.mats.iter().map(matrix_json).collect::<Vec<_>>(),
            "commTol": self.comm_tol,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mats = v["mats"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing \"mats\" array".into()))?
            .iter()
            .map(parse_matrix)
            .collect::<Result<Vec<_>>>()?;
        if let Some(d) = v.get("d") {
            if d.as_u64() != Some(mats.len() as u64) {
                return Err(Error::Parse(format!("\"d\" is {d} but {} matrices given", mats.len())));
            }
        }
        let comm_tol = v.get("commTol").and_then(Value::as_f64).unwrap_or(1e-9);
        GammaTuple::new(mats, comm_tol).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn matrix_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| json!([m[(i, j)].re, m[(i, j)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn parse_matrix(v: &Value) -> Result<CMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let n = rows.len();
    let mut out = CMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| Error::Parse("row must be an array".into()))?;
        if row.len() != n {
            return Err(Error::Parse(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        for (j, x) in row.iter().enumerate() {
            let pair = x.as_array().filter(|a| a.len() == 2);
            let (re, im) = match pair {
                Some(a) => (a[0].as_f64(), a[1].as_f64()),
                None => (None, None),
            };
            match (re, im) {
                (Some(re), Some(im)) => out[(i, j)] = Complex64::new(re, im),
                _ => return Err(Error::Parse(format!("entry ({i},{j}) must be [re, im]"))),
            }
        }
    }
    Ok(out)
}

/// Spectral norm.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipVerdict {
    pub in_set: bool,
    pub roots: Vec<Complex64>,
    /// `max |root| − 1` for the closed set, `max ||root| − 1|` for the
    /// boundary.
    pub margin: f64,
}

impl MembershipVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "inSet": self.in_set,
            "roots": self.roots.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
            "margin": self.margin,
        })
    }
}

/// Roots of `z^d − s_1 z^{d−1} + s_2 z^{d−2} − … + (−1)^d s_d`, as the
/// eigenvalues of the companion matrix.
pub fn symmetric_roots(pt: &[Complex64]) -> Vec<Complex64> {
    let d = pt.len();
    if d == 0 {
        return Vec::new();
    }
    // z^d + c_{d−1} z^{d−1} + … + c_0 with c_{d−k} = (−1)^k s_k
    let mut c = CMatrix::zeros(d, d);
    for k in 1..=d {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        c[(0, k - 1)] = -pt[k - 1] * sign;
    }
    for i in 1..d {
        c[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    let (_, t) = c.schur().unpack();
    (0..d).map(|i| t[(i, i)]).collect()
}

/// Moduli of the roots after merging clusters to their centroids.
fn clustered_moduli(roots: &[Complex64]) -> Vec<f64> {
    let mut seen = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if seen[i] {
            continue;
        }
        let mut members = vec![i];
        seen[i] = true;
        let mut k = 0;
        while k < members.len() {
            let a = roots[members[k]];
            for j in 0..roots.len() {
                if !seen[j] && (roots[j] - a).norm() < ROOT_CLUSTER {
                    seen[j] = true;
                    members.push(j);
                }
            }
            k += 1;
        }
        let centroid = members.iter().map(|&j| roots[j]).sum::<Complex64>() / members.len() as f64;
        out.extend(std::iter::repeat_n(centroid.norm(), members.len()));
    }
    out
}

/// Membership in `Γ_d`: every root in the closed unit disk.
pub fn point_in_gamma(pt: &[Complex64], tol: f64) -> MembershipVerdict {
    let roots = symmetric_roots(pt);
    let margin = clustered_moduli(&roots).into_iter().fold(f64::NEG_INFINITY, f64::max) - 1.0;
    let margin = if roots.is_empty() { -1.0 } else { margin };
    MembershipVerdict {
        in_set: margin <= tol,
        roots,
        margin,
    }
}

/// Membership in `bΓ_d`: every root on the unit circle.
pub fn point_in_bgamma(pt: &[Complex64], tol: f64) -> MembershipVerdict {
    let roots = symmetric_roots(pt);
    let margin = clustered_moduli(&roots)
        .into_iter()
        .map(|m| (m - 1.0).abs())
        .fold(0.0, f64::max);
    MembershipVerdict {
        in_set: margin <= tol,
        roots,
        margin,
    }
}

/// Elementary symmetric functions `(s_1, …, s_d)` of the given points.
pub fn symmetrize(z: &[Complex64]) -> Vec<Complex64> {
    let d = z.len();
    let mut e = vec![Complex64::new(0.0, 0.0); d + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (k, &x) in z.iter().enumerate() {
        for i in (1..=k + 1).rev() {
            let prev = e[i - 1];
            e[i] += prev * x;
        }
    }
    e.remove(0);
    e
}

/// `(R_1, …, R_{d−1}, U_1 ⋯ U_d)` with `R_i` the `i`-th elementary symmetric
/// combination of commuting unitaries.
pub fn synth_gamma_unitary(unitaries: &[CMatrix], tol: f64) -> Result<GammaTuple> {
    let d = unitaries.len();
    if d < 2 {
        return Err(Error::Dimension("need at least two unitaries".into()));
    }
    let n = unitaries[0].nrows();
    if unitaries.iter().any(|u| u.nrows() != n || u.ncols() != n) {
        return Err(Error::Dimension("unitaries must be square and of one size".into()));
    }
    let id = CMatrix::identity(n, n);
    for (k, u) in unitaries.iter().enumerate() {
        let defect = op_norm(&(u.adjoint() * u - &id));
        if defect > tol {
            return Err(Error::Precondition(format!("U_{} is not unitary (defect {defect:e})", k + 1)));
        }
    }
    for a in 0..d {
        for b in a + 1..d {
            let c = op_norm(&(&unitaries[a] * &unitaries[b] - &unitaries[b] * &unitaries[a]));
            if c > tol {
                return Err(Error::Precondition(format!(
                    "U_{} and U_{} do not commute (defect {c:e})",
                    a + 1,
                    b + 1
                )));
            }
        }
    }
    let mut e = vec![CMatrix::zeros(n, n); d + 1];
    e[0] = id;
    for (k, u) in unitaries.iter().enumerate() {
        for i in (1..=k + 1).rev() {
            let add = &e[i - 1] * u;
            e[i] += add;
        }
    }
    e.remove(0);
    GammaTuple::new(e, tol)
}

/// Joint eigenvalues of a commuting normal tuple, one `d`-tuple per
/// eigenvector, from a seeded generic Hermitian combination.
pub fn joint_eigenvalues(t: &GammaTuple, tol: f64, seed: u64) -> Result<Vec<Vec<Complex64>>> {
    let n = t.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = Complex64::new(0.0, 1.0);
    let mut h = CMatrix::zeros(n, n);
    for m in t.mats() {
        let a: f64 = rng.random::<f64>() + 0.5;
        let b: f64 = rng.random::<f64>() + 0.5;
        h += (m + m.adjoint()) * Complex64::new(a, 0.0) + (m - m.adjoint()) * (i * b);
    }
    let eig = SymmetricEigen::new(h);
    let v = eig.eigenvectors;
    let mut lambdas = Vec::with_capacity(t.d());
    for m in t.mats() {
        let diag: Vec<Complex64> = (0..n).map(|k| (v.column(k).adjoint() * m * v.column(k))[(0, 0)]).collect();
        let mut lv = v.clone();
        for (k, lam) in diag.iter().enumerate() {
            lv.column_mut(k).scale_mut(1.0);
            let scaled = v.column(k) * *lam;
            lv.set_column(k, &scaled);
        }
        let residual = op_norm(&(m * &v - lv));
        let bound = tol.max(1e-10) * (1.0 + op_norm(m)) * 100.0;
        if residual > bound {
            return Err(Error::Degenerate(format!(
                "eigenvector residual {residual:e} exceeds {bound:e} at seed {seed}"
            )));
        }
        lambdas.push(diag);
    }
    Ok((0..n).map(|k| lambdas.iter().map(|l| l[k]).collect()).collect())
}

fn normality_defect(m: &CMatrix) -> f64 {
    op_norm(&(m * m.adjoint() - m.adjoint() * m))
}

/// Algebraic relations `S_{d−i} = S_i* V`, largest entry of each residual.
fn adjoint_relation_residuals(t: &GammaTuple) -> Vec<f64> {
    let d = t.d();
    (1..d)
        .map(|i| max_abs(&(t.s(d - i) - t.s(i).adjoint() * t.v())))
        .collect()
}

/// Normality, unitarity of the last entry, `R_{d−i} = R_i* U`, and joint
/// spectrum in `bΓ_d`.
pub fn check_gamma_unitary(t: &GammaTuple, tol: f64, seed: u64) -> Result<Report> {
    let n = t.n();
    let id = CMatrix::identity(n, n);
    let mut report = Report::new("gamma-unitary");

    let mut normal = Report::new("normal");
    let mut worst: f64 = 0.0;
    for m in t.mats() {
        worst = worst.max(normality_defect(m));
    }
    normal.detail("defect", worst).detail("margin", worst - tol).require(worst <= tol);
    let normal_ok = normal.passed();
    report.child(normal);

    let comm = t.commutator_defect();
    let mut commute = Report::new("commuting");
    commute.detail("defect", comm).require(comm <= t.comm_tol().max(tol));
    let commute_ok = commute.passed();
    report.child(commute);

    let u = t.v();
    let ud = op_norm(&(u.adjoint() * u - &id)).max(op_norm(&(u * u.adjoint() - &id)));
    let mut unitary = Report::new("unitary");
    unitary.detail("defect", ud).detail("margin", ud - tol).require(ud <= tol);
    report.child(unitary);

    let res = adjoint_relation_residuals(t);
    let worst_rel = res.iter().copied().fold(0.0, f64::max);
    let mut rel = Report::new("adjoint-relation");
    rel.detail("residuals", &res)
        .detail("margin", worst_rel - tol)
        .require(worst_rel <= tol);
    report.child(rel);

    let mut spectrum = Report::new("joint-spectrum");
    if normal_ok && commute_ok {
        let points = joint_eigenvalues(t, tol, seed)?;
        let mut worst_m: f64 = 0.0;
        for pt in &points {
            let v = point_in_bgamma(pt, tol.sqrt().max(tol));
            worst_m = worst_m.max(v.margin);
            if !v.in_set {
                spectrum.require(false);
                spectrum.witnesses.push(json!({
                    "point": pt.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
                    "membership": v.to_json(),
                }));
            }
        }
        spectrum.detail("margin", worst_m).detail("points", points.len());
    } else {
        spectrum.detail("skipped", "tuple is not a commuting normal family");
        spectrum.require(false);
    }
    report.child(spectrum);
    Ok(report)
}

/// Sup of `|f|` over the symmetrization of a uniform grid on the torus,
/// `f(x) = x^α`.
fn monomial_grid_sup(alpha: &[u32], grid: usize) -> f64 {
    let k = alpha.len();
    if k == 0 {
        return 1.0;
    }
    let mut idx = vec![0usize; k];
    let mut best: f64 = 0.0;
    loop {
        let z: Vec<Complex64> = idx
            .iter()
            .map(|&t| Complex64::from_polar(1.0, std::f64::consts::TAU * t as f64 / grid as f64))
            .collect();
        let s = symmetrize(&z);
        let v: f64 = s.iter().zip(alpha).map(|(x, &a)| x.norm().powi(a as i32)).product();
        best = best.max(v);
        let mut pos = 0;
        loop {
            if pos == k {
                return best;
            }
            idx[pos] += 1;
            if idx[pos] < grid {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn exponents(k: usize, max_deg: u32) -> Vec<Vec<u32>> {
    fn go(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur.push(a);
            go(k, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, max_deg, &mut Vec::new(), &mut out);
    out
}

fn mat_pow(m: &CMatrix, k: u32) -> CMatrix {
    let mut out = CMatrix::identity(m.nrows(), m.ncols());
    for _ in 0..k {
        out = &out * m;
    }
    out
}

/// `V*V = I`, `S_{d−i} = S_i* V`, and a von Neumann battery for
/// `(γ_1 S_1, …, γ_{d−1} S_{d−1})`, `γ_i = (d−i)/d`: every monomial of
/// degree at most `poly_degree` must have norm at most its sup over the
/// symmetrized torus grid. The battery is a necessary condition only.
pub fn check_gamma_isometry(t: &GammaTuple, tol: f64, poly_degree: u32, grid: usize) -> Result<Report> {
    if poly_degree == 0 {
        return Err(Error::Domain("polyDegree must be at least 1".into()));
    }
    if grid < 8 {
        return Err(Error::Domain("gridSize must be at least 8".into()));
    }
    let d = t.d();
    let n = t.n();
    let mut report = Report::new("gamma-isometry");
    report.detail(
        "scope",
        "finite-dimensional isometries are unitary; non-unitary instances arise only from windowed Hardy-space tuples",
    );

    let iso = op_norm(&(t.v().adjoint() * t.v() - CMatrix::identity(n, n)));
    let mut r = Report::new("isometry");
    r.detail("defect", iso).require(iso <= tol);
    report.child(r);

    let res = adjoint_relation_residuals(t);
    let worst = res.iter().copied().fold(0.0, f64::max);
    let mut r = Report::new("adjoint-relation");
    r.detail("residuals", &res).require(worst <= tol);
    report.child(r);

    let comm = t.commutator_defect();
    let mut r = Report::new("commuting");
    r.detail("defect", comm).require(comm <= t.comm_tol().max(tol));
    report.child(r);

    let scaled: Vec<CMatrix> = (1..d)
        .map(|i| t.s(i) * Complex64::new((d - i) as f64 / d as f64, 0.0))
        .collect();
    let mut vn = Report::new("von-neumann");
    vn.detail("necessaryOnly", true).detail("polyDegree", poly_degree).detail("grid", grid);
    let mut worst_margin = f64::NEG_INFINITY;
    for alpha in exponents(d - 1, poly_degree) {
        let mut f = CMatrix::identity(n, n);
        for (m, &a) in scaled.iter().zip(&alpha) {
            f = &f * mat_pow(m, a);
        }
        let lhs = op_norm(&f);
        let sup = monomial_grid_sup(&alpha, grid);
        let margin = lhs - sup;
        worst_margin = worst_margin.max(margin);
        if margin > tol {
            vn.require(false);
            vn.witnesses.push(json!({"exponent": alpha, "norm": lhs, "sup": sup}));
        }
    }
    vn.detail("margin", worst_margin);
    report.child(vn);
    Ok(report)
}

/// Window matrices of `(T_{s_1}, …, T_{s_{d−1}}, T_p)` on an analytic window.
pub fn coordinate_tuple(d: usize, window: &Window) -> Result<GammaTuple> {
    if !window.within(Part::Analytic) || window.is_empty() {
        return Err(Error::Domain("coordinate tuple needs a nonempty analytic window".into()));
    }
    let mats = (1..=d)
        .map(|i| Ok(assemble(&OperatorSpec::Toeplitz(elementary(d, i)?), window, window)?.to_dense()))
        .collect::<Result<Vec<_>>>()?;
    GammaTuple::new(mats, 1e-9)
}

/// `V*V = I` and `S_{d−i} = S_i* V` for the windowed coordinate tuple,
/// restricted to columns `p` whose image `p + 1` stays inside the window.
pub fn check_coordinate_isometry(d: usize, window: &Window, tol: f64) -> Result<Report> {
    let t = coordinate_tuple(d, window)?;
    let interior: Vec<usize> = window
        .members()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.top() < window.max_top())
        .map(|(k, _)| k)
        .collect();
    let cols = |m: &CMatrix| m.select_columns(interior.iter());
    let n = t.n();
    let mut report = Report::new("coordinate-isometry");
    report.detail("interiorColumns", interior.len());
    let iso = max_abs(&cols(&(t.v().adjoint() * t.v() - CMatrix::identity(n, n))));
    let mut r = Report::new("isometry");
    r.detail("defect", iso).require(iso <= tol);
    report.child(r);
    let worst = (1..d)
        .map(|i| max_abs(&cols(&(t.s(d - i) - t.s(i).adjoint() * t.v()))))
        .fold(0.0, f64::max);
    let mut r = Report::new("adjoint-relation");
    r.detail("defect", worst).require(worst <= tol);
    report.child(r);
    Ok(report)
}

/// Column-major `vec` of the linear map `X ↦ A X B` on `n × n` matrices.
fn kron_map(a: &CMatrix, b: &CMatrix) -> CMatrix {
    b.transpose().kronecker(a)
}

/// Orthonormal basis (Frobenius) of `{X : S_i* X V = X S_{d−i}, V* X V = X}`.
pub fn s_toeplitz_solve(s: &GammaTuple, tol: f64) -> Result<Vec<CMatrix>> {
    let d = s.d();
    let n = s.n();
    let id = CMatrix::identity(n, n);
    let nn = n * n;
    let mut k = CMatrix::zeros(d * nn, nn);
    for i in 1..d {
        let block = kron_map(&s.s(i).adjoint(), s.v()) - kron_map(&id, s.s(d - i));
        k.view_mut(((i - 1) * nn, 0), (nn, nn)).copy_from(&block);
    }
    let last = kron_map(&s.v().adjoint(), s.v()) - CMatrix::identity(nn, nn);
    k.view_mut(((d - 1) * nn, 0), (nn, nn)).copy_from(&last);
    Ok(nullspace(k, tol)
        .into_iter()
        .map(|v| CMatrix::from_column_slice(n, n, v.as_slice()))
        .collect())
}

/// Right singular vectors of `k` with singular value at most `tol`.
pub fn nullspace(k: CMatrix, tol: f64) -> Vec<nalgebra::DVector<Complex64>> {
    let cols = k.ncols();
    // pad so the SVD yields a full set of right singular vectors
    let k = if k.nrows() < cols {
        let mut padded = CMatrix::zeros(cols, cols);
        padded.view_mut((0, 0), (k.nrows(), cols)).copy_from(&k);
        padded
    } else {
        k
    };
    let svd = k.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &sv)| sv <= tol)
        .map(|(r, _)| vt.row(r).adjoint())
        .collect()
}

/// Solutions of `X M_k = M_k X` for every matrix in the tuple.
pub fn commutant(s: &GammaTuple, tol: f64) -> Vec<CMatrix> {
    let n = s.n();
    let id = CMatrix::identity(n, n);
    let nn = n * n;
    let mut k = CMatrix::zeros(s.d() * nn, nn);
    for (i, m) in s.mats().iter().enumerate() {
        let block = kron_map(&id, m) - kron_map(m, &id);
        k.view_mut((i * nn, 0), (nn, nn)).copy_from(&block);
    }
    nullspace(k, tol)
        .into_iter()
        .map(|v| CMatrix::from_column_slice(n, n, v.as_slice()))
        .collect()
}

/// Checks the concrete extension `M_φ ⊇ T_φ` on a window reaching below
/// the analytic part: the coordinate multiplications commute, the analytic
/// compression of `M_φ` is `T_φ`, and every window index is reached from an
/// analytic one by powers of `M_{p̄}`.
pub fn minimal_extension_verify(phi: &Symbol, window: &Window) -> Result<Report> {
    let d = phi.d();
    if window.min_bottom() >= 0 {
        return Err(Error::Domain("the window must contain non-analytic indices".into()));
    }
    let mut report = Report::new("minimal-extension");

    let mut comm = Report::new("coordinates-commute");
    for i in 1..=d {
        for j in i + 1..=d {
            let (a, b) = (
                OperatorSpec::Laurent(elementary(d, i)?),
                OperatorSpec::Laurent(elementary(d, j)?),
            );
            let c = crate::hardy::commutator(a, b);
            if let Some(w) = assemble(&c, window, window)?.first_witness() {
                comm.fail_with(&w);
            }
        }
    }
    report.child(comm);

    let aw = window.restrict(Part::Analytic);
    let lm = assemble(&OperatorSpec::Laurent(phi.clone()), window, window)?;
    let tm = assemble(&OperatorSpec::Toeplitz(phi.clone()), &aw, &aw)?;
    let seen = crate::matrix::MatrixWindow::build(&aw, &aw, |q, p| Ok(lm.at(q, p)))?;
    report.child(crate::report::Report::exact_zero("compression", &seen.sub(&tm)?));

    let down = OperatorSpec::Laurent(conjugate(&elementary(d, d)?));
    let mut reach = Report::new("reachability");
    let mut reached = 0usize;
    for p in window.members() {
        let r = (-p.bottom()).max(0);
        let start = p.shift_diag(r);
        let mut v = basis_vector(&start);
        for _ in 0..r {
            v = down.apply(&v)?;
        }
        if v == basis_vector(p) {
            reached += 1;
        } else {
            reach.require(false);
            reach.witnesses.push(json!({"index": p.entries()}));
        }
    }
    reach.detail("reached", reached).detail("members", window.len());
    report.child(reach);
    Ok(report)
}

/// `d` commuting diagonal `n × n` unitaries with uniformly random phases.
pub fn random_diagonal_unitaries<R: Rng>(d: usize, n: usize, rng: &mut R) -> Vec<CMatrix> {
    (0..d)
        .map(|_| {
            let diag: Vec<Complex64> = (0..n)
                .map(|_| Complex64::from_polar(1.0, std::f64::consts::TAU * rng.random::<f64>()))
                .collect();
            CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
        })
        .collect()
}

/// `d` commuting unitaries `Q D_k Q*` with a random unitary `Q` and diagonal
/// entries drawn from the `order`-th roots of unity, so eigenvalues repeat.
pub fn random_rotated_unitaries<R: Rng>(d: usize, n: usize, order: u32, rng: &mut R) -> Vec<CMatrix> {
    let g = CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let q = g.qr().q();
    (0..d)
        .map(|_| {
            let diag: Vec<Complex64> = (0..n)
                .map(|_| {
                    let k = rng.random_range(0..order);
                    Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / order as f64)
                })
                .collect();
            &q * CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)) * q.adjoint()
        })
        .collect()
}
