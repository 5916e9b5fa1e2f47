//! Acceptance checks. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero when any criterion fails.

use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symtoep::compact::eta;
use symtoep::error::Result;
use symtoep::gamma::{
    check_gamma_unitary, point_in_gamma, random_diagonal_unitaries, random_rotated_unitaries, s_toeplitz_solve,
    symmetrize, synth_gamma_unitary, GammaTuple,
};
use symtoep::hardy::{bh_residuals, classify_analytic, commutator, product_defect, recover_symbol};
use symtoep::matrix::{assemble, NormOptions};
use symtoep::operator::{basis_vector, OperatorSpec, SparseVec};
use symtoep::partition::{enumerate_window, PartitionIndex};
use symtoep::scalar::Scalar;
use symtoep::symbol::{battery_of_degree, combine, conjugate, elementary, sup_norm_sampled, Symbol};

type CMatrix = DMatrix<Complex64>;

/// Unit, coordinates and conjugates, all pairwise products and
/// `s_1 + s̄_1`. In two variables that family has only 13 distinct members,
/// so cubic products are added there to reach more than 20.
fn battery(d: usize) -> Vec<Symbol> {
    let degree = if d == 2 { 3 } else { 2 };
    let b = battery_of_degree(d, degree).expect("battery");
    assert!(b.len() >= 20);
    b
}

fn idx(v: &[i64]) -> PartitionIndex {
    PartitionIndex::new(v.to_vec()).unwrap()
}

type Criterion = fn() -> Result<Outcome>;

struct Outcome {
    ok: bool,
    note: String,
}

fn pass(note: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok: true, note: note.into() })
}

fn fail(note: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok: false, note: note.into() })
}

fn criterion_1() -> Result<Outcome> {
    let mut count = 0;
    for (d, top) in [(2, 8), (3, 6)] {
        let w = enumerate_window(d, top, 0)?;
        for phi in battery(d) {
            let res = bh_residuals(&OperatorSpec::Toeplitz(phi.clone()), &w)?;
            if let Some((k, m)) = res.iter().enumerate().find(|(_, m)| !m.is_zero()) {
                let wit = m.first_witness().unwrap();
                return fail(format!("d={d}, residual {k} nonzero at {:?},{:?}", wit.row.entries(), wit.col.entries()));
            }
            count += 1;
        }
    }
    pass(format!("{count} symbols, every residual exactly zero"))
}

fn criterion_2() -> Result<Outcome> {
    let mut count = 0;
    for d in [2, 3] {
        for phi in battery(d) {
            let back = recover_symbol(&OperatorSpec::Toeplitz(phi.clone()), phi.height().max(1))?;
            if back != phi {
                return fail(format!("d={d}: recovered {} for {}", back.to_json(), phi.to_json()));
            }
            count += 1;
        }
        let zero = recover_symbol(&OperatorSpec::Toeplitz(Symbol::zero(d)), 1)?;
        if !zero.is_zero() {
            return fail("zero operator did not give the empty symbol");
        }
    }
    pass(format!("{count} round trips exact, zero oracle gives the empty symbol"))
}

fn criterion_3() -> Result<Outcome> {
    let mut witnesses = 0;
    for d in [2, 3] {
        let w = enumerate_window(d, 6, 0)?;
        for j in 1..d {
            let y = OperatorSpec::shift_y(d, j)?;
            for i in 1..d {
                let c = commutator(y.clone(), OperatorSpec::Toeplitz(elementary(d, i)?));
                if assemble(&c, &w, &w)?.first_witness().is_none() {
                    return fail(format!("[Y_{j}, T_s{i}] vanished for d={d}"));
                }
                witnesses += 1;
            }
            let last = bh_residuals(&y, &w)?.pop().unwrap();
            if !last.is_zero() {
                return fail(format!("T_p* Y_{j} T_p - Y_{j} nonzero for d={d}"));
            }
        }
    }
    pass(format!("{witnesses} commutator witnesses, T_p* Y_j T_p = Y_j exactly"))
}

fn sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = a.clone();
    for (k, v) in b {
        let slot = out.entry(k.clone()).or_insert_with(|| Scalar::from_integer(0));
        *slot -= v;
    }
    out.retain(|_, v| *v != Scalar::from_integer(0));
    out
}

fn criterion_4() -> Result<Outcome> {
    let mut count = 0;
    for d in [2, 3] {
        for phi in battery(d) {
            let w = enumerate_window(d, phi.height() + d as i64 + 1, 0)?;
            let r = classify_analytic(&phi, &w)?;
            let vanish = r.details["commutatorsVanish"].as_bool().unwrap();
            if vanish != phi.is_analytic() || !r.passed() {
                return fail(format!("verdict mismatch for {}", phi.to_json()));
            }
            count += 1;
        }
    }
    let s1 = elementary(2, 1)?;
    let one = Scalar::from_integer(1);
    let phi = combine(&one, &s1, &one, &conjugate(&s1))?;
    let tphi = OperatorSpec::Toeplitz(phi);
    let tp = OperatorSpec::Toeplitz(elementary(2, 2)?);
    let e10 = basis_vector(&idx(&[1, 0]));
    let diff = sub(&tphi.apply(&tp.apply(&e10)?)?, &tp.apply(&tphi.apply(&e10)?)?);
    if diff != basis_vector(&idx(&[2, 0])) {
        return fail(format!("hand witness gave {diff:?}"));
    }
    pass(format!("{count} verdicts match, hand witness e_(2,0) reproduced"))
}

fn criterion_5() -> Result<Outcome> {
    let mut blocks = 0;
    let mut pairs = 0;
    for d in [2, 3] {
        let symbols = battery(d);
        for phi in &symbols {
            let h = phi.height();
            let w = enumerate_window(d, d as i64 - 1 + h + 2, -(h.max(1) + 2))?;
            let r = symtoep::dual::block_decomposition_check(phi, &w)?;
            if !r.passed() {
                return fail(format!("block decomposition failed for {}", phi.to_json()));
            }
            blocks += 1;
        }
        for phi in &symbols {
            for psi in &symbols {
                let h = phi.height().max(psi.height());
                let w = enumerate_window(d, h + d as i64 + 2, 0)?;
                if !product_defect(phi, psi, &w)?.is_zero() {
                    return fail(format!("product defect nonzero for {} and {}", phi.to_json(), psi.to_json()));
                }
                pairs += 1;
            }
        }
    }
    pass(format!("{blocks} block checks and {pairs} product pairs exactly zero"))
}

fn criterion_6() -> Result<Outcome> {
    let opts = NormOptions::default();
    let w = enumerate_window(2, 12, 0)?;
    let k = OperatorSpec::rank_one(idx(&[1, 0]), idx(&[1, 0]), Scalar::from_integer(1));
    for j in 2..=6 {
        let e = eta(&k, j, &w, opts)?;
        if !e.is_zero() || e.block_norm != 0.0 {
            return fail(format!("eta_{j} of the rank-one operator is not zero"));
        }
    }
    let t = OperatorSpec::Toeplitz(elementary(2, 1)?);
    let mut least = f64::INFINITY;
    for j in 1..=4 {
        least = least.min(eta(&t, j, &w, opts)?.block_norm);
    }
    if least < 0.5 {
        return fail(format!("eta block norm of T_s1 dropped to {least}"));
    }
    pass(format!("rank-one eta exactly zero for j = 2..6, min T_s1 block norm {least:.4}"))
}

fn criterion_7() -> Result<Outcome> {
    let s1 = elementary(2, 1)?;
    let sup = sup_norm_sampled(&s1, 256)?;
    if (sup - 2.0).abs() > 1e-3 {
        return fail(format!("sampled sup {sup}"));
    }
    let windows = [4, 8, 16, 20]
        .iter()
        .map(|&t| enumerate_window(2, t, -t))
        .collect::<Result<Vec<_>>>()?;
    let opts = NormOptions {
        iterations: 2000,
        grid: 256,
        ..NormOptions::default()
    };
    let r = symtoep::hardy::lift_verify(&s1, &windows, opts)?;
    let norms: Vec<f64> = r.norms.iter().map(|n| n["toeplitz"].as_f64().unwrap()).collect();
    let monotone = norms.windows(2).all(|p| p[1] + 1e-9 >= p[0]);
    let last = *norms.last().unwrap();
    let line = format!("Toeplitz norms {norms:.6?}, sampled sup {sup:.6}");
    if !r.passed() || !monotone || last < 1.9 {
        return fail(line);
    }
    pass(line)
}

fn perturbed(t: &GammaTuple) -> GammaTuple {
    let mut mats = t.mats().to_vec();
    mats[0][(0, 1)] += Complex64::new(0.1, 0.0);
    GammaTuple::new(mats, t.comm_tol()).unwrap()
}

/// Dimension of `{X : S_i* X V = X S_{d−i}, V* X V = X}` by applying the
/// constraints to every matrix unit and eliminating with partial pivoting.
fn brute_force_dimension(t: &GammaTuple) -> usize {
    let (n, d) = (t.n(), t.d());
    let s = |i: usize| &t.mats()[i - 1];
    let v = &t.mats()[d - 1];
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for b in 0..n {
        for a in 0..n {
            let mut x = CMatrix::zeros(n, n);
            x[(a, b)] = Complex64::new(1.0, 0.0);
            let mut col = Vec::new();
            for i in 1..d {
                col.extend((s(i).adjoint() * &x * v - &x * s(d - i)).iter().copied());
            }
            col.extend((v.adjoint() * &x * v - &x).iter().copied());
            cols.push(col);
        }
    }
    let rows = cols[0].len();
    let mut m: Vec<Vec<Complex64>> = (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let mut rank = 0;
    for c in 0..n * n {
        let piv = (rank..rows).max_by(|&x, &y| m[x][c].norm().total_cmp(&m[y][c].norm()));
        let Some(piv) = piv else { break };
        if m[piv][c].norm() <= 1e-8 {
            continue;
        }
        m.swap(rank, piv);
        let pr = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank {
                let f = row[c] / pr[c];
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= f * y;
                }
            }
        }
        rank += 1;
    }
    n * n - rank
}

fn criterion_8() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut least_margin = f64::INFINITY;
    for k in 0..100 {
        let d = 2 + k % 2;
        let n = 2 + k % 3;
        let t = synth_gamma_unitary(&random_diagonal_unitaries(d, n, &mut rng), 1e-8)?;
        if !check_gamma_unitary(&t, 1e-8, 42)?.passed() {
            return fail(format!("synthesized instance {k} rejected"));
        }
        let r = check_gamma_unitary(&perturbed(&t), 1e-8, 42)?;
        let margin = r.find("adjoint-relation").unwrap().details["margin"].as_f64().unwrap();
        if r.passed() || margin < 0.05 {
            return fail(format!("perturbed instance {k}: passed {} margin {margin}", r.passed()));
        }
        least_margin = least_margin.min(margin);
    }
    let mut dims = Vec::new();
    for k in 0..50 {
        let n = 2 + k % 2;
        let d = 2 + (k / 2) % 2;
        let u = if k % 5 == 0 {
            random_diagonal_unitaries(d, n, &mut rng)
        } else {
            random_rotated_unitaries(d, n, 4, &mut rng)
        };
        let t = synth_gamma_unitary(&u, 1e-8)?;
        let got = s_toeplitz_solve(&t, 1e-8)?.len();
        let want = brute_force_dimension(&t);
        if got != want {
            return fail(format!("instance {k}: solver dimension {got}, brute force {want}"));
        }
        dims.push(got);
    }
    pass(format!(
        "100 syntheses pass, perturbed margins ≥ {least_margin:.3}, 50 dimensions agree (range {}..={})",
        dims.iter().min().unwrap(),
        dims.iter().max().unwrap()
    ))
}

fn disk_point<R: Rng>(rng: &mut R) -> Complex64 {
    let r = if rng.random_bool(0.1) { 1.0 } else { rng.random::<f64>().sqrt() };
    Complex64::from_polar(r, std::f64::consts::TAU * rng.random::<f64>())
}

fn criterion_9() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in 0..1000 {
        let d = 2 + k % 3;
        let z: Vec<Complex64> = (0..d).map(|_| disk_point(&mut rng)).collect();
        let v = point_in_gamma(&symmetrize(&z), 1e-9);
        if !v.in_set {
            return fail(format!("point {k} rejected with margin {}", v.margin));
        }
    }
    let mut least = f64::INFINITY;
    for k in 0..1000 {
        let d = 2 + k % 3;
        let mut z: Vec<Complex64> = (0..d).map(|_| disk_point(&mut rng)).collect();
        let at = rng.random_range(0..d);
        z[at] = Complex64::from_polar(1.1, std::f64::consts::TAU * rng.random::<f64>());
        let v = point_in_gamma(&symmetrize(&z), 1e-9);
        if v.in_set || v.margin <= 0.05 {
            return fail(format!("off-disk point {k} accepted or margin {}", v.margin));
        }
        least = least.min(v.margin);
    }
    pass(format!("1000 inside, 1000 outside with margins ≥ {least:.4}"))
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("exact Brown-Halmos suite", criterion_1),
        ("symbol recovery round trip", criterion_2),
        ("shift Y_j is not Toeplitz", criterion_3),
        ("analytic characterization", criterion_4),
        ("block decomposition and product defect", criterion_5),
        ("compactness diagnostics", criterion_6),
        ("norm convergence", criterion_7),
        ("gamma tuples", criterion_8),
        ("membership oracles", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, note) = match f() {
            Ok(o) => (o.ok, o.note),
            Err(e) => (false, format!("error: {e}")),
        };
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {}: {} {name} ({secs:.1} s): {note}",
            k + 1,
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
