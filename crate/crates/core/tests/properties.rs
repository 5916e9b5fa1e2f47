use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symtoep::compact::{el_projection, eta, f_projection};
use symtoep::dual::dual_entry;
use symtoep::gamma::{commutant, random_rotated_unitaries, s_toeplitz_solve, synth_gamma_unitary, check_gamma_unitary};
use symtoep::hardy::{bh_residuals, recover_symbol};
use symtoep::matrix::{assemble, MatrixWindow, NormOptions};
use symtoep::operator::{basis_vector, OperatorSpec};
use symtoep::partition::{antisymmetrize, enumerate_window, OrbitRep, PartitionIndex};
use symtoep::scalar::Scalar;
use symtoep::symbol::{battery_of_degree, conjugate, elementary, evaluate, multiply, Symbol};

fn orbit(d: usize) -> impl Strategy<Value = OrbitRep> {
    prop::collection::vec(-2i64..=2, d).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        OrbitRep::new(v).unwrap()
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -3i64..=3, 1i64..=3).prop_map(|(re, im, den)| {
        let r = Scalar::ratio(re, den);
        let i = Scalar::from_parts(0, im);
        &r + &i
    })
}

fn symbol(d: usize, max_terms: usize) -> impl Strategy<Value = Symbol> {
    prop::collection::vec((orbit(d), scalar()), 0..=max_terms)
        .prop_map(move |terms| Symbol::from_terms(d, terms).unwrap())
}

fn analytic_symbol(d: usize) -> impl Strategy<Value = Symbol> {
    symbol(d, 3).prop_map(move |s| {
        let terms: Vec<_> = s
            .terms()
            .map(|(m, c)| (OrbitRep::new(m.entries().iter().map(|x| x.abs()).collect::<Vec<_>>()).ok(), c.clone()))
            .filter_map(|(m, c)| m.map(|m| (m, c)))
            .collect();
        Symbol::from_terms(d, terms).unwrap()
    })
}

fn torus_point(d: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(0.0..std::f64::consts::TAU, d)
        .prop_map(|t| t.into_iter().map(|a| Complex64::from_polar(1.0, a)).collect())
}

/// Number of strict `d`-tuples `top ≥ x_1 > … > x_d ≥ 0`, by recursion on
/// the largest entry.
fn count_strict(d: usize, top: i64) -> u64 {
    if d == 0 {
        return 1;
    }
    if top < d as i64 - 1 {
        return 0;
    }
    (d as i64 - 1..=top).map(|x| count_strict(d - 1, x - 1)).sum()
}

#[test]
fn antisymmetrize_sign_vanishes_exactly_on_collisions() {
    for d in 1..=3usize {
        let total = 7usize.pow(d as u32);
        for code in 0..total {
            let t: Vec<i64> = (0..d).map(|k| (code / 7usize.pow(k as u32) % 7) as i64 - 3).collect();
            let s = antisymmetrize(&t, d).unwrap();
            let mut sorted = t.clone();
            sorted.sort_unstable();
            let collision = sorted.windows(2).any(|w| w[0] == w[1]);
            assert!([-1, 0, 1].contains(&s.sign));
            assert_eq!(s.sign == 0, collision, "{t:?}");
        }
    }
}

#[test]
fn window_cardinality_matches_counter() {
    for d in 2..=4 {
        for top in 0..=9 {
            let w = enumerate_window(d, top, 0).unwrap();
            assert_eq!(w.len() as u64, count_strict(d, top), "d={d} top={top}");
        }
    }
}

#[test]
fn brown_halmos_on_cubic_battery() {
    for (d, top) in [(2, 7), (3, 5)] {
        let w = enumerate_window(d, top, 0).unwrap();
        for phi in battery_of_degree(d, 3).unwrap() {
            let r = bh_residuals(&OperatorSpec::Toeplitz(phi), &w).unwrap();
            assert!(r.iter().all(MatrixWindow::is_zero));
        }
    }
}

#[test]
fn shift_commutators_and_last_residual() {
    for d in 2..=3 {
        let w = enumerate_window(d, 5, 0).unwrap();
        for j in 1..d {
            let y = OperatorSpec::shift_y(d, j).unwrap();
            for i in 1..d {
                let c = symtoep::hardy::commutator(y.clone(), OperatorSpec::Toeplitz(elementary(d, i).unwrap()));
                assert!(!assemble(&c, &w, &w).unwrap().is_zero());
            }
            assert!(bh_residuals(&y, &w).unwrap().last().unwrap().is_zero());
        }
    }
}

#[test]
fn el_projection_is_killed_by_adjoint_shifts() {
    for d in 2..=4 {
        for l in 1..=4 {
            let e = el_projection(d, l).unwrap();
            assert_eq!(e.len(), l);
            for (a, p) in e.iter().enumerate() {
                assert!(e[a + 1..].iter().all(|q| q != p));
                for j in 1..d {
                    let ystar = OperatorSpec::shift_y(d, j).unwrap().adjoint();
                    let mut v = basis_vector(p);
                    for _ in 0..l {
                        v = ystar.apply(&v).unwrap();
                    }
                    assert!(v.is_empty(), "Y_{j}*^{l} e_{p} = {v:?}");
                }
            }
        }
    }
}

#[test]
fn f_projection_is_idempotent() {
    for d in 2..=3 {
        for l in 1..=3 {
            let f = f_projection(d, l).unwrap();
            let w = enumerate_window(d, (d as i64 - 1) * l as i64 + 2 * l as i64, 0).unwrap();
            let ff = OperatorSpec::product(vec![f.clone(), f.clone()]);
            assert_eq!(assemble(&ff, &w, &w).unwrap(), assemble(&f, &w, &w).unwrap());
        }
    }
}

#[test]
fn commutant_lies_in_the_solution_space() {
    for seed in 0..10 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = 2 + (seed as usize) % 2;
        let t = synth_gamma_unitary(&random_rotated_unitaries(d, 3, 4, &mut rng), 1e-9).unwrap();
        assert!(check_gamma_unitary(&t, 1e-8, 42).unwrap().passed());
        let sols = s_toeplitz_solve(&t, 1e-8).unwrap();
        let comm = commutant(&t, 1e-8);
        assert!(comm.len() <= sols.len());
        for x in comm {
            let mut rest = x.clone();
            for b in &sols {
                let c: Complex64 = b.iter().zip(x.iter()).map(|(p, q)| p.conj() * q).sum();
                rest -= b * c;
            }
            assert!(rest.iter().all(|z| z.norm() < 1e-7));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetrize_flips_under_transpositions(t in prop::collection::vec(-6i64..=6, 2..=5), a in 0usize..5, b in 0usize..5) {
        let d = t.len();
        let (a, b) = (a % d, b % d);
        prop_assume!(a != b);
        let s = antisymmetrize(&t, d).unwrap();
        let mut u = t.clone();
        u.swap(a, b);
        let s2 = antisymmetrize(&u, d).unwrap();
        prop_assert_eq!(s2.sign, -s.sign);
        prop_assert_eq!(&s2.partition, &s.partition);
        if let Some(p) = s.partition {
            let again = antisymmetrize(p.entries(), d).unwrap();
            prop_assert_eq!(again.sign, 1);
            prop_assert_eq!(again.partition, Some(p));
        }
    }

    #[test]
    fn regrade_then_shift_is_identity(mut v in prop::collection::btree_set(-20i64..=20, 2..=6)) {
        let entries: Vec<i64> = std::mem::take(&mut v).into_iter().rev().collect();
        let p = PartitionIndex::new(entries).unwrap();
        let (k, base) = p.regrade();
        prop_assert_eq!(base.bottom(), 0);
        prop_assert_eq!(base.shift_diag(k), p);
    }

    #[test]
    fn multiply_is_commutative_and_associative(a in symbol(2, 3), b in symbol(2, 3), c in symbol(2, 3)) {
        prop_assert_eq!(multiply(&a, &b).unwrap(), multiply(&b, &a).unwrap());
        let left = multiply(&multiply(&a, &b).unwrap(), &c).unwrap();
        let right = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn evaluation_is_multiplicative(a in symbol(3, 3), b in symbol(3, 3), z in torus_point(3)) {
        let ab = evaluate(&multiply(&a, &b).unwrap(), &z).unwrap();
        let prod = evaluate(&a, &z).unwrap() * evaluate(&b, &z).unwrap();
        prop_assert!((ab - prod).norm() < 1e-9 * (1.0 + prod.norm()));
        let conj = evaluate(&conjugate(&a), &z).unwrap();
        prop_assert!((conj - evaluate(&a, &z).unwrap().conj()).norm() < 1e-9);
    }

    #[test]
    fn analytic_symbols_are_closed_under_products(a in analytic_symbol(2), b in analytic_symbol(2)) {
        prop_assert!(a.is_analytic() && b.is_analytic());
        prop_assert!(multiply(&a, &b).unwrap().is_analytic());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn toeplitz_adjoint_symmetry(phi in symbol(2, 3)) {
        let w = enumerate_window(2, 5, 0).unwrap();
        let t = assemble(&OperatorSpec::Toeplitz(phi.clone()), &w, &w).unwrap();
        let tc = assemble(&OperatorSpec::Toeplitz(conjugate(&phi)), &w, &w).unwrap();
        for q in w.members() {
            for p in w.members() {
                prop_assert_eq!(t.at(q, p), tc.at(p, q).conj());
            }
        }
    }

    #[test]
    fn recovery_round_trip_on_random_symbols(phi in symbol(2, 3)) {
        let back = recover_symbol(&OperatorSpec::Toeplitz(phi.clone()), phi.height().max(1)).unwrap();
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn random_toeplitz_satisfies_brown_halmos(phi in symbol(3, 2)) {
        let w = enumerate_window(3, 5, 0).unwrap();
        let r = bh_residuals(&OperatorSpec::Toeplitz(phi), &w).unwrap();
        prop_assert!(r.iter().all(MatrixWindow::is_zero));
    }

    #[test]
    fn dual_entries_match_laurent(phi in symbol(2, 3)) {
        let w = enumerate_window(2, 2, -4).unwrap();
        let l = OperatorSpec::Laurent(phi.clone());
        let dual: Vec<_> = w.members().iter().filter(|p| !p.is_analytic()).collect();
        for q in &dual {
            for p in &dual {
                prop_assert_eq!(dual_entry(&phi, q, p).unwrap(), l.entry(q, p).unwrap());
            }
        }
    }

    #[test]
    fn finite_rank_eta_vanishes_beyond_support(a in 1i64..=4, b in 0i64..=3, c in 1i64..=4, e in 0i64..=3, j in 1usize..=6) {
        let (row, col) = (PartitionIndex::new(vec![a + b, b]).unwrap(), PartitionIndex::new(vec![c + e, e]).unwrap());
        let k = OperatorSpec::rank_one(row.clone(), col.clone(), Scalar::from_integer(1));
        let w = enumerate_window(2, 10, 0).unwrap();
        let diameter = row.top().max(col.top());
        let r = eta(&k, j, &w, NormOptions::default()).unwrap();
        if j as i64 > diameter {
            prop_assert!(r.is_zero());
            prop_assert_eq!(r.block_norm, 0.0);
        }
    }
}

#[test]
fn laurent_coordinate_identity_on_interior_pairs() {
    for d in 2..=3usize {
        let w = enumerate_window(d, 4, -4).unwrap();
        let p = assemble(&OperatorSpec::Laurent(elementary(d, d).unwrap()), &w, &w).unwrap().to_dense();
        for j in 1..d {
            let sj = assemble(&OperatorSpec::Laurent(elementary(d, j).unwrap()), &w, &w).unwrap().to_dense();
            let target = assemble(&OperatorSpec::Laurent(elementary(d, d - j).unwrap()), &w, &w).unwrap().to_dense();
            let lhs = sj.adjoint() * &p;
            // the middle sum is complete when the column shifted by p and the
            // row both stay a full step inside the window
            for (a, q) in w.members().iter().enumerate() {
                for (b, col) in w.members().iter().enumerate() {
                    let interior = q.top() < 3 && col.top() < 3 && q.bottom() > -4 && col.bottom() > -4;
                    if interior {
                        assert!((lhs[(a, b)] - target[(a, b)]).norm() < 1e-12, "d={d} j={j} {q} {col}");
                    }
                }
            }
        }
    }
}
