//! A Toeplitz operator commutes with the coordinate multiplications exactly
//! when its symbol is analytic.

use symtoep::error::Result;
use symtoep::operator::{basis_vector, OperatorSpec};
use symtoep::hardy::classify_analytic;
use symtoep::partition::{enumerate_window, PartitionIndex};
use symtoep::scalar::Scalar;
use symtoep::symbol::{battery, combine, conjugate, elementary};

pub fn run_example() -> Result<()> {
    let d = 2;
    for phi in battery(d)? {
        let w = enumerate_window(d, phi.height() + d as i64 + 2, 0)?;
        let r = classify_analytic(&phi, &w)?;
        assert!(r.passed());
        println!("analytic {:5}  commutators vanish {}", phi.is_analytic(), r.details["commutatorsVanish"]);
    }

    // hand check: (T_phi T_p - T_p T_phi) e_(1,0) = e_(2,0) for phi = s1 + conj(s1)
    let s1 = elementary(d, 1)?;
    let one = Scalar::from_integer(1);
    let phi = combine(&one, &s1, &one, &conjugate(&s1))?;
    let (tphi, tp) = (OperatorSpec::Toeplitz(phi), OperatorSpec::Toeplitz(elementary(d, 2)?));
    let e10 = basis_vector(&PartitionIndex::new(vec![1, 0])?);
    let left = tphi.apply(&tp.apply(&e10)?)?;
    let right = tp.apply(&tphi.apply(&e10)?)?;
    let mut diff = left;
    for (k, v) in right {
        let slot = diff.entry(k).or_insert_with(|| Scalar::from_integer(0));
        *slot -= &v;
    }
    diff.retain(|_, v| *v != Scalar::from_integer(0));
    assert_eq!(diff, basis_vector(&PartitionIndex::new(vec![2, 0])?));
    println!("commutator applied to e_(1,0) is e_(2,0)");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
