//! Exact matrices of Toeplitz, Hankel, Laurent, dual Toeplitz and shift
//! operators on finite windows of the antisymmetric basis.

use symtoep::error::Result;
use symtoep::matrix::assemble;
use symtoep::operator::OperatorSpec;
use symtoep::partition::{enumerate_window, Part, PartitionIndex};
use symtoep::symbol::{conjugate, elementary};

pub fn run_example() -> Result<()> {
    let d = 2;
    let s1 = elementary(d, 1)?;
    let pbar = conjugate(&elementary(d, 2)?);

    let analytic = enumerate_window(d, 4, 0)?;
    let t = assemble(&OperatorSpec::Toeplitz(s1.clone()), &analytic, &analytic)?;
    println!("T_s1 on maxTop 4 ({} x {}):\n{}", t.shape().0, t.shape().1, t.to_csv());

    let full = enumerate_window(d, 3, -3)?;
    let (a, n) = (full.restrict(Part::Analytic), full.restrict(Part::NonAnalytic));
    let h = assemble(&OperatorSpec::Hankel(pbar.clone()), &n, &a)?;
    println!("Hankel of conj(p) has {} nonzero entries", h.nnz());
    let dual = assemble(&OperatorSpec::DualToeplitz(pbar.clone()), &n, &n)?;
    println!("dual Toeplitz of conj(p) has {} nonzero entries", dual.nnz());
    let l = assemble(&OperatorSpec::Laurent(s1), &full, &full)?;
    println!("Laurent of s1 has {} nonzero entries", l.nnz());

    // Y_1 e_(1,0) = e_(2,0)
    let y = OperatorSpec::shift_y(d, 1)?;
    let e10 = PartitionIndex::new(vec![1, 0])?;
    let e20 = PartitionIndex::new(vec![2, 0])?;
    assert_eq!(y.entry(&e20, &e10)?, symtoep::scalar::Scalar::from_integer(1));
    println!("Y_1 on maxTop 3:\n{}", assemble(&y, &enumerate_window(d, 3, 0)?, &enumerate_window(d, 3, 0)?)?.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
