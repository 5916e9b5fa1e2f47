//! Compactness diagnostics: the `η_j` block maps, finite-rank truncations,
//! commutator decay, and the asymptotic Toeplitz test.

use symtoep::compact::{asymptotic_classify, commutator_decay, eta, finite_rank_truncation};
use symtoep::error::Result;
use symtoep::matrix::NormOptions;
use symtoep::operator::OperatorSpec;
use symtoep::partition::{enumerate_window, PartitionIndex};
use symtoep::scalar::Scalar;
use symtoep::symbol::elementary;

pub fn run_example() -> Result<()> {
    let d = 2;
    let opts = NormOptions::default();
    let w = enumerate_window(d, 12, 0)?;
    let e10 = PartitionIndex::new(vec![1, 0])?;
    let k = OperatorSpec::rank_one(e10.clone(), e10, Scalar::from_integer(1));
    let t = OperatorSpec::Toeplitz(elementary(d, 1)?);

    for j in 1..=4 {
        let ek = eta(&k, j, &w, opts)?;
        let et = eta(&t, j, &w, opts)?;
        println!("j = {j}: eta(rank one) zero {}, eta(T_s1) block norm {:.4}", ek.is_zero(), et.block_norm);
    }

    let trunc = finite_rank_truncation(&t, 4, &w)?;
    println!("T_s1 minus its rank-4 compression: norm {:.4}", trunc.norm_estimate(500, 42));

    let sum = OperatorSpec::Sum(vec![t.clone(), k.clone()]);
    let decay = commutator_decay(&sum, 1, 4, &enumerate_window(d, 8, 0)?, opts)?;
    print!("commutator decay for T_s1 + K:\n{}", decay.to_csv());

    let r = asymptotic_classify(&elementary(d, 1)?, &k, 3, &enumerate_window(d, 8, 0)?, opts)?;
    println!("T_s1 + K is asymptotically Toeplitz: {}", r.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
