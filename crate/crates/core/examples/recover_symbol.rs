//! Reading a symbol back off a Toeplitz operator, and rejecting operators
//! that are not Toeplitz.

use symtoep::error::{Error, Result};
use symtoep::hardy::recover_symbol;
use symtoep::operator::OperatorSpec;
use symtoep::symbol::{battery, Symbol};

pub fn run_example() -> Result<()> {
    let symbols = battery(2)?;
    for phi in &symbols {
        let back = recover_symbol(&OperatorSpec::Toeplitz(phi.clone()), phi.height().max(1))?;
        assert_eq!(&back, phi);
    }
    println!("recovered all {} symbols of the d = 2 battery", symbols.len());

    let zero = recover_symbol(&OperatorSpec::Toeplitz(Symbol::zero(2)), 1)?;
    println!("zero operator gives the empty symbol: {}", zero.is_zero());

    match recover_symbol(&OperatorSpec::shift_y(2, 1)?, 2) {
        Err(Error::NotToeplitz(msg)) => println!("Y_1 rejected: {msg}"),
        other => panic!("unexpected {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
