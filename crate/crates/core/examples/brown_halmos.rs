//! Brown–Halmos relations: every Toeplitz matrix satisfies them exactly,
//! while the shift `Y_1` fails the first one with an explicit witness.

use symtoep::error::Result;
use symtoep::hardy::bh_residuals;
use symtoep::matrix::MatrixWindow;
use symtoep::operator::OperatorSpec;
use symtoep::partition::enumerate_window;
use symtoep::symbol::battery;

pub fn run_example() -> Result<()> {
    for (d, top) in [(2, 8), (3, 6)] {
        let w = enumerate_window(d, top, 0)?;
        let symbols = battery(d)?;
        for phi in &symbols {
            let r = bh_residuals(&OperatorSpec::Toeplitz(phi.clone()), &w)?;
            assert!(r.iter().all(MatrixWindow::is_zero));
        }
        println!("d = {d}: all {} battery symbols satisfy the relations on maxTop {top}", symbols.len());
    }

    let w = enumerate_window(2, 5, 0)?;
    let r = bh_residuals(&OperatorSpec::shift_y(2, 1)?, &w)?;
    let witness = r[0].first_witness().expect("Y_1 is not Toeplitz");
    println!(
        "Y_1: first residual nonzero at row {:?}, column {:?}, value {}",
        witness.row.entries(),
        witness.col.entries(),
        witness.value
    );
    println!("Y_1: last residual zero = {}", r[1].is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
