//! The product defect `T_φ T_ψ − T_{φψ} = −H_{φ̄}* H_ψ`, the block form of a
//! Laurent matrix, and the dual Toeplitz relations.

use symtoep::dual::{block_decomposition_check, dual_bh_residuals, DualWindow};
use symtoep::error::Result;
use symtoep::hardy::product_defect;
use symtoep::matrix::MatrixWindow;
use symtoep::operator::OperatorSpec;
use symtoep::partition::enumerate_window;
use symtoep::symbol::battery;

pub fn run_example() -> Result<()> {
    let d = 2;
    let symbols = battery(d)?;
    let mut pairs = 0;
    for phi in &symbols {
        for psi in &symbols {
            let h = phi.height().max(psi.height());
            let w = enumerate_window(d, h + d as i64 + 2, 0)?;
            assert!(product_defect(phi, psi, &w)?.is_zero());
            pairs += 1;
        }
    }
    println!("product defect exactly zero on {pairs} pairs");

    for phi in &symbols {
        let h = phi.height();
        let w = enumerate_window(d, d as i64 + 1 + h, -(h.max(1) + 2))?;
        let r = block_decomposition_check(phi, &w)?;
        assert!(r.passed());
        let dual = dual_bh_residuals(&OperatorSpec::DualToeplitz(phi.clone()), &DualWindow::new(&w)?)?;
        assert!(dual.iter().all(MatrixWindow::is_zero));
    }
    println!("block decomposition and dual relations hold for every battery symbol");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
