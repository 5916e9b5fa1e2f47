//! The Laurent operator as an extension of the Toeplitz operator: the
//! coordinate multiplications commute, compress to the Toeplitz matrix, and
//! reach every index from the analytic part.

use symtoep::error::Result;
use symtoep::gamma::minimal_extension_verify;
use symtoep::partition::enumerate_window;
use symtoep::symbol::battery;

pub fn run_example() -> Result<()> {
    for d in 2..=3 {
        let w = enumerate_window(d, d as i64 + 2, -3)?;
        for phi in battery(d)? {
            assert!(minimal_extension_verify(&phi, &w)?.passed());
        }
        println!("d = {d}: extension checks pass for the whole battery");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
