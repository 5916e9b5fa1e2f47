//! Commuting matrix tuples: synthesis from unitaries, the unitary and
//! isometry checks, and the solution space of the Brown–Halmos system
//! relative to a tuple.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symtoep::error::Result;
use symtoep::gamma::{
    check_coordinate_isometry, check_gamma_isometry, check_gamma_unitary, random_rotated_unitaries,
    s_toeplitz_solve, synth_gamma_unitary,
};
use symtoep::partition::enumerate_window;

pub fn run_example() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let unitaries = random_rotated_unitaries(3, 4, 4, &mut rng);
    let tuple = synth_gamma_unitary(&unitaries, 1e-9)?;
    let report = check_gamma_unitary(&tuple, 1e-8, 42)?;
    println!("synthesized tuple passes the unitary check: {}", report.passed());
    println!("isometry battery passes: {}", check_gamma_isometry(&tuple, 1e-8, 3, 32)?.passed());
    println!("solution space dimension: {}", s_toeplitz_solve(&tuple, 1e-8)?.len());

    let w = enumerate_window(2, 6, 0)?;
    println!(
        "windowed coordinate tuple satisfies the isometry relations on interior columns: {}",
        check_coordinate_isometry(2, &w, 1e-12)?.passed()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
